// Payload shapes as served by the auth API. These are the ONLY fields the
// client ever sees: no sweetwords, no designated round, no stored index.

export interface S3pasChallenge {
  grid: string[];          // 8 rows of 10 characters
  round: number;
  session_id: string;
}

export interface ChcIcon {
  id: number;
  x: number;
  y: number;
}

export interface ChcChallenge {
  icons: ChcIcon[];
  session_id: string;
  round: number;
}

export interface PasBlock {
  block: [number, number]; // 1-based (row, col) label
  letters: string;         // the 13 letters in the block
}

export interface PasChallenge {
  table1: PasBlock[];
  table2: PasBlock[];
  response_options: string[];
  session_id: string;
  round: number;
}

export interface CopCell {
  char: string;
  digit: number;
  x: number;
  y: number;
}

export interface CopChallenge {
  cells: CopCell[];
  session_id: string;
}

export type Challenge = S3pasChallenge | ChcChallenge | PasChallenge | CopChallenge;

export type SchemeTag = "s3pas" | "chc" | "pas" | "cop";

export function detectScheme(challenge: Challenge): SchemeTag {
  if ("grid" in challenge) return "s3pas";
  if ("icons" in challenge) return "chc";
  if ("table1" in challenge) return "pas";
  if ("cells" in challenge) return "cop";
  throw new Error("unrecognized challenge payload");
}

export interface SessionStart {
  session_id: string;
  round: number;
  challenge: Challenge;
}

export interface RoundReply {
  session_id?: string;
  round?: number;
  challenge?: Challenge;
  result?: "accepted" | "denied";
}

export interface AlarmEntry {
  username: string;
  time: number;
  policy_applied: string;
}
