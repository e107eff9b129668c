// Practice mode: a local-only walkthrough of each ceremony for a chosen
// demo secret. Everything is generated in the browser -- no server calls,
// no real account -- and the user's own triangle/hull/blocks/walk are
// highlighted so the response rule can be learned safely.

import {
  cellsOnSegment,
  convexHull,
  pointInHull,
  roundWindow,
  triangleResponseCells,
  type Pt,
} from "./geometry.js";
import { renderCop, renderPas, renderS3pas } from "./render.js";
import type { CopChallenge, PasChallenge, S3pasChallenge } from "./types.js";

const S3PAS_ALPHABET =
  "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789!#$%&()*+,-./:;<=>";
const COP_ALPHABET =
  "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789*#@&";
const LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";

// Response table: fixed 4x4 Latin square from (first predicate answers,
// second predicate answers) to the typed element.
const RESPONSE_SQUARE: Record<string, string> = {
  NN: "PQRS",
  NY: "QSPR",
  YN: "SRQP",
  YY: "RPSQ",
};

export function responseFor(seq: [boolean, boolean, boolean, boolean]): string {
  const row = (seq[0] ? "Y" : "N") + (seq[1] ? "Y" : "N");
  const colIndex = ["NN", "NY", "YN", "YY"].indexOf((seq[2] ? "Y" : "N") + (seq[3] ? "Y" : "N"));
  return RESPONSE_SQUARE[row][colIndex];
}

function shuffled<T>(items: T[], rand: () => number): T[] {
  const out = [...items];
  for (let i = out.length - 1; i > 0; i--) {
    const j = Math.floor(rand() * (i + 1));
    [out[i], out[j]] = [out[j], out[i]];
  }
  return out;
}

export function localS3pasGrid(rand: () => number = Math.random): S3pasChallenge {
  const chars = shuffled([...S3PAS_ALPHABET], rand);
  const grid: string[] = [];
  for (let y = 0; y < 8; y++) grid.push(chars.slice(y * 10, y * 10 + 10).join(""));
  return { grid, round: 1, session_id: "practice" };
}

/** Highlight the demo password's triangle for one round; returns the
 * highlighted characters (vertices plus the valid response cells). */
export function practiceS3pasRound(
  container: HTMLElement,
  challenge: S3pasChallenge,
  password: string,
  round: number,
): { vertices: string; responses: string[] } {
  renderS3pas(container, challenge, () => undefined);
  const where = new Map<string, Pt>();
  challenge.grid.forEach((row, y) => [...row].forEach((ch, x) => where.set(ch, [x, y])));
  const window = roundWindow(password, round);
  const verts = [...window].map((ch) => where.get(ch) as Pt) as [Pt, Pt, Pt];
  for (const ch of window) {
    container
      .querySelector<HTMLElement>(`[data-char="${CSS.escape(ch)}"]`)
      ?.classList.add("vertex");
  }
  const responses: string[] = [];
  for (const [x, y] of triangleResponseCells(verts, 10, 8)) {
    const ch = challenge.grid[y][x];
    responses.push(ch);
    container
      .querySelector<HTMLElement>(`[data-char="${CSS.escape(ch)}"]`)
      ?.classList.add("inside");
  }
  return { vertices: window, responses };
}

/** Highlight the hull spanned by the demo pass icons and its member icons. */
export function practiceChcRound(
  container: HTMLElement,
  icons: { id: number; x: number; y: number }[],
  passIcons: number[],
): number[] {
  const hull = convexHull(
    icons.filter((i) => passIcons.includes(i.id)).map((i) => [i.x, i.y] as Pt),
  );
  const members: number[] = [];
  for (const icon of icons) {
    if (pointInHull([icon.x, icon.y], hull)) {
      members.push(icon.id);
      container
        .querySelector<HTMLElement>(`[data-icon="${icon.id}"]`)
        ?.classList.add("inside");
    }
  }
  for (const id of passIcons) {
    container.querySelector<HTMLElement>(`[data-icon="${id}"]`)?.classList.add("vertex");
  }
  return members;
}

export interface PasDemo {
  challenge: PasChallenge;
  sequence: [boolean, boolean, boolean, boolean];
  response: string;
}

/** Local tables forced to a chosen yes/no sequence for the demo pair. */
export function localPasDemo(
  pred1: { block: string; letter: string },
  pred2: { block: string; letter: string },
  sequence: [boolean, boolean, boolean, boolean],
  rand: () => number = Math.random,
): PasDemo {
  const mk = (contains: Map<string, { yes: string[]; no: string[] }>) => {
    const blocks = [];
    for (let r = 1; r <= 5; r++) {
      for (let c = 1; c <= 5; c++) {
        const label = `${r}${c}`;
        const forced = contains.get(label) ?? { yes: [], no: [] };
        const pool = [...LETTERS].filter(
          (ch) => !forced.yes.includes(ch) && !forced.no.includes(ch),
        );
        const letters = [...forced.yes, ...shuffled(pool, rand).slice(0, 13 - forced.yes.length)]
          .sort()
          .join("");
        blocks.push({ block: [r, c] as [number, number], letters });
      }
    }
    return blocks;
  };
  const t1 = new Map<string, { yes: string[]; no: string[] }>();
  const t2 = new Map<string, { yes: string[]; no: string[] }>();
  const add = (m: Map<string, { yes: string[]; no: string[] }>, block: string, letter: string, yes: boolean) => {
    const bucket = m.get(block) ?? { yes: [], no: [] };
    (yes ? bucket.yes : bucket.no).push(letter);
    m.set(block, bucket);
  };
  add(t1, pred1.block, pred1.letter, sequence[0]);
  add(t2, pred1.block, pred1.letter, sequence[1]);
  add(t1, pred2.block, pred2.letter, sequence[2]);
  add(t2, pred2.block, pred2.letter, sequence[3]);
  const challenge: PasChallenge = {
    table1: mk(t1),
    table2: mk(t2),
    response_options: ["P", "Q", "R", "S"],
    session_id: "practice",
    round: 1,
  };
  return { challenge, sequence, response: responseFor(sequence) };
}

/** Render the demo tables with the predicate blocks and derivation shown. */
export function practicePas(container: HTMLElement, demo: PasDemo, pred1Block: string, pred2Block: string): void {
  renderPas(container, demo.challenge, () => undefined);
  for (const [table, block] of [
    ["table1", pred1Block],
    ["table2", pred1Block],
    ["table1", pred2Block],
    ["table2", pred2Block],
  ] as const) {
    container
      .querySelector<HTMLElement>(`[data-table="${table}"][data-block="${block}"]`)
      ?.classList.add("predicate-block");
  }
  const derivation = document.createElement("div");
  derivation.className = "derivation";
  const words = demo.sequence.map((b) => (b ? "YES" : "NO")).join(", ");
  derivation.textContent = `answer sequence {${words}} -> ${demo.response}`;
  container.appendChild(derivation);
}

export interface CopDemo {
  challenge: CopChallenge;
  vertical: number;
  horizontal: number;
  landing: string;
  response: number;
}

/** Local digit plane plus the walk for a demo secret. */
export function localCopDemo(word: string, rand: () => number = Math.random): CopDemo {
  const digits = new Map<string, number>();
  for (const ch of COP_ALPHABET) digits.set(ch, Math.floor(rand() * 10));
  const cells = [...COP_ALPHABET].map((ch, i) => ({
    char: ch,
    digit: digits.get(ch) as number,
    x: i % 11,
    y: Math.floor(i / 11),
  }));
  const vertical = digits.get(word[0]) as number;
  const horizontal = [...word.slice(1)].reduce((sum, ch) => sum + (digits.get(ch) as number), 0);
  const landingIndex =
    (COP_ALPHABET.indexOf(word[0]) + 11 * vertical + horizontal) % COP_ALPHABET.length;
  const landing = COP_ALPHABET[landingIndex];
  return {
    challenge: { cells, session_id: "practice" },
    vertical,
    horizontal,
    landing,
    response: digits.get(landing) as number,
  };
}

export function practiceCop(container: HTMLElement, demo: CopDemo, word: string): void {
  renderCop(container, demo.challenge, () => undefined);
  container
    .querySelector<HTMLElement>(`[data-char="${CSS.escape(word[0])}"]`)
    ?.classList.add("vertex");
  container
    .querySelector<HTMLElement>(`[data-char="${CSS.escape(demo.landing)}"]`)
    ?.classList.add("inside");
  const note = document.createElement("div");
  note.className = "derivation";
  note.textContent =
    `down ${demo.vertical} rows, right ${demo.horizontal} cells -> ` +
    `${demo.landing} (respond ${demo.response})`;
  container.appendChild(note);
}
