// Thin typed client for the auth JSON API. Response posts carry a
// per-round nonce so a network retry replays idempotently instead of
// consuming the round twice.

import type { AlarmEntry, RoundReply, SessionStart } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

function nonce(): string {
  return Math.random().toString(36).slice(2) + Date.now().toString(36);
}

export class AuthClient {
  constructor(private baseUrl: string) {}

  private async post(path: string, body: unknown): Promise<unknown> {
    const resp = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        detail = ((await resp.json()) as { detail?: string }).detail ?? detail;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(resp.status, detail);
    }
    return resp.json();
  }

  async register(username: string, password: unknown, scheme: string, k?: number) {
    return (await this.post("/register", { username, password, scheme, k })) as { k: number };
  }

  async startSession(username: string): Promise<SessionStart> {
    return (await this.post("/session", { username })) as SessionStart;
  }

  /**
   * Submit one round's response. On a transport failure the same payload
   * (same nonce) is retried once; the server's replay cache makes the
   * retry safe even when the first attempt actually landed.
   */
  async submitResponse(
    sessionId: string,
    round: number,
    response: unknown,
  ): Promise<RoundReply> {
    const body = { response, round, nonce: nonce() };
    try {
      return (await this.post(`/session/${sessionId}/response`, body)) as RoundReply;
    } catch (err) {
      if (err instanceof ApiError) throw err;
      return (await this.post(`/session/${sessionId}/response`, body)) as RoundReply;
    }
  }

  async alarms(adminToken: string): Promise<AlarmEntry[]> {
    const resp = await fetch(this.baseUrl + "/admin/alarms", {
      headers: { "X-Admin-Token": adminToken },
    });
    if (!resp.ok) throw new ApiError(resp.status, resp.statusText);
    const body = (await resp.json()) as { alarms: AlarmEntry[] };
    return body.alarms;
  }
}
