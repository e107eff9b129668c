// Login flow: start a session, render each round, submit the pick,
// advance, and show the verdict. Transport failures surface as a retry
// banner that re-posts the same round idempotently; a 423 shows the
// locked state. The client computes nothing from secrets here -- it only
// forwards what the user clicked.

import { ApiError, AuthClient } from "./api.js";
import { renderChallenge } from "./render.js";
import type { Challenge } from "./types.js";

type State =
  | { kind: "idle" }
  | { kind: "round"; sessionId: string; round: number; challenge: Challenge }
  | { kind: "verdict"; result: "accepted" | "denied" }
  | { kind: "locked" }
  | { kind: "error"; message: string; retry: () => void };

export class LoginApp {
  private state: State = { kind: "idle" };

  constructor(
    private root: HTMLElement,
    private client: AuthClient,
  ) {
    this.render();
  }

  get currentState(): State["kind"] {
    return this.state.kind;
  }

  async start(username: string): Promise<void> {
    try {
      const start = await this.client.startSession(username);
      this.state = {
        kind: "round",
        sessionId: start.session_id,
        round: start.round,
        challenge: start.challenge,
      };
    } catch (err) {
      if (err instanceof ApiError && err.status === 423) {
        this.state = { kind: "locked" };
      } else {
        const message = err instanceof Error ? err.message : String(err);
        this.state = { kind: "error", message, retry: () => void this.start(username) };
      }
    }
    this.render();
  }

  async submit(response: string | number): Promise<void> {
    if (this.state.kind !== "round") return;
    const { sessionId, round } = this.state;
    try {
      const reply = await this.client.submitResponse(sessionId, round, response);
      if (reply.result !== undefined) {
        this.state = { kind: "verdict", result: reply.result };
      } else {
        this.state = {
          kind: "round",
          sessionId,
          round: reply.round as number,
          challenge: reply.challenge as Challenge,
        };
      }
    } catch (err) {
      const message = err instanceof Error ? err.message : String(err);
      this.state = { kind: "error", message, retry: () => void this.submit(response) };
    }
    this.render();
  }

  private render(): void {
    this.root.textContent = "";
    switch (this.state.kind) {
      case "idle": {
        this.root.appendChild(banner("status", "enter a username to begin"));
        break;
      }
      case "round": {
        const heading = document.createElement("h3");
        heading.textContent = `round ${this.state.round}`;
        heading.className = "round-heading";
        this.root.appendChild(heading);
        const stage = document.createElement("div");
        stage.className = "stage";
        this.root.appendChild(stage);
        renderChallenge(stage, this.state.challenge, (picked) => void this.submit(picked));
        break;
      }
      case "verdict": {
        const node = banner(`verdict ${this.state.result}`, this.state.result);
        node.dataset.result = this.state.result;
        this.root.appendChild(node);
        break;
      }
      case "locked": {
        this.root.appendChild(banner("locked", "account locked"));
        break;
      }
      case "error": {
        const wrap = banner("retry-banner", `connection problem: ${this.state.message}`);
        const button = document.createElement("button");
        button.textContent = "retry";
        button.className = "retry";
        button.addEventListener("click", this.state.retry);
        wrap.appendChild(button);
        this.root.appendChild(wrap);
        break;
      }
    }
  }
}

function banner(className: string, text: string): HTMLElement {
  const node = document.createElement("div");
  node.className = className;
  node.textContent = text;
  return node;
}
