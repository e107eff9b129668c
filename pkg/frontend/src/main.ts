// Page wiring: login / practice / admin tabs over the same client.

import { AuthClient } from "./api.js";
import { AdminView } from "./admin.js";
import { LoginApp } from "./app.js";
import {
  localCopDemo,
  localPasDemo,
  localS3pasGrid,
  practiceCop,
  practicePas,
  practiceS3pasRound,
} from "./practice.js";

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

export function boot(baseUrl: string): void {
  const client = new AuthClient(baseUrl);
  const app = new LoginApp(byId("login-stage"), client);
  const admin = new AdminView(byId("admin-stage"), client);

  byId("login-start").addEventListener("click", () => {
    const username = (byId("login-username") as HTMLInputElement).value.trim();
    if (username) void app.start(username);
  });

  byId("admin-refresh").addEventListener("click", () => {
    const token = (byId("admin-token") as HTMLInputElement).value;
    void admin.refresh(token);
  });

  // practice mode: a fixed demo secret per scheme, no server involved
  let practiceRound = 1;
  const demoPassword = "2KZW";
  const grid = localS3pasGrid();
  const renderPractice = () => {
    practiceS3pasRound(byId("practice-s3pas"), grid, demoPassword, practiceRound);
    byId("practice-round-label").textContent = `round ${practiceRound}`;
  };
  byId("practice-next-round").addEventListener("click", () => {
    practiceRound = (practiceRound % 4) + 1;
    renderPractice();
  });
  renderPractice();

  const pasDemo = localPasDemo(
    { block: "23", letter: "E" },
    { block: "41", letter: "P" },
    [false, true, true, true],
  );
  practicePas(byId("practice-pas"), pasDemo, "23", "41");

  practiceCop(byId("practice-cop"), localCopDemo("A1B3"), "A1B3");
}

declare global {
  interface Window {
    hbatBoot: typeof boot;
  }
}

if (typeof window !== "undefined") {
  window.hbatBoot = boot;
}
