// Admin view: poll the alarm journal and show blocked-account fallout.

import { AuthClient } from "./api.js";

export class AdminView {
  constructor(
    private root: HTMLElement,
    private client: AuthClient,
  ) {}

  async refresh(adminToken: string): Promise<void> {
    this.root.textContent = "";
    let alarms;
    try {
      alarms = await this.client.alarms(adminToken);
    } catch (err) {
      const msg = document.createElement("div");
      msg.className = "admin-error";
      msg.textContent = `could not load alarms: ${err instanceof Error ? err.message : err}`;
      this.root.appendChild(msg);
      return;
    }
    const table = document.createElement("table");
    table.className = "alarm-table";
    const head = table.insertRow();
    for (const title of ["username", "time", "policy applied"]) {
      const cell = document.createElement("th");
      cell.textContent = title;
      head.appendChild(cell);
    }
    for (const alarm of alarms) {
      const row = table.insertRow();
      row.className = "alarm-row";
      row.dataset.username = alarm.username;
      row.insertCell().textContent = alarm.username;
      row.insertCell().textContent = new Date(alarm.time * 1000).toISOString();
      row.insertCell().textContent = alarm.policy_applied;
    }
    this.root.appendChild(table);
  }
}
