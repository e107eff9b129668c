// Spawns the real backend (honeyChecker + auth server) for the
// server-backed suites, on free ports with a throwaway data directory.

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync, readFileSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface Backend {
  baseUrl: string;
  dataDir: string;
  adminToken: string;
  stop: () => void;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.listen(0, "127.0.0.1", () => {
      const address = srv.address();
      if (address && typeof address === "object") {
        const port = address.port;
        srv.close(() => resolve(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

async function waitFor(probe: () => Promise<boolean>, what: string): Promise<void> {
  const deadline = Date.now() + 30_000;
  while (Date.now() < deadline) {
    if (await probe().catch(() => false)) return;
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error(`${what} did not come up`);
}

export async function startBackend(): Promise<Backend> {
  const dataDir = mkdtempSync(join(tmpdir(), "hbat-ui-"));
  const authPort = await freePort();
  const checkerPort = await freePort();
  const adminToken = "ui-admin-token";
  const config = {
    data_dir: join(dataDir, "auth"),
    policy: "light",
    admin_token: adminToken,
    auth: { host: "127.0.0.1", port: authPort },
    honeychecker: { host: "127.0.0.1", port: checkerPort },
  };
  const hcConfig = {
    data_dir: join(dataDir, "hc"),
    honeychecker: { host: "127.0.0.1", port: checkerPort },
  };
  const cfgPath = join(dataDir, "config.json");
  const hcCfgPath = join(dataDir, "hc-config.json");
  writeFileSync(cfgPath, JSON.stringify(config));
  writeFileSync(hcCfgPath, JSON.stringify(hcConfig));

  const procs: ChildProcess[] = [];
  const spawnPy = (...args: string[]) => {
    const child = spawn("python3", ["-m", "hbat.cli", ...args], {
      stdio: ["ignore", "pipe", "pipe"],
    });
    procs.push(child);
    return child;
  };
  spawnPy("serve", "honeychecker", "--config", hcCfgPath);
  spawnPy("serve", "auth", "--config", cfgPath);

  const baseUrl = `http://127.0.0.1:${authPort}`;
  await waitFor(async () => (await fetch(`${baseUrl}/healthz`)).ok, "auth server");

  return {
    baseUrl,
    dataDir,
    adminToken,
    stop: () => procs.forEach((p) => p.kill("SIGTERM")),
  };
}

/** Read the breached password file the way an attacker would. */
export function sweetwordsFor(backend: Backend, username: string): string[] {
  const content = readFileSync(join(backend.dataDir, "auth", "passwords.tsv"), "utf-8");
  for (const line of content.split("\n")) {
    if (!line) continue;
    const [user, _scheme, _k, words] = line.split("\t");
    if (user === username) return words.split("|");
  }
  throw new Error(`no record for ${username}`);
}
