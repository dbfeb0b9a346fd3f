/** Boots the real session service for the integration tests. */

import { spawn, type ChildProcess } from "node:child_process";
import { BASE } from "./serverAddress";

const BOOT = `
import uvicorn
from tiltkit.server import create_app
uvicorn.run(create_app(), host="127.0.0.1", port=${new URL(BASE).port}, log_level="warning")
`;

let child: ChildProcess | null = null;

async function waitForHealth(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/api/v1/health`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error(`session service did not come up at ${BASE}`);
}

export async function setup(): Promise<void> {
  child = spawn("python3", ["-c", BOOT], { stdio: ["ignore", "inherit", "inherit"] });
  child.on("exit", (code) => {
    if (code !== null && code !== 0) {
      console.error(`session service exited with code ${code}`);
    }
  });
  await waitForHealth(30000);
}

export async function teardown(): Promise<void> {
  if (!child) return;
  const exited = new Promise((resolve) => child!.once("exit", resolve));
  child.kill("SIGTERM");
  await Promise.race([exited, new Promise((resolve) => setTimeout(resolve, 3000))]);
  if (child.exitCode === null) child.kill("SIGKILL");
}
