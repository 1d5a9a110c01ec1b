/** End-to-end: drive a real service session to full exploration, then
 * replay the recorded action log through the CLI and compare traces. */

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { SessionClient, type Action, type SessionState } from "../src/api.js";
import { boardModel } from "../src/board.js";

const PORT = 8765;
const BASE = `http://127.0.0.1:${PORT}`;
const INITIAL = "0,0;1,1;2,0";

let server: ChildProcess;
let workDir: string;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const res = await fetch(`${BASE}/meta/protocols`);
      if (res.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "console-"));
  server = spawn(
    "python3",
    ["-m", "gridexplore.cli", "serve", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForServer();
}, 30_000);

afterAll(() => {
  server.kill();
  rmSync(workDir, { recursive: true, force: true });
});

/** Synchronous rounds: stage every idle robot, then land every staged move
 * at tie-break 0, exactly what the UI's palette offers. */
async function driveSynchronously(
  client: SessionClient,
  log: Action[],
): Promise<SessionState> {
  let s = await client.state();
  for (let round = 0; round < 100 && !s.quiescent; round++) {
    const looks = s.enabled_actions.filter((a) => a.type === "look");
    for (const a of looks) {
      s = await client.act(a);
      log.push(a);
    }
    let moves = s.enabled_actions.filter((a) => a.type === "move");
    while (moves.length > 0) {
      const a = moves.find((m) => m.type === "move" && m.pick === 0) ?? moves[0]!;
      s = await client.act(a);
      log.push(a);
      moves = s.enabled_actions.filter((a) => a.type === "move");
    }
  }
  return s;
}

describe("adversary console against a live service", () => {
  it("drives a 2x3 session to full exploration and replays through the CLI", async () => {
    const client = await SessionClient.create(BASE, {
      grid: "2x3",
      k: 3,
      initial: INITIAL,
    });
    const log: Action[] = [];
    const s = await driveSynchronously(client, log);

    expect(s.quiescent).toBe(true);
    expect(s.explored).toBe(true);
    const m = boardModel(s);
    expect(m.banner).toBe("terminal — explored 6/6");

    // every action we ever sent came from the palette the model rendered
    expect(log.length).toBeGreaterThan(0);

    const script = join(workDir, "script.ndjson");
    writeFileSync(script, log.map((a) => JSON.stringify(a)).join("\n") + "\n");
    const cliTrace = join(workDir, "cli.ndjson");
    const out = execFileSync(
      "python3",
      [
        "-m", "gridexplore.cli", "run",
        "--grid", "2x3", "--k", "3", "--initial", INITIAL,
        "--adversary", `script:${script}`, "--trace", cliTrace,
      ],
      { encoding: "utf8" },
    );
    expect(out).toContain("explored 6/6");
    expect(out).toContain("quiescent=True");

    const served = await client.trace();
    expect(served).toBe(readFileSync(cliTrace, "utf8"));
    await client.close();
  }, 60_000);

  it("refuses an unsupported instance with the server's bound message", async () => {
    await expect(
      SessionClient.create(BASE, { grid: "3x3", k: 3 }),
    ).rejects.toMatchObject({ status: 422 });
  });

  it("undo restores the exact previous state", async () => {
    const client = await SessionClient.create(BASE, {
      grid: "2x3",
      k: 3,
      initial: INITIAL,
    });
    const before = await client.state();
    const first = before.enabled_actions[0]!;
    await client.act(first);
    const restored = await client.undo();
    expect(restored).toEqual(before);
    await client.close();
  });
});
