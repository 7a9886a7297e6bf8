// End-to-end flow against the real backend: spawn the service on a toy
// collection, then drive the UI controller through create -> mark -> PPF
// re-rank and check the rendered panels.

import { spawn, ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const here = dirname(fileURLToPath(import.meta.url));
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { SessionController } from "../src/controller.js";
import { renderResults, renderRounds } from "../src/main.js";

const PORT = 18641;
const BASE = `http://127.0.0.1:${PORT}`;

const TOY_COLLECTION = {
  format: "pertinex-v1",
  vocabulary: ["g1", "g2", "g3"],
  objects: [
    { id: "o1", occurrences: { g1: 2, g2: 1 } },
    { id: "o2", occurrences: { g1: 1 } },
    { id: "o3", occurrences: { g3: 1 } },
  ],
  queries: [{ id: "q1", goals: ["g1", "g2"] }],
  judgments: { q1: ["o1"] },
};

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const res = await fetch(`${BASE}/collection/stats`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  const dir = mkdtempSync(join(tmpdir(), "pertinex-e2e-"));
  const collection = join(dir, "toy.json");
  writeFileSync(collection, JSON.stringify(TOY_COLLECTION));
  server = spawn(
    "python3",
    ["-m", "pertinex.cli", "serve",
     "--collection", collection,
     "--listen", `127.0.0.1:${PORT}`,
     "--session-dir", join(dir, "sessions")],
    { cwd: join(here, "..", ".."), stdio: "ignore" },
  );
  await waitForServer();
}, 30000);

afterAll(() => {
  server?.kill();
});

describe("end-to-end feedback flow", () => {
  it("create -> mark -> PPF re-rank via the controller", { timeout: 30000 }, async () => {
    const controller = new SessionController(new ApiClient(BASE));

    await controller.start("g1");
    expect(controller.state.error).toBeNull();
    const shown = controller.state.results.map((r) => r.object_id);
    expect(shown).toEqual(["o1", "o2"]);

    controller.toggle("o1");
    controller.setMethod("ppf");
    await controller.rerank();
    expect(controller.state.error).toBeNull();

    // the marked object is gone from the re-ranked list (residual rule)
    const reranked = controller.state.results.map((r) => r.object_id);
    expect(reranked).not.toContain("o1");

    // added-goals panel: at most 10 goals, all with finite weights
    const round = controller.state.rounds[0];
    expect(round.method).toBe("ppf");
    expect(round.addedGoals.length).toBeGreaterThan(0);
    expect(round.addedGoals.length).toBeLessThanOrEqual(10);
    for (const g of round.addedGoals) {
      expect(Number.isFinite(g.weight)).toBe(true);
    }
    expect(renderRounds(controller.state)).toContain("Round 1 (PPF)");
    expect(renderResults(controller.state)).not.toContain("o1");
  });

  it("page reload reconstructs the view from the service", { timeout: 30000 }, async () => {
    const first = new SessionController(new ApiClient(BASE));
    await first.start("g1");
    first.toggle("o1");
    await first.rerank();

    const reloaded = new SessionController(new ApiClient(BASE));
    await reloaded.restore(first.state.sessionId!);
    expect(reloaded.state.judged).toEqual(["o1"]);
    expect(reloaded.state.results.map((r) => r.object_id))
      .toEqual(first.state.results.map((r) => r.object_id));
  });
});
