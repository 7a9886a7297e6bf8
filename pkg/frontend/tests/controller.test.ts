import { describe, expect, it } from "vitest";

import type {
  CreateSessionResponse,
  ExpandResponse,
  ScoredResult,
  SessionState,
} from "../src/api.js";
import { ApiClient, ServiceError } from "../src/api.js";
import { SessionController, canRerank, parseGoals, rerankHint } from "../src/controller.js";

// In-memory fake honoring the service contract (status codes as ServiceError).
class FakeApi extends ApiClient {
  private judged: string[] = [];
  private iteration = 0;
  private results: ScoredResult[] = [
    { object_id: "o1", score: 1.74 },
    { object_id: "o2", score: 0.41 },
  ];

  override async createSession(goals: string[]): Promise<CreateSessionResponse> {
    if (goals.length === 0) throw new ServiceError(400, "empty_query", "no goals");
    return { session_id: "s1", results: this.results };
  }

  override async getSession(sessionId: string): Promise<SessionState> {
    if (sessionId !== "s1") throw new ServiceError(404, "unknown_session", sessionId);
    return {
      session_id: "s1",
      goals: ["g1"],
      judged: this.judged,
      method: this.iteration ? "ppf" : "none",
      iteration: this.iteration,
      results: this.results,
    };
  }

  override async markPertinent(_: string, objectIds: string[]): Promise<SessionState> {
    for (const id of objectIds) {
      if (!this.results.some((r) => r.object_id === id) && !this.judged.includes(id)) {
        throw new ServiceError(400, "unseen_object", id);
      }
      if (!this.judged.includes(id)) this.judged.push(id);
    }
    return this.getSession("s1");
  }

  override async expand(_: string, method: "prf" | "ppf", k: number): Promise<ExpandResponse> {
    if (this.judged.length === 0) {
      throw new ServiceError(409, "empty_judged_set", "mark at least one object first");
    }
    this.iteration += 1;
    this.results = this.results.filter((r) => !this.judged.includes(r.object_id));
    const added = k > 0 ? [{ goal: "g2", weight: 2.7 }] : [];
    return { added, results: this.results };
  }
}

function makeController() {
  return new SessionController(new FakeApi());
}

describe("parseGoals", () => {
  it("splits on commas and whitespace", () => {
    expect(parseGoals("g1, g2  g3,")).toEqual(["g1", "g2", "g3"]);
  });

  it("returns empty for blank input", () => {
    expect(parseGoals("   ")).toEqual([]);
  });
});

describe("SessionController", () => {
  it("starts a session and renders results in score order", async () => {
    const c = makeController();
    await c.start("g1 g2");
    expect(c.state.sessionId).toBe("s1");
    expect(c.state.results.map((r) => r.object_id)).toEqual(["o1", "o2"]);
  });

  it("rejects an empty query locally", async () => {
    const c = makeController();
    await c.start("  ");
    expect(c.state.sessionId).toBeNull();
    expect(c.state.error).toMatch(/at least one goal/);
  });

  it("re-rank is disabled until something is marked", async () => {
    const c = makeController();
    await c.start("g1");
    expect(canRerank(c.state)).toBe(false);
    expect(rerankHint(c.state)).toBe("mark at least one object");
    c.toggle("o1");
    expect(canRerank(c.state)).toBe(true);
    expect(rerankHint(c.state)).toBeNull();
  });

  it("prevents marking objects that were never shown", async () => {
    const c = makeController();
    await c.start("g1");
    c.toggle("o99");
    expect(c.state.pending).toEqual([]);
  });

  it("toggle is reversible", async () => {
    const c = makeController();
    await c.start("g1");
    c.toggle("o1");
    c.toggle("o1");
    expect(c.state.pending).toEqual([]);
  });

  it("re-rank submits marks, removes judged objects, records the round", async () => {
    const c = makeController();
    await c.start("g1");
    c.toggle("o1");
    await c.rerank();
    expect(c.state.judged).toEqual(["o1"]);
    expect(c.state.results.map((r) => r.object_id)).toEqual(["o2"]);
    expect(c.state.pending).toEqual([]);
    expect(c.state.rounds).toHaveLength(1);
    expect(c.state.rounds[0].addedGoals[0].goal).toBe("g2");
    expect(c.state.error).toBeNull();
  });

  it("surfaces service errors in the banner without losing the session", async () => {
    const c = makeController();
    await c.start("g1");
    // force the 409 by bypassing the local guard
    c.state = { ...c.state, judged: ["ghost"] };
    await c.rerank();
    expect(c.state.error).toMatch(/unseen_object|empty_judged_set/);
    expect(c.state.sessionId).toBe("s1");
  });

  it("restore rebuilds the view from the service state", async () => {
    const c = makeController();
    await c.start("g1");
    c.toggle("o1");
    await c.rerank();

    const fresh = new SessionController(new FakeApi());
    // the fake is stateless across instances, so restore against the live one
    await c.restore("s1");
    expect(c.state.judged).toEqual(["o1"]);
    expect(fresh.state.sessionId).toBeNull();
  });
});
