// Session controller: the UI driver behind the views. Holds the current view
// state as a pure function of the service's session state plus in-flight form
// inputs (pending checkboxes, method/k selectors), and exposes the actions the
// page wires to buttons.

import { AddedGoal, ApiClient, ScoredResult, ServiceError, SessionState } from "./api.js";

export interface Round {
  iteration: number;
  method: string;
  originalGoals: string[];
  addedGoals: AddedGoal[];
}

export interface ViewState {
  sessionId: string | null;
  goals: string[];
  results: ScoredResult[];
  judged: string[];
  pending: string[]; // checked but not yet submitted with a re-rank
  method: "prf" | "ppf";
  k: number;
  rounds: Round[];
  error: string | null;
  busy: boolean;
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    goals: [],
    results: [],
    judged: [],
    pending: [],
    method: "ppf",
    k: 10,
    rounds: [],
    error: null,
    busy: false,
  };
}

export function canRerank(state: ViewState): boolean {
  return state.sessionId !== null && (state.judged.length > 0 || state.pending.length > 0);
}

export function rerankHint(state: ViewState): string | null {
  return canRerank(state) ? null : "mark at least one object";
}

export function parseGoals(input: string): string[] {
  return input
    .split(/[,\s]+/)
    .map((g) => g.trim())
    .filter((g) => g.length > 0);
}

export class SessionController {
  state: ViewState = initialState();

  constructor(
    private api: ApiClient,
    private onChange: (state: ViewState) => void = () => {},
  ) {}

  private update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    this.onChange(this.state);
  }

  private fail(err: unknown): void {
    const message = err instanceof ServiceError ? `${err.code}: ${err.detail}` : String(err);
    this.update({ error: message, busy: false });
  }

  async start(goalsInput: string): Promise<void> {
    const goals = parseGoals(goalsInput);
    if (goals.length === 0) {
      this.update({ error: "enter at least one goal" });
      return;
    }
    this.update({ busy: true, error: null });
    try {
      const created = await this.api.createSession(goals);
      this.state = initialState();
      this.update({
        sessionId: created.session_id,
        goals,
        results: created.results,
        busy: false,
      });
    } catch (err) {
      this.fail(err);
    }
  }

  // Reconstruct the view from the service after a page reload.
  async restore(sessionId: string): Promise<void> {
    this.update({ busy: true, error: null });
    try {
      const session = await this.api.getSession(sessionId);
      this.update({
        sessionId: session.session_id,
        goals: session.goals,
        results: session.results,
        judged: session.judged,
        pending: [],
        rounds: roundsFromSession(session),
        busy: false,
      });
    } catch (err) {
      this.fail(err);
    }
  }

  toggle(objectId: string): void {
    // Only objects currently listed can be marked; already-judged ones stay judged.
    if (this.state.judged.includes(objectId)) return;
    if (!this.state.results.some((r) => r.object_id === objectId)) return;
    const pending = this.state.pending.includes(objectId)
      ? this.state.pending.filter((id) => id !== objectId)
      : [...this.state.pending, objectId];
    this.update({ pending });
  }

  setMethod(method: "prf" | "ppf"): void {
    this.update({ method });
  }

  setK(k: number): void {
    this.update({ k: Math.max(0, Math.floor(k)) });
  }

  async rerank(): Promise<void> {
    const { sessionId, pending, method, k } = this.state;
    if (sessionId === null || !canRerank(this.state)) {
      this.update({ error: "mark at least one object" });
      return;
    }
    this.update({ busy: true, error: null });
    try {
      if (pending.length > 0) {
        await this.api.markPertinent(sessionId, pending);
      }
      const expanded = await this.api.expand(sessionId, method, k);
      const session = await this.api.getSession(sessionId);
      this.update({
        results: expanded.results,
        judged: session.judged,
        pending: [],
        rounds: [
          ...this.state.rounds,
          {
            iteration: session.iteration,
            method,
            originalGoals: this.state.goals,
            addedGoals: expanded.added,
          },
        ],
        busy: false,
      });
    } catch (err) {
      this.fail(err);
    }
  }
}

function roundsFromSession(session: SessionState): Round[] {
  if (!session.expanded || session.iteration === 0) return [];
  // only the latest round is recoverable from the service state
  return [
    {
      iteration: session.iteration,
      method: session.method,
      originalGoals: session.expanded.original,
      addedGoals: session.expanded.added,
    },
  ];
}
