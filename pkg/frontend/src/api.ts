// Typed client for the feedback service. Every number shown in the UI comes
// from these endpoints; there is no client-side scoring.

export interface ScoredResult {
  object_id: string;
  score: number;
}

export interface AddedGoal {
  goal: string;
  weight: number;
}

export interface CreateSessionResponse {
  session_id: string;
  results: ScoredResult[];
}

export interface SessionState {
  session_id: string;
  goals: string[];
  judged: string[];
  method: string;
  iteration: number;
  results: ScoredResult[];
  expanded?: {
    original: string[];
    added: AddedGoal[];
  };
}

export interface ExpandResponse {
  added: AddedGoal[];
  results: ScoredResult[];
}

export interface CollectionStats {
  object_count: number;
  query_count: number;
  vocabulary_size: number;
  avg_goals_per_query: number;
  avg_goals_per_object: number;
}

export class ServiceError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(base + path, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  const body = await res.json();
  if (!res.ok) {
    throw new ServiceError(res.status, body.error ?? "unknown", body.detail ?? "");
  }
  return body as T;
}

export class ApiClient {
  constructor(private base: string = "") {}

  createSession(goals: string[]): Promise<CreateSessionResponse> {
    return request(this.base, "/sessions", {
      method: "POST",
      body: JSON.stringify({ goals }),
    });
  }

  getSession(sessionId: string): Promise<SessionState> {
    return request(this.base, `/sessions/${sessionId}`);
  }

  markPertinent(sessionId: string, objectIds: string[]): Promise<SessionState> {
    return request(this.base, `/sessions/${sessionId}/feedback`, {
      method: "POST",
      body: JSON.stringify({ object_ids: objectIds }),
    });
  }

  expand(sessionId: string, method: "prf" | "ppf", k: number): Promise<ExpandResponse> {
    return request(this.base, `/sessions/${sessionId}/expand`, {
      method: "POST",
      body: JSON.stringify({ method, k }),
    });
  }

  collectionStats(): Promise<CollectionStats> {
    return request(this.base, "/collection/stats");
  }
}
