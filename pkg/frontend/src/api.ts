// Typed client for the clustermod session service.  Every response body is
// kept verbatim in `last` so the UI (and its tests) can check that displayed
// numbers are service fields, never locally computed values.

export type Label = number | string;

export interface SeedDoc {
  vertices: Label[];
  frozen: Label[];
  epsilon: string[][];
  d: number[];
}

export interface Arrow {
  from: Label;
  to: Label;
  weight: string;
}

export interface QuiverDoc {
  vertices: Label[];
  frozen: Label[];
  arrows: Arrow[];
}

export interface SessionState {
  session: string;
  seed: SeedDoc;
  quiver: QuiverDoc;
  word: string;
  a_values: string[];
  x_values: string[];
  is_mapping_class: boolean;
  undo_depth: number;
}

export interface InvariantSetDoc {
  power: number;
  vertices: Label[];
  pointwise: boolean;
}

export interface ReportDoc {
  verdict: string;
  order: number | null;
  proper: boolean | null;
  note: string;
  text: string;
  invariant_sets: InvariantSetDoc[];
  fixed_points: Record<string, string[] | null>;
  tropical_rays: Record<string, string[] | null>;
  divergence: { step: number; max_log: string; threshold: string; window: number[] } | null;
  budgets: Record<string, number>;
  epsilon_diff?: { i: Label; j: Label; expected: string; got: string }[];
  error?: string;
}

export interface OrbitDoc {
  flavor: string;
  steps: number;
  orbit: { step: number; coords: string[] }[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: Record<string, unknown>,
  ) {
    super(String(body["error"] ?? status));
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  /** raw parsed JSON of the most recent response per endpoint name */
  last: Record<string, unknown> = {};
  requestCount = 0;

  constructor(
    private base: string,
    private fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async call<T>(name: string, method: string, path: string, body?: unknown): Promise<T> {
    this.requestCount += 1;
    const response = await this.fetchImpl(this.base + path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const parsed = (await response.json()) as Record<string, unknown>;
    this.last[name] = parsed;
    if (!response.ok) {
      throw new ApiError(response.status, parsed);
    }
    return parsed as T;
  }

  createSession(seed: { catalog: string } | SeedDoc): Promise<{ session: string; state: SessionState }> {
    return this.call("createSession", "POST", "/api/session", seed);
  }

  state(id: string): Promise<SessionState> {
    return this.call("state", "GET", `/api/session/${id}/state`);
  }

  mutate(id: string, vertex: Label): Promise<SessionState> {
    return this.call("mutate", "POST", `/api/session/${id}/mutate`, { vertex });
  }

  permute(id: string, cycles: string): Promise<SessionState> {
    return this.call("permute", "POST", `/api/session/${id}/permute`, { cycles });
  }

  undo(id: string): Promise<SessionState> {
    return this.call("undo", "POST", `/api/session/${id}/undo`);
  }

  classify(id: string, budgets?: Record<string, number>): Promise<ReportDoc> {
    return this.call("classify", "POST", `/api/session/${id}/classify`, budgets ? { budgets } : {});
  }

  orbit(id: string, flavor: "a" | "x" | "trop", steps: number): Promise<OrbitDoc> {
    return this.call("orbit", "GET", `/api/session/${id}/orbit?flavor=${flavor}&steps=${steps}`);
  }

  catalog(): Promise<{ names: string[] }> {
    return this.call("catalog", "GET", "/api/catalog");
  }
}
