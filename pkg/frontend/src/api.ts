// Typed client for the counting service. Every count arrives as a decimal
// string and is passed through untouched; nothing here ever converts a
// count to a JavaScript number.

export type Bound = "exact" | "upper" | "lower";

export interface ProgramStats {
  atoms: number;
  rules: number;
  tight: boolean;
  cycles: number;
  cycle_mode: string;
  supported_count: string;
  nnf_nodes: number;
  ccg_nodes: number;
  atom_names: string[];
  digest: string;
}

export interface TraceRow {
  depth: number;
  partial: string;
  evaluated: number;
  skipped: number;
}

export interface CountResponse {
  count: string;
  bound: Bound;
  depth: number;
  trace: TraceRow[];
  warnings: string[];
  warning?: string;
}

export interface FacetRow {
  atom: string;
  count_true: string;
  count_false: string;
  bound_true: Bound;
  bound_false: Bound;
  ratio_true: string | null;
}

export interface FacetsResponse {
  depth: number | null;
  facets: FacetRow[];
}

export interface SessionState {
  count: string;
  bound: Bound;
  assumptions: string[];
  state_digest: string;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function toError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail);
}

export class NavClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) throw await toError(response);
    return (await response.json()) as T;
  }

  loadProgram(text: string): Promise<{ session_id: string; stats: ProgramStats }> {
    return this.request("/programs", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text }),
    });
  }

  count(sessionId: string, depth: number | null, assume = ""): Promise<CountResponse> {
    const params = new URLSearchParams();
    if (assume) params.set("assume", assume);
    if (depth !== null) params.set("depth", String(depth));
    const query = params.toString();
    return this.request(`/programs/${sessionId}/count${query ? "?" + query : ""}`);
  }

  facets(sessionId: string, depth: number | null): Promise<FacetsResponse> {
    const query = depth !== null ? `?depth=${depth}` : "";
    return this.request(`/programs/${sessionId}/facets${query}`);
  }

  assume(sessionId: string, literal: string): Promise<SessionState> {
    return this.request(`/programs/${sessionId}/assume`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ literal }),
    });
  }

  undo(sessionId: string): Promise<SessionState> {
    return this.request(`/programs/${sessionId}/undo`, { method: "POST" });
  }
}
