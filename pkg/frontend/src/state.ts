// Session store: one in-flight action at a time, facet refreshes tagged
// with sequence numbers so stale responses are dropped.

import {
  ApiError,
  Bound,
  FacetRow,
  NavClient,
  ProgramStats,
  TraceRow,
} from "./api.js";

export interface ViewState {
  sessionId: string | null;
  stats: ProgramStats | null;
  depth: number | null; // null = full depth
  trail: string[];
  count: string | null;
  bound: Bound | null;
  warning: string | null;
  trace: TraceRow[];
  facets: FacetRow[];
  facetsPending: boolean;
  sortByRatio: boolean;
  error: string | null; // inline diagnostics (parse errors etc.)
  toast: string | null; // transient conflict message
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    stats: null,
    depth: null,
    trail: [],
    count: null,
    bound: null,
    warning: null,
    trace: [],
    facets: [],
    facetsPending: false,
    sortByRatio: true,
    error: null,
    toast: null,
  };
}

export type Listener = (state: ViewState) => void;

export class Store {
  state: ViewState = initialState();
  private listeners: Listener[] = [];
  private queue: Promise<unknown> = Promise.resolve();
  private facetSeq = 0;

  constructor(private client: NavClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  private update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    this.emit();
  }

  /** Serialize actions: each starts after the previous one settled. */
  private enqueue<T>(action: () => Promise<T>): Promise<T> {
    const next = this.queue.then(action, action);
    this.queue = next.catch(() => undefined);
    return next;
  }

  loadProgram(text: string): Promise<void> {
    return this.enqueue(async () => {
      this.update({ error: null, toast: null });
      try {
        const loaded = await this.client.loadProgram(text);
        this.update({
          sessionId: loaded.session_id,
          stats: loaded.stats,
          trail: [],
          depth: null,
          facets: [],
        });
      } catch (err) {
        this.update({
          sessionId: null,
          stats: null,
          count: null,
          bound: null,
          error: err instanceof ApiError ? err.message : String(err),
        });
        return;
      }
      await this.refreshCount();
      await this.refreshFacets();
    });
  }

  setDepth(depth: number | null): Promise<void> {
    return this.enqueue(async () => {
      this.update({ depth });
      await this.refreshCount();
      await this.refreshFacets();
    });
  }

  toggleAssumption(atom: string, positive: boolean): Promise<void> {
    return this.enqueue(async () => {
      if (!this.state.sessionId) return;
      const literal = positive ? atom : `-${atom}`;
      try {
        const session = await this.client.assume(this.state.sessionId, literal);
        this.update({ trail: session.assumptions, toast: null });
      } catch (err) {
        if (err instanceof ApiError && err.status === 409) {
          this.update({ toast: `conflict: ${literal} contradicts the trail` });
          return; // state unchanged
        }
        throw err;
      }
      await this.refreshCount();
      await this.refreshFacets();
    });
  }

  /** Undo the last `steps` assumptions (breadcrumb click = several pops). */
  undo(steps = 1): Promise<void> {
    return this.enqueue(async () => {
      if (!this.state.sessionId) return;
      let trail = this.state.trail;
      for (let i = 0; i < steps && trail.length > 0; i++) {
        const session = await this.client.undo(this.state.sessionId);
        trail = session.assumptions;
      }
      this.update({ trail, toast: null });
      await this.refreshCount();
      await this.refreshFacets();
    });
  }

  setSortByRatio(enabled: boolean): void {
    this.update({ sortByRatio: enabled });
  }

  /** Displayed count always comes from one /count response at the current depth. */
  private async refreshCount(): Promise<void> {
    if (!this.state.sessionId) return;
    const response = await this.client.count(this.state.sessionId, this.state.depth);
    this.update({
      count: response.count,
      bound: response.bound,
      trace: response.trace,
      warning: response.warning ?? null,
    });
  }

  private async refreshFacets(): Promise<void> {
    if (!this.state.sessionId) return;
    const seq = ++this.facetSeq;
    this.update({ facetsPending: true });
    const response = await this.client.facets(this.state.sessionId, this.state.depth);
    if (seq !== this.facetSeq) return; // a newer refresh superseded this one
    this.update({ facets: response.facets, facetsPending: false });
  }
}
