/** Typed fetch client for the /api/v1 session service. */

export interface BackendSpec {
  kind: "coh" | "dynkin";
  weights?: string;
  quiver?: string;
}

export interface HistoryStep {
  index: number;
  out: string;
  into: string;
}

export interface SessionState {
  id: string;
  backend: BackendSpec;
  key: string;
  rank: number;
  elements: string[];
  matrix: number[][];
  history: HistoryStep[];
  exchanged?: HistoryStep;
}

export interface NeighborhoodNode {
  key: string;
  elements: string[];
}

export interface NeighborhoodEdge {
  a: string;
  b: string;
  out: string;
  in: string;
}

export interface NeighborhoodDoc {
  center: string;
  nodes: NeighborhoodNode[];
  edges: NeighborhoodEdge[];
  frontier: string[];
}

export interface ReachLink {
  a: string;
  b: string;
  ext1: [number, number];
}

export interface ReachDoc {
  chain: string[];
  edges: { a: string; b: string }[];
  links: ReachLink[];
  ok: boolean;
}

export interface ErrorDetail {
  error: string;
  detail?: unknown;
  index?: number;
  window?: string | null;
  [key: string]: unknown;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: ErrorDetail,
  ) {
    super(`${status}: ${detail.error ?? "request failed"}`);
  }
}

export class ApiClient {
  constructor(private base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      let detail: ErrorDetail = { error: `http_${response.status}` };
      try {
        const body = await response.json();
        if (body && typeof body.detail === "object") detail = body.detail;
        else if (body && typeof body.detail === "string")
          detail = { error: "error", detail: body.detail };
      } catch {
        // non-JSON error body, keep the status-only detail
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  createSession(backend: BackendSpec, window?: string): Promise<SessionState> {
    return this.request<SessionState>("/api/v1/sessions", {
      method: "POST",
      body: JSON.stringify(window ? { backend, window } : { backend }),
    });
  }

  getState(id: string): Promise<SessionState> {
    return this.request<SessionState>(`/api/v1/sessions/${id}`);
  }

  mutate(id: string, index: number): Promise<SessionState> {
    return this.request<SessionState>(`/api/v1/sessions/${id}/mutate`, {
      method: "POST",
      body: JSON.stringify({ index }),
    });
  }

  undo(id: string): Promise<SessionState> {
    return this.request<SessionState>(`/api/v1/sessions/${id}/undo`, {
      method: "POST",
    });
  }

  neighborhood(id: string, depth = 1, budget = 400): Promise<NeighborhoodDoc> {
    return this.request<NeighborhoodDoc>(
      `/api/v1/sessions/${id}/neighborhood?depth=${depth}&budget=${budget}`,
    );
  }

  reach(id: string, m: string, n: string): Promise<ReachDoc> {
    return this.request<ReachDoc>(`/api/v1/sessions/${id}/reach`, {
      method: "POST",
      body: JSON.stringify({ m, n }),
    });
  }

  async exportView(id: string, format: "json" | "dot", depth = 2): Promise<string> {
    const response = await fetch(
      `${this.base}/api/v1/sessions/${id}/export?format=${format}&depth=${depth}`,
    );
    if (!response.ok) {
      throw new ApiError(response.status, { error: `http_${response.status}` });
    }
    return response.text();
  }
}
