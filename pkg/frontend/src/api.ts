/** Typed client for the trust-lattice service.
 *
 * Every method unwraps the {engine_version, bundle_hash, result|error}
 * envelope and throws ApiError on non-2xx responses. The fetch function is
 * injectable so tests can intercept every request the workbench makes.
 */

import type {
  Envelope,
  LatticePayload,
  LatticeSummary,
  NudgesPayload,
  RecommendPayload,
  FootprintPayload,
  SessionEventBody,
  WhatIfOverrides,
  WhatIfPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface ApiResponse<T> {
  result: T;
  engineVersion: string;
  bundleHash: string;
}

export class ApiClient {
  constructor(
    private base: string = "",
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<ApiResponse<T>> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const doc = (await response.json()) as Envelope<T>;
    if (!response.ok || doc.error) {
      throw new ApiError(response.status, doc.error?.message ?? `HTTP ${response.status}`);
    }
    return {
      result: doc.result as T,
      engineVersion: doc.engine_version,
      bundleHash: doc.bundle_hash,
    };
  }

  listLattices(): Promise<ApiResponse<LatticeSummary[]>> {
    return this.request("GET", "/api/lattices");
  }

  getLattice(latticeId: string): Promise<ApiResponse<LatticePayload>> {
    return this.request("GET", `/api/lattices/${encodeURIComponent(latticeId)}`);
  }

  whatIf(latticeId: string, overrides: WhatIfOverrides): Promise<ApiResponse<WhatIfPayload>> {
    return this.request("POST", `/api/lattices/${encodeURIComponent(latticeId)}/evaluate`, overrides);
  }

  nudges(sessionId: string): Promise<ApiResponse<NudgesPayload>> {
    return this.request("GET", `/api/sessions/${encodeURIComponent(sessionId)}/nudges`);
  }

  appendEvents(sessionId: string, events: SessionEventBody[]): Promise<ApiResponse<unknown>> {
    return this.request("POST", `/api/sessions/${encodeURIComponent(sessionId)}/events`, { events });
  }

  recommend(topic: string, k = 3, minReputation = 0.5): Promise<ApiResponse<RecommendPayload>> {
    const q = `topic=${encodeURIComponent(topic)}&k=${k}&min_reputation=${minReputation}`;
    return this.request("GET", `/api/recommend?${q}`);
  }

  footprint(text: string): Promise<ApiResponse<FootprintPayload>> {
    return this.request("GET", `/api/footprint?text=${encodeURIComponent(text)}`);
  }
}
