import type {
  BoundComparisonDocument,
  BoundDocument,
  PatchProblemBody,
  ProblemDocument,
  ProblemSummary,
  SettingDocument,
  SolverSummary,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
    this.name = "ApiError";
  }
}

export interface RequestLogEntry {
  method: string;
  path: string;
  status: number;
}

function detailOf(payload: unknown): string {
  if (payload && typeof payload === "object" && "detail" in payload) {
    const detail = (payload as { detail: unknown }).detail;
    return typeof detail === "string" ? detail : JSON.stringify(detail);
  }
  return JSON.stringify(payload);
}

/**
 * Thin typed client over the public HTTP API. Every request is recorded in
 * `log`, so a journey can assert afterwards that the UI never provoked a
 * lifecycle rejection.
 */
export class ApiClient {
  readonly log: RequestLogEntry[] = [];
  private readonly fetchFn: typeof fetch;

  constructor(
    readonly baseUrl: string,
    fetchFn?: typeof fetch,
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? globalThis.fetch.bind(globalThis);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    this.log.push({ method, path, status: response.status });
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      throw new ApiError(response.status, detailOf(payload));
    }
    return payload as T;
  }

  listProblems(typeId: string): Promise<ProblemSummary[]> {
    return this.request("GET", `/problems/${typeId}`);
  }

  createProblem(typeId: string, input: string): Promise<ProblemDocument> {
    return this.request("POST", `/problems/${typeId}`, { typeId, input });
  }

  getProblem(typeId: string, problemId: string): Promise<ProblemDocument> {
    return this.request("GET", `/problems/${typeId}/${problemId}`);
  }

  patchProblem(
    typeId: string,
    problemId: string,
    body: PatchProblemBody,
  ): Promise<ProblemDocument> {
    return this.request("PATCH", `/problems/${typeId}/${problemId}`, body);
  }

  listSolvers(typeId: string): Promise<SolverSummary[]> {
    return this.request("GET", `/solvers/${typeId}`);
  }

  solverSettings(typeId: string, solverId: string): Promise<SettingDocument[]> {
    return this.request("GET", `/solvers/${typeId}/${solverId}/settings`);
  }

  solverSubRoutines(typeId: string, solverId: string): Promise<string[]> {
    return this.request("GET", `/solvers/${typeId}/${solverId}/sub-routines`);
  }

  bound(typeId: string, problemId: string): Promise<BoundDocument> {
    return this.request("GET", `/problems/${typeId}/${problemId}/bound`);
  }

  compareBound(typeId: string, problemId: string): Promise<BoundComparisonDocument> {
    return this.request("GET", `/problems/${typeId}/${problemId}/bound/compare`);
  }
}

/** Base URL priority: ?api= query parameter, then build-time default. */
export function resolveBaseUrl(defaultUrl = "http://localhost:8080"): string {
  if (typeof window !== "undefined" && window.location) {
    const fromQuery = new URLSearchParams(window.location.search).get("api");
    if (fromQuery) {
      return fromQuery;
    }
  }
  return defaultUrl;
}
