import type { ProblemDocument, SolutionDocument } from "../src/types.js";

export interface RecordedRequest {
  url: string;
  method: string;
  body: unknown;
}

export interface MockResponse {
  status: number;
  payload: unknown;
}

export type RouteHandler = (req: RecordedRequest) => MockResponse;

/**
 * fetch stand-in that records every request and answers from `handler`.
 * Only the parts of the Response surface the client touches are faked.
 */
export function mockFetch(handler: RouteHandler): {
  requests: RecordedRequest[];
  fetchFn: typeof fetch;
} {
  const requests: RecordedRequest[] = [];
  const fn = async (input: RequestInfo | URL, init?: RequestInit) => {
    const request: RecordedRequest = {
      url: String(input),
      method: init?.method ?? "GET",
      body: init?.body === undefined ? undefined : JSON.parse(String(init.body)),
    };
    requests.push(request);
    const { status, payload } = handler(request);
    return {
      ok: status >= 200 && status < 300,
      status,
      json: async () => payload,
    } as Response;
  };
  return { requests, fetchFn: fn as typeof fetch };
}

export function problemDoc(overrides: Partial<ProblemDocument> = {}): ProblemDocument {
  return {
    id: "p-root",
    typeId: "cluster-vrp",
    input: "instance text",
    state: "NEEDS_CONFIGURATION",
    solverId: null,
    solverSettings: {},
    solution: null,
    subProblems: [],
    ...overrides,
  };
}

export function solvedSolution(overrides: Partial<SolutionDocument> = {}): SolutionDocument {
  return {
    status: "SOLVED",
    result: "2 3\n4 5\nLENGTH 80.0\n",
    objectiveValue: 80.0,
    metadata: { routeCount: "2" },
    ...overrides,
  };
}
