import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, resolveBaseUrl } from "../src/api.js";
import { mockFetch, problemDoc } from "./helpers.js";

const BASE = "http://api.test:8080";

describe("ApiClient paths", () => {
  it("posts new problems with typeId and input", async () => {
    const { requests, fetchFn } = mockFetch(() => ({
      status: 201,
      payload: problemDoc({ typeId: "tsp" }),
    }));
    const client = new ApiClient(BASE, fetchFn);
    const doc = await client.createProblem("tsp", "NAME: x");
    expect(doc.typeId).toBe("tsp");
    expect(requests).toHaveLength(1);
    expect(requests[0]).toMatchObject({
      url: `${BASE}/problems/tsp`,
      method: "POST",
      body: { typeId: "tsp", input: "NAME: x" },
    });
  });

  it("addresses one problem by type and id", async () => {
    const { requests, fetchFn } = mockFetch(() => ({ status: 200, payload: problemDoc() }));
    const client = new ApiClient(BASE, fetchFn);
    await client.getProblem("cluster-vrp", "abc-123");
    expect(requests[0].url).toBe(`${BASE}/problems/cluster-vrp/abc-123`);
    expect(requests[0].method).toBe("GET");
  });

  it("patches solver assignment and lifecycle in one request", async () => {
    const { requests, fetchFn } = mockFetch(() => ({ status: 200, payload: problemDoc() }));
    const client = new ApiClient(BASE, fetchFn);
    await client.patchProblem("tsp", "abc", {
      solverId: "tsp.exact.held-karp",
      solverSettings: {},
      state: "SOLVING",
    });
    expect(requests[0].method).toBe("PATCH");
    expect(requests[0].url).toBe(`${BASE}/problems/tsp/abc`);
    expect(requests[0].body).toEqual({
      solverId: "tsp.exact.held-karp",
      solverSettings: {},
      state: "SOLVING",
    });
  });

  it("covers the solver catalog routes", async () => {
    const { requests, fetchFn } = mockFetch(() => ({ status: 200, payload: [] }));
    const client = new ApiClient(BASE, fetchFn);
    await client.listProblems("qubo");
    await client.listSolvers("qubo");
    await client.solverSettings("qubo", "qubo.sampler.quantum");
    await client.solverSubRoutines("cluster-vrp", "vrp.clusterer.two-phase");
    expect(requests.map((r) => r.url)).toEqual([
      `${BASE}/problems/qubo`,
      `${BASE}/solvers/qubo`,
      `${BASE}/solvers/qubo/qubo.sampler.quantum/settings`,
      `${BASE}/solvers/cluster-vrp/vrp.clusterer.two-phase/sub-routines`,
    ]);
    expect(requests.every((r) => r.method === "GET")).toBe(true);
  });

  it("covers the bound routes", async () => {
    const { requests, fetchFn } = mockFetch(() => ({
      status: 200,
      payload: { boundType: "LOWER", value: 1.0, method: "spanning-tree" },
    }));
    const client = new ApiClient(BASE, fetchFn);
    await client.bound("tsp", "abc");
    await client.compareBound("tsp", "abc");
    expect(requests.map((r) => r.url)).toEqual([
      `${BASE}/problems/tsp/abc/bound`,
      `${BASE}/problems/tsp/abc/bound/compare`,
    ]);
  });

  it("strips trailing slashes from the base url", async () => {
    const { requests, fetchFn } = mockFetch(() => ({ status: 200, payload: [] }));
    const client = new ApiClient(`${BASE}///`, fetchFn);
    await client.listSolvers("tsp");
    expect(requests[0].url).toBe(`${BASE}/solvers/tsp`);
  });
});

describe("ApiClient errors and logging", () => {
  it("raises ApiError carrying the server detail string", async () => {
    const { fetchFn } = mockFetch(() => ({
      status: 409,
      payload: { detail: "problem is already solving" },
    }));
    const client = new ApiClient(BASE, fetchFn);
    const failure = await client
      .patchProblem("tsp", "abc", { state: "SOLVING" })
      .then(() => null)
      .catch((error: unknown) => error);
    expect(failure).toBeInstanceOf(ApiError);
    expect((failure as ApiError).status).toBe(409);
    expect((failure as ApiError).detail).toBe("problem is already solving");
  });

  it("serializes structured validation details", async () => {
    const detail = [{ loc: ["body", "state"], msg: "invalid state" }];
    const { fetchFn } = mockFetch(() => ({ status: 422, payload: { detail } }));
    const client = new ApiClient(BASE, fetchFn);
    const failure = await client.getProblem("tsp", "abc").catch((error: unknown) => error);
    expect((failure as ApiError).detail).toBe(JSON.stringify(detail));
  });

  it("logs every request with its status, failures included", async () => {
    let calls = 0;
    const { fetchFn } = mockFetch(() => {
      calls += 1;
      return calls === 1
        ? { status: 200, payload: problemDoc() }
        : { status: 409, payload: { detail: "nope" } };
    });
    const client = new ApiClient(BASE, fetchFn);
    await client.getProblem("tsp", "a");
    await client.patchProblem("tsp", "a", { state: "SOLVING" }).catch(() => undefined);
    expect(client.log).toEqual([
      { method: "GET", path: "/problems/tsp/a", status: 200 },
      { method: "PATCH", path: "/problems/tsp/a", status: 409 },
    ]);
  });
});

describe("resolveBaseUrl", () => {
  it("falls back to the packaged default", () => {
    expect(resolveBaseUrl()).toBe("http://localhost:8080");
    expect(resolveBaseUrl("http://elsewhere:1")).toBe("http://elsewhere:1");
  });

  it("prefers the api query parameter", () => {
    window.history.replaceState(null, "", "/?api=http://override:9000");
    try {
      expect(resolveBaseUrl()).toBe("http://override:9000");
    } finally {
      window.history.replaceState(null, "", "/");
    }
  });
});
