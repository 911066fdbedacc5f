import { describe, expect, it } from "vitest";

import { renderTree, type TreeHandlers } from "../src/configurator.js";
import type { NodeUiState } from "../src/controller.js";
import { ProblemStore } from "../src/store.js";
import { buildTree, isConfigurable, isTerminal, walk } from "../src/tree.js";
import { problemDoc, solvedSolution } from "./helpers.js";

const noopHandlers: TreeHandlers = {
  onSolverChosen: () => undefined,
  onSubmit: () => undefined,
  onDraftEdit: () => undefined,
};

function uiStates(overrides: Record<string, Partial<NodeUiState>> = {}): (id: string) => NodeUiState {
  const states = new Map<string, NodeUiState>();
  return (problemId: string) => {
    let state = states.get(problemId);
    if (!state) {
      state = {
        solvers: [],
        selectedSolverId: null,
        settings: [],
        draft: {},
        error: null,
        busy: false,
        ...overrides[problemId],
      };
      states.set(problemId, state);
    }
    return state;
  };
}

describe("ProblemStore", () => {
  it("reports whether an upsert changed the snapshot", () => {
    const store = new ProblemStore();
    const doc = problemDoc();
    expect(store.upsert(doc)).toBe(true);
    expect(store.upsert({ ...doc })).toBe(false);
    expect(store.upsert({ ...doc, state: "SOLVING" })).toBe(true);
    expect(store.get(doc.id)?.state).toBe("SOLVING");
  });

  it("flattens declared children into refs", () => {
    const store = new ProblemStore();
    const doc = problemDoc({
      subProblems: [{ subRoutineTypeId: "tsp", childProblemIds: ["c1", "c2"] }],
    });
    expect(store.childRefs(doc)).toEqual([
      { typeId: "tsp", problemId: "c1" },
      { typeId: "tsp", problemId: "c2" },
    ]);
  });
});

describe("buildTree", () => {
  it("marks announced but unfetched children as PENDING", () => {
    const store = new ProblemStore();
    store.upsert(
      problemDoc({
        id: "root",
        state: "SOLVING",
        solverId: "vrp.clusterer.two-phase",
        subProblems: [{ subRoutineTypeId: "tsp", childProblemIds: ["c1", "c2"] }],
      }),
    );
    store.upsert(problemDoc({ id: "c1", typeId: "tsp", state: "NEEDS_CONFIGURATION" }));

    const tree = buildTree("root", "cluster-vrp", store);
    expect(tree.state).toBe("SOLVING");
    expect(tree.children.map((child) => child.state)).toEqual([
      "NEEDS_CONFIGURATION",
      "PENDING",
    ]);
    expect(tree.children[1]).toMatchObject({ problemId: "c2", typeId: "tsp" });
  });

  it("is itself PENDING before the first fetch lands", () => {
    const tree = buildTree("nowhere", "tsp", new ProblemStore());
    expect(tree.state).toBe("PENDING");
    expect(tree.children).toEqual([]);
  });

  it("walk lists the node and all descendants", () => {
    const store = new ProblemStore();
    store.upsert(
      problemDoc({
        id: "root",
        subProblems: [{ subRoutineTypeId: "tsp", childProblemIds: ["c1"] }],
      }),
    );
    store.upsert(
      problemDoc({
        id: "c1",
        typeId: "tsp",
        subProblems: [{ subRoutineTypeId: "qubo", childProblemIds: ["q1"] }],
      }),
    );
    const ids = walk(buildTree("root", "cluster-vrp", store)).map((node) => node.problemId);
    expect(ids).toEqual(["root", "c1", "q1"]);
  });

  it("classifies lifecycle states", () => {
    const store = new ProblemStore();
    store.upsert(problemDoc({ id: "a", state: "READY_TO_SOLVE" }));
    store.upsert(problemDoc({ id: "b", state: "SOLVED", solution: solvedSolution() }));
    const ready = buildTree("a", "cluster-vrp", store);
    const done = buildTree("b", "cluster-vrp", store);
    expect(isConfigurable(ready)).toBe(true);
    expect(isTerminal(ready)).toBe(false);
    expect(isConfigurable(done)).toBe(false);
    expect(isTerminal(done)).toBe(true);
  });
});

describe("renderTree", () => {
  function demoStore(): ProblemStore {
    const store = new ProblemStore();
    store.upsert(
      problemDoc({
        id: "root",
        state: "SOLVING",
        solverId: "vrp.clusterer.two-phase",
        subProblems: [{ subRoutineTypeId: "tsp", childProblemIds: ["c1", "c2"] }],
      }),
    );
    store.upsert(problemDoc({ id: "c1", typeId: "tsp", state: "NEEDS_CONFIGURATION" }));
    return store;
  }

  it("renders identical markup for the same snapshot", () => {
    const store = demoStore();
    const lookup = uiStates({
      c1: {
        solvers: [{ id: "tsp.exact.held-karp", name: "Held-Karp", description: "exact" }],
        selectedSolverId: "tsp.exact.held-karp",
        settings: [
          { name: "limit", kind: "INTEGER", default: 10, choices: null, description: "cap" },
        ],
        draft: { limit: "10" },
      },
    });
    const first = renderTree(buildTree("root", "cluster-vrp", store), lookup, noopHandlers);
    const second = renderTree(buildTree("root", "cluster-vrp", store), lookup, noopHandlers);
    expect(second.outerHTML).toBe(first.outerHTML);
  });

  it("shows state badges and the solving label", () => {
    const card = renderTree(buildTree("root", "cluster-vrp", demoStore()), uiStates(), noopHandlers);
    expect(card.querySelector(".badge")?.textContent).toBe("SOLVING");
    expect(card.querySelector(".solving")?.textContent).toContain("vrp.clusterer.two-phase");
    expect(card.dataset.state).toBe("SOLVING");
  });

  it("renders a placeholder for PENDING children", () => {
    const card = renderTree(buildTree("root", "cluster-vrp", demoStore()), uiStates(), noopHandlers);
    const pending = card.querySelectorAll(".pending");
    expect(pending).toHaveLength(1);
    expect(pending[0].textContent).toBe("waiting for problem details");
  });

  it("offers the solver form only on configurable nodes", () => {
    const lookup = uiStates({
      c1: {
        solvers: [
          { id: "tsp.exact.held-karp", name: "Held-Karp", description: "exact" },
          { id: "tsp.classical.two-opt", name: "Two-opt", description: "heuristic" },
        ],
      },
    });
    const card = renderTree(buildTree("root", "cluster-vrp", demoStore()), lookup, noopHandlers);
    const forms = card.querySelectorAll(".configure");
    expect(forms).toHaveLength(1);
    const select = forms[0].querySelector<HTMLSelectElement>(".solver-select");
    const labels = [...(select?.options ?? [])].map((option) => option.textContent);
    expect(labels).toEqual(["choose a solver", "Held-Karp", "Two-opt"]);
    const submit = forms[0].querySelector<HTMLButtonElement>(".submit");
    expect(submit?.disabled).toBe(true);
  });

  it("surfaces node errors as a badge without hiding the form", () => {
    const lookup = uiStates({
      c1: {
        solvers: [{ id: "tsp.exact.held-karp", name: "Held-Karp", description: "exact" }],
        selectedSolverId: "tsp.exact.held-karp",
        error: "problem is already solving",
      },
    });
    const card = renderTree(buildTree("root", "cluster-vrp", demoStore()), lookup, noopHandlers);
    const child = card.querySelector('[data-problem-id="c1"]');
    expect(child?.querySelector(".error-badge")?.textContent).toBe("problem is already solving");
    expect(child?.querySelector(".configure")).not.toBeNull();
    const submit = child?.querySelector<HTMLButtonElement>(".submit");
    expect(submit?.disabled).toBe(false);
  });

  it("marks non-terminal solution verdicts on the badge row", () => {
    const store = new ProblemStore();
    store.upsert(
      problemDoc({
        id: "root",
        state: "SOLVED",
        solverId: "vrp.clusterer.two-phase",
        solution: solvedSolution({ status: "ERROR", result: "", objectiveValue: null }),
      }),
    );
    const card = renderTree(buildTree("root", "cluster-vrp", store), uiStates(), noopHandlers);
    expect(card.querySelector(".status-ERROR")?.textContent).toBe("ERROR");
  });
});
