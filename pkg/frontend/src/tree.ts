import type { ProblemStore } from "./store.js";
import type { ProblemState, SolutionDocument } from "./types.js";

/** One node of the mirrored solver tree. PENDING means the server announced
 * the child but its document has not been fetched yet. */
export interface SolverTreeNode {
  problemId: string;
  typeId: string;
  state: ProblemState | "PENDING";
  chosenSolverId: string | null;
  solution: SolutionDocument | null;
  children: SolverTreeNode[];
}

export function buildTree(rootId: string, rootTypeId: string, store: ProblemStore): SolverTreeNode {
  const doc = store.get(rootId);
  if (!doc) {
    return {
      problemId: rootId,
      typeId: rootTypeId,
      state: "PENDING",
      chosenSolverId: null,
      solution: null,
      children: [],
    };
  }
  return {
    problemId: doc.id,
    typeId: doc.typeId,
    state: doc.state,
    chosenSolverId: doc.solverId,
    solution: doc.solution,
    children: store
      .childRefs(doc)
      .map((ref) => buildTree(ref.problemId, ref.typeId, store)),
  };
}

/** A node accepts configuration only before it starts solving. */
export function isConfigurable(node: SolverTreeNode): boolean {
  return node.state === "NEEDS_CONFIGURATION" || node.state === "READY_TO_SOLVE";
}

export function isTerminal(node: SolverTreeNode): boolean {
  return node.state === "SOLVED";
}

export function walk(node: SolverTreeNode): SolverTreeNode[] {
  return [node, ...node.children.flatMap(walk)];
}
