// Browser entry point: wires the mask bar, the configurator tree, and the
// result panel together. All state lives in the store and the controller;
// this file only re-renders on change.

import { ApiClient, ApiError, resolveBaseUrl } from "./api.js";
import { renderTree } from "./configurator.js";
import { ConfiguratorController } from "./controller.js";
import { renderMask, type MaskState } from "./mask-view.js";
import { PROBLEM_MASKS } from "./masks.js";
import { Poller } from "./poll.js";
import { renderBound, renderSolution } from "./results.js";
import { ProblemStore } from "./store.js";
import { buildTree, type SolverTreeNode } from "./tree.js";
import type { BoundComparisonDocument } from "./types.js";

const api = new ApiClient(resolveBaseUrl());
const store = new ProblemStore();
const poller = new Poller(api, store, () => render());
const controller = new ConfiguratorController(api, store, poller);

let activeMask = PROBLEM_MASKS[0];
const maskState: MaskState = { input: "", error: null, busy: false };
let root: { problemId: string; typeId: string } | null = null;
let boundInfo: BoundComparisonDocument | null = null;

const maskBar = document.getElementById("mask-bar") as HTMLElement;
const maskHost = document.getElementById("mask-host") as HTMLElement;
const treeHost = document.getElementById("tree-host") as HTMLElement;
const resultHost = document.getElementById("result-host") as HTMLElement;

function renderMaskBar(): void {
  maskBar.replaceChildren();
  for (const mask of PROBLEM_MASKS) {
    const button = document.createElement("button");
    button.textContent = mask.label;
    button.className = mask.typeId === activeMask.typeId ? "tab active" : "tab";
    button.addEventListener("click", () => {
      activeMask = mask;
      maskState.input = "";
      maskState.error = null;
      render();
    });
    maskBar.append(button);
  }
}

const treeHandlers = {
  onSolverChosen(node: SolverTreeNode, solverId: string): void {
    void controller.selectSolver(node, solverId).then(render);
  },
  onSubmit(node: SolverTreeNode): void {
    void controller.submit(node).then((outcome) => {
      if (outcome.kind === "ok" && root && node.problemId === root.problemId) {
        void refreshBound();
      }
      render();
    });
  },
  onDraftEdit(node: SolverTreeNode, name: string, value: string): void {
    controller.nodeState(node.problemId).draft[name] = value;
  },
};

async function refreshBound(): Promise<void> {
  if (!root) {
    return;
  }
  try {
    boundInfo = await api.compareBound(root.typeId, root.problemId);
  } catch {
    boundInfo = null; // bound is optional garnish; 409 before solving is expected
  }
  render();
}

async function createProblem(): Promise<void> {
  maskState.busy = true;
  maskState.error = null;
  render();
  try {
    const doc = await controller.createProblem(activeMask.typeId, maskState.input);
    root = { problemId: doc.id, typeId: doc.typeId };
    boundInfo = null;
    boundRequested = false;
    const node = buildTree(doc.id, doc.typeId, store);
    await controller.loadSolvers(node);
  } catch (error) {
    maskState.error = error instanceof ApiError ? error.detail : String(error);
  } finally {
    maskState.busy = false;
    render();
  }
}

function render(): void {
  renderMaskBar();
  maskHost.replaceChildren(
    renderMask(activeMask, maskState, {
      onInput: (value) => {
        maskState.input = value;
        render();
      },
      onLoadExample: () => {
        maskState.input = activeMask.example;
        maskState.error = null;
        render();
      },
      onCreate: () => void createProblem(),
    }),
  );

  if (root) {
    const tree = buildTree(root.problemId, root.typeId, store);
    for (const pending of collectConfigurable(tree)) {
      // fire-and-forget; render again once lists arrive
      if (controller.nodeState(pending.problemId).solvers.length === 0) {
        void controller.loadSolvers(pending).then(render);
      }
    }
    treeHost.replaceChildren(
      renderTree(tree, (id) => controller.nodeState(id), treeHandlers),
    );
    const result = renderSolution(tree);
    resultHost.replaceChildren(result);
    if (tree.state === "SOLVED" && tree.solution?.status === "SOLVED") {
      void refreshBoundOnce();
      if (boundInfo) {
        resultHost.append(renderBound(boundInfo));
      }
    }
  }
}

function collectConfigurable(node: SolverTreeNode): SolverTreeNode[] {
  const here =
    node.state === "NEEDS_CONFIGURATION" || node.state === "READY_TO_SOLVE"
      ? [node]
      : [];
  return [...here, ...node.children.flatMap(collectConfigurable)];
}

let boundRequested = false;
async function refreshBoundOnce(): Promise<void> {
  if (!boundRequested) {
    boundRequested = true;
    await refreshBound();
  }
}

render();
poller.start();
