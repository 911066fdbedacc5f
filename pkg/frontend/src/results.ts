import { walk, type SolverTreeNode } from "./tree.js";
import type { BoundComparisonDocument } from "./types.js";

export interface ParsedRoutes {
  routes: number[][];
  length: number | null;
}

/** Route text: one line of node ids per route, then a LENGTH total line. */
export function parseRouteResult(result: string): ParsedRoutes {
  const routes: number[][] = [];
  let length: number | null = null;
  for (const line of result.split("\n")) {
    const trimmed = line.trim();
    if (!trimmed) {
      continue;
    }
    if (trimmed.startsWith("LENGTH")) {
      length = Number(trimmed.slice("LENGTH".length).trim());
    } else if (/^[\d\s]+$/.test(trimmed)) {
      routes.push(trimmed.split(/\s+/).map(Number));
    }
  }
  return { routes, length };
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const element = document.createElement(tag);
  if (className) {
    element.className = className;
  }
  if (text !== undefined) {
    element.textContent = text;
  }
  return element;
}

function timingOf(metadata: Record<string, string>): string | null {
  const raw = metadata["sampleSet"];
  if (!raw) {
    return null;
  }
  try {
    const parsed = JSON.parse(raw) as { timings?: { totalMs?: number } };
    const total = parsed.timings?.totalMs;
    return typeof total === "number" ? `${total.toFixed(1)} ms` : null;
  } catch {
    return null;
  }
}

function nodeRows(root: SolverTreeNode): HTMLElement {
  const table = el("table", "node-report");
  const head = el("tr");
  for (const column of ["problem", "status", "backend", "time"]) {
    head.append(el("th", undefined, column));
  }
  table.append(head);
  const failedChildId = root.solution?.metadata["failedChild"];
  for (const node of walk(root)) {
    if (!node.solution) {
      continue;
    }
    const row = el("tr", `row-${node.solution.status}`);
    if (node.problemId === failedChildId) {
      row.classList.add("failed");
    }
    row.append(el("td", undefined, node.typeId));
    row.append(el("td", `cell-status status-${node.solution.status}`, node.solution.status));
    row.append(el("td", undefined, node.solution.metadata["backend"] ?? ""));
    row.append(el("td", undefined, timingOf(node.solution.metadata) ?? ""));
    table.append(row);
  }
  return table;
}

export function renderBound(comparison: BoundComparisonDocument): HTMLElement {
  const panel = el("section", "bound");
  panel.append(
    el(
      "p",
      undefined,
      `${comparison.bound.boundType.toLowerCase()} bound ${comparison.bound.value.toFixed(3)} ` +
        `(${comparison.bound.method}), gap ${comparison.absoluteGap.toFixed(3)} ` +
        `(${(comparison.relativeGap * 100).toFixed(1)}%)`,
    ),
  );
  return panel;
}

/** Result panel for the root node; failure states highlight the culprit. */
export function renderSolution(root: SolverTreeNode): HTMLElement {
  const panel = el("section", "solution");
  const solution = root.solution;
  if (!solution) {
    panel.append(el("p", "placeholder", "no solution yet"));
    return panel;
  }
  if (solution.status === "ERROR" || solution.status === "INVALID") {
    panel.append(el("p", `verdict status-${solution.status}`, solution.status));
    const failed = solution.metadata["failedChild"];
    const message = solution.metadata["error"] ?? solution.metadata["failedChildError"] ?? "";
    panel.append(el("p", "failure-detail", failed ? `${message} (child ${failed})` : message));
    panel.append(nodeRows(root));
    return panel;
  }
  if (solution.status === "COMPUTING") {
    panel.append(el("p", "placeholder", "still computing"));
    return panel;
  }

  if (solution.objectiveValue !== null) {
    panel.append(el("p", "objective", `total ${solution.objectiveValue}`));
  }
  const parsed = parseRouteResult(solution.result);
  if (parsed.routes.length > 0) {
    const list = el("ol", "routes");
    for (const route of parsed.routes) {
      list.append(el("li", undefined, route.join(" → ")));
    }
    panel.append(list);
  } else if (solution.result.trim()) {
    panel.append(el("pre", "raw-result", solution.result));
  }
  panel.append(nodeRows(root));
  return panel;
}
