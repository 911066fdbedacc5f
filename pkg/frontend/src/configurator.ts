import type { NodeUiState } from "./controller.js";
import { isConfigurable, type SolverTreeNode } from "./tree.js";
import type { SettingDocument } from "./types.js";

export interface TreeHandlers {
  onSolverChosen(node: SolverTreeNode, solverId: string): void;
  onSubmit(node: SolverTreeNode): void;
  onDraftEdit(node: SolverTreeNode, name: string, value: string): void;
}

export type UiStateLookup = (problemId: string) => NodeUiState;

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

function settingField(
  node: SolverTreeNode,
  descriptor: SettingDocument,
  state: NodeUiState,
  handlers: TreeHandlers,
): HTMLElement {
  const wrapper = el("label", "setting");
  wrapper.append(el("span", "setting-name", descriptor.name));
  const value = state.draft[descriptor.name] ?? String(descriptor.default ?? "");
  if (descriptor.kind === "CHOICE") {
    const select = el("select");
    for (const choice of descriptor.choices ?? []) {
      const option = el("option", undefined, choice);
      option.value = choice;
      option.selected = choice === value;
      select.append(option);
    }
    select.addEventListener("change", () =>
      handlers.onDraftEdit(node, descriptor.name, select.value),
    );
    wrapper.append(select);
  } else {
    const input = el("input");
    input.type = descriptor.kind === "TEXT" ? "text" : "number";
    if (descriptor.kind === "REAL") {
      input.step = "any";
    }
    input.value = value;
    input.title = descriptor.description;
    input.addEventListener("input", () =>
      handlers.onDraftEdit(node, descriptor.name, input.value),
    );
    wrapper.append(input);
  }
  return wrapper;
}

function configurationForm(
  node: SolverTreeNode,
  state: NodeUiState,
  handlers: TreeHandlers,
): HTMLElement {
  const form = el("div", "configure");
  const select = el("select", "solver-select");
  const placeholder = el("option", undefined, "choose a solver");
  placeholder.value = "";
  placeholder.disabled = true;
  placeholder.selected = state.selectedSolverId === null;
  select.append(placeholder);
  for (const solver of state.solvers) {
    const option = el("option", undefined, solver.name);
    option.value = solver.id;
    option.title = solver.description;
    option.selected = solver.id === state.selectedSolverId;
    select.append(option);
  }
  select.addEventListener("change", () => handlers.onSolverChosen(node, select.value));
  form.append(select);

  if (state.selectedSolverId !== null) {
    const fields = el("div", "settings");
    for (const descriptor of state.settings) {
      fields.append(settingField(node, descriptor, state, handlers));
    }
    form.append(fields);
  }

  const submit = el("button", "submit", "Assign and run");
  submit.disabled = state.selectedSolverId === null || state.busy;
  submit.addEventListener("click", () => handlers.onSubmit(node));
  form.append(submit);
  return form;
}

/**
 * Renders the mirrored solver tree. Output is a pure function of the tree
 * and the per-node UI state: rendering the same snapshot twice yields
 * byte-identical markup, which keeps polling refreshes flicker-free.
 */
export function renderTree(
  node: SolverTreeNode,
  uiState: UiStateLookup,
  handlers: TreeHandlers,
): HTMLElement {
  const card = el("article", "node");
  card.dataset.problemId = node.problemId;
  card.dataset.state = node.state;

  const header = el("header");
  header.append(el("span", "type", node.typeId));
  header.append(el("span", `badge state-${node.state}`, node.state));
  if (node.solution && node.solution.status !== "SOLVED") {
    header.append(el("span", `badge status-${node.solution.status}`, node.solution.status));
  }
  card.append(header);

  const state = uiState(node.problemId);
  if (state.error) {
    card.append(el("p", "error-badge", state.error));
  }

  if (node.state === "PENDING") {
    card.append(el("p", "pending", "waiting for problem details"));
  } else if (isConfigurable(node)) {
    card.append(configurationForm(node, state, handlers));
  } else if (node.state === "SOLVING") {
    card.append(el("p", "solving", `solving with ${node.chosenSolverId ?? "?"}`));
  } else if (node.chosenSolverId) {
    card.append(el("p", "solver-label", node.chosenSolverId));
  }

  if (node.children.length > 0) {
    const list = el("ul", "children");
    for (const child of node.children) {
      const item = el("li");
      item.append(renderTree(child, uiState, handlers));
      list.append(item);
    }
    card.append(list);
  }
  return card;
}
