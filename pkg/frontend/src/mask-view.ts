import type { ProblemMask } from "./masks.js";

export interface MaskState {
  input: string;
  error: string | null;
  busy: boolean;
}

export interface MaskHandlers {
  onInput(value: string): void;
  onLoadExample(): void;
  onCreate(): void;
}

/** Input mask: description, text area, example loader, and the create
 * action, which stays disabled while the field is empty. */
export function renderMask(
  mask: ProblemMask,
  state: MaskState,
  handlers: MaskHandlers,
): HTMLElement {
  const section = document.createElement("section");
  section.className = "mask";
  section.dataset.typeId = mask.typeId;

  const heading = document.createElement("h2");
  heading.textContent = mask.label;
  section.append(heading);

  const description = document.createElement("p");
  description.className = "mask-description";
  description.textContent = mask.description;
  section.append(description);

  const textarea = document.createElement("textarea");
  textarea.className = "mask-input";
  textarea.rows = 12;
  textarea.value = state.input;
  textarea.placeholder = "paste an instance here";
  textarea.addEventListener("input", () => handlers.onInput(textarea.value));
  section.append(textarea);

  if (state.error) {
    const error = document.createElement("p");
    error.className = "error-badge";
    error.textContent = state.error;
    section.append(error);
  }

  const actions = document.createElement("div");
  actions.className = "mask-actions";

  const example = document.createElement("button");
  example.className = "load-example";
  example.textContent = "Load example";
  example.addEventListener("click", () => handlers.onLoadExample());
  actions.append(example);

  const create = document.createElement("button");
  create.className = "configure";
  create.textContent = "Configure solver";
  create.disabled = state.input.trim() === "" || state.busy;
  if (create.disabled && state.input.trim() === "") {
    create.title = "enter or load an instance first";
  }
  create.addEventListener("click", () => handlers.onCreate());
  actions.append(create);

  section.append(actions);
  return section;
}
