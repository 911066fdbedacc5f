import { ApiClient, ApiError } from "./api.js";
import type { Poller } from "./poll.js";
import type { ProblemStore } from "./store.js";
import { isConfigurable, type SolverTreeNode } from "./tree.js";
import type {
  ProblemDocument,
  SettingDocument,
  SolverSummary,
} from "./types.js";

export interface NodeUiState {
  solvers: SolverSummary[];
  selectedSolverId: string | null;
  settings: SettingDocument[];
  draft: Record<string, string>;
  error: string | null;
  busy: boolean;
}

export type SubmitOutcome =
  | { kind: "ok"; doc: ProblemDocument }
  | { kind: "blocked"; reason: string }
  | { kind: "rejected"; status: number; detail: string };

function freshNodeState(): NodeUiState {
  return {
    solvers: [],
    selectedSolverId: null,
    settings: [],
    draft: {},
    error: null,
    busy: false,
  };
}

/** Turn raw form strings into typed setting values, or explain why not. */
export function coerceSettings(
  descriptors: SettingDocument[],
  draft: Record<string, string>,
): { ok: true; values: Record<string, unknown> } | { ok: false; message: string } {
  const values: Record<string, unknown> = {};
  for (const descriptor of descriptors) {
    const raw = draft[descriptor.name];
    if (raw === undefined || raw === String(descriptor.default ?? "")) {
      continue; // untouched fields fall back to server defaults
    }
    switch (descriptor.kind) {
      case "INTEGER": {
        if (!/^-?\d+$/.test(raw.trim())) {
          return { ok: false, message: `${descriptor.name} must be an integer` };
        }
        values[descriptor.name] = Number(raw.trim());
        break;
      }
      case "REAL": {
        const parsed = Number(raw.trim());
        if (!Number.isFinite(parsed)) {
          return { ok: false, message: `${descriptor.name} must be a number` };
        }
        values[descriptor.name] = parsed;
        break;
      }
      case "CHOICE": {
        if (!descriptor.choices || !descriptor.choices.includes(raw)) {
          return { ok: false, message: `${descriptor.name} must be one of the listed choices` };
        }
        values[descriptor.name] = raw;
        break;
      }
      default:
        values[descriptor.name] = raw;
    }
  }
  return { ok: true, values };
}

/**
 * UI-side orchestration for the configurator tree.
 *
 * The one rule that matters: never send a request the server is known to
 * reject. Every mutating method checks the mirrored lifecycle state first
 * and returns a blocked outcome without touching the network when the
 * state forbids the action.
 */
export class ConfiguratorController {
  private readonly nodeStates = new Map<string, NodeUiState>();
  private readonly solverCache = new Map<string, SolverSummary[]>();
  private readonly settingsCache = new Map<string, SettingDocument[]>();

  constructor(
    private readonly api: ApiClient,
    private readonly store: ProblemStore,
    private readonly poller: Poller,
  ) {}

  nodeState(problemId: string): NodeUiState {
    let state = this.nodeStates.get(problemId);
    if (!state) {
      state = freshNodeState();
      this.nodeStates.set(problemId, state);
    }
    return state;
  }

  async createProblem(typeId: string, input: string): Promise<ProblemDocument> {
    if (!input.trim()) {
      throw new ApiError(0, "input is empty");
    }
    const doc = await this.api.createProblem(typeId, input);
    this.store.upsert(doc);
    this.poller.watch(typeId, doc.id);
    return doc;
  }

  async loadSolvers(node: SolverTreeNode): Promise<SolverSummary[]> {
    let solvers = this.solverCache.get(node.typeId);
    if (!solvers) {
      solvers = await this.api.listSolvers(node.typeId);
      this.solverCache.set(node.typeId, solvers);
    }
    this.nodeState(node.problemId).solvers = solvers;
    return solvers;
  }

  async selectSolver(node: SolverTreeNode, solverId: string): Promise<void> {
    const state = this.nodeState(node.problemId);
    if (!isConfigurable(node)) {
      return; // stale click on a node that already started
    }
    const cacheKey = `${node.typeId}:${solverId}`;
    let settings = this.settingsCache.get(cacheKey);
    if (!settings) {
      settings = await this.api.solverSettings(node.typeId, solverId);
      this.settingsCache.set(cacheKey, settings);
    }
    state.selectedSolverId = solverId;
    state.settings = settings;
    state.draft = Object.fromEntries(
      settings.map((descriptor) => [descriptor.name, String(descriptor.default ?? "")]),
    );
    state.error = null;
  }

  /** PATCH solver + settings + SOLVING in one step, with guards. */
  async submit(node: SolverTreeNode): Promise<SubmitOutcome> {
    const state = this.nodeState(node.problemId);
    if (!isConfigurable(node)) {
      return { kind: "blocked", reason: `node is ${node.state}` };
    }
    if (state.busy) {
      return { kind: "blocked", reason: "request already in flight" };
    }
    const solverId = state.selectedSolverId ?? node.chosenSolverId;
    if (!solverId) {
      return { kind: "blocked", reason: "no solver selected" };
    }
    const coerced = coerceSettings(state.settings, state.draft);
    if (!coerced.ok) {
      state.error = coerced.message;
      return { kind: "blocked", reason: coerced.message };
    }
    state.busy = true;
    try {
      const doc = await this.api.patchProblem(node.typeId, node.problemId, {
        solverId,
        solverSettings: coerced.values,
        state: "SOLVING",
      });
      this.store.upsert(doc);
      this.poller.watch(node.typeId, node.problemId);
      state.error = null;
      return { kind: "ok", doc };
    } catch (error) {
      if (error instanceof ApiError) {
        // surfaced on the node; the mirrored tree itself is untouched
        state.error = error.detail;
        return { kind: "rejected", status: error.status, detail: error.detail };
      }
      throw error;
    } finally {
      state.busy = false;
    }
  }
}
