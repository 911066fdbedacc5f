// Wire documents as the server emits them. Field names are camelCase and
// frozen; keep this file in sync with the HTTP API, not with internal types.

export type ProblemState =
  | "NEEDS_CONFIGURATION"
  | "READY_TO_SOLVE"
  | "SOLVING"
  | "SOLVED";

export type SolutionStatus = "COMPUTING" | "SOLVED" | "ERROR" | "INVALID";

export interface SolutionDocument {
  status: SolutionStatus;
  result: string;
  objectiveValue: number | null;
  metadata: Record<string, string>;
}

export interface SubRoutineDocument {
  subRoutineTypeId: string;
  childProblemIds: string[];
}

export interface ProblemDocument {
  id: string;
  typeId: string;
  input: string;
  state: ProblemState;
  solverId: string | null;
  solverSettings: Record<string, unknown>;
  solution: SolutionDocument | null;
  subProblems: SubRoutineDocument[];
}

export interface ProblemSummary {
  id: string;
  typeId: string;
  state: ProblemState;
}

export interface SolverSummary {
  id: string;
  name: string;
  description: string;
}

export type SettingKind = "INTEGER" | "REAL" | "TEXT" | "CHOICE";

export interface SettingDocument {
  name: string;
  kind: SettingKind;
  default: unknown;
  choices: string[] | null;
  description: string;
}

export interface BoundDocument {
  boundType: string;
  value: number;
  method: string;
}

export interface BoundComparisonDocument {
  bound: BoundDocument;
  solutionValue: number;
  absoluteGap: number;
  relativeGap: number;
}

export interface PatchProblemBody {
  input?: string;
  solverId?: string | null;
  solverSettings?: Record<string, unknown>;
  state?: string;
}
