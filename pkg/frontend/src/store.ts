import type { ProblemDocument } from "./types.js";

/**
 * Snapshot store mirroring the server's problem graph. Documents are kept
 * verbatim; the tree view is derived from them on every render so the UI
 * can never drift from what the server last said.
 */
export class ProblemStore {
  private readonly documents = new Map<string, ProblemDocument>();

  /** Returns true when the stored snapshot actually changed. */
  upsert(doc: ProblemDocument): boolean {
    const previous = this.documents.get(doc.id);
    const changed = previous === undefined || JSON.stringify(previous) !== JSON.stringify(doc);
    if (changed) {
      this.documents.set(doc.id, doc);
    }
    return changed;
  }

  get(problemId: string): ProblemDocument | undefined {
    return this.documents.get(problemId);
  }

  has(problemId: string): boolean {
    return this.documents.has(problemId);
  }

  /** Child (typeId, problemId) pairs a document declares, fetched or not. */
  childRefs(doc: ProblemDocument): Array<{ typeId: string; problemId: string }> {
    return doc.subProblems.flatMap((sub) =>
      sub.childProblemIds.map((problemId) => ({
        typeId: sub.subRoutineTypeId,
        problemId,
      })),
    );
  }
}
