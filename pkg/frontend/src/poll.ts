import type { ApiClient } from "./api.js";
import type { ProblemStore } from "./store.js";

interface Watch {
  typeId: string;
  intervalMs: number;
  dueAt: number;
}

const BACKOFF_FACTOR = 1.5;

/**
 * Polls watched problems, mirroring documents into the store.
 *
 * One second base interval; each poll that returns an unchanged document
 * backs the next one off by 1.5x (capped), and any change resets to the
 * base. A problem with an in-flight request is never polled again until
 * that request settles, so slow responses cannot pile up. Children that
 * appear in a fetched document are watched automatically; terminal
 * problems are dropped.
 */
export class Poller {
  private readonly watches = new Map<string, Watch>();
  private readonly inFlight = new Set<string>();
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly store: ProblemStore,
    private readonly onChange: () => void,
    private readonly baseMs = 1000,
    private readonly maxMs = 8000,
  ) {}

  watch(typeId: string, problemId: string): void {
    if (!this.watches.has(problemId)) {
      this.watches.set(problemId, { typeId, intervalMs: this.baseMs, dueAt: 0 });
    }
  }

  unwatch(problemId: string): void {
    this.watches.delete(problemId);
  }

  watchedIds(): string[] {
    return [...this.watches.keys()];
  }

  /** Polls everything due at `now`. Returns true when any snapshot changed. */
  async tick(now = Date.now()): Promise<boolean> {
    const due = [...this.watches.entries()].filter(
      ([id, watch]) => watch.dueAt <= now && !this.inFlight.has(id),
    );
    const results = await Promise.all(
      due.map(async ([id, watch]) => {
        this.inFlight.add(id);
        try {
          const doc = await this.api.getProblem(watch.typeId, id);
          const changed = this.store.upsert(doc);
          watch.intervalMs = changed
            ? this.baseMs
            : Math.min(watch.intervalMs * BACKOFF_FACTOR, this.maxMs);
          watch.dueAt = now + watch.intervalMs;
          for (const ref of this.store.childRefs(doc)) {
            this.watch(ref.typeId, ref.problemId);
          }
          if (doc.state === "SOLVED") {
            this.unwatch(id);
          }
          return changed;
        } catch {
          // transient network errors just push the next attempt out
          watch.intervalMs = Math.min(watch.intervalMs * BACKOFF_FACTOR, this.maxMs);
          watch.dueAt = now + watch.intervalMs;
          return false;
        } finally {
          this.inFlight.delete(id);
        }
      }),
    );
    const changed = results.some(Boolean);
    if (changed) {
      this.onChange();
    }
    return changed;
  }

  start(tickEveryMs = 250): void {
    if (this.timer === null) {
      this.timer = setInterval(() => void this.tick(), tickEveryMs);
    }
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}
