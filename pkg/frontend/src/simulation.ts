/** Debounced, last-write-wins driver for the simulation endpoint.
 *
 * Every checkbox change funnels through `setExcluded`; a trailing 300 ms
 * debounce coalesces bursts into one request, and responses carry a sequence
 * number so an out-of-order reply for a stale exclusion set is discarded.
 */

import type { SimulationDelta } from "./types.js";

export type SimulatePoster = (excluded: string[]) => Promise<SimulationDelta[]>;

export class SimulationLoop {
  private sequence = 0;
  private rendered = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly post: SimulatePoster,
    private readonly onResult: (deltas: SimulationDelta[], excluded: string[]) => void,
    private readonly onError: (error: unknown, excluded: string[]) => void,
    private readonly debounceMs = 300,
  ) {}

  setExcluded(excluded: Iterable<string>): void {
    const snapshot = [...excluded];
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(snapshot);
    }, this.debounceMs);
  }

  /** Pending debounce, for tests and teardown. */
  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }

  private async fire(excluded: string[]): Promise<void> {
    const id = ++this.sequence;
    try {
      const deltas = await this.post(excluded);
      if (id > this.rendered && id === this.sequence) {
        this.rendered = id;
        this.onResult(deltas, excluded);
      }
    } catch (error) {
      if (id === this.sequence) {
        this.onError(error, excluded);
      }
    }
  }
}
