// Request sequencing and debouncing for live re-assessment.
//
// Responses can arrive out of order; a response may only be rendered when no
// later-issued request has rendered already, so the newest wins regardless
// of network reordering.

export class SequenceGate {
  private issued = 0;
  private rendered = 0;

  next(): number {
    return ++this.issued;
  }

  /** True when a response with this sequence number may be rendered. */
  accept(seq: number): boolean {
    if (seq <= this.rendered) return false;
    this.rendered = seq;
    return true;
  }

  get pending(): boolean {
    return this.issued > this.rendered;
  }
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  if (ms <= 0) return fn;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), ms);
  };
}
