// Client-side sampling of the two linear membership shapes, used only to
// draw the term-curve viewer.  This intentionally duplicates nothing but the
// two straight-line formulas; every score shown in the UI comes from the
// server.

import type { TermCurve } from "./types.js";

export function evaluateCurve(curve: TermCurve, x: number): number {
  if (x <= curve.x_min) return curve.shape === "falling" ? 1 : 0;
  if (x >= curve.x_max) return curve.shape === "falling" ? 0 : 1;
  const run = curve.x_max - curve.x_min;
  const degree = curve.shape === "falling" ? (curve.x_max - x) / run : (x - curve.x_min) / run;
  return Math.min(1, Math.max(0, degree));
}

export function sampleCurve(
  curve: TermCurve,
  lo: number,
  hi: number,
  points = 101,
): Array<[number, number]> {
  const samples: Array<[number, number]> = [];
  for (let i = 0; i < points; i++) {
    const x = lo + (i * (hi - lo)) / (points - 1);
    samples.push([x, evaluateCurve(curve, x)]);
  }
  return samples;
}
