import { describe, expect, it } from "vitest";

import { evaluateCurve, sampleCurve } from "../src/membership.js";

describe("evaluateCurve", () => {
  it("falling runs from (x_min, 1) to (x_max, 0)", () => {
    const curve = { shape: "falling" as const, x_min: 0, x_max: 10 };
    expect(evaluateCurve(curve, 0)).toBe(1);
    expect(evaluateCurve(curve, 10)).toBe(0);
    expect(evaluateCurve(curve, 5)).toBe(0.5);
  });

  it("rising mirrors falling", () => {
    const up = { shape: "rising" as const, x_min: 0, x_max: 10 };
    const down = { shape: "falling" as const, x_min: 0, x_max: 10 };
    for (const x of [-2, 0, 2.5, 5, 7.5, 10, 12]) {
      expect(evaluateCurve(up, x) + evaluateCurve(down, x)).toBeCloseTo(1, 12);
    }
  });

  it("saturates outside the interval", () => {
    const curve = { shape: "rising" as const, x_min: 3, x_max: 7 };
    expect(evaluateCurve(curve, -100)).toBe(0);
    expect(evaluateCurve(curve, 100)).toBe(1);
  });
});

describe("sampleCurve", () => {
  it("clips sampling to the universe", () => {
    const curve = { shape: "falling" as const, x_min: 2, x_max: 8 };
    const samples = sampleCurve(curve, 0, 10, 11);
    expect(samples.length).toBe(11);
    expect(samples[0]).toEqual([0, 1]);
    expect(samples.at(-1)).toEqual([10, 0]);
    const xs = samples.map(([x]) => x);
    expect(Math.min(...xs)).toBe(0);
    expect(Math.max(...xs)).toBe(10);
  });

  it("is monotone for a rising term", () => {
    const curve = { shape: "rising" as const, x_min: 1, x_max: 9 };
    const ys = sampleCurve(curve, 0, 10, 51).map(([, y]) => y);
    for (let i = 1; i < ys.length; i++) {
      expect(ys[i]).toBeGreaterThanOrEqual(ys[i - 1]);
    }
  });
});
