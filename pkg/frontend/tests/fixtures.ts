import type {
  ApiClient,
  ApplicantBody,
  Assessment,
  ConfigDoc,
  SweepPoint,
  WhatIfRequest,
} from "../src/types.js";

export function makeConfig(): ConfigDoc {
  const pair = (lo: number, hi: number) => ({
    rendah: { shape: "falling" as const, x_min: lo, x_max: hi },
    tinggi: { shape: "rising" as const, x_min: lo, x_max: hi },
  });
  return {
    version: "fis/1",
    variables: [
      { name: "penghasilan", role: "input", universe: [1e6, 2e7], terms: pair(1e6, 2e7) },
      { name: "pinjaman", role: "input", universe: [5e6, 2e8], terms: pair(5e6, 2e8) },
      { name: "jaminan", role: "input", universe: [1e7, 3e8], terms: pair(1e7, 3e8) },
      { name: "kelayakan", role: "output", universe: [0, 100], terms: pair(0, 100) },
    ],
    rules: Array.from({ length: 8 }, (_, i) => `RULE ${i + 1} TEXT`),
    threshold: 60,
  };
}

export function makeAssessment(overrides: Partial<Assessment> = {}): Assessment {
  return {
    applicant_id: "stub",
    score: 50.0,
    decision: "rejected",
    trace: {
      crisp_output: 50.0,
      firings: Array.from({ length: 8 }, (_, i) => ({
        rule_index: i,
        alpha: 0.5,
        z_i: 50.0,
      })),
    },
    clamped_inputs: [],
    ...overrides,
  };
}

export function makeSweep(steps = 5): SweepPoint[] {
  const lo = 1e7;
  const hi = 3e8;
  return Array.from({ length: steps }, (_, i) => {
    const value = lo + (i * (hi - lo)) / (steps - 1);
    const score = 30 + (i * 40) / (steps - 1);
    return { value, score, decision: score >= 60 ? "accepted" : "rejected" };
  });
}

export interface StubApi extends ApiClient {
  assessCalls: ApplicantBody[];
  whatIfCalls: WhatIfRequest[];
  nextAssessment: (body: ApplicantBody) => Assessment | Promise<Assessment>;
  nextSweep: (body: WhatIfRequest) => SweepPoint[] | Promise<SweepPoint[]>;
}

export function makeStubApi(): StubApi {
  const stub: StubApi = {
    assessCalls: [],
    whatIfCalls: [],
    nextAssessment: () => makeAssessment(),
    nextSweep: () => makeSweep(),
    getConfig: () => Promise.resolve(makeConfig()),
    assess(body) {
      stub.assessCalls.push(body);
      return Promise.resolve(stub.nextAssessment(body));
    },
    whatIf(body) {
      stub.whatIfCalls.push(body);
      return Promise.resolve(stub.nextSweep(body));
    },
  };
  return stub;
}

export function deferred<T>() {
  let resolve!: (value: T) => void;
  let reject!: (reason?: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}
