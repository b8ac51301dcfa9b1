// The what-if console: live scoring form, rule-firing trace, sweep explorer,
// and term-curve viewer.  Every score, decision, and firing shown here came
// from the server; the client never computes one.

import type {
  ApiClient,
  ApplicantBody,
  Assessment,
  ConfigDoc,
  SweepPoint,
  VariableDoc,
} from "./types.js";
import { SequenceGate, debounce } from "./state.js";
import { sampleCurve } from "./membership.js";

const VARIABLE_TO_FIELD: Record<string, keyof Omit<ApplicantBody, "id" | "name">> = {
  penghasilan: "income",
  pinjaman: "loan_amount",
  jaminan: "collateral_value",
};

const CHART_W = 420;
const CHART_H = 220;
const PAD = 28;

export interface AppOptions {
  debounceMs?: number;
  sweepSteps?: number;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

function svgEl(tag: string, attrs: Record<string, string> = {}): SVGElement {
  const node = document.createElementNS("http://www.w3.org/2000/svg", tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node as SVGElement;
}

export class ConsoleApp {
  private config!: ConfigDoc;
  private gate = new SequenceGate();
  private inFlight = new Set<Promise<unknown>>();
  private scheduleAssess: () => void;
  private sweep: SweepPoint[] = [];
  private sweepVariable = "jaminan";

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private options: AppOptions = {},
  ) {
    this.scheduleAssess = debounce(() => void this.assessNow(), options.debounceMs ?? 150);
  }

  /** Resolves when no request started so far is still in flight. */
  async settled(): Promise<void> {
    while (this.inFlight.size > 0) {
      await Promise.allSettled([...this.inFlight]);
    }
  }

  private track<T>(promise: Promise<T>): Promise<T> {
    this.inFlight.add(promise);
    promise.finally(() => this.inFlight.delete(promise));
    return promise;
  }

  async start(): Promise<void> {
    this.config = await this.track(this.api.getConfig());
    this.buildDom();
    this.renderMembership();
    await this.assessNow();
    await this.refreshSweep();
  }

  // --- form state -----------------------------------------------------------

  private inputVariables(): VariableDoc[] {
    return this.config.variables.filter((v) => v.role === "input");
  }

  private fieldInput(variable: string): HTMLInputElement {
    return this.root.querySelector(`#field-${variable}`) as HTMLInputElement;
  }

  private draft(): ApplicantBody | null {
    const body: ApplicantBody = {
      name: "console",
      income: NaN,
      loan_amount: NaN,
      collateral_value: NaN,
    };
    for (const variable of this.inputVariables()) {
      const raw = this.fieldInput(variable.name).value;
      if (raw.trim() === "") return null;
      const value = Number(raw);
      if (!Number.isFinite(value)) return null;
      body[VARIABLE_TO_FIELD[variable.name]] = value;
    }
    return body;
  }

  private onFormChange(): void {
    const draft = this.draft();
    const button = this.root.querySelector("#assess-btn") as HTMLButtonElement;
    button.disabled = draft === null;
    if (draft !== null) this.scheduleAssess();
  }

  async assessNow(): Promise<void> {
    const draft = this.draft();
    if (draft === null) return;
    const seq = this.gate.next();
    this.setPending(true);
    try {
      const assessment = await this.track(this.api.assess(draft));
      if (!this.gate.accept(seq)) return;
      this.renderAssessment(assessment);
      this.renderError(null);
    } catch (error) {
      if (this.gate.accept(seq)) this.renderError(error);
    } finally {
      if (!this.gate.pending) this.setPending(false);
    }
  }

  // --- rendering --------------------------------------------------------------

  private buildDom(): void {
    this.root.textContent = "";
    const header = el("header");
    header.append(
      el("h1", {}, "loan eligibility console"),
      el(
        "p",
        { id: "threshold-note" },
        `accepted at score ≥ ${this.config.threshold}`,
      ),
    );

    const form = el("section", { id: "form-panel" });
    for (const variable of this.inputVariables()) {
      const [lo, hi] = variable.universe;
      const field = VARIABLE_TO_FIELD[variable.name];
      const row = el("div", { class: "field" });
      row.append(el("label", { for: `field-${variable.name}` }, `${variable.name} (${field})`));
      const number = el("input", {
        type: "number",
        id: `field-${variable.name}`,
        value: String((lo + hi) / 2),
      });
      const slider = el("input", {
        type: "range",
        id: `slider-${variable.name}`,
        min: String(lo),
        max: String(hi),
        step: String((hi - lo) / 1000),
        value: String((lo + hi) / 2),
      });
      number.addEventListener("input", () => {
        slider.value = number.value;
        this.onFormChange();
      });
      slider.addEventListener("input", () => {
        number.value = slider.value;
        this.onFormChange();
      });
      row.append(number, slider);
      form.append(row);
    }
    const button = el("button", { id: "assess-btn" }, "assess");
    button.addEventListener("click", () => void this.assessNow());
    form.append(button, el("span", { id: "pending", hidden: "" }, "scoring…"));

    const result = el("section", { id: "result-panel" });
    const gauge = el("div", { id: "gauge" });
    gauge.append(el("div", { id: "gauge-fill" }));
    result.append(
      gauge,
      el("div", { id: "score" }, "–"),
      el("div", { id: "badge" }, "–"),
      el("div", { id: "clamp-warnings" }),
      el("div", { id: "error", hidden: "" }),
    );

    const trace = el("section", { id: "trace-panel" });
    trace.append(el("h2", {}, "rule firings"));
    const table = el("table", { id: "trace" });
    const head = el("tr");
    head.append(el("th", {}, "rule"), el("th", {}, "α"), el("th", {}, "z"));
    const thead = el("thead");
    thead.append(head);
    table.append(thead, el("tbody"));
    trace.append(table);

    const whatif = el("section", { id: "whatif-panel" });
    whatif.append(el("h2", {}, "what if…"));
    const select = el("select", { id: "whatif-variable" });
    for (const variable of this.inputVariables()) {
      select.append(el("option", { value: variable.name }, variable.name));
    }
    select.value = this.sweepVariable;
    select.addEventListener("change", () => {
      this.sweepVariable = select.value;
      void this.refreshSweep();
    });
    const chart = svgEl("svg", {
      id: "whatif-chart",
      viewBox: `0 0 ${CHART_W} ${CHART_H}`,
      width: String(CHART_W),
      height: String(CHART_H),
    });
    whatif.append(select, chart);

    const membership = el("section", { id: "membership-panel" });
    membership.append(el("h2", {}, "term curves"));
    const memberSelect = el("select", { id: "membership-variable" });
    for (const variable of this.config.variables) {
      memberSelect.append(el("option", { value: variable.name }, variable.name));
    }
    memberSelect.addEventListener("change", () => this.renderMembership());
    const memberChart = svgEl("svg", {
      id: "membership-chart",
      viewBox: `0 0 ${CHART_W} ${CHART_H}`,
      width: String(CHART_W),
      height: String(CHART_H),
    });
    membership.append(memberSelect, memberChart);

    this.root.append(header, form, result, trace, whatif, membership);
  }

  private setPending(pending: boolean): void {
    const node = this.root.querySelector("#pending") as HTMLElement;
    node.hidden = !pending;
  }

  private renderError(error: unknown): void {
    const node = this.root.querySelector("#error") as HTMLElement;
    if (error === null) {
      node.hidden = true;
      node.textContent = "";
    } else {
      node.hidden = false;
      node.textContent = error instanceof Error ? error.message : String(error);
    }
  }

  private renderAssessment(assessment: Assessment): void {
    const score = this.root.querySelector("#score") as HTMLElement;
    score.textContent = assessment.score.toFixed(2);
    score.dataset.score = String(assessment.score);

    const badge = this.root.querySelector("#badge") as HTMLElement;
    badge.textContent = assessment.decision === "accepted" ? "Accepted" : "Rejected";
    badge.dataset.decision = assessment.decision;
    badge.className = assessment.decision;

    const fill = this.root.querySelector("#gauge-fill") as HTMLElement;
    const [lo, hi] = this.outputUniverse();
    fill.style.width = `${(100 * (assessment.score - lo)) / (hi - lo)}%`;

    const warnings = this.root.querySelector("#clamp-warnings") as HTMLElement;
    warnings.textContent = "";
    for (const name of assessment.clamped_inputs) {
      warnings.append(
        el("span", { class: "clamp-warning" }, `${name}: outside its range, clamped`),
      );
    }

    const tbody = this.root.querySelector("#trace tbody") as HTMLElement;
    tbody.textContent = "";
    const firings = [...assessment.trace.firings].sort((a, b) => b.alpha - a.alpha);
    for (const firing of firings) {
      const row = el("tr", {
        "data-rule-index": String(firing.rule_index),
        "data-alpha": String(firing.alpha),
        "data-z": String(firing.z_i),
      });
      row.append(
        el("td", {}, this.config.rules[firing.rule_index] ?? `rule ${firing.rule_index + 1}`),
        el("td", {}, firing.alpha.toFixed(3)),
        el("td", {}, firing.z_i.toFixed(3)),
      );
      tbody.append(row);
    }

    this.renderSweepMarker();
  }

  private outputUniverse(): [number, number] {
    const output = this.config.variables.find((v) => v.role === "output");
    return output ? output.universe : [0, 100];
  }

  // --- what-if sweep ------------------------------------------------------------

  async refreshSweep(): Promise<void> {
    const draft = this.draft();
    if (draft === null) return;
    try {
      this.sweep = await this.track(
        this.api.whatIf({
          applicant: draft,
          vary: this.sweepVariable,
          steps: this.options.sweepSteps ?? 101,
        }),
      );
      this.renderSweep();
      this.renderError(null);
    } catch (error) {
      this.renderError(error);
    }
  }

  private sweepVariableDoc(): VariableDoc {
    return this.inputVariables().find((v) => v.name === this.sweepVariable)!;
  }

  private sweepScales() {
    const [lo, hi] = this.sweepVariableDoc().universe;
    const [outLo, outHi] = this.outputUniverse();
    const x = (value: number) => PAD + ((value - lo) / (hi - lo)) * (CHART_W - 2 * PAD);
    const y = (score: number) =>
      CHART_H - PAD - ((score - outLo) / (outHi - outLo)) * (CHART_H - 2 * PAD);
    return { x, y };
  }

  private renderSweep(): void {
    const chart = this.root.querySelector("#whatif-chart") as SVGElement;
    chart.textContent = "";
    if (this.sweep.length === 0) return;
    const { x, y } = this.sweepScales();

    const threshold = svgEl("line", {
      id: "threshold-line",
      x1: String(PAD),
      x2: String(CHART_W - PAD),
      y1: String(y(this.config.threshold)),
      y2: String(y(this.config.threshold)),
      class: "threshold",
    });
    chart.append(threshold);

    const path = this.sweep.map((p) => `${x(p.value)},${y(p.score)}`).join(" ");
    chart.append(svgEl("polyline", { id: "sweep-line", points: path, fill: "none" }));

    // mark where the decision flips, if it does
    for (let i = 1; i < this.sweep.length; i++) {
      if (this.sweep[i].decision !== this.sweep[i - 1].decision) {
        chart.append(
          svgEl("line", {
            class: "flip-marker",
            x1: String(x(this.sweep[i].value)),
            x2: String(x(this.sweep[i].value)),
            y1: String(PAD),
            y2: String(CHART_H - PAD),
          }),
        );
        break;
      }
    }

    for (const point of this.sweep) {
      const dot = svgEl("circle", {
        class: "sweep-point",
        cx: String(x(point.value)),
        cy: String(y(point.score)),
        r: "3",
        "data-value": String(point.value),
        "data-score": String(point.score),
      });
      dot.addEventListener("click", () => this.applySweepValue(point.value));
      chart.append(dot);
    }
    this.renderSweepMarker();
  }

  private renderSweepMarker(): void {
    const chart = this.root.querySelector("#whatif-chart") as SVGElement | null;
    if (!chart || this.sweep.length === 0) return;
    chart.querySelector("#current-marker")?.remove();
    const { x } = this.sweepScales();
    const current = Number(this.fieldInput(this.sweepVariable).value);
    if (!Number.isFinite(current)) return;
    chart.append(
      svgEl("line", {
        id: "current-marker",
        x1: String(x(current)),
        x2: String(x(current)),
        y1: String(PAD),
        y2: String(CHART_H - PAD),
      }),
    );
  }

  /** Click-to-apply: load the value into the form and re-assess exactly once. */
  private applySweepValue(value: number): void {
    const number = this.fieldInput(this.sweepVariable);
    const slider = this.root.querySelector(`#slider-${this.sweepVariable}`) as HTMLInputElement;
    number.value = String(value);
    slider.value = String(value);
    void this.assessNow();
  }

  // --- membership viewer ----------------------------------------------------------

  private renderMembership(): void {
    const select = this.root.querySelector("#membership-variable") as HTMLSelectElement;
    const chart = this.root.querySelector("#membership-chart") as SVGElement;
    const variable = this.config.variables.find((v) => v.name === select.value)!;
    chart.textContent = "";
    const [lo, hi] = variable.universe;
    const x = (value: number) => PAD + ((value - lo) / (hi - lo)) * (CHART_W - 2 * PAD);
    const y = (degree: number) => CHART_H - PAD - degree * (CHART_H - 2 * PAD);
    for (const [term, curve] of Object.entries(variable.terms)) {
      const samples = sampleCurve(curve, lo, hi);
      const points = samples.map(([vx, vy]) => `${x(vx)},${y(vy)}`).join(" ");
      chart.append(
        svgEl("polyline", {
          class: "term-curve",
          "data-term": term,
          points,
          fill: "none",
        }),
      );
    }
  }
}

export async function createApp(
  root: HTMLElement,
  api: ApiClient,
  options: AppOptions = {},
): Promise<ConsoleApp> {
  const app = new ConsoleApp(root, api, options);
  await app.start();
  return app;
}
