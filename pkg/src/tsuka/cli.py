"""Command-line frontend.

Exit codes are part of the contract so shell pipelines can branch on them:
0 accepted / success, 3 rejected, 4 batch had failed rows, 2 usage or
validation problems.  Output is deterministic; report commands also drop a
rendered PNG next to their CSV so the numbers come with a picture.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from . import plots, store
from .dsl import RuleSyntaxError
from .errors import (
    ApplicantValidationError,
    ConfigFormatError,
    CsvFormatError,
    DefinitionError,
    InputDomainError,
    NoRuleFiredError,
)
from .loan import Applicant, FisConfig, assess, default_config

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REJECTED = 3
EXIT_BATCH_FAILURES = 4

CONFIG_ENV = "TSUKA_CONFIG"
ADDR_ENV = "TSUKA_ADDR"


def _load_config(path: str | None) -> FisConfig:
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        return store.load_config(path)
    return default_config()


def _fig_path(out_path: str) -> Path:
    return Path(out_path).with_suffix(".png")


def cmd_assess(args) -> int:
    cfg = _load_config(args.config)
    applicant = Applicant(
        id="cli",
        name="",
        income=args.income,
        loan_amount=args.loan,
        collateral_value=args.collateral,
    )
    result = assess(applicant, cfg)
    if args.json:
        print(json.dumps(store.assessment_to_document(result), indent=2))
    else:
        print(f"score {result.score:.2f} {result.decision.name}")
        if result.clamped_inputs:
            print(f"clamped inputs: {', '.join(result.clamped_inputs)}")
        from .dsl import format_rule

        print(f"{'rule':>4}  {'alpha':>7}  {'z':>10}  text")
        for firing in result.trace.firings:
            rule = cfg.system.rules[firing.rule_index]
            print(
                f"{firing.rule_index + 1:>4}  {firing.alpha:>7.3f}  {firing.z_i:>10.3f}  "
                f"{format_rule(rule, cfg.schema)}"
            )
    return EXIT_OK if result.decision.value == "accepted" else EXIT_REJECTED


def cmd_batch(args) -> int:
    cfg = _load_config(args.config)
    report = store.ingest_csv(args.in_path, cfg)
    store.export_csv(report, args.out_path)
    plots.render_score_histogram(report, cfg.threshold, _fig_path(args.out_path))
    print(f"{report.rows_ok} ok, {report.rows_failed} failed")
    for row_number, reason in report.failures:
        print(f"row {row_number}: {reason}", file=sys.stderr)
    return EXIT_BATCH_FAILURES if report.rows_failed else EXIT_OK


def cmd_rules_check(args) -> int:
    try:
        cfg = _load_config(args.config)
    except ConfigFormatError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 1
    print(f"OK, {len(cfg.system.rules)} rules")
    return EXIT_OK


def cmd_plot(args) -> int:
    cfg = _load_config(args.config)
    variable = cfg.variable(args.variable)
    xs, curves = plots.sample_terms(variable)
    terms = list(curves)
    with open(args.out_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x"] + terms)
        for i, x in enumerate(xs):
            writer.writerow([f"{x:.6f}"] + [f"{curves[t][i]:.6f}" for t in terms])
    fig_path = _fig_path(args.out_path)
    plots.render_membership(variable, fig_path)
    print(f"wrote {args.out_path} and {fig_path}")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve

    cfg = _load_config(args.config) if (args.config or os.environ.get(CONFIG_ENV)) else None
    serve(addr=args.addr, data_dir=args.data_dir, config=cfg, ui_dir=args.ui_dir)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsuka",
        description="Loan-eligibility scoring with Tsukamoto fuzzy inference.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("assess", help="score one applicant from flags")
    p.add_argument("--income", type=float, required=True, help="monthly income, IDR")
    p.add_argument("--loan", type=float, required=True, help="requested loan amount, IDR")
    p.add_argument("--collateral", type=float, required=True, help="appraised collateral value, IDR")
    p.add_argument("--config", help=f"config file (default: ${CONFIG_ENV} or built-in)")
    p.add_argument("--json", action="store_true", help="emit the assessment as JSON")
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("batch", help="score a CSV of applicants")
    p.add_argument("--in", dest="in_path", required=True, help="input applicants CSV")
    p.add_argument("--out", dest="out_path", required=True, help="output report CSV (+ PNG)")
    p.add_argument("--config")
    p.set_defaults(func=cmd_batch)

    rules = sub.add_parser("rules", help="rule-base utilities")
    rules_sub = rules.add_subparsers(dest="rules_command", required=True)
    p = rules_sub.add_parser("check", help="validate config and rules")
    p.add_argument("--config")
    p.set_defaults(func=cmd_rules_check)

    p = sub.add_parser("plot", help="sample a variable's term curves to CSV + PNG")
    p.add_argument("--variable", required=True)
    p.add_argument("--config")
    p.add_argument("--out", dest="out_path", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--addr", default=os.environ.get(ADDR_ENV, "127.0.0.1:8080"))
    p.add_argument("--data-dir", default="tsuka-data")
    p.add_argument("--config")
    p.add_argument("--ui-dir", help="directory of built web-console assets to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RuleSyntaxError as exc:
        for error in exc.errors:
            print(str(error), file=sys.stderr)
        return EXIT_USAGE
    except (
        ApplicantValidationError,
        ConfigFormatError,
        CsvFormatError,
        DefinitionError,
        InputDomainError,
        NoRuleFiredError,
    ) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
