"""Serialization: config documents, the applicant snapshot file, batch CSV.

The config lives in a JSON document with a ``version: "fis/1"`` marker.
Unknown fields are rejected rather than ignored -- a scoring setup that the
loader does not fully understand must not be half-applied.  Snapshot saves
go through a temp file and an atomic rename so a crash never leaves a torn
file behind.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import dsl
from .errors import (
    ApplicantValidationError,
    ConfigFormatError,
    CsvFormatError,
    DefinitionError,
    DuplicateApplicantError,
    NoRuleFiredError,
    UnknownApplicantError,
)
from .inference import FuzzySystem, LinguisticVariable, Schema
from .loan import Applicant, Assessment, FisConfig, assess
from .membership import MembershipFunction, Shape

CONFIG_VERSION = "fis/1"
CSV_COLUMNS = ["id", "name", "income", "loan_amount", "collateral_value"]
EXPORT_COLUMNS = ["id", "score", "decision"]


# --- config documents -------------------------------------------------------

def config_to_document(cfg: FisConfig) -> dict:
    """The canonical JSON-ready form of a config; shared by file and API."""
    schema = cfg.schema
    variables = []
    for variable, role in [(v, "input") for v in schema.inputs] + [(schema.output, "output")]:
        variables.append(
            {
                "name": variable.name,
                "role": role,
                "universe": [variable.lo, variable.hi],
                "terms": {
                    term: {"shape": mf.shape.value, "x_min": mf.x_min, "x_max": mf.x_max}
                    for term, mf in variable.terms.items()
                },
            }
        )
    return {
        "version": CONFIG_VERSION,
        "variables": variables,
        "rules": [dsl.format_rule(rule, schema) for rule in cfg.system.rules],
        "threshold": cfg.threshold,
    }


def _require_keys(obj: dict, allowed: set[str], required: set[str], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ConfigFormatError(f"{path}.{key}" if path else key, "unknown field")
    for key in required:
        if key not in obj:
            raise ConfigFormatError(f"{path}.{key}" if path else key, "missing field")


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigFormatError(path, f"expected a number, got {value!r}")
    return float(value)


def _parse_variable(obj, index: int) -> tuple[LinguisticVariable, str]:
    path = f"variables[{index}]"
    if not isinstance(obj, dict):
        raise ConfigFormatError(path, "expected an object")
    _require_keys(obj, {"name", "role", "universe", "terms"}, {"name", "role", "universe", "terms"}, path)
    name = obj["name"]
    if not isinstance(name, str) or not name:
        raise ConfigFormatError(f"{path}.name", "expected a nonempty string")
    role = obj["role"]
    if role not in ("input", "output"):
        raise ConfigFormatError(f"{path}.role", f"expected 'input' or 'output', got {role!r}")
    universe = obj["universe"]
    if not isinstance(universe, list) or len(universe) != 2:
        raise ConfigFormatError(f"{path}.universe", "expected [lo, hi]")
    lo = _number(universe[0], f"{path}.universe[0]")
    hi = _number(universe[1], f"{path}.universe[1]")
    terms_obj = obj["terms"]
    if not isinstance(terms_obj, dict) or not terms_obj:
        raise ConfigFormatError(f"{path}.terms", "expected a nonempty object")
    terms = {}
    for term, curve_obj in terms_obj.items():
        term_path = f"{path}.terms.{term}"
        if not isinstance(curve_obj, dict):
            raise ConfigFormatError(term_path, "expected an object")
        _require_keys(curve_obj, {"shape", "x_min", "x_max"}, {"shape", "x_min", "x_max"}, term_path)
        shape = curve_obj["shape"]
        if shape not in (Shape.FALLING.value, Shape.RISING.value):
            raise ConfigFormatError(f"{term_path}.shape", f"expected 'falling' or 'rising', got {shape!r}")
        try:
            terms[term] = MembershipFunction(
                Shape(shape),
                _number(curve_obj["x_min"], f"{term_path}.x_min"),
                _number(curve_obj["x_max"], f"{term_path}.x_max"),
            )
        except DefinitionError as exc:
            raise ConfigFormatError(term_path, str(exc)) from None
    try:
        return LinguisticVariable(name=name, lo=lo, hi=hi, terms=terms), role
    except DefinitionError as exc:
        raise ConfigFormatError(path, str(exc)) from None


def config_from_document(doc) -> FisConfig:
    """Validate a parsed config document; every failure names its field path."""
    if not isinstance(doc, dict):
        raise ConfigFormatError("document", "expected a JSON object")
    _require_keys(doc, {"version", "variables", "rules", "threshold"},
                  {"version", "variables", "rules", "threshold"}, "")
    if doc["version"] != CONFIG_VERSION:
        raise ConfigFormatError("version", f"expected {CONFIG_VERSION!r}, got {doc['version']!r}")
    if not isinstance(doc["variables"], list):
        raise ConfigFormatError("variables", "expected a list")
    inputs, outputs = [], []
    for i, obj in enumerate(doc["variables"]):
        variable, role = _parse_variable(obj, i)
        (inputs if role == "input" else outputs).append(variable)
    if len(outputs) != 1:
        raise ConfigFormatError("variables", f"expected exactly one output variable, got {len(outputs)}")
    try:
        schema = Schema(inputs=tuple(inputs), output=outputs[0])
    except DefinitionError as exc:
        raise ConfigFormatError("variables", str(exc)) from None
    rules_obj = doc["rules"]
    if not isinstance(rules_obj, list) or not all(isinstance(r, str) for r in rules_obj):
        raise ConfigFormatError("rules", "expected a list of rule strings")
    try:
        rules = dsl.parse_ruleset("\n".join(rules_obj), schema)
    except dsl.RuleSyntaxError as exc:
        detail = "; ".join(
            f"rules[{e.span.line - 1}] col {e.span.column}: {e.message}" for e in exc.errors
        )
        raise ConfigFormatError("rules", detail) from None
    threshold = _number(doc["threshold"], "threshold")
    out = schema.output
    if not (out.lo <= threshold <= out.hi):
        raise ConfigFormatError(
            "threshold", f"{threshold} outside output universe [{out.lo}, {out.hi}]"
        )
    try:
        return FisConfig(system=FuzzySystem(schema=schema, rules=rules), threshold=threshold)
    except DefinitionError as exc:
        raise ConfigFormatError("variables", str(exc)) from None


def _atomic_write(path: Path, data: str, pre_replace_hook: Callable | None = None) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(data, encoding="utf-8")
    if pre_replace_hook is not None:
        pre_replace_hook()
    os.replace(tmp, path)


def save_config(cfg: FisConfig, path) -> None:
    _atomic_write(Path(path), json.dumps(config_to_document(cfg), indent=2) + "\n")


def load_config(path) -> FisConfig:
    raw = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigFormatError("document", f"not valid JSON: {exc}") from None
    return config_from_document(doc)


# --- assessment / applicant wire forms --------------------------------------

def applicant_to_document(applicant: Applicant) -> dict:
    return {
        "id": applicant.id,
        "name": applicant.name,
        "income": applicant.income,
        "loan_amount": applicant.loan_amount,
        "collateral_value": applicant.collateral_value,
    }


def applicant_from_document(doc: dict) -> Applicant:
    return Applicant(
        id=doc["id"],
        name=doc.get("name", ""),
        income=doc["income"],
        loan_amount=doc["loan_amount"],
        collateral_value=doc["collateral_value"],
    )


def assessment_to_document(assessment: Assessment) -> dict:
    return {
        "applicant_id": assessment.applicant_id,
        "score": assessment.score,
        "decision": assessment.decision.value,
        "trace": {
            "crisp_output": assessment.trace.crisp_output,
            "firings": [
                {"rule_index": f.rule_index, "alpha": f.alpha, "z_i": f.z_i}
                for f in assessment.trace.firings
            ],
        },
        "clamped_inputs": list(assessment.clamped_inputs),
    }


# --- applicant snapshot store ------------------------------------------------

class ApplicantStore:
    """File-backed applicant records; every mutation rewrites one snapshot.

    Single writer, atomic replace, no journal -- desk-scale data.  The
    ``pre_replace_hook`` seam exists so tests can inject a crash between the
    temp-file write and the rename.
    """

    def __init__(self, path):
        self.path = Path(path)
        self.records: dict[str, Applicant] = {}
        self.version = 0
        self.pre_replace_hook: Callable | None = None
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        doc = json.loads(self.path.read_text(encoding="utf-8"))
        self.version = doc.get("version", 0)
        self.records = {}
        for obj in doc["applicants"]:
            applicant = applicant_from_document(obj)
            self.records[applicant.id] = applicant

    def save(self) -> None:
        doc = {
            "version": self.version,
            "applicants": [applicant_to_document(a) for a in self.records.values()],
        }
        _atomic_write(self.path, json.dumps(doc, indent=2) + "\n", self.pre_replace_hook)

    def add(self, applicant: Applicant) -> None:
        applicant.validate()
        if applicant.id in self.records:
            raise DuplicateApplicantError(applicant.id)
        self.records[applicant.id] = applicant
        self.version += 1
        self.save()

    def update(self, applicant: Applicant) -> None:
        applicant.validate()
        if applicant.id not in self.records:
            raise UnknownApplicantError(applicant.id)
        self.records[applicant.id] = applicant
        self.version += 1
        self.save()

    def delete(self, applicant_id: str) -> None:
        if applicant_id not in self.records:
            raise UnknownApplicantError(applicant_id)
        del self.records[applicant_id]
        self.version += 1
        self.save()

    def get(self, applicant_id: str) -> Applicant:
        if applicant_id not in self.records:
            raise UnknownApplicantError(applicant_id)
        return self.records[applicant_id]

    def list(self) -> list[Applicant]:
        return sorted(self.records.values(), key=lambda a: a.id)


# --- batch CSV ----------------------------------------------------------------

@dataclass(frozen=True)
class BatchReport:
    rows_total: int
    rows_ok: int
    rows_failed: int
    failures: tuple[tuple[int, str], ...]
    assessments: tuple[Assessment, ...]


def ingest_csv(path, cfg: FisConfig) -> BatchReport:
    """Assess every well-formed row; malformed rows are recorded, never fatal."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise CsvFormatError(f"{path}: empty file, expected header "
                                     f"{','.join(CSV_COLUMNS)}") from None
            if header != CSV_COLUMNS:
                raise CsvFormatError(
                    f"{path}: bad header {','.join(header)!r}, expected {','.join(CSV_COLUMNS)!r}"
                )
            rows = list(reader)
    except OSError as exc:
        raise CsvFormatError(f"cannot read {path}: {exc}") from None

    assessments: list[Assessment] = []
    failures: list[tuple[int, str]] = []
    for row_number, row in enumerate(rows, start=1):
        if not row:
            continue
        try:
            assessments.append(_assess_row(row, cfg))
        except (ApplicantValidationError, NoRuleFiredError, ValueError) as exc:
            failures.append((row_number, str(exc)))
    total = sum(1 for row in rows if row)
    return BatchReport(
        rows_total=total,
        rows_ok=len(assessments),
        rows_failed=len(failures),
        failures=tuple(failures),
        assessments=tuple(assessments),
    )


def _assess_row(row: list[str], cfg: FisConfig) -> Assessment:
    if len(row) != len(CSV_COLUMNS):
        raise ValueError(f"expected {len(CSV_COLUMNS)} columns, got {len(row)}")
    values = dict(zip(CSV_COLUMNS, row))
    numbers = {}
    for column in ("income", "loan_amount", "collateral_value"):
        try:
            numbers[column] = float(values[column])
        except ValueError:
            raise ValueError(f"{column}: not a number: {values[column]!r}") from None
    applicant = Applicant(id=values["id"], name=values["name"], **numbers)
    return assess(applicant, cfg)


def export_csv(report: BatchReport, path) -> None:
    """One row per assessment: id, score to 6 decimals, decision."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(EXPORT_COLUMNS)
        for assessment in report.assessments:
            writer.writerow(
                [assessment.applicant_id, f"{assessment.score:.6f}", assessment.decision.value]
            )
