"""Loan-eligibility scoring: the three criteria, the shipped rule base, and
the accept/reject decision.

An applicant brings monthly income, the requested loan amount, and the
appraised value of the vehicle pledged as collateral.  The shipped
configuration scores eligibility on a 0-100 scale and accepts at 60; every
number in it is plain configuration, overridable through a config file.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum

from . import dsl
from .errors import ApplicantValidationError, DefinitionError, InputDomainError
from .inference import FuzzySystem, InferenceResult, LinguisticVariable, Schema
from .membership import falling, rising

INCOME_VARIABLE = "penghasilan"
LOAN_VARIABLE = "pinjaman"
COLLATERAL_VARIABLE = "jaminan"
OUTPUT_VARIABLE = "kelayakan"

FIELD_TO_VARIABLE = {
    "income": INCOME_VARIABLE,
    "loan_amount": LOAN_VARIABLE,
    "collateral_value": COLLATERAL_VARIABLE,
}
VARIABLE_TO_FIELD = {v: f for f, v in FIELD_TO_VARIABLE.items()}


class Decision(str, Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"


@dataclass(frozen=True)
class Applicant:
    """One loan application; amounts are IDR."""

    id: str
    name: str
    income: float
    loan_amount: float
    collateral_value: float

    def validate(self) -> None:
        """Raise :class:`ApplicantValidationError` listing every bad field."""
        problems = []
        if not self.id or not str(self.id).strip():
            problems.append(("id", "must be nonempty"))
        for field_name, minimum, exclusive in (
            ("income", 0.0, False),
            ("loan_amount", 0.0, True),
            ("collateral_value", 0.0, False),
        ):
            value = getattr(self, field_name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
                problems.append((field_name, "must be a finite number"))
            elif exclusive and value <= minimum:
                problems.append((field_name, f"must be > {minimum:g}"))
            elif value < minimum:
                problems.append((field_name, f"must be >= {minimum:g}"))
        if problems:
            raise ApplicantValidationError(problems)


@dataclass(frozen=True)
class Assessment:
    """A scored application: the crisp score, the decision, and the full trace."""

    applicant_id: str
    score: float
    decision: Decision
    trace: InferenceResult
    clamped_inputs: tuple[str, ...] = ()


@dataclass(frozen=True)
class FisConfig:
    """A complete, validated scoring setup: variables, rules, accept cutoff."""

    system: FuzzySystem
    threshold: float

    def __post_init__(self):
        schema = self.system.schema
        expected = {INCOME_VARIABLE, LOAN_VARIABLE, COLLATERAL_VARIABLE}
        actual = {v.name for v in schema.inputs}
        if actual != expected:
            raise DefinitionError(
                f"input variables must be {sorted(expected)}, got {sorted(actual)}"
            )
        if schema.output.name != OUTPUT_VARIABLE:
            raise DefinitionError(
                f"output variable must be {OUTPUT_VARIABLE!r}, got {schema.output.name!r}"
            )
        out = schema.output
        if not (out.lo <= self.threshold <= out.hi):
            raise DefinitionError(
                f"threshold {self.threshold} outside output universe [{out.lo}, {out.hi}]"
            )

    @property
    def schema(self) -> Schema:
        return self.system.schema

    def variable(self, name: str) -> LinguisticVariable:
        variable = self.schema.find(name)
        if variable is None:
            raise DefinitionError(f"unknown variable {name!r}")
        return variable


# The shipped rule base.  Outcome is tinggi when at least two of
# {penghasilan tinggi, pinjaman rendah, jaminan tinggi} hold.  The two
# unanimous rows react to ANY of their signals (OR) while the six mixed rows
# demand ALL of theirs (AND); with complementary linear terms this keeps the
# score monotone in each input, which an all-AND base does not.
DEFAULT_RULES = """\
IF penghasilan IS rendah AND pinjaman IS rendah AND jaminan IS rendah THEN kelayakan IS rendah
IF penghasilan IS rendah AND pinjaman IS rendah AND jaminan IS tinggi THEN kelayakan IS tinggi
IF penghasilan IS rendah OR pinjaman IS tinggi OR jaminan IS rendah THEN kelayakan IS rendah
IF penghasilan IS rendah AND pinjaman IS tinggi AND jaminan IS tinggi THEN kelayakan IS rendah
IF penghasilan IS tinggi AND pinjaman IS rendah AND jaminan IS rendah THEN kelayakan IS tinggi
IF penghasilan IS tinggi OR pinjaman IS rendah OR jaminan IS tinggi THEN kelayakan IS tinggi
IF penghasilan IS tinggi AND pinjaman IS tinggi AND jaminan IS rendah THEN kelayakan IS rendah
IF penghasilan IS tinggi AND pinjaman IS tinggi AND jaminan IS tinggi THEN kelayakan IS tinggi
"""

DEFAULT_THRESHOLD = 60.0


def _variable(name: str, lo: float, hi: float) -> LinguisticVariable:
    return LinguisticVariable(
        name=name, lo=lo, hi=hi, terms={"rendah": falling(lo, hi), "tinggi": rising(lo, hi)}
    )


def default_config() -> FisConfig:
    """The configuration the tool ships with.

    Universes are plausible scales for vehicle-backed consumer lending and
    exist only as defaults; real deployments tune them in the config file.
    """
    schema = Schema(
        inputs=(
            _variable(INCOME_VARIABLE, 1_000_000.0, 20_000_000.0),
            _variable(LOAN_VARIABLE, 5_000_000.0, 200_000_000.0),
            _variable(COLLATERAL_VARIABLE, 10_000_000.0, 300_000_000.0),
        ),
        output=_variable(OUTPUT_VARIABLE, 0.0, 100.0),
    )
    rules = dsl.parse_ruleset(DEFAULT_RULES, schema)
    return FisConfig(system=FuzzySystem(schema=schema, rules=rules), threshold=DEFAULT_THRESHOLD)


def assess(applicant: Applicant, cfg: FisConfig) -> Assessment:
    """Score one applicant and apply the accept cutoff (accept at >= threshold)."""
    applicant.validate()
    values = {
        variable: float(getattr(applicant, field_name))
        for field_name, variable in FIELD_TO_VARIABLE.items()
    }
    trace = cfg.system.infer(values)
    decision = Decision.ACCEPTED if trace.crisp_output >= cfg.threshold else Decision.REJECTED
    return Assessment(
        applicant_id=applicant.id,
        score=trace.crisp_output,
        decision=decision,
        trace=trace,
        clamped_inputs=trace.clamped_inputs,
    )


@dataclass(frozen=True)
class SweepPoint:
    value: float
    score: float
    decision: Decision


def what_if(
    applicant: Applicant, cfg: FisConfig, vary: str, steps: int
) -> list[SweepPoint]:
    """Re-assess across ``steps`` evenly spaced values of one input variable.

    ``vary`` accepts either the variable name (pinjaman) or the applicant
    field name (loan_amount); the other fields keep the applicant's values.
    """
    variable_name = FIELD_TO_VARIABLE.get(vary, vary)
    if variable_name not in VARIABLE_TO_FIELD:
        raise DefinitionError(f"unknown input variable {vary!r}")
    if steps < 2:
        raise InputDomainError(f"sweep needs at least 2 steps, got {steps}")
    field_name = VARIABLE_TO_FIELD[variable_name]
    variable = cfg.variable(variable_name)
    points = []
    for i in range(steps):
        value = variable.lo + i * (variable.hi - variable.lo) / (steps - 1)
        probe = dataclasses.replace(applicant, **{field_name: value})
        result = assess(probe, cfg)
        points.append(SweepPoint(value=value, score=result.score, decision=result.decision))
    return points
