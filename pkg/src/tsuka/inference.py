"""Linguistic variables, rule firing, and weighted-average defuzzification.

The pipeline: crisp inputs are fuzzified against each variable's terms, every
rule folds its clause degrees with min (AND) or max (OR) into a fire strength,
each fire strength is inverted through the rule's monotone consequent term to
a crisp point, and the final output is the fire-strength-weighted average of
those points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .errors import DefinitionError, InputDomainError, NoRuleFiredError
from .membership import MembershipFunction


class Connective(str, Enum):
    AND = "AND"
    OR = "OR"


def combine_and(a: float, b: float) -> float:
    """Conjunction of two membership degrees: the minimum."""
    return a if a <= b else b


def combine_or(a: float, b: float) -> float:
    """Disjunction of two membership degrees: the maximum."""
    return a if a >= b else b


@dataclass(frozen=True)
class LinguisticVariable:
    """A named quantity over a closed universe, partitioned into named terms."""

    name: str
    lo: float
    hi: float
    terms: Mapping[str, MembershipFunction]

    def __post_init__(self):
        if not self.name:
            raise DefinitionError("variable name must be nonempty")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DefinitionError(f"{self.name}: universe bounds must be finite")
        if not self.lo < self.hi:
            raise DefinitionError(
                f"{self.name}: universe needs lo < hi, got [{self.lo}, {self.hi}]"
            )
        if not self.terms:
            raise DefinitionError(f"{self.name}: at least one term is required")
        object.__setattr__(self, "terms", dict(self.terms))
        for term, mf in self.terms.items():
            if mf.x_min < self.lo or mf.x_max > self.hi:
                raise DefinitionError(
                    f"{self.name}.{term}: membership [{mf.x_min}, {mf.x_max}] "
                    f"exceeds universe [{self.lo}, {self.hi}]"
                )

    def clamp(self, x: float) -> float:
        return min(self.hi, max(self.lo, x))

    def fuzzify(self, x: float) -> dict[str, float]:
        """Membership degree of ``x`` in every term.

        Values outside the universe are clamped to its edge first; callers
        that need to surface the clamping use :meth:`clamp` to detect it.
        """
        if not math.isfinite(x):
            raise InputDomainError(f"{self.name}: cannot fuzzify x={x!r}")
        x = self.clamp(x)
        return {term: mf.evaluate(x) for term, mf in self.terms.items()}


@dataclass(frozen=True)
class Clause:
    variable: str
    term: str


@dataclass(frozen=True)
class Rule:
    """IF <clauses joined by one connective> THEN <consequent clause>."""

    antecedent: tuple[Clause, ...]
    connective: Connective
    consequent: Clause

    def __post_init__(self):
        object.__setattr__(self, "antecedent", tuple(self.antecedent))
        if not self.antecedent:
            raise DefinitionError("rule needs at least one antecedent clause")


@dataclass(frozen=True)
class Schema:
    """The variables a rule set is written against: inputs plus one output."""

    inputs: tuple[LinguisticVariable, ...]
    output: LinguisticVariable

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        if not self.inputs:
            raise DefinitionError("schema needs at least one input variable")
        names = [v.name for v in self.inputs] + [self.output.name]
        if len(set(names)) != len(names):
            raise DefinitionError(f"variable names must be unique, got {names}")

    def find(self, name: str) -> LinguisticVariable | None:
        if name == self.output.name:
            return self.output
        for variable in self.inputs:
            if variable.name == name:
                return variable
        return None

    def is_output(self, name: str) -> bool:
        return name == self.output.name


def validate_rule(rule: Rule, schema: Schema) -> None:
    """Check that every clause of ``rule`` resolves against ``schema``.

    Antecedent clauses must name input variables, the consequent must name
    the output variable, and every term must exist on its variable.
    """
    for clause in rule.antecedent:
        variable = schema.find(clause.variable)
        if variable is None:
            raise DefinitionError(f"unknown variable in antecedent: {clause.variable!r}")
        if schema.is_output(clause.variable):
            raise DefinitionError(
                f"output variable {clause.variable!r} cannot appear in an antecedent"
            )
        if clause.term not in variable.terms:
            raise DefinitionError(
                f"variable {clause.variable!r} has no term {clause.term!r}"
            )
    consequent = rule.consequent
    if schema.find(consequent.variable) is None:
        raise DefinitionError(f"unknown variable in consequent: {consequent.variable!r}")
    if not schema.is_output(consequent.variable):
        raise DefinitionError(
            f"input variable {consequent.variable!r} cannot appear in a consequent"
        )
    if consequent.term not in schema.output.terms:
        raise DefinitionError(
            f"output variable {consequent.variable!r} has no term {consequent.term!r}"
        )
    # linear shapes are monotone by construction; anything else cannot invert
    if not isinstance(schema.output.terms[consequent.term], MembershipFunction):
        raise DefinitionError(f"consequent term {consequent.term!r} is not invertible")


@dataclass(frozen=True)
class RuleFiring:
    """One rule's contribution: fire strength and the crisp point it selects."""

    rule_index: int
    alpha: float
    z_i: float


@dataclass(frozen=True)
class InferenceResult:
    crisp_output: float
    firings: tuple[RuleFiring, ...]
    clamped_inputs: tuple[str, ...] = ()


def fire_rule(
    rule: Rule,
    fuzzified: Mapping[str, Mapping[str, float]],
    output: LinguisticVariable,
    rule_index: int = 0,
) -> RuleFiring:
    """Fold the rule's clause degrees into a fire strength and invert it."""
    fold = combine_and if rule.connective is Connective.AND else combine_or
    alpha: float | None = None
    for clause in rule.antecedent:
        degrees = fuzzified.get(clause.variable)
        if degrees is None or clause.term not in degrees:
            raise DefinitionError(
                f"clause '{clause.variable} IS {clause.term}' does not resolve "
                f"against the fuzzified inputs"
            )
        degree = degrees[clause.term]
        alpha = degree if alpha is None else fold(alpha, degree)
    consequent_mf = output.terms.get(rule.consequent.term)
    if rule.consequent.variable != output.name or consequent_mf is None:
        raise DefinitionError(
            f"consequent '{rule.consequent.variable} IS {rule.consequent.term}' "
            f"does not resolve against output variable {output.name!r}"
        )
    return RuleFiring(rule_index=rule_index, alpha=alpha, z_i=consequent_mf.invert(alpha))


@dataclass(frozen=True)
class FuzzySystem:
    """An immutable rule base over a schema; inference is a pure function."""

    schema: Schema
    rules: tuple[Rule, ...]

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if not self.rules:
            raise DefinitionError("a fuzzy system needs at least one rule")
        for rule in self.rules:
            validate_rule(rule, self.schema)

    def fuzzify_inputs(self, values: Mapping[str, float]) -> tuple[dict, tuple[str, ...]]:
        """Fuzzify every input once; returns the degree table and clamp flags."""
        missing = [v.name for v in self.schema.inputs if v.name not in values]
        if missing:
            raise InputDomainError(f"missing input values for: {', '.join(missing)}")
        fuzzified: dict[str, dict[str, float]] = {}
        clamped: list[str] = []
        for variable in self.schema.inputs:
            x = float(values[variable.name])
            if not math.isfinite(x):
                raise InputDomainError(f"{variable.name}: non-finite input {x!r}")
            if x < variable.lo or x > variable.hi:
                clamped.append(variable.name)
            fuzzified[variable.name] = variable.fuzzify(x)
        return fuzzified, tuple(clamped)

    def infer(self, values: Mapping[str, float]) -> InferenceResult:
        """Run the full pipeline and return the crisp output with its trace.

        Raises :class:`NoRuleFiredError` when every fire strength is zero;
        a decision is never fabricated from 0/0.
        """
        fuzzified, clamped = self.fuzzify_inputs(values)
        firings = tuple(
            fire_rule(rule, fuzzified, self.schema.output, rule_index=i)
            for i, rule in enumerate(self.rules)
        )
        total = math.fsum(f.alpha for f in firings)
        if total == 0.0:
            raise NoRuleFiredError(values)
        # fsum makes both sums exactly rounded, so the quotient is identical
        # under any permutation of the rules
        crisp = math.fsum(f.alpha * f.z_i for f in firings) / total
        fired = [f.z_i for f in firings if f.alpha > 0.0]
        # the weighted mean must stay inside the fired consequents' range
        # even when the final division rounds outward by an ulp
        crisp = min(max(crisp, min(fired)), max(fired))
        return InferenceResult(crisp_output=crisp, firings=firings, clamped_inputs=clamped)
