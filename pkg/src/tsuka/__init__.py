"""Tsukamoto fuzzy inference for loan-eligibility decisions.

A small stack: linear membership curves, a min/max rule engine with
monotone-consequent inversion and weighted-average defuzzification, an
IF-THEN rule language, and a loan scoring domain with persistence, an HTTP
API, and a CLI on top.
"""

from .errors import (
    ApplicantValidationError,
    ConfigFormatError,
    CsvFormatError,
    DefinitionError,
    DuplicateApplicantError,
    InputDomainError,
    NoRuleFiredError,
    TsukaError,
    UnknownApplicantError,
)
from .membership import MembershipFunction, Shape, falling, rising
from .inference import (
    Clause,
    Connective,
    FuzzySystem,
    InferenceResult,
    LinguisticVariable,
    Rule,
    RuleFiring,
    Schema,
    combine_and,
    combine_or,
    fire_rule,
    validate_rule,
)
from .dsl import (
    ParseError,
    ParseErrorKind,
    RuleSyntaxError,
    SourceSpan,
    format_rule,
    format_ruleset,
    parse_rule,
    parse_ruleset,
)
from .loan import (
    Applicant,
    Assessment,
    Decision,
    FisConfig,
    SweepPoint,
    assess,
    default_config,
    what_if,
)
from .store import (
    ApplicantStore,
    BatchReport,
    export_csv,
    ingest_csv,
    load_config,
    save_config,
)

__version__ = "0.1.0"
