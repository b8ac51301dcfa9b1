"""Exception types shared across the package."""


class TsukaError(Exception):
    """Base class for every error this package raises on purpose."""


class InputDomainError(TsukaError, ValueError):
    """A runtime input lies outside the operation's domain (non-finite, out of range)."""


class DefinitionError(TsukaError, ValueError):
    """A fuzzy-system definition violates its construction invariants."""


class NoRuleFiredError(TsukaError):
    """Every rule fired with strength zero; a crisp output would be 0/0.

    Carries the offending inputs so callers can report them instead of
    fabricating a default decision.
    """

    def __init__(self, inputs):
        self.inputs = dict(inputs)
        super().__init__(f"no rule fired for inputs {self.inputs!r}")


class ApplicantValidationError(TsukaError, ValueError):
    """An applicant record has one or more invalid fields."""

    def __init__(self, field_errors):
        self.field_errors = tuple(field_errors)
        detail = "; ".join(f"{field}: {message}" for field, message in self.field_errors)
        super().__init__(f"invalid applicant: {detail}")


class ConfigFormatError(TsukaError, ValueError):
    """A configuration document failed schema validation.

    ``field_path`` names the offending location, e.g. ``variables[2].terms.rendah``.
    """

    def __init__(self, field_path, message):
        self.field_path = field_path
        super().__init__(f"{field_path}: {message}")


class CsvFormatError(TsukaError, ValueError):
    """A CSV file is unusable as a whole (unreadable, bad header)."""


class DuplicateApplicantError(TsukaError):
    def __init__(self, applicant_id):
        self.applicant_id = applicant_id
        super().__init__(f"applicant id already exists: {applicant_id!r}")


class UnknownApplicantError(TsukaError):
    def __init__(self, applicant_id):
        self.applicant_id = applicant_id
        super().__init__(f"no applicant with id: {applicant_id!r}")
