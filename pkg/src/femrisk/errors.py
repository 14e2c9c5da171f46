"""Exception types raised across the package."""


class FemriskError(Exception):
    """Base class for all package errors."""


class OutOfRange(FemriskError, ValueError):
    """A degree or score fell outside [0, 1]."""


class NonFiniteInput(FemriskError, ValueError):
    pass


class EmptyInput(FemriskError, ValueError):
    pass


class UnknownLevel(FemriskError, KeyError):
    def __init__(self, label, factor):
        self.label = label
        self.factor = factor
        super().__init__(f"unknown level {label!r} for factor {factor!r}")

    def __str__(self):
        return self.args[0]


class UnknownFactor(FemriskError, KeyError):
    def __init__(self, factor):
        self.factor = factor
        super().__init__(f"unknown factor {factor!r}")

    def __str__(self):
        return self.args[0]


class UnknownRule(FemriskError, KeyError):
    def __init__(self, rule_id):
        self.rule_id = rule_id
        super().__init__(f"unknown rule {rule_id!r}")

    def __str__(self):
        return self.args[0]


class MissingActivation(FemriskError, KeyError):
    def __init__(self, rule_id):
        self.rule_id = rule_id
        super().__init__(f"no activation supplied for rule {rule_id}")

    def __str__(self):
        return self.args[0]


class DocumentSyntaxError(FemriskError, ValueError):
    """Input bytes are not well-formed (bad JSON/CSV, bad encoding)."""

    def __init__(self, message, location=None):
        self.location = location
        where = f"{location}: " if location else ""
        super().__init__(f"{where}{message}")


class SchemaError(FemriskError, ValueError):
    """A document field is missing, unexpected, or of the wrong shape."""

    def __init__(self, field, reason):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class ValidationError(FemriskError, ValueError):
    """A parsed rulebase violates one or more semantic invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = len(self.violations) - 5
        if more > 0:
            lines += f"; ... ({more} more)"
        super().__init__(f"rulebase failed validation: {lines}")


class CaseDataError(FemriskError, ValueError):
    """A case file is malformed; carries the offending location."""

    def __init__(self, message, location=None):
        self.location = location
        where = f"{location}: " if location else ""
        super().__init__(f"{where}{message}")


class DuplicateCaseId(CaseDataError):
    pass


class MixedModeError(FemriskError, ValueError):
    """A case supplied both factor assignments and xy coordinates."""
