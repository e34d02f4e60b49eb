"""Exception hierarchy shared by every segalkit module."""


class SegalkitError(Exception):
    """Base class for all errors raised by this package."""


class BoundExceeded(SegalkitError):
    """A requested construction would exceed the configured size bound.

    Raised instead of truncating; carries the offending size when known.
    """

    def __init__(self, message, size=None, bound=None):
        super().__init__(message)
        self.size = size
        self.bound = bound


class MissingLimit(SegalkitError):
    """The base is not closed under a limit requested by a construction."""


class MissingExponential(SegalkitError):
    """The base lacks an exponential requested by a construction."""


class InvalidSubset(SegalkitError):
    """A face selector was built from an empty or out-of-range vertex set."""


class Unrepresentable(SegalkitError):
    """A mapping set was requested out of an object with no finite presentation."""


class AxiomViolation(SegalkitError):
    """Internal-category data failed an axiom; `equation` names the failure."""

    def __init__(self, message, equation=None, witness=None):
        super().__init__(message)
        self.equation = equation
        self.witness = witness


class ProbeTooSmall(SegalkitError):
    """The probe failed its stability check under enlargement."""


class SearchBudgetExceeded(SegalkitError):
    """An exhaustive search ran past its configured budget (hard failure,
    never silently reported as success)."""


class ColimitNotFinite(SegalkitError):
    """A colimit of categories did not close into a finite category within
    the configured budget."""


class SchemaError(SegalkitError):
    """An instance file failed to parse or validate against the JSON schema."""


class Budget:
    """Mutable tick counter with a hard cap.

    Passed through searches so that every brute-force enumeration is
    accounted against one explicit limit.
    """

    def __init__(self, limit=2_000_000, label="search"):
        self.limit = int(limit)
        self.used = 0
        self.label = label

    def tick(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise SearchBudgetExceeded(
                f"{self.label}: budget of {self.limit} steps exhausted"
            )

    def remaining(self):
        return self.limit - self.used
