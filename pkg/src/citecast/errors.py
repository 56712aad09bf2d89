"""Exception hierarchy shared by all citecast modules."""


class CitecastError(Exception):
    """Base class for all citecast errors."""


class CorpusIOError(CitecastError):
    """A corpus or baseline file could not be read or written."""


class SchemaError(CitecastError):
    """A row does not conform to the corpus file schema."""

    def __init__(self, message, row=None, field=None):
        self.row = row
        self.field = field
        where = []
        if row is not None:
            where.append(f"row {row}")
        if field is not None:
            where.append(f"field {field!r}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


class DuplicateIdError(CitecastError):
    """Two records share the same publication id."""

    def __init__(self, record_id):
        self.record_id = record_id
        super().__init__(f"duplicate publication id {record_id!r}")


class ValidationError(CitecastError):
    """One or more records violate the publication-record invariants."""

    def __init__(self, failures):
        # failures: list of (record_id, [violation, ...])
        self.failures = list(failures)
        lines = [f"{rid}: {'; '.join(msgs)}" for rid, msgs in self.failures]
        super().__init__(
            f"{len(self.failures)} invalid record(s): " + " | ".join(lines[:5])
            + ("" if len(lines) <= 5 else f" | ... and {len(lines) - 5} more")
        )


class EmptyCorpusError(CitecastError):
    """An operation that requires records ran on an empty corpus."""


class MissingBaselineError(CitecastError):
    """No normalization baseline for a required (sc, year, window) cell."""

    def __init__(self, sc, year, window):
        self.sc, self.year, self.window = sc, year, window
        super().__init__(f"no baseline for sc={sc!r} year={year} window={window}")


class ZeroBaselineError(CitecastError):
    """Normalization denominator is zero while the raw count is positive."""


class DegenerateInputError(CitecastError):
    """Input has too few points or no variation for the requested statistic."""


class DomainError(CitecastError):
    """Argument outside the mathematical domain of a function."""


class UnknownScError(CitecastError):
    """A record references a subject-category code outside the universe."""


class UnderdeterminedError(CitecastError):
    """Fewer rows than fitted columns; the least-squares problem has no
    unique solution."""


class NonFiniteError(CitecastError):
    """A design matrix or response contains NaN or infinity."""


class MissingFeatureError(CitecastError):
    """predict() was called without a value for a fitted column."""

    def __init__(self, columns):
        self.columns = tuple(columns)
        super().__init__(f"missing feature value(s) for: {', '.join(self.columns)}")


class NestingViolationError(CitecastError):
    """rss_restricted < rss_full beyond tolerance; the models are not nested
    on the same rows."""


class NoDummiesError(CitecastError):
    """A fit has no subject-category dummy coefficients to summarize."""


class ConfigError(CitecastError):
    """A generator or run configuration is invalid or unrealizable."""
