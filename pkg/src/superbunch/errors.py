"""Exception types. All of them are ``ValueError`` subclasses."""


class DomainError(ValueError):
    """Input outside the model's domain."""


class EnumerationBudgetError(DomainError):
    """Brute-force enumeration requested above the pass-count cap."""


class UndersampledError(DomainError):
    """Delay grid too coarse to resolve the fastest fringe."""

    def __init__(self, message: str, required_samples: int):
        super().__init__(message)
        self.required_samples = required_samples


class BandOverlapError(DomainError):
    """Envelope band reaches the filter cutoff."""


class GridSpanError(DomainError):
    """Delay grid too short for a background estimate."""


class TraceFormatError(ValueError):
    """Malformed trace file; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
