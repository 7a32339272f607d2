"""Exception hierarchy."""


class SupportRankError(Exception):
    """Base class for all domain errors raised by this package."""


class NetworkSyntaxError(SupportRankError, ValueError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class InvalidNetworkError(SupportRankError, ValueError):
    """The arc list violates one or more network conditions."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class NotTreeBasedError(SupportRankError):
    """Raised when a W-fence makes the network non-tree-based."""

    def __init__(self, message: str, wfences=()):
        self.wfences = tuple(wfences)
        super().__init__(message)


class RankOutOfRangeError(SupportRankError, ValueError):
    pass


class OracleCapExceeded(SupportRankError):
    pass
