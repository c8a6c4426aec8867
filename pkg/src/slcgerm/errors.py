"""Exception hierarchy.

Every error raised for bad mathematical input derives from :class:`DomainError`;
the CLI maps those to exit code 1.
"""


class DomainError(Exception):
    """Base class for domain-level failures."""


class SingularMatrix(DomainError):
    pass


class ZeroDenominatorPolynomial(DomainError):
    pass


class WeightBelowTwo(DomainError):
    pass


class InvalidParameters(DomainError):
    pass


class UnknownVertex(DomainError):
    pass


class SelfLoopForbidden(DomainError):
    pass


class NotNegativeDefinite(DomainError):
    pass


class NotAChain(DomainError):
    pass


class AmbiguousAnchor(DomainError):
    pass


class OutOfCatalog(DomainError):
    pass


class RoleRequired(DomainError):
    pass


class SltNotPresentable(DomainError):
    pass


class RequiresGraph(DomainError):
    pass


class OracleUnavailable(DomainError):
    pass


class ValidationFailed(DomainError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(str(d) for d in self.diagnostics)
        super().__init__(f"germ failed validation: {lines}")


class GermParseError(DomainError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        self.message = message
        super().__init__(f"line {lineno}: {message}")
