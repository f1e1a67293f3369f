"""Exception types shared across the package."""


class QdtError(Exception):
    """Base class for all package errors."""


class UnknownGenerator(QdtError):
    pass


class InvalidExponent(QdtError):
    """Negative power requested for a generator that has no inverse."""


class CrossAlgebraMix(QdtError):
    """Arithmetic attempted between elements of different algebras."""


class NotAHopfAlgebra(QdtError):
    """Coalgebra operation requested on a plain (co)module algebra."""


class WindowExceeded(QdtError):
    """A linear-map table was queried outside its declared window."""


class NonGrouplikeInput(QdtError):
    pass


class NotInBaseImage(QdtError):
    """A product expected to land in the base subalgebra did not."""


class RootConditionViolated(QdtError):
    """(-q)^(n^2) = 1 fails in the requested scalar ring."""


class CyclotomicModeUnsupported(QdtError):
    """Operation needs field coefficients; the cyclotomic quotient ring has none."""


class IncompleteWindow(QdtError):
    """Character decomposition did not reconstruct the input exactly."""


class WindowOverflow(QdtError):
    """Operator application pushed amplitude outside the truncation window."""


class NonConvergence(QdtError):
    """Power iteration failed to stabilise within the iteration budget."""


class CompletionFailure(QdtError):
    """Critical-pair completion of a quotient rewrite system did not terminate."""


class ExprSyntaxError(QdtError):
    """Parse error, carrying the offending position in the input string."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
