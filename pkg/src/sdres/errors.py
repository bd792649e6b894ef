"""Exception hierarchy.

Input problems (bad system files, malformed grammar) map to CLI exit code 1;
internal/degenerate-computation problems map to exit code 2.
"""


class SDResError(Exception):
    pass


class InputError(SDResError):
    """The user-supplied system is malformed or out of contract."""


class ParseError(InputError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {col}" if col is not None else "")
        super().__init__(message + where)


class DuplicatePolynomial(InputError):
    pass


class DuplicateVariable(InputError):
    """The same variable instance appears twice within one term."""


class NonGenericTerm(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class InternalError(SDResError):
    """Computation-side failure: degenerate random choices, broken invariants."""


class NotDivisible(InternalError):
    pass


class MissingSymbol(InternalError):
    pass


class RankDrop(InternalError):
    pass


class CorankLost(InternalError):
    pass


class NoEssentialSubset(InternalError):
    pass


class DegenerateLattice(InternalError):
    pass


class DegenerateLifting(InternalError):
    pass


class InfiniteJacobiBound(InternalError):
    pass


class RetriesExhausted(InternalError):
    pass


class ZeroDenominator(InternalError):
    pass
