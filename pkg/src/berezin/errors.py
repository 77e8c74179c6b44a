"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`BerezinError`.  The CLI maps :class:`ParseError` to exit code 1
and :class:`DomainError` to exit code 2.
"""


class BerezinError(Exception):
    pass


class ParseError(BerezinError):
    def __init__(self, position, message):
        self.position = position
        self.message = message
        super().__init__(f"at position {position}: {message}")


class DomainError(BerezinError):
    pass


class RankMismatch(DomainError):
    pass


class ModeMismatch(DomainError):
    pass


class RankTooLarge(DomainError):
    pass


class NotInvertible(DomainError):
    pass


class ExactModeBodyNonzero(DomainError):
    pass


class DimMismatch(DomainError):
    pass


class ParityViolation(DomainError):
    def __init__(self, row, col, message=None):
        self.row = row
        self.col = col
        super().__init__(message or f"entry ({row}, {col}) has the wrong parity")


class OddMatrix(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class NonHomogeneous(DomainError):
    pass


class OddDerivativeUndefined(DomainError):
    pass


class DegreeZero(DomainError):
    pass


class MissingTransition(DomainError):
    pass


class InvalidTransition(DomainError):
    pass


class AntisymmetryViolation(DomainError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"bracket [{i}, {j}] is not graded antisymmetric")


class JacobiViolation(DomainError):
    def __init__(self, i, j, k):
        self.i, self.j, self.k = i, j, k
        super().__init__(f"super-Jacobi identity fails on ({i}, {j}, {k})")


class DegreeOverflow(DomainError):
    pass


class NotInfinitesimallyAntisymmetric(DomainError):
    def __init__(self, alpha, beta):
        self.alpha, self.beta = alpha, beta
        super().__init__(f"omega(Xe_{alpha}, e_{beta}) + omega(e_{alpha}, Xe_{beta}) != 0")
