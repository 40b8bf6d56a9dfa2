class RecollementError(Exception):
    r"""
    base class of every error raised by the library
    """


class NotPrime(RecollementError):
    def __init__(self, p):
        super().__init__(f'the characteristic {p} is not a prime <= 97')
        self.p = p


class NonAssociative(RecollementError):
    def __init__(self, triple, labels= None):
        names = tuple(labels[i] for i in triple) if labels is not None else triple
        super().__init__(f'(b_i b_j) b_k != b_i (b_j b_k) for the basis triple {names}')
        self.triple = tuple(int(i) for i in triple)


class BadUnit(RecollementError):
    def __init__(self, index, side):
        super().__init__(f'the unit fails the {side} unit law at the basis element {index}')
        self.index = int(index)
        self.side = side


class InvalidQuiver(RecollementError):
    pass


class PresentationError(InvalidQuiver):
    r"""a relation with a path outside the admissible range of lengths"""
    def __init__(self, relation, path, length, bound):
        super().__init__(f'relation {relation!r} contains the path {path} of length {length}; '
                         f'relation paths need length {bound}')
        self.relation = relation
        self.path = path
        self.length = length


class NotFiniteDimensional(RecollementError):
    def __init__(self, cap, path):
        super().__init__(f'the path {path} of length {cap+1} survives the relations; '
                         f'raise nilpotency_cap or add relations')
        self.cap = cap
        self.path = path


class CharacteristicTooSmall(RecollementError):
    def __init__(self, p, dim):
        super().__init__(f'the trace form does not detect the radical for p= {p} <= dim= {dim}; '
                         'give the algebra as a quiver presentation')
        self.p = p
        self.dim = dim


class BudgetExceeded(RecollementError):
    def __init__(self, what, size, budget, hint= None):
        msg = f'{what}: {size} candidates exceed the budget {budget}'
        if hint is not None:
            msg += f' ({hint})'
        super().__init__(msg)
        self.what = what
        self.size = size
        self.budget = budget


class NotIdempotent(RecollementError):
    def __init__(self, element):
        super().__init__(f'{element} is not an idempotent')
        self.element = element


class NotAnIdeal(RecollementError):
    pass


class NotIdempotentIdeal(RecollementError):
    def __init__(self, quotient_dim):
        super().__init__(f'the ideal is not idempotent: dim I/I^2 = {quotient_dim}')
        self.quotient_dim = int(quotient_dim)


class AlgebraMismatch(RecollementError):
    pass


class WrongCategory(RecollementError):
    pass


class InternalInconsistency(RecollementError):
    pass


class NoSplitSurjection(RecollementError):
    def __init__(self, max_rank):
        super().__init__(f'no split surjection A^n -> j_!(P) found for n <= {max_rank}')
        self.max_rank = max_rank


class RepresentationLawViolation(RecollementError):
    def __init__(self, pair, message= None):
        super().__init__(message or f'R(b_i) R(b_j) != sum_k c_ijk R(b_k) at (i, j) = {pair}')
        self.pair = pair


class SpecParseError(RecollementError):
    def __init__(self, message, line= 0, column= 0):
        super().__init__(f'{message} (line {line}, column {column})')
        self.line = line
        self.column = column
