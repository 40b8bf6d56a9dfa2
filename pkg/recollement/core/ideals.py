import itertools
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm

from recollement.core.algebra import (
    DEFAULT_BUDGET, QuiverData, build_algebra, enumerate_idempotents, format_element,
)
from recollement.utils.errors import (
    AlgebraMismatch, BudgetExceeded, CharacteristicTooSmall, InvalidQuiver,
    NotAnIdeal, NotIdempotent, NotIdempotentIdeal,
)
from recollement.utils.linalg import (
    all_subspaces, all_vectors, as_rows, complement_columns,
    count_subspaces, in_span, left_nullspace, mulmod, quotient_projection,
    rref, row_space,
)

# number of subspaces of A scanned when enumerating ideals by brute force
DEFAULT_SUBSPACE_BUDGET = 5000


class Ideal:
    r"""
    Two-sided ideal of an algebra, stored as its rref basis.
    Two ideals are equal iff they live in the same algebra and have the same rref.
    """

    def __init__(self, algebra, rows):
        self.algebra = algebra
        self.rows, self.pivots = rref(as_rows(rows, algebra.dim), algebra.p)
        self.rows.setflags(write= False)

    @property
    def dim(self):
        return self.rows.shape[0]

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.algebra is self.algebra \
            and np.array_equal(other.rows, self.rows)

    def __hash__(self):
        return hash((id(self.algebra), self.rows.tobytes(), self.rows.shape))

    def __repr__(self):
        return f'Ideal(dim= {self.dim}, basis= [{", ".join(self.labels())}])'

    def contains(self, x):
        return in_span(self.rows, self.pivots, x, self.algebra.p)

    def labels(self):
        return [format_element(self.algebra, r) for r in self.rows]

    def sort_key(self):
        return self.dim, self.rows.tobytes()


def _multiplication_matrices(a):
    eye = np.eye(a.dim, dtype= np.int64)
    lefts = [a.left_mult_matrix(b) for b in eye]
    rights = [a.right_mult_matrix(b) for b in eye]
    return lefts, rights


def _closure(a, rows):
    p = a.p
    lefts, rights = _multiplication_matrices(a)
    R = row_space(as_rows(rows, a.dim), p)
    while True:
        if R.shape[0] == 0:
            return R
        grown = row_space(np.vstack([R] + [mulmod(R, M, p) for M in lefts + rights]), p)
        if grown.shape[0] == R.shape[0]:
            return grown
        R = grown


def ideal_generated(a, elements):
    r"""
    smallest two-sided ideal containing `elements` (AxA summed over x)
    """
    return Ideal(a, _closure(a, elements))


def is_ideal(a, rows):
    rows = row_space(as_rows(rows, a.dim), a.p)
    return np.array_equal(_closure(a, rows), rows)


def as_ideal(a, rows):
    r"""wraps a subspace as an Ideal, raising NotAnIdeal if it is not one"""
    if isinstance(rows, Ideal):
        if rows.algebra is not a:
            raise AlgebraMismatch('the ideal belongs to another algebra')
        return rows
    if not is_ideal(a, rows):
        raise NotAnIdeal('the subspace is not closed under multiplication by the algebra')
    return Ideal(a, rows)


def ideal_product(i, j):
    r"""
    the ideal IJ spanned by the products xy, x in I, y in J
    """
    a = i.algebra
    if j.algebra is not a:
        raise AlgebraMismatch('ideals of different algebras')
    if i.dim == 0 or j.dim == 0:
        return Ideal(a, [])
    products = np.einsum('ai,bj,ijk->abk', i.rows, j.rows, a.table) % a.p
    return ideal_generated(a, products.reshape(-1, a.dim))


def ideal_sum(i, j):
    return Ideal(i.algebra, np.vstack([i.rows, j.rows]))


def is_idempotent_ideal(i):
    return ideal_product(i, i) == i


def idempotent_to_ideal(a, e):
    e = np.asarray(e, dtype= np.int64) % a.p
    if not a.is_idempotent(e):
        raise NotIdempotent(format_element(a, e))
    return ideal_generated(a, [e])


def nilpotency_index(i):
    r"""
    smallest k with I^k = 0 (1 for the zero ideal), None if I is not nilpotent
    """
    power, k = i, 1
    while power.dim > 0:
        nxt = ideal_product(power, i)
        if nxt == power:
            return None
        power, k = nxt, k + 1
    return k


def radical(a, budget= DEFAULT_BUDGET):
    r"""
    Jacobson radical of `a`.

    Quiver data gives it directly. Otherwise, when p > dim A the radical is the
    kernel of the trace form (x, y) -> tr(right multiplication by xy); below that
    it is computed as the set of x with AxA nilpotent, which needs p^dim <= budget.
    """
    p, n = a.p, a.dim
    if a.quiver is not None:
        return Ideal(a, a.quiver.radical_rows)
    if n == 0:
        return Ideal(a, [])
    if p > n:
        traces = np.einsum('jkj->k', a.table) % p
        gram = np.einsum('ijk,k->ij', a.table, traces) % p
        return as_ideal(a, left_nullspace(gram, p))
    if p**n > budget:
        raise CharacteristicTooSmall(p, n)

    J, pivots = np.zeros((0, n), dtype= np.int64), []
    for x in all_vectors(n, p)[1:]:
        if J.shape[0] and in_span(J, pivots, x, p):
            continue
        axa = ideal_generated(a, [x])
        if nilpotency_index(axa) is not None:
            J, pivots = rref(np.vstack([J, axa.rows]), p)
    return Ideal(a, J)


@dataclass
class SemiprimaryWitness:
    is_semiprimary: bool
    nilpotency_index: int
    radical_dim: int
    semisimple_quotient_dim: int


def is_semiprimary(a, budget= DEFAULT_BUDGET):
    r"""
    Every finite dimensional algebra is semiprimary; the witness records the
    nilpotency index of the radical and checks that A/J has zero radical.
    """
    J = radical(a, budget)
    index = nilpotency_index(J)
    top, _ = quotient_algebra(a, J)
    ok = index is not None and radical(top, budget).dim == 0
    return SemiprimaryWitness(ok, index, J.dim, top.dim)


def quotient_algebra(a, ideal, name= None):
    r"""
    A/I with basis the classes of the basis elements outside the pivots of I.

    # Returns
    _________
    quotient : Algebra
    projection : np.ndarray (dim A, dim A/I)
    """
    i = as_ideal(a, ideal)
    p, n = a.p, a.dim
    P = quotient_projection(i.rows, i.pivots, n, p)
    keep = complement_columns(i.pivots, n)
    m = len(keep)
    sub = a.table[np.ix_(keep, keep)]
    table = mulmod(sub.reshape(m * m, n), P, p).reshape(m, m, m)
    unit = mulmod(a.unit, P, p)
    labels = [a.basis[c] for c in keep]

    quiver = None
    if a.quiver is not None:
        V = mulmod(a.quiver.vertex_idempotents, P, p)
        alive = [k for k, v in enumerate(V) if np.any(v)]
        J = a.quiver.radical_rows
        quiver = QuiverData(
            vertex_idempotents= V[alive].reshape(len(alive), m),
            radical_rows= row_space(mulmod(J, P, p), p) if J.shape[0] else np.zeros((0, m), dtype= np.int64),
            vertex_names= tuple(a.quiver.vertex_names[k] for k in alive),
        )
    quotient = build_algebra(p, labels, table, unit, name= name, quiver= quiver)
    return quotient, P


def basic_structure(a, budget= DEFAULT_BUDGET):
    r"""
    Vertex idempotents and radical of a basic algebra, or None when `a`
    is not basic (A/J is not a product of copies of F_p).
    Without quiver data the idempotents come from an exhaustive search.
    """
    if a.quiver is not None:
        return a.quiver
    J = radical(a, budget)
    idempotents = enumerate_idempotents(a, budget, mode= 'exhaustive')
    p = a.p

    def refine(eps):
        for f in idempotents:
            if not np.any(f) or np.array_equal(f, eps):
                continue
            if np.array_equal(a.mul(eps, f), f) and np.array_equal(a.mul(f, eps), f):
                return f
        return None

    done, todo = [], [a.one()] if a.dim else []
    while todo:
        eps = todo.pop(0)
        f = refine(eps)
        if f is None:
            done.append(eps)
        else:
            todo.extend([f, (eps - f) % p])
    if a.dim - J.dim != len(done):
        return None
    done.sort(key= lambda v: tuple(-v))
    return QuiverData(
        vertex_idempotents= as_rows(done, a.dim),
        radical_rows= J.rows.copy(),
        vertex_names= tuple(str(k + 1) for k in range(len(done))),
    )


def enumerate_ideals(a, budget= DEFAULT_SUBSPACE_BUDGET, verbose= False):
    r"""
    every two-sided ideal of `a`, found by scanning all subspaces
    """
    size = count_subspaces(a.dim, a.p)
    if size > budget:
        raise BudgetExceeded('subspace scan', size, budget, hint= 'use vertex mode')
    ideals = [Ideal(a, rows) for rows in tqdm(all_subspaces(a.dim, a.p), total= size,
                                               disable= not verbose, desc= 'subspaces')
              if is_ideal(a, rows)]
    return sorted(ideals, key= Ideal.sort_key)


def enumerate_idempotent_ideals(a, mode= 'auto', budget= DEFAULT_SUBSPACE_BUDGET, verbose= False):
    r"""
    Idempotent ideals of `a`, sorted by (dim, rref bytes).

    # Arguments
    ___________
    mode : str
        'brute' scans all subspaces (complete), 'vertex' returns the ideals AeA
        for e a sum of vertex idempotents (complete only when every idempotent
        ideal has that form), 'auto' picks brute when affordable.
    """
    if mode == 'auto':
        mode = 'brute' if count_subspaces(a.dim, a.p) <= budget else 'vertex'
    if mode == 'brute':
        return [i for i in enumerate_ideals(a, budget, verbose) if is_idempotent_ideal(i)]
    if mode == 'vertex':
        quiver = a.quiver or basic_structure(a)
        if quiver is None:
            raise InvalidQuiver('vertex mode needs a basic algebra')
        V = quiver.vertex_idempotents
        seen = set()
        for subset in itertools.product((0, 1), repeat= len(V)):
            e = np.asarray(subset, dtype= np.int64) @ V % a.p if len(V) else a.zero()
            seen.add(ideal_generated(a, [e]))
        return sorted(seen, key= Ideal.sort_key)
    raise ValueError(f'unknown ideal enumeration mode {mode!r}')


def check_idempotent_ideal(i):
    r"""raises NotIdempotentIdeal carrying dim I/I^2 when I != I^2"""
    square = ideal_product(i, i)
    if square != i:
        raise NotIdempotentIdeal(i.dim - square.dim)
    return i
