import re
import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from recollement.utils.errors import (
    AlgebraMismatch, BadUnit, BudgetExceeded, NonAssociative,
    NotIdempotent, NotPrime, SpecParseError,
)
from recollement.utils.linalg import (
    MAX_PRIME, all_vectors, coordinates, is_prime, mulmod, row_space, rref,
)

# p^dim cap for exhaustive searches over all elements of an algebra
DEFAULT_BUDGET = 4096


@dataclass(frozen= True, eq= False)
class QuiverData:
    r"""
    Basic structure of an algebra: a complete set of primitive orthogonal
    idempotents (one per vertex) and the radical, both in algebra coordinates.
    Path algebras carry it from construction; corners and quotients inherit it.

    # Arguments
    ___________
    vertex_idempotents : np.ndarray (r, dim)
    radical_rows : np.ndarray
        rref basis of the radical (the arrow ideal for path algebras)
    vertex_names : tuple of str
    presentation : QuiverPresentation or None
    """
    vertex_idempotents: np.ndarray
    radical_rows: np.ndarray
    vertex_names: tuple
    presentation: object = None


@dataclass(frozen= True, eq= False)
class Algebra:
    r"""
    Finite dimensional associative unital algebra over F_p given by structure
    constants: b_i b_j = sum_k table[i, j, k] b_k.
    Build it through `build_algebra`, which checks associativity and the unit law.
    """
    p: int
    basis: tuple
    table: np.ndarray
    unit: np.ndarray
    name: Optional[str] = None
    quiver: Optional[QuiverData] = None
    elements: dict = field(default_factory= dict)

    def __post_init__(self):
        self.table.setflags(write= False)
        self.unit.setflags(write= False)

    @property
    def dim(self):
        return len(self.basis)

    def __repr__(self):
        return f'Algebra({self.name or "?"}, p= {self.p}, dim= {self.dim})'

    def zero(self):
        return np.zeros(self.dim, dtype= np.int64)

    def one(self):
        return self.unit.copy()

    def basis_vector(self, i):
        v = self.zero()
        v[i] = 1
        return v

    def mul(self, x, y):
        return np.einsum('i,j,ijk->k', np.asarray(x, dtype= np.int64),
                         np.asarray(y, dtype= np.int64), self.table) % self.p

    def left_mult_matrix(self, x):
        r"""matrix L with y @ L = x y"""
        return np.einsum('i,ijk->jk', np.asarray(x, dtype= np.int64), self.table) % self.p

    def right_mult_matrix(self, x):
        r"""matrix R with y @ R = y x"""
        return np.einsum('i,jik->jk', np.asarray(x, dtype= np.int64), self.table) % self.p

    def is_idempotent(self, x):
        x = np.asarray(x, dtype= np.int64) % self.p
        return np.array_equal(self.mul(x, x), x)

    def element(self, text):
        return parse_element(self, text)

    def format(self, x):
        return format_element(self, x)


def _check_prime(p):
    if not is_prime(p) or p > MAX_PRIME:
        raise NotPrime(p)


def build_algebra(p, basis, table, unit, name= None, quiver= None, elements= None):
    r"""
    Validates structure constants and returns an Algebra.
    Associativity is checked on all dim^3 basis triples.

    # Arguments
    ___________
    p : int
        a prime <= 97
    basis : list of str
        distinct basis labels
    table : array-like (dim, dim, dim)
        table[i, j] are the coordinates of b_i b_j
    unit : array-like (dim,)

    # Returns
    _________
    Algebra
    """
    _check_prime(p)
    basis = tuple(str(b) for b in basis)
    n = len(basis)
    if len(set(basis)) != n:
        raise AlgebraMismatch(f'basis labels are not distinct: {basis}')
    table = np.asarray(table, dtype= np.int64)
    unit = np.asarray(unit, dtype= np.int64)
    if table.size != n**3 or unit.size != n:
        raise AlgebraMismatch(f'table of shape {table.shape} and unit of shape {unit.shape} '
                              f'do not fit {n} basis labels')
    table = table.reshape((n, n, n)) % p
    unit = unit.reshape(n) % p

    # (b_i b_j) b_k - b_i (b_j b_k)
    left = np.einsum('ijl,lkm->ijkm', table, table)
    right = np.einsum('jkl,ilm->ijkm', table, table)
    bad = np.argwhere((left - right) % p)
    if len(bad):
        raise NonAssociative(tuple(bad[0][:3]), basis)

    eye = np.eye(n, dtype= np.int64)
    left_unit = np.einsum('i,ijk->jk', unit, table) % p
    right_unit = np.einsum('i,jik->jk', unit, table) % p
    for side, prod in (('left', left_unit), ('right', right_unit)):
        rows = np.argwhere((prod - eye) % p)
        if len(rows):
            raise BadUnit(rows[0][0], side)

    a = Algebra(p= int(p), basis= basis, table= table, unit= unit, name= name, quiver= quiver)
    for label, value in (elements or {}).items():
        a.elements[label] = parse_element(a, value) if isinstance(value, str) \
            else np.asarray(value, dtype= np.int64) % p
    return a


def zero_algebra(p, name= None):
    return build_algebra(p, [], np.zeros((0, 0, 0)), np.zeros(0), name= name,
                         quiver= QuiverData(np.zeros((0, 0), dtype= np.int64),
                                            np.zeros((0, 0), dtype= np.int64), ()))


def matrix_units_algebra(p, units, name= None):
    r"""
    Subalgebra of n x n matrices spanned by matrix units e_ij, (i, j) in `units`.
    The units must be closed under multiplication and contain every e_ii.
    """
    units = [tuple(u) for u in units]
    index = {u: k for k, u in enumerate(units)}
    n = len(units)
    table = np.zeros((n, n, n), dtype= np.int64)
    for (i, j), a in index.items():
        for (k, l), b in index.items():
            if j == k:
                assert (i, l) in index, f'e{i}{l} is missing from the units'
                table[a, b, index[(i, l)]] = 1
    unit = np.zeros(n, dtype= np.int64)
    for (i, j), a in index.items():
        if i == j:
            unit[a] = 1
    labels = [f'e{i}{j}' for i, j in units]
    return build_algebra(p, labels, table, unit, name= name)


def product_algebra(p, factors, name= None):
    r"""
    F_p^factors with componentwise multiplication, basis e1, ..., e{factors}
    """
    table = np.zeros((factors, factors, factors), dtype= np.int64)
    for i in range(factors):
        table[i, i, i] = 1
    return build_algebra(p, [f'e{i+1}' for i in range(factors)], table,
                         np.ones(factors, dtype= np.int64), name= name)


# term := [sign] [int '*'] (label | int)
_TERM = re.compile(r'\s*([+-])?\s*(?:(\d+)\s*\*\s*)?([A-Za-z_][\w.\']*|\d+)\s*')


def parse_terms(text):
    r"""
    Splits a linear combination such as "e11 + 2*e12 - a.b" into
    a list of (coefficient, atom) pairs.
    """
    text = str(text)
    pos, terms = 0, []
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos or (terms and m.group(1) is None):
            raise SpecParseError(f'cannot parse {text!r}', 1, pos + 1)
        sign = -1 if m.group(1) == '-' else 1
        coef = int(m.group(2)) if m.group(2) else 1
        terms.append((sign * coef, m.group(3)))
        pos = m.end()
    if not terms:
        raise SpecParseError('empty linear combination', 1, 1)
    return terms


def parse_element(a, text):
    x = a.zero()
    for coef, atom in parse_terms(text):
        if atom.isdigit():
            x = x + coef * int(atom) * a.unit
        elif atom in a.elements:
            x = x + coef * a.elements[atom]
        elif atom in a.basis:
            x[a.basis.index(atom)] += coef
        else:
            raise SpecParseError(f'unknown label {atom!r} in {text!r}', 1, text.find(atom) + 1)
    return x % a.p


def format_element(a, x):
    x = np.asarray(x, dtype= np.int64) % a.p
    terms = []
    for c, label in zip(x, a.basis):
        if c == 1:
            terms.append(label)
        elif c:
            terms.append(f'{c}*{label}')
    return '+'.join(terms) if terms else '0'


def enumerate_idempotents(a, budget= DEFAULT_BUDGET, mode= 'auto'):
    r"""
    Idempotents of `a`.

    # Arguments
    ___________
    mode : str
        'exhaustive' scans all p^dim elements (needs p^dim <= budget),
        'restricted' returns the 2^r sums of vertex idempotents (needs quiver data),
        'auto' is exhaustive when affordable and restricted otherwise.

    # Returns
    _________
    list of np.ndarray, in lexicographic (exhaustive) or subset (restricted) order
    """
    size = a.p ** a.dim
    if mode == 'auto':
        mode = 'exhaustive' if size <= budget else 'restricted'
    if mode == 'exhaustive':
        if size > budget:
            raise BudgetExceeded('idempotent search', size, budget, hint= 'use restricted mode')
        X = all_vectors(a.dim, a.p)
        squares = np.einsum('ni,nj,ijk->nk', X, X, a.table) % a.p
        return [x for x, s in zip(X, squares) if np.array_equal(x, s)]
    if mode == 'restricted':
        if a.quiver is None:
            raise BudgetExceeded('idempotent search', size, budget,
                                 hint= 'restricted mode needs quiver data')
        return vertex_subset_idempotents(a)
    raise ValueError(f'unknown idempotent search mode {mode!r}')


def vertex_subset_idempotents(a):
    V = a.quiver.vertex_idempotents
    out = []
    for subset in itertools.product((0, 1), repeat= len(V)):
        out.append(np.asarray(subset, dtype= np.int64) @ V % a.p if len(V) else a.zero())
    return out


def vertex_subset(a, e):
    r"""
    the indices of the vertices whose idempotents sum to e, or None
    """
    if a.quiver is None:
        return None
    V = a.quiver.vertex_idempotents
    for subset in itertools.product((0, 1), repeat= len(V)):
        s = np.asarray(subset, dtype= np.int64) @ V % a.p if len(V) else a.zero()
        if np.array_equal(s, np.asarray(e) % a.p):
            return [i for i, flag in enumerate(subset) if flag]
    return None


def peirce_corner(a, e, name= None):
    r"""
    The corner algebra eAe with unit e.

    # Returns
    _________
    corner : Algebra
    embedding : np.ndarray (dim eAe, dim A)
        rref rows giving the corner basis in the coordinates of `a`
    """
    e = np.asarray(e, dtype= np.int64) % a.p
    if not a.is_idempotent(e):
        raise NotIdempotent(format_element(a, e))
    p = a.p
    Le, Re = a.left_mult_matrix(e), a.right_mult_matrix(e)
    W, pivots = rref(mulmod(Le, Re, p), p)
    k = W.shape[0]
    if k == 0:
        return zero_algebra(p, name= name), W

    products = np.einsum('ai,bj,ijk->abk', W, W, a.table) % p
    table = coordinates(W, pivots, products.reshape(k * k, a.dim), p).reshape(k, k, k)
    unit = coordinates(W, pivots, e, p)[0]
    labels = [format_element(a, w) for w in W]

    quiver = None
    subset = vertex_subset(a, e)
    if subset is not None:
        V = a.quiver.vertex_idempotents[subset]
        J = a.quiver.radical_rows
        eJe = mulmod(mulmod(J, Le, p), Re, p) if J.shape[0] else J
        quiver = QuiverData(
            vertex_idempotents= coordinates(W, pivots, V, p) if len(V) else np.zeros((0, k), dtype= np.int64),
            radical_rows= row_space(coordinates(W, pivots, eJe, p), p) if eJe.shape[0] else np.zeros((0, k), dtype= np.int64),
            vertex_names= tuple(a.quiver.vertex_names[i] for i in subset),
        )
    corner = build_algebra(p, labels, table, unit, name= name, quiver= quiver)
    return corner, W
