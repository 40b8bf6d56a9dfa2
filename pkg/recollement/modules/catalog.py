import itertools
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from tqdm import tqdm

from recollement.core.ideals import basic_structure, ideal_product, radical
from recollement.modules.module import (
    find_isomorphism, hom_dim, make_module, representation_law_violation, signature,
)
from recollement.utils.errors import BudgetExceeded, CharacteristicTooSmall
from recollement.utils.linalg import (
    all_vectors, as_rows, coordinates, inverse, mulmod, rref,
)

# representations tried per dimension vector before giving up
DEFAULT_MODULE_BUDGET = 1 << 14


@dataclass
class ModuleCatalog:
    r"""
    Isomorphism classes of A-modules of dimension <= dim_bound, one
    representative each, in a deterministic order (by dimension, then
    enumeration order). Index 0 is the zero module.
    """
    algebra: object
    dim_bound: int
    modules: list
    buckets: dict = field(default_factory= dict)

    def __len__(self):
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def __getitem__(self, k):
        return self.modules[k]

    @property
    def names(self):
        return [m.name for m in self.modules]

    def find(self, m):
        for k in self.buckets.get(signature(m), []):
            if find_isomorphism(m, self.modules[k]) is not None:
                return k
        return None

    def index_of(self, m):
        r"""catalog index of the class of m, None if dim m > dim_bound"""
        if m.dim > self.dim_bound:
            return None
        k = self.find(m)
        if k is None:
            raise LookupError(f'{m!r} is missing from the catalog')
        return k

    def add(self, m):
        r"""adds m unless its class is present; returns (index, is_new)"""
        k = self.find(m)
        if k is not None:
            return k, False
        self.modules.append(m)
        self.buckets.setdefault(signature(m), []).append(len(self.modules) - 1)
        return len(self.modules) - 1, True

    def hom_table(self):
        r"""dim Hom(M, N) for all pairs, as a DataFrame indexed by module names"""
        data = [[hom_dim(m, n) for n in self.modules] for m in self.modules]
        return pd.DataFrame(data, index= self.names, columns= self.names)


def _words(a, generators):
    r"""
    Products of generators (breadth first, left to right) forming a basis
    of the subalgebra they generate.

    # Returns
    _________
    words : list of tuple of generator indices
    vectors : list of np.ndarray
    """
    p, n = a.p, a.dim
    words, vectors, frontier = [], [], []
    R, pivots = np.zeros((0, n), dtype= np.int64), []
    for g, x in enumerate(generators):
        if np.any(x) and coordinates(R, pivots, x, p) is None:
            words.append((g,))
            vectors.append(x)
            R, pivots = rref(np.vstack([R, x]), p)
            frontier.append(((g,), x))
    while frontier and len(words) < n:
        nxt = []
        for word, x in frontier:
            for g, y in enumerate(generators):
                xy = a.mul(x, y)
                if np.any(xy) and coordinates(R, pivots, xy, p) is None:
                    words.append(word + (g,))
                    vectors.append(xy)
                    R, pivots = rref(np.vstack([R, xy]), p)
                    nxt.append((word + (g,), xy))
        frontier = nxt
    return words, vectors


def _word_basis(a, generators):
    r"""
    words spanning A and the matrix W_inv with b_i = sum_w W_inv[i, w] word_w,
    or None when the generators do not generate A
    """
    words, vectors = _words(a, generators)
    if len(words) < a.dim:
        return None
    return words, inverse(as_rows(vectors, a.dim), a.p)


def _assemble(a, words, W_inv, generator_matrices, d):
    if not words:
        return np.zeros((a.dim, d, d), dtype= np.int64)
    word_mats = []
    for word in words:
        M = np.eye(d, dtype= np.int64)
        for g in word:
            M = mulmod(M, generator_matrices[g], a.p)
        word_mats.append(M)
    return np.einsum('iw,wab->iab', W_inv, np.stack(word_mats)) % a.p


def arrow_generators(a, quiver):
    r"""
    For a basic algebra: (source, target, x) with x running over a basis of
    e_s J e_t modulo e_s J^2 e_t. Together with the vertex idempotents they
    generate A.
    """
    p = a.p
    J = radical(a)
    J2 = ideal_product(J, J)
    out = []
    V = quiver.vertex_idempotents
    for s, es in enumerate(V):
        for t, et in enumerate(V):
            if J.dim == 0:
                continue
            Ls, Rt = a.left_mult_matrix(es), a.right_mult_matrix(et)
            block = rref(mulmod(mulmod(J.rows, Ls, p), Rt, p), p)[0]
            R, pivots = rref(mulmod(mulmod(J2.rows, Ls, p), Rt, p), p) if J2.dim \
                else (np.zeros((0, a.dim), dtype= np.int64), [])
            for x in block:
                if coordinates(R, pivots, x, p) is None:
                    out.append((s, t, x))
                    R, pivots = rref(np.vstack([R, x]), p)
    return out


def _dimension_vectors(r, total):
    for dims in itertools.product(range(total + 1), repeat= r):
        if sum(dims) == total:
            yield dims


def _quiver_representations(a, quiver, d, budget, words, W_inv, arrows):
    r"""
    Every module of dimension d (with repetitions): the vertex idempotents act
    as block identities and each arrow generator x: s -> t only has its (s, t)
    block free.
    """
    r = len(quiver.vertex_idempotents)
    for dims in _dimension_vectors(r, d):
        offsets = np.concatenate([[0], np.cumsum(dims)]).astype(int)
        free = sum(dims[s] * dims[t] for s, t, _ in arrows)
        if a.p ** free > budget:
            raise BudgetExceeded(f'representations of dimension vector {dims}', a.p ** free, budget)
        vertex_mats = []
        for v in range(r):
            E = np.zeros((d, d), dtype= np.int64)
            E[offsets[v]:offsets[v + 1], offsets[v]:offsets[v + 1]] = np.eye(dims[v], dtype= np.int64)
            vertex_mats.append(E)
        for values in all_vectors(free, a.p):
            arrow_mats, pos = [], 0
            for s, t, _ in arrows:
                X = np.zeros((d, d), dtype= np.int64)
                size = dims[s] * dims[t]
                X[offsets[s]:offsets[s + 1], offsets[t]:offsets[t + 1]] = \
                    values[pos:pos + size].reshape(dims[s], dims[t])
                pos += size
                arrow_mats.append(X)
            yield _assemble(a, words, W_inv, vertex_mats + arrow_mats, d)


def minimal_generators(a):
    r"""the unit plus basis elements added greedily until they generate A"""
    chosen = [a.one()]
    for i in range(a.dim):
        words, vectors = _words(a, chosen)
        if len(words) == a.dim:
            break
        span, pivots = rref(as_rows(vectors, a.dim), a.p)
        if coordinates(span, pivots, a.basis_vector(i), a.p) is None:
            chosen.append(a.basis_vector(i))
    return chosen


def _generic_representations(a, d, budget, words, W_inv, n_generators):
    r"""
    Every d-dimensional representation: the unit acts as the identity and the
    other generators as free matrices.
    """
    free = d * d * (n_generators - 1)
    if a.p ** free > budget:
        raise BudgetExceeded(f'representations of dimension {d}', a.p ** free, budget)
    eye = np.eye(d, dtype= np.int64)
    for values in all_vectors(free, a.p):
        mats = [eye] + [values[k * d * d:(k + 1) * d * d].reshape(d, d) for k in range(n_generators - 1)]
        yield _assemble(a, words, W_inv, mats, d)


def module_catalog(a, dim_bound, budget= DEFAULT_MODULE_BUDGET, verbose= False):
    r"""
    One representative per isomorphism class of A-modules of dimension <= dim_bound.

    Basic algebras are enumerated through their vertex idempotents and arrow
    generators; other algebras through free matrices for a minimal generating
    set of basis elements. Candidates failing the representation law are dropped
    and the rest deduplicated by isomorphism.

    # Arguments
    ___________
    a : Algebra
    dim_bound : int
    budget : int
        largest number of candidate representations per dimension (vector)
    verbose : bool
        show tqdm progress bars

    # Returns
    _________
    ModuleCatalog
    """
    quiver = a.quiver
    if quiver is None:
        try:
            quiver = basic_structure(a)
        except (BudgetExceeded, CharacteristicTooSmall):
            quiver = None

    enumerate_reps = None
    if quiver is not None:
        arrows = arrow_generators(a, quiver)
        basis = _word_basis(a, list(quiver.vertex_idempotents) + [x for _, _, x in arrows])
        if basis is not None:
            def enumerate_reps(d):
                return _quiver_representations(a, quiver, d, budget, *basis, arrows)
    if enumerate_reps is None:
        generators = minimal_generators(a)
        basis = _word_basis(a, generators)

        def enumerate_reps(d):
            return _generic_representations(a, d, budget, *basis, len(generators))

    catalog = ModuleCatalog(a, dim_bound, [])
    counts = defaultdict(int)
    for d in range(dim_bound + 1):
        if a.dim == 0 and d > 0:
            break
        for action in tqdm(enumerate_reps(d), disable= not verbose, desc= f'dim {d}'):
            if representation_law_violation(a, action) is not None:
                continue
            name = f'M{d}.{counts[d] + 1}' if d else '0'
            _, new = catalog.add(make_module(a, action, name, check= False))
            counts[d] += int(new)
    return catalog
