from dataclasses import dataclass
from typing import Optional

import numpy as np

from recollement.utils.errors import (
    AlgebraMismatch, BudgetExceeded, RepresentationLawViolation, WrongCategory,
)
from recollement.utils.linalg import (
    all_subspaces, all_vectors, as_rows, complement_columns, count_subspaces, coordinates, intersection,
    is_invertible, left_nullspace, mulmod, nullspace, quotient_projection,
    rank, rref, row_space,
)

# largest Hom space (p^dim elements) scanned for an isomorphism
ISO_BUDGET = 1 << 16


@dataclass(frozen= True, eq= False)
class Module:
    r"""
    Finite dimensional right module over an Algebra. Vectors are rows and
    m . b_i = m @ action[i], so action[i] @ action[j] = sum_k c_ijk action[k].
    """
    algebra: object
    action: np.ndarray
    name: Optional[str] = None

    @property
    def dim(self):
        return self.action.shape[1]

    @property
    def p(self):
        return self.algebra.p

    def __repr__(self):
        return f'Module({self.name or "?"}, dim= {self.dim}, over {self.algebra.name or "?"})'

    def action_of(self, x):
        r"""matrix of the action of an algebra element x (in algebra coordinates)"""
        x = np.asarray(x, dtype= np.int64)
        if self.algebra.dim == 0:
            return np.zeros((self.dim, self.dim), dtype= np.int64)
        return np.einsum('i,iab->ab', x, self.action) % self.p

    def act(self, m, x):
        return mulmod(m, self.action_of(x), self.p)

    def payload(self):
        return {'algebra': self.algebra.name, 'dim': int(self.dim), 'name': self.name,
                'action': self.action.tolist()}


def _law_violation(p, table, unit, action):
    n, d = action.shape[0], action.shape[1]
    if n == 0:
        return None if d == 0 else ('unit',)
    lhs = np.einsum('iab,jbc->ijac', action, action)
    rhs = np.einsum('ijk,kac->ijac', table, action)
    bad = np.argwhere(((lhs - rhs) % p).reshape(n, n, d * d).any(axis= 2)) if d else []
    if len(bad):
        return tuple(int(v) for v in bad[0])
    if not np.array_equal(np.einsum('i,iab->ab', unit, action) % p, np.eye(d, dtype= np.int64)):
        return ('unit',)
    return None


def representation_law_violation(algebra, action):
    r"""
    the first failing basis pair (i, j), ('unit',) if the unit does not act
    as the identity, or None
    """
    return _law_violation(algebra.p, algebra.table, algebra.unit, np.asarray(action, dtype= np.int64))


def make_module(algebra, action, name= None, check= True):
    r"""
    # Arguments
    ___________
    algebra : Algebra
    action : array-like (dim A, d, d)
    check : bool
        verify the representation law and raise RepresentationLawViolation
    """
    n = algebra.dim
    action = np.asarray(action, dtype= np.int64) % algebra.p
    if action.ndim != 3 or action.shape[0] != n or action.shape[1] != action.shape[2]:
        raise AlgebraMismatch(f'action of shape {action.shape} does not fit {algebra!r}')
    if check:
        bad = representation_law_violation(algebra, action)
        if bad is not None:
            raise RepresentationLawViolation(bad, f'module {name or "?"} over {algebra.name or "?"}')
    action.setflags(write= False)
    return Module(algebra, action, name)


def zero_module(algebra, name= '0'):
    return make_module(algebra, np.zeros((algebra.dim, 0, 0), dtype= np.int64), name, check= False)


def regular_module(algebra, name= None):
    r"""A_A with the basis of A: b_j . b_i = b_j b_i"""
    eye = np.eye(algebra.dim, dtype= np.int64)
    action = np.stack([algebra.right_mult_matrix(b) for b in eye]) if algebra.dim else np.zeros((0, 0, 0))
    return make_module(algebra, action, name or f'{algebra.name or "A"}_A', check= False)


def direct_sum(*modules, name= None):
    if not modules:
        raise ValueError('direct_sum needs at least one module')
    algebra = modules[0].algebra
    for m in modules[1:]:
        if m.algebra is not algebra:
            raise AlgebraMismatch('direct sum of modules over different algebras')
    d = sum(m.dim for m in modules)
    action = np.zeros((algebra.dim, d, d), dtype= np.int64)
    offset = 0
    for m in modules:
        action[:, offset:offset + m.dim, offset:offset + m.dim] = m.action
        offset += m.dim
    name = name or '+'.join(m.name or '?' for m in modules)
    return make_module(algebra, action, name, check= False)


def restrict_scalars(module, algebra, projection, name= None):
    r"""
    pulls a module over B back along an algebra map A -> B given as
    a (dim A, dim B) matrix
    """
    action = np.einsum('ij,jab->iab', np.asarray(projection, dtype= np.int64), module.action) % module.p \
        if module.algebra.dim else np.zeros((algebra.dim, module.dim, module.dim), dtype= np.int64)
    return make_module(algebra, action, name or module.name, check= False)


@dataclass(frozen= True, eq= False)
class ModuleMap:
    r"""
    Module homomorphism; `matrix` has shape (source.dim, target.dim)
    and sends m to m @ matrix.
    """
    source: Module
    target: Module
    matrix: np.ndarray

    @property
    def p(self):
        return self.source.p

    def is_homomorphism(self):
        A, B, F = self.source.action, self.target.action, self.matrix
        return np.array_equal(np.einsum('iab,bc->iac', A, F) % self.p,
                              np.einsum('ab,ibc->iac', F, B) % self.p)

    def rank(self):
        return rank(self.matrix, self.p)

    def is_injective(self):
        return self.rank() == self.source.dim

    def is_surjective(self):
        return self.rank() == self.target.dim

    def is_isomorphism(self):
        return self.source.dim == self.target.dim and self.is_injective()

    def then(self, other):
        r"""the composite `other` after `self`"""
        if other.source.dim != self.target.dim:
            raise WrongCategory('maps are not composable')
        return ModuleMap(self.source, other.target, mulmod(self.matrix, other.matrix, self.p))

    def is_zero(self):
        return not np.any(self.matrix % self.p)


def module_map(source, target, matrix, check= True):
    if source.algebra is not target.algebra:
        raise AlgebraMismatch('module map between modules over different algebras')
    matrix = np.asarray(matrix, dtype= np.int64).reshape(source.dim, target.dim) % source.p
    f = ModuleMap(source, target, matrix)
    if check and not f.is_homomorphism():
        raise WrongCategory('the matrix does not commute with the algebra action')
    return f


def identity_map(m):
    return ModuleMap(m, m, np.eye(m.dim, dtype= np.int64))


def zero_map(source, target):
    return ModuleMap(source, target, np.zeros((source.dim, target.dim), dtype= np.int64))


def hom_basis(m, n):
    r"""
    rref basis of Hom_A(M, N) as flattened (row-major) matrices, with pivots.
    F is a homomorphism iff R^M_i F = F R^N_i for every basis element b_i.
    """
    if m.algebra is not n.algebra:
        raise AlgebraMismatch('Hom between modules over different algebras')
    p, dm, dn = m.p, m.dim, n.dim
    if dm * dn == 0:
        return np.zeros((0, dm * dn), dtype= np.int64), []
    eye_m, eye_n = np.eye(dm, dtype= np.int64), np.eye(dn, dtype= np.int64)
    blocks = [np.kron(m.action[i], eye_n) - np.kron(eye_m, n.action[i].T)
              for i in range(m.algebra.dim)]
    if not blocks:
        return rref(np.eye(dm * dn, dtype= np.int64), p)
    return rref(nullspace(np.vstack(blocks) % p, p), p)


def hom_space(m, n):
    r"""
    basis of Hom_A(M, N) as a list of ModuleMap
    """
    H, _ = hom_basis(m, n)
    return [ModuleMap(m, n, h.reshape(m.dim, n.dim)) for h in H]


def hom_dim(m, n):
    return hom_basis(m, n)[0].shape[0]


@dataclass(frozen= True, eq= False)
class SubmoduleBasis:
    r"""
    Submodule of `ambient` given by an rref basis of row vectors.
    """
    ambient: Module
    rows: np.ndarray
    pivots: tuple

    @property
    def dim(self):
        return self.rows.shape[0]

    def coordinates(self, vectors):
        return coordinates(self.rows, list(self.pivots), vectors, self.ambient.p)

    def as_module(self, name= None):
        m = self.ambient
        if self.dim == 0:
            return zero_module(m.algebra)
        action = np.stack([mulmod(self.rows, R, m.p)[:, list(self.pivots)] for R in m.action]) \
            if m.algebra.dim else np.zeros((0, self.dim, self.dim), dtype= np.int64)
        return make_module(m.algebra, action, name, check= False)

    def inclusion(self, sub_module= None):
        sub_module = sub_module or self.as_module()
        return ModuleMap(sub_module, self.ambient, self.rows.copy())

    def contains(self, other):
        r"""True if the rows of `other` (vectors or SubmoduleBasis) lie in this submodule"""
        rows = other.rows if isinstance(other, SubmoduleBasis) else as_rows(other, self.ambient.dim)
        return rows.shape[0] == 0 or self.coordinates(rows) is not None

    def __eq__(self, other):
        return isinstance(other, SubmoduleBasis) and other.ambient is self.ambient \
            and np.array_equal(other.rows, self.rows)

    def __hash__(self):
        return hash((id(self.ambient), self.rows.tobytes(), self.rows.shape))


def submodule(m, rows):
    r"""wraps a stable subspace; the rows are brought to rref"""
    R, pivots = rref(as_rows(rows, m.dim), m.p)
    return SubmoduleBasis(m, R, tuple(pivots))


def is_stable(m, rows):
    R, pivots = rref(as_rows(rows, m.dim), m.p)
    if R.shape[0] == 0:
        return True
    return all(coordinates(R, pivots, mulmod(R, A, m.p), m.p) is not None for A in m.action)


def submodule_generated(m, vectors):
    r"""
    the smallest submodule containing `vectors`
    """
    p = m.p
    R = row_space(as_rows(vectors, m.dim), p)
    while R.shape[0]:
        grown = row_space(np.vstack([R] + [mulmod(R, A, p) for A in m.action]), p)
        if grown.shape[0] == R.shape[0]:
            break
        R = grown
    return submodule(m, R)


def submodule_sum(s, t):
    return submodule(s.ambient, np.vstack([s.rows, t.rows]))


def submodule_intersection(s, t):
    return submodule(s.ambient, intersection(s.rows, t.rows, s.ambient.p))


def quotient(m, sub, name= None):
    r"""
    M/S with basis the classes of the standard vectors outside the pivots of S.

    # Returns
    _________
    Module, ModuleMap (the projection M -> M/S)
    """
    p = m.p
    P = quotient_projection(sub.rows, list(sub.pivots), m.dim, p)
    keep = complement_columns(sub.pivots, m.dim)
    action = np.stack([mulmod(A[keep], P, p) for A in m.action]) \
        if m.algebra.dim else np.zeros((0, len(keep), len(keep)), dtype= np.int64)
    q = make_module(m.algebra, action, name, check= False)
    return q, ModuleMap(m, q, P)


def kernel(f):
    return submodule(f.source, left_nullspace(f.matrix, f.p))


def image(f):
    return submodule(f.target, f.matrix)


def cokernel(f):
    return quotient(f.target, image(f))


def restrict_map(f, sub_source, sub_target):
    r"""
    f restricted to S -> T, where f(S) lies in T
    """
    F = mulmod(sub_source.rows, f.matrix, f.p)
    coords = sub_target.coordinates(F) if F.shape[0] else np.zeros((0, sub_target.dim), dtype= np.int64)
    if coords is None:
        raise WrongCategory('the map does not send the submodule into the target submodule')
    return ModuleMap(sub_source.as_module(), sub_target.as_module(), coords.reshape(sub_source.dim, sub_target.dim))


def induced_quotient_map(f, sub_source, sub_target, source_quotient= None, target_quotient= None):
    r"""
    M/S -> N/T induced by f : M -> N with f(S) in T
    """
    qs = source_quotient or quotient(f.source, sub_source)[0]
    qt, proj = target_quotient or quotient(f.target, sub_target)
    keep = complement_columns(sub_source.pivots, f.source.dim)
    return ModuleMap(qs, qt, mulmod(f.matrix[keep], proj.matrix, f.p))


def signature(m):
    r"""isomorphism invariant used to bucket modules before searching for an iso"""
    ranks = tuple(rank(A, m.p) for A in m.action)
    return m.dim, ranks


def find_isomorphism(m, n, budget= ISO_BUDGET):
    r"""
    an invertible homomorphism M -> N, or None. Scans Hom_A(M, N) exhaustively
    (raises BudgetExceeded if p^dim Hom exceeds budget).
    """
    if m.dim != n.dim or signature(m) != signature(n):
        return None
    if m.dim == 0:
        return ModuleMap(m, n, np.zeros((0, 0), dtype= np.int64))
    H, _ = hom_basis(m, n)
    k = H.shape[0]
    if k == 0:
        return None
    if m.p ** k > budget:
        raise BudgetExceeded('isomorphism search', m.p ** k, budget)
    # the generic combinations come last in lexicographic order
    for coeffs in all_vectors(k, m.p)[::-1]:
        F = mulmod(coeffs, H, m.p).reshape(m.dim, n.dim)
        if is_invertible(F, m.p):
            return ModuleMap(m, n, F)
    return None


def is_isomorphic(m, n, budget= ISO_BUDGET):
    return find_isomorphism(m, n, budget) is not None


def endomorphism_idempotents(m, budget= ISO_BUDGET):
    H, _ = hom_basis(m, m)
    k = H.shape[0]
    if m.p ** k > budget:
        raise BudgetExceeded('endomorphism scan', m.p ** k, budget)
    out = []
    for coeffs in all_vectors(k, m.p):
        F = mulmod(coeffs, H, m.p).reshape(m.dim, m.dim)
        if np.array_equal(mulmod(F, F, m.p), F):
            out.append(F)
    return out


def is_indecomposable(m, budget= ISO_BUDGET):
    r"""M != 0 and End(M) has no idempotents besides 0 and 1"""
    return m.dim > 0 and len(endomorphism_idempotents(m, budget)) == 2


def is_simple(m):
    r"""every nonzero vector generates M"""
    if m.dim == 0:
        return False
    return all(submodule_generated(m, [v]).dim == m.dim for v in all_vectors(m.dim, m.p)[1:])


def submodules(m, budget= ISO_BUDGET):
    r"""
    every submodule of M, scanning all subspaces of F_p^dim M
    """
    size = count_subspaces(m.dim, m.p)
    if size > budget:
        raise BudgetExceeded('submodule scan', size, budget)
    return [submodule(m, R) for R in all_subspaces(m.dim, m.p) if is_stable(m, R)]


@dataclass(frozen= True, eq= False)
class Bimodule:
    r"""
    left-A right-B bimodule: a . y = y @ left_action(a), y . b = y @ right_action(b),
    so left_action[j] @ left_action[i] = sum_k c_ijk left_action[k]
    """
    left_algebra: object
    right_algebra: object
    left_action: np.ndarray
    right_action: np.ndarray
    name: Optional[str] = None

    @property
    def dim(self):
        return self.left_action.shape[1]

    @property
    def p(self):
        return self.left_algebra.p

    def right_module(self):
        return Module(self.right_algebra, self.right_action, self.name)


def make_bimodule(left_algebra, right_algebra, left_action, right_action, name= None, check= True):
    p = left_algebra.p
    left_action = np.asarray(left_action, dtype= np.int64) % p
    right_action = np.asarray(right_action, dtype= np.int64) % p
    if check:
        bad = representation_law_violation(right_algebra, right_action)
        if bad is not None:
            raise RepresentationLawViolation(bad, f'right action of {name or "?"}')
        # a left module is a right module over the opposite algebra
        opposite = np.transpose(np.asarray(left_algebra.table), (1, 0, 2))
        bad = _law_violation(p, opposite, left_algebra.unit, left_action)
        if bad is not None:
            raise RepresentationLawViolation(bad, f'left action of {name or "?"}')
        commute = np.einsum('iab,jbc->ijac', left_action, right_action) \
            - np.einsum('jab,ibc->ijac', right_action, left_action)
        if np.any(commute % p):
            raise RepresentationLawViolation(('left', 'right'), f'actions of {name or "?"} do not commute')
    left_action.setflags(write= False)
    right_action.setflags(write= False)
    return Bimodule(left_algebra, right_algebra, left_action, right_action, name)


def regular_bimodule(algebra):
    eye = np.eye(algebra.dim, dtype= np.int64)
    left = np.stack([algebra.left_mult_matrix(b) for b in eye]) if algebra.dim else np.zeros((0, 0, 0))
    right = np.stack([algebra.right_mult_matrix(b) for b in eye]) if algebra.dim else np.zeros((0, 0, 0))
    return make_bimodule(algebra, algebra, left, right, name= algebra.name, check= False)


def sub_bimodule(algebra_left, algebra_right, rows, left_mult, right_mult, name= None):
    r"""
    a subspace W of an algebra that is stable under the given left and right
    multiplications (lists of matrices acting on row vectors), as a Bimodule
    """
    p = algebra_left.p
    W, pivots = rref(rows, p)
    k = W.shape[0]
    left = np.stack([mulmod(W, M, p)[:, pivots] for M in left_mult]) if left_mult else np.zeros((0, k, k), dtype= np.int64)
    right = np.stack([mulmod(W, M, p)[:, pivots] for M in right_mult]) if right_mult else np.zeros((0, k, k), dtype= np.int64)
    return make_bimodule(algebra_left, algebra_right, left, right, name, check= False), W
