from dataclasses import dataclass

import numpy as np

from recollement.modules.module import (
    Module, ModuleMap, direct_sum, hom_basis, hom_dim, kernel, make_module,
    regular_module, zero_module,
)
from recollement.utils.errors import AlgebraMismatch, BudgetExceeded
from recollement.utils.linalg import (
    all_vectors, complement_columns, coordinates, mulmod, nullspace,
    quotient_projection, rank, rref,
)

# number of extension classes realised before giving up
EXTENSION_BUDGET = 1 << 10


@dataclass(frozen= True, eq= False)
class TensorProduct:
    r"""
    M (x)_A N for a right A-module M and an A-C bimodule N, as the quotient
    of the Kronecker space by the balancing relations (xb) (x) y - x (x) (by).
    """
    module: Module
    left: Module
    right: object
    relations: np.ndarray
    pivots: list
    projection: np.ndarray
    keep: list

    def element(self, x, y):
        r"""coordinates of x (x) y"""
        return mulmod(np.kron(np.asarray(x, dtype= np.int64), np.asarray(y, dtype= np.int64)),
                      self.projection, self.module.p)


def tensor_over(m, n, name= None):
    r"""
    # Arguments
    ___________
    m : Module
        right module over n.left_algebra
    n : Bimodule

    # Returns
    _________
    TensorProduct, whose `module` is a right module over n.right_algebra
    """
    if m.algebra is not n.left_algebra:
        raise AlgebraMismatch('tensor product over mismatched algebras')
    p, dm, dn = m.p, m.dim, n.dim
    C = n.right_algebra
    if dm * dn == 0:
        empty = np.zeros((0, dm * dn), dtype= np.int64)
        return TensorProduct(zero_module(C, name or '0'), m, n, empty, [],
                             np.zeros((dm * dn, 0), dtype= np.int64), [])
    eye_m, eye_n = np.eye(dm, dtype= np.int64), np.eye(dn, dtype= np.int64)
    blocks = [np.kron(m.action[b], eye_n) - np.kron(eye_m, n.left_action[b])
              for b in range(m.algebra.dim)]
    U, pivots = rref(np.vstack(blocks) % p, p) if blocks else (np.zeros((0, dm * dn), dtype= np.int64), [])
    P = quotient_projection(U, pivots, dm * dn, p)
    keep = complement_columns(pivots, dm * dn)
    action = np.stack([mulmod(np.kron(eye_m, n.right_action[c])[keep], P, p) for c in range(C.dim)]) \
        if C.dim else np.zeros((0, len(keep), len(keep)), dtype= np.int64)
    module = make_module(C, action, name, check= False)
    return TensorProduct(module, m, n, U, pivots, P, keep)


def tensor_map(f, n, source= None, target= None):
    r"""
    f (x) N : M (x)_A N -> M' (x)_A N
    """
    source = source or tensor_over(f.source, n)
    target = target or tensor_over(f.target, n)
    raw = np.kron(f.matrix, np.eye(n.dim, dtype= np.int64))
    matrix = mulmod(raw[source.keep], target.projection, f.p) if source.keep \
        else np.zeros((0, target.module.dim), dtype= np.int64)
    return ModuleMap(source.module, target.module, matrix.reshape(source.module.dim, target.module.dim))


@dataclass(frozen= True, eq= False)
class HomOver:
    r"""
    Hom_B(N, X) for an A-B bimodule N and a right B-module X, a right
    A-module through (f . a)(y) = f(a . y).
    """
    module: Module
    bimodule: object
    target: Module
    basis: np.ndarray
    pivots: list

    def matrix(self, v):
        r"""the (dim N, dim X) matrix of the hom with coordinates v"""
        return mulmod(np.asarray(v, dtype= np.int64), self.basis, self.module.p) \
            .reshape(self.bimodule.dim, self.target.dim)

    def coordinates(self, matrices):
        flat = np.asarray(matrices, dtype= np.int64).reshape(-1, self.bimodule.dim * self.target.dim)
        return coordinates(self.basis, self.pivots, flat, self.module.p)


def hom_over(n, x, name= None):
    if x.algebra is not n.right_algebra:
        raise AlgebraMismatch('Hom over mismatched algebras')
    p = x.p
    H, pivots = hom_basis(n.right_module(), x)
    k = H.shape[0]
    A = n.left_algebra
    mats = H.reshape(k, n.dim, x.dim)
    action = []
    for a in range(A.dim):
        moved = np.einsum('ab,kbc->kac', n.left_action[a], mats) % p
        action.append(moved.reshape(k, -1)[:, pivots] if k else np.zeros((0, 0), dtype= np.int64))
    action = np.stack(action) if action else np.zeros((0, k, k), dtype= np.int64)
    module = make_module(A, action.reshape(A.dim, k, k), name, check= False)
    return HomOver(module, n, x, H, pivots)


def hom_over_map(n, g, source= None, target= None):
    r"""
    Hom_B(N, g) : Hom_B(N, X) -> Hom_B(N, X'), f -> g o f
    """
    source = source or hom_over(n, g.source)
    target = target or hom_over(n, g.target)
    k = source.basis.shape[0]
    if k == 0 or target.basis.shape[0] == 0:
        return ModuleMap(source.module, target.module, np.zeros((k, target.basis.shape[0]), dtype= np.int64))
    moved = np.einsum('kab,bc->kac', source.basis.reshape(k, n.dim, g.source.dim), g.matrix) % g.p
    coords = target.coordinates(moved)
    assert coords is not None, 'g o f left the Hom space'
    return ModuleMap(source.module, target.module, coords)


@dataclass(frozen= True, eq= False)
class FreePresentation:
    free: Module
    projection: ModuleMap
    kernel: object
    kernel_module: Module


def free_presentation(m):
    r"""
    0 -> K -> A^dim M -> M -> 0, generator j going to the j-th basis vector
    """
    A = m.algebra
    d, n = m.dim, A.dim
    free = direct_sum(*([regular_module(A)] * d), name= f'A^{d}') if d else zero_module(A)
    matrix = np.transpose(m.action, (1, 0, 2)).reshape(d * n, d) if d and n else np.zeros((d * n, d), dtype= np.int64)
    pi = ModuleMap(free, m, matrix % m.p)
    K = kernel(pi)
    return FreePresentation(free, pi, K, K.as_module())


def ext1(m, n):
    r"""
    dim Ext^1_A(M, N) from 0 -> Hom(M, N) -> Hom(A^d, N) -> Hom(K, N) -> Ext^1(M, N) -> 0
    """
    if m.algebra is not n.algebra:
        raise AlgebraMismatch('Ext between modules over different algebras')
    if m.dim == 0 or n.dim == 0:
        return 0
    pres = free_presentation(m)
    return hom_dim(pres.kernel_module, n) - m.dim * n.dim + hom_dim(m, n)


@dataclass(frozen= True, eq= False)
class ExtensionSpace:
    r"""
    Extensions 0 -> N -> E -> M -> 0 as cocycles C (one dim M x dim N matrix per
    basis element) modulo coboundaries. `representatives` span a complement
    of the coboundaries in the cocycles, so len(representatives) = dim Ext^1(M, N).
    """
    quotient: Module
    sub: Module
    cocycles: np.ndarray
    coboundaries: np.ndarray
    representatives: np.ndarray

    @property
    def dim(self):
        return self.representatives.shape[0]

    def cocycle(self, coeffs):
        p = self.sub.p
        v = mulmod(np.asarray(coeffs, dtype= np.int64), self.representatives, p)
        return v.reshape(self.quotient.algebra.dim, self.quotient.dim, self.sub.dim)


def extension_space(m, n):
    r"""
    Cocycles satisfy C_i R^N_j + R^M_i C_j = sum_k c_ijk C_k and sum_i u_i C_i = 0;
    coboundaries are C_i = h R^N_i - R^M_i h.
    """
    if m.algebra is not n.algebra:
        raise AlgebraMismatch('extensions of modules over different algebras')
    A, p = m.algebra, m.p
    na, dm, dn = A.dim, m.dim, n.dim
    block = dm * dn
    empty = np.zeros((0, na * block), dtype= np.int64)
    if block == 0:
        return ExtensionSpace(m, n, empty, empty, empty)
    eye_m, eye_n, eye = np.eye(dm, dtype= np.int64), np.eye(dn, dtype= np.int64), np.eye(block, dtype= np.int64)
    rows = []
    for i in range(na):
        for j in range(na):
            E = np.zeros((block, na * block), dtype= np.int64)
            E[:, i * block:(i + 1) * block] += np.kron(eye_m, n.action[j].T)
            E[:, j * block:(j + 1) * block] += np.kron(m.action[i], eye_n)
            for k in np.nonzero(A.table[i, j])[0]:
                E[:, k * block:(k + 1) * block] -= A.table[i, j, k] * eye
            rows.append(E)
    U = np.zeros((block, na * block), dtype= np.int64)
    for i in range(na):
        U[:, i * block:(i + 1) * block] = A.unit[i] * eye
    rows.append(U)
    Z = nullspace(np.vstack(rows) % p, p)

    boundaries = []
    for h in np.eye(block, dtype= np.int64):
        h = h.reshape(dm, dn)
        boundaries.append(np.concatenate([(h @ n.action[i] - m.action[i] @ h).ravel() for i in range(na)]))
    B, pivots = rref(np.array(boundaries) % p, p)

    reps, current, cur_piv = [], B, pivots
    for z in Z:
        if coordinates(current, cur_piv, z, p) is None:
            reps.append(z)
            current, cur_piv = rref(np.vstack([current, z]), p)
    reps = np.array(reps, dtype= np.int64).reshape(-1, na * block)
    return ExtensionSpace(m, n, Z, B, reps)


def realize_extension(m, n, cocycle, name= None):
    r"""
    middle term E with basis (N, M): R^E_i = [[R^N_i, 0], [C_i, R^M_i]]
    """
    A = m.algebra
    dm, dn = m.dim, n.dim
    action = np.zeros((A.dim, dn + dm, dn + dm), dtype= np.int64)
    action[:, :dn, :dn] = n.action
    action[:, dn:, :dn] = np.asarray(cocycle, dtype= np.int64).reshape(A.dim, dm, dn)
    action[:, dn:, dn:] = m.action
    return make_module(A, action, name)


def extension_middles(m, n, budget= EXTENSION_BUDGET, rng= None, samples= 64):
    r"""
    Middle terms of every extension class of M by N (split one first).
    Above the budget a seeded sample of classes is drawn from `rng` instead,
    or BudgetExceeded is raised when no generator is given.
    """
    space = extension_space(m, n)
    size = m.p ** space.dim
    if size <= budget:
        coeff_list = all_vectors(space.dim, m.p)
    elif rng is not None:
        coeff_list = np.vstack([np.zeros((1, space.dim), dtype= np.int64),
                                rng.integers(0, m.p, size= (samples, space.dim))])
    else:
        raise BudgetExceeded('extension classes', size, budget)
    return [realize_extension(m, n, space.cocycle(c)) for c in coeff_list]


def tor1(m, n):
    r"""
    dim Tor_1^A(M, N) for a right A-module M and an A-C bimodule N, as the
    kernel of K (x) N -> A^d (x) N for a free presentation of M
    """
    pres = free_presentation(m)
    inclusion = pres.kernel.inclusion(pres.kernel_module)
    source = tensor_over(pres.kernel_module, n)
    target = tensor_over(pres.free, n)
    f = tensor_map(inclusion, n, source, target)
    return source.module.dim - rank(f.matrix, m.p)
