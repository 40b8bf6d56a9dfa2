import itertools
from dataclasses import dataclass

import numpy as np

from recollement.core.algebra import DEFAULT_BUDGET, build_algebra, enumerate_idempotents
from recollement.core.ideals import as_ideal, basic_structure, check_idempotent_ideal, ideal_generated
from recollement.engines.recollement import (
    FunctorTag, apply_functor, corner_part, recollement_from_idempotent, unit_j_shriek,
)
from recollement.modules.catalog import module_catalog
from recollement.modules.module import (
    ModuleMap, direct_sum, hom_basis, make_module, regular_module, restrict_scalars, submodule,
)
from recollement.utils.errors import (
    BudgetExceeded, CharacteristicTooSmall, InternalInconsistency, NoSplitSurjection,
)
from recollement.utils.linalg import all_vectors, coordinates, inverse, is_invertible, mulmod, rank, solve
from recollement.utils.report import Report, witness

# maps A^n -> j_!(P) tried per n
SURJECTION_BUDGET = 1 << 12
MAX_GENERATOR_RANK = 4


def endomorphism_algebra(m, name= None):
    r"""
    End_A(M) as a structure-constant algebra with product s.t = s o t
    (t applied first, so the matrix of s.t is T @ S).

    # Returns
    _________
    algebra : Algebra
    basis : np.ndarray (k, dim M, dim M)
    pivots : list
        pivots of the flattened basis, for taking coordinates
    """
    p, d = m.p, m.dim
    H, pivots = hom_basis(m, m)
    k = H.shape[0]
    basis = H.reshape(k, d, d)
    table = np.zeros((k, k, k), dtype= np.int64)
    for s, t in itertools.product(range(k), repeat= 2):
        table[s, t] = coordinates(H, pivots, mulmod(basis[t], basis[s], p).ravel(), p)[0]
    unit = coordinates(H, pivots, np.eye(d, dtype= np.int64).ravel(), p)[0] if k else np.zeros(0, dtype= np.int64)
    algebra = build_algebra(p, [f's{j}' for j in range(k)], table, unit, name= name)
    return algebra, basis, pivots


def _split_surjection(a, q, max_rank, budget):
    r"""
    smallest n with a split surjection A^n -> Q; returns (n, free, p_matrix, h_matrix)
    """
    A = regular_module(a)
    n_a, dq = a.dim, q.dim
    for n in range(1, max_rank + 1):
        free = direct_sum(*([A] * n), name= f'A^{n}')
        size = q.p ** (n * dq)
        if size > budget:
            raise NoSplitSurjection(n - 1)
        H, _ = hom_basis(q, free)
        for values in all_vectors(n * dq, q.p):
            images = values.reshape(n, dq)
            P = np.stack([mulmod(images[j], q.action[i], q.p) for j in range(n) for i in range(n_a)]) \
                if dq else np.zeros((n * n_a, 0), dtype= np.int64)
            if rank(P, q.p) != dq:
                continue
            if dq == 0:
                return n, free, P, np.zeros((0, free.dim), dtype= np.int64)
            # sum_k c_k H_k @ P = id_Q
            system = np.stack([mulmod(h.reshape(dq, free.dim), P, q.p).ravel() for h in H], axis= 1) \
                if H.shape[0] else np.zeros((dq * dq, 0), dtype= np.int64)
            c = solve(system, np.eye(dq, dtype= np.int64).ravel(), q.p)
            if c is not None:
                return n, free, P, mulmod(c, H, q.p).reshape(dq, free.dim)
    raise NoSplitSurjection(max_rank)


@dataclass(frozen= True, eq= False)
class EquivalenceWitness:
    r"""
    Data exhibiting mod eAe as mod e'Se' for S = End_A(A^n) Morita equivalent to A.

    # Arguments
    ___________
    n : int
        minimal rank of a free module surjecting split onto Q = j_!(P)
    generator : Module
        the projective generator P of mod eAe
    projective : Module
        Q = j_!(P)
    surjection, section : ModuleMap
        p : A^n -> Q and h : Q -> A^n with p o h = id
    endomorphism_ring : Algebra
        S = End_A(A^n)
    idempotent : np.ndarray
        e' = h o p in the coordinates of S
    corner : Algebra
        e'Se'
    generator_endomorphisms : Algebra
        End_eAe(P)
    beta : np.ndarray (dim e'Se', dim End(P))
        the ring isomorphism e'Se' -> End_eAe(P) in coordinates
    certificates : list of (module name, np.ndarray)
        invertible intertwiners (Phi M) e' -> Hom_eAe(P, j*M)
    report : Report
    """
    ideal: object
    e: np.ndarray
    n: int
    generator: object
    projective: object
    surjection: ModuleMap
    section: ModuleMap
    endomorphism_ring: object
    idempotent: np.ndarray
    corner: object
    generator_endomorphisms: object
    beta: np.ndarray
    certificates: list
    report: Report

    def summary(self):
        return {'n': self.n, 'projective_dim': self.projective.dim,
                'endomorphism_ring_dim': self.endomorphism_ring.dim,
                'corner_dim': self.corner.dim, 'certificates': len(self.certificates),
                'endomorphism_idempotent': self.endomorphism_ring.format(self.idempotent)}


def _phi(free, m, S_basis, s_algebra):
    r"""Hom_A(A^n, M) as a right S-module: phi . s = phi o s"""
    p = m.p
    H, pivots = hom_basis(free, m)
    k = H.shape[0]
    mats = H.reshape(k, free.dim, m.dim)
    action = np.zeros((s_algebra.dim, k, k), dtype= np.int64)
    for s, S in enumerate(S_basis):
        if k:
            action[s] = coordinates(H, pivots, np.einsum('ab,kbc->kac', S, mats).reshape(k, -1) % p, p)
    return make_module(s_algebra, action, f'Phi({m.name or "M"})', check= False), H


def _hom_over_endomorphisms(gen, target, E_basis, e_algebra):
    r"""Hom_C(P, N) as a right End(P)-module: theta . g = theta o g"""
    p = target.p
    G, pivots = hom_basis(gen, target)
    k = G.shape[0]
    mats = G.reshape(k, gen.dim, target.dim)
    action = np.zeros((e_algebra.dim, k, k), dtype= np.int64)
    for g, Emat in enumerate(E_basis):
        if k:
            action[g] = coordinates(G, pivots, np.einsum('ab,kbc->kac', Emat, mats).reshape(k, -1) % p, p)
    return make_module(e_algebra, action, check= False), G, pivots


def kuhn_construction(a, i, e= None, multiplicity= 1, catalog= None, dim_bound= 2,
                      max_rank= MAX_GENERATOR_RANK, budget= SURJECTION_BUDGET):
    r"""
    Realises mod eAe (for AeA = I) as the corner category of an idempotent e' of
    S = End_A(A^n), and certifies the identification module by module.

    # Arguments
    ___________
    a : Algebra
    i : Ideal
        an idempotent ideal
    e : np.ndarray or None
        idempotent with AeA = I; searched for when omitted
    multiplicity : int
        P is the regular eAe-module repeated `multiplicity` times
    catalog : ModuleCatalog or None
        A-modules to certify; built up to dim_bound when omitted

    # Returns
    _________
    EquivalenceWitness
    """
    i = as_ideal(a, i)
    check_idempotent_ideal(i)
    if e is None:
        e = idempotent_generation_check(a, i)
        if e is None:
            raise InternalInconsistency('the idempotent ideal is not generated by an idempotent')
    e = np.asarray(e, dtype= np.int64) % a.p
    if ideal_generated(a, [e]) != i:
        raise InternalInconsistency(f'A{a.format(e)}A differs from the given ideal')
    p = a.p
    report = Report(context= {'engine': 'kuhn', 'ideal': i.rows, 'idempotent': e, 'multiplicity': multiplicity})
    r = recollement_from_idempotent(a, e)
    C = r.corner
    regular = regular_module(C, name= 'eAe')
    P = direct_sum(*([regular] * multiplicity), name= f'eAe^{multiplicity}') if multiplicity > 1 else regular
    Q = apply_functor(r, FunctorTag.J_SHRIEK, P)

    n, free, P_mat, H_mat = _split_surjection(a, Q, max_rank, budget)
    surjection = ModuleMap(free, Q, P_mat)
    section = ModuleMap(Q, free, H_mat)
    report.check('split_surjection', 'there is a split surjection A^n -> j_!(P)',
                 surjection.is_homomorphism() and section.is_homomorphism()
                 and np.array_equal(mulmod(H_mat, P_mat, p), np.eye(Q.dim, dtype= np.int64)), n= n)

    S, S_basis, S_pivots = endomorphism_algebra(free, name= f'End(A^{n})')
    e_mat = mulmod(P_mat, H_mat, p)
    e_prime = coordinates(S_basis.reshape(S.dim, -1), S_pivots, e_mat.ravel(), p)[0] \
        if S.dim else np.zeros(0, dtype= np.int64)
    report.check('idempotent_in_endomorphisms', "e' = h o p is an idempotent of S", S.is_idempotent(e_prime))
    rS = recollement_from_idempotent(S, e_prime)
    corner = rS.corner

    E, E_basis, E_pivots = endomorphism_algebra(P, name= 'End(P)')
    U = unit_j_shriek(r, P).matrix
    U_inv = inverse(U, p)
    if U_inv is None:
        raise InternalInconsistency('the unit P -> j*j_!P is not invertible')

    def transport(g_matrix):
        g = ModuleMap(Q, Q, g_matrix)
        return mulmod(mulmod(U, apply_functor(r, FunctorTag.J_STAR, g).matrix, p), U_inv, p)

    beta = np.zeros((corner.dim, E.dim), dtype= np.int64)
    for k, c in enumerate(rS.corner_embedding):
        s_mat = np.einsum('k,kab->ab', c, S_basis) % p
        g = mulmod(mulmod(H_mat, s_mat, p), P_mat, p)
        coords = coordinates(E_basis.reshape(E.dim, -1), E_pivots, transport(g).ravel(), p)
        if coords is None:
            raise InternalInconsistency('the transported endomorphism is not P-linear')
        beta[k] = coords[0]
    _check_beta(report, corner, E, beta, p)
    _check_left_multiplication(report, S, e_prime, rS)

    catalog = catalog if catalog is not None else module_catalog(a, dim_bound)
    certificates = []
    cert_ok = report.tally('certificates', "(Phi M) e' is isomorphic to Hom(P, j*M) compatibly with e'Se' = End(P)")
    for m in catalog:
        phi_m, H_phi = _phi(free, m, S_basis, S)
        W, _, left = corner_part(rS, phi_m)
        theta, G, G_pivots = _hom_over_endomorphisms(P, apply_functor(r, FunctorTag.J_STAR, m), E_basis, E)
        right = restrict_scalars(theta, corner, beta)
        rows = []
        for w in W:
            phi = mulmod(w, H_phi, p).reshape(free.dim, m.dim)
            psi = ModuleMap(Q, m, mulmod(H_mat, phi, p))
            adj = mulmod(U, apply_functor(r, FunctorTag.J_STAR, psi).matrix, p)
            rows.append(coordinates(G, G_pivots, adj.ravel(), p)[0] if G.shape[0] else np.zeros(0, dtype= np.int64))
        cert = np.array(rows, dtype= np.int64).reshape(left.dim, right.dim)
        ok = is_invertible(cert, p) and ModuleMap(left, right, cert).is_homomorphism()
        cert_ok.case(ok, **witness('certificate', m, matrix= cert))
        certificates.append((m.name, cert))

    return EquivalenceWitness(i, e, n, P, Q, surjection, section, S, e_prime, corner, E, beta,
                              certificates, report)


def _check_beta(report, corner, E, beta, p, budget= DEFAULT_BUDGET):
    k = corner.dim
    bij = report.tally('corner_ring_isomorphism_bijective', "e'Se' -> End(P) is bijective")
    bij.case(beta.shape[0] == beta.shape[1] and rank(beta, p) == k, beta= beta)
    unit = report.tally('corner_ring_isomorphism_unital', "e'Se' -> End(P) preserves the unit")
    unit.case(np.array_equal(mulmod(corner.unit, beta, p), E.unit) if k else E.dim == 0)
    mult = report.tally('corner_ring_isomorphism_multiplicative', "e'Se' -> End(P) is multiplicative")
    elements = all_vectors(k, p) if p ** (2 * k) <= budget else np.eye(k, dtype= np.int64)
    mult.detail['exhaustive'] = bool(p ** (2 * k) <= budget)
    for x, y in itertools.product(elements, repeat= 2):
        lhs = mulmod(corner.mul(x, y), beta, p)
        rhs = E.mul(mulmod(x, beta, p), mulmod(y, beta, p))
        mult.case(np.array_equal(lhs, rhs), x= x, y= y)


def _check_left_multiplication(report, S, e_prime, rS):
    r"""e'Se' -> End_S(e'S) by left multiplication is a bijection onto S-endomorphisms"""
    p = S.p
    regular = regular_module(S)
    eS = submodule(regular, S.left_mult_matrix(e_prime))
    module = eS.as_module(name= "e'S")
    maps = []
    record = report.tally('left_multiplication_is_endomorphism', "left multiplication by e'Se' is S-linear on e'S")
    for c in rS.corner_embedding:
        L = mulmod(eS.rows, S.left_mult_matrix(c), p)[:, list(eS.pivots)]
        f = ModuleMap(module, module, L)
        record.case(f.is_homomorphism())
        maps.append(L.ravel())
    total = hom_basis(module, module)[0].shape[0]
    ranked = rank(np.stack(maps), p) if maps and module.dim else 0
    report.check('left_multiplication_bijective', "e'Se' = End_S(e'S) by left multiplication",
                 ranked == rS.corner.dim == total, corner_dim= rS.corner.dim, endomorphisms= total)


def idempotent_generation_check(a, i, budget= DEFAULT_BUDGET):
    r"""
    an idempotent e with AeA = I, or None when an exhaustive search proves there is none.
    Sums of vertex idempotents are tried first; the exhaustive tier needs p^dim <= budget.
    """
    i = as_ideal(a, i)
    check_idempotent_ideal(i)
    size = a.p ** a.dim
    quiver = a.quiver
    if quiver is None and size <= budget:
        try:
            quiver = basic_structure(a, budget)
        except (BudgetExceeded, CharacteristicTooSmall):
            quiver = None
    if quiver is not None:
        V = quiver.vertex_idempotents
        for subset in itertools.product((0, 1), repeat= len(V)):
            e = np.asarray(subset, dtype= np.int64) @ V % a.p if len(V) else a.zero()
            if ideal_generated(a, [e]) == i:
                return e
    if size <= budget:
        for e in enumerate_idempotents(a, budget, mode= 'exhaustive'):
            if ideal_generated(a, [e]) == i:
                return e
        return None
    raise BudgetExceeded('idempotent search', size, budget, hint= 'only sums of vertex idempotents were tried')
