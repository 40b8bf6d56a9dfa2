import itertools
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm

from recollement.core.ideals import Ideal, as_ideal, check_idempotent_ideal
from recollement.modules.catalog import module_catalog
from recollement.modules.homology import extension_middles
from recollement.modules.module import (
    direct_sum, find_isomorphism, hom_dim, induced_quotient_map, quotient, regular_module,
    submodule, submodule_sum, submodules,
)
from recollement.utils.errors import AlgebraMismatch, BudgetExceeded
from recollement.utils.linalg import intersection, left_nullspace, mulmod, rank, row_space
from recollement.utils.report import Report, witness

# subsets of catalog classes scanned by the brute force TTF search
TTF_SUBSET_BUDGET = 1 << 16

FINITE_PRODUCTS_NOTE = 'products are finite direct sums; classes are restricted to the module catalog'


def _same_algebra(m, i):
    if m.algebra is not i.algebra:
        raise AlgebraMismatch(f'{m!r} and the ideal live over different algebras')


def trace_ideal_part(m, i):
    r"""
    M.I, the span of m.x for m in M and x in I
    """
    _same_algebra(m, i)
    if i.dim == 0 or m.dim == 0:
        return submodule(m, np.zeros((0, m.dim), dtype= np.int64))
    return submodule(m, np.vstack([m.action_of(x) for x in i.rows]))


def annihilated_part(m, i):
    r"""
    M[I] = {m : m.I = 0}, the left kernel of [R(x_1) | ... | R(x_r)]
    """
    _same_algebra(m, i)
    if i.dim == 0 or m.dim == 0:
        return submodule(m, np.eye(m.dim, dtype= np.int64))
    stacked = np.hstack([m.action_of(x) for x in i.rows])
    return submodule(m, left_nullspace(stacked, m.p))


@dataclass(frozen= True, eq= False)
class TorsionDecomposition:
    r"""0 -> t(M) -> M -> M/t(M) -> 0 for one of the two torsion pairs"""
    module: object
    torsion: object
    torsion_module: object
    quotient: object
    projection: object


def _decompose(m, sub):
    q, proj = quotient(m, sub)
    return TorsionDecomposition(m, sub, sub.as_module(), q, proj)


@dataclass(frozen= True, eq= False)
class TTFTriple:
    r"""
    The TTF-triple (X, Y, Z) of an idempotent ideal I:
    X = {M : MI = M}, Y = {M : MI = 0}, Z = {M : M[I] = 0}.
    (X, Y) and (Y, Z) are torsion pairs.
    """
    algebra: object
    ideal: Ideal

    def in_torsion(self, m):
        return trace_ideal_part(m, self.ideal).dim == m.dim

    def in_middle(self, m):
        return trace_ideal_part(m, self.ideal).dim == 0

    def in_torsion_free(self, m):
        return annihilated_part(m, self.ideal).dim == 0

    def membership(self, m):
        return {'X': self.in_torsion(m), 'Y': self.in_middle(m), 'Z': self.in_torsion_free(m)}

    def lower_decomposition(self, m):
        r"""0 -> MI -> M -> M/MI -> 0 with MI in X and M/MI in Y"""
        return _decompose(m, trace_ideal_part(m, self.ideal))

    def upper_decomposition(self, m):
        r"""0 -> M[I] -> M -> M/M[I] -> 0 with M[I] in Y and M/M[I] in Z"""
        return _decompose(m, annihilated_part(m, self.ideal))


def ttf_from_ideal(a, i):
    i = as_ideal(a, i)
    check_idempotent_ideal(i)
    return TTFTriple(a, i)


def ideal_from_ttf(t):
    r"""
    the idempotent ideal of a TTF-triple: the X-torsion part of the regular module
    """
    A = regular_module(t.algebra)
    return as_ideal(t.algebra, trace_ideal_part(A, t.ideal).rows)


@dataclass(frozen= True, eq= False)
class ShortExactSequence:
    r"""0 -> S -> E -> Q -> 0 with S a submodule of E"""
    middle: object
    sub: object
    sub_module: object
    quotient: object
    projection: object


def short_exact_sequences(catalog, proper= True):
    r"""
    every 0 -> S -> M -> M/S -> 0 with M in the catalog (and S a nonzero
    proper submodule when `proper`)
    """
    out = []
    for m in catalog:
        for s in submodules(m):
            if proper and s.dim in (0, m.dim):
                continue
            q, proj = quotient(m, s)
            out.append(ShortExactSequence(m, s, s.as_module(), q, proj))
    return out


def _largest_submodule_in(m, member):
    r"""the sum of all submodules of M lying in a class closed under sums and quotients"""
    total = submodule(m, np.zeros((0, m.dim), dtype= np.int64))
    for s in submodules(m):
        if s.dim and not total.contains(s) and member(s.as_module()):
            total = submodule_sum(total, s)
    return total


def verify_torsion_pair(i, which, catalog):
    r"""
    Checks that the lower (X, Y) or upper (Y, Z) pair of an idempotent ideal is a
    torsion pair on the catalog: Hom(T, F) = 0, every module sits in
    0 -> tM -> M -> M/tM -> 0 with tM in T and M/tM in F, the largest submodule
    of M in T is MI (lower) or M[I] (upper), and T, F are each other's
    Hom-orthogonals.
    """
    t = TTFTriple(i.algebra, i)
    if which == 'lower':
        in_t, in_f, decompose = t.in_torsion, t.in_middle, t.lower_decomposition
        label, part = '(X, Y)', 'MI'
    elif which == 'upper':
        in_t, in_f, decompose = t.in_middle, t.in_torsion_free, t.upper_decomposition
        label, part = '(Y, Z)', 'M[I]'
    else:
        raise ValueError(f'unknown torsion pair {which!r}')

    report = Report(context= {'engine': 'torsion_pair', 'ideal': i.rows, 'which': which})
    report.notes.append(FINITE_PRODUCTS_NOTE)
    T = [m for m in catalog if in_t(m)]
    F = [m for m in catalog if in_f(m)]

    vanish = report.tally(f'{which}_hom_vanishing', f'Hom(T, F) = 0 for the torsion pair {label}')
    for m in T:
        for n in F:
            d = hom_dim(m, n)
            vanish.case(d == 0, **witness('hom_vanishing', m, n, hom_dim= d))

    split = report.tally(f'{which}_decomposition', f'each module has its canonical sequence for {label}')
    trace = report.tally(f'{which}_torsion_part', f'the torsion part of M for {label} is {part}')
    for m in catalog:
        dec = decompose(m)
        ok = in_t(dec.torsion_module) and in_f(dec.quotient)
        split.case(ok, **witness('decomposition', m, torsion_dim= dec.torsion.dim))
        largest = _largest_submodule_in(m, in_t)
        trace.case(largest == dec.torsion, **witness('torsion_part', m, largest_dim= largest.dim,
                                                      canonical_dim= dec.torsion.dim))

    perp = report.tally(f'{which}_orthogonality', f'T and F determine each other by Hom-orthogonality for {label}')
    for m in catalog:
        left = all(hom_dim(m, n) == 0 for n in F)
        right = all(hom_dim(n, m) == 0 for n in T)
        ok = left == in_t(m) and right == in_f(m)
        others = [] if ok else [n for n in F if hom_dim(m, n)] + [n for n in T if hom_dim(n, m)]
        perp.case(ok, **witness('orthogonality', m, *others))
    return report


def verify_ttf_closure(t, catalog, rng= None):
    r"""
    Closure properties of the three classes on the catalog: X under quotients,
    Z under submodules, Y under both; all three under extensions and finite
    direct sums (finite products coincide with them).
    """
    report = Report(context= {'engine': 'ttf_closure', 'ideal': t.ideal.rows})
    report.notes.append(FINITE_PRODUCTS_NOTE)
    classes = {'X': t.in_torsion, 'Y': t.in_middle, 'Z': t.in_torsion_free}

    subs = report.tally('ttf_submodule_closure', 'Y and Z are closed under submodules')
    quots = report.tally('ttf_quotient_closure', 'X and Y are closed under quotients')
    for seq in short_exact_sequences(catalog, proper= False):
        for c in ('Y', 'Z'):
            if classes[c](seq.middle):
                subs.case(classes[c](seq.sub_module), **witness('submodule', seq.middle, seq.sub_module, cls= c))
        for c in ('X', 'Y'):
            if classes[c](seq.middle):
                quots.case(classes[c](seq.quotient), **witness('quotient', seq.middle, seq.quotient, cls= c))

    sums = report.tally('ttf_direct_sum_closure', 'X, Y and Z are closed under finite direct sums and products')
    ext = report.tally('ttf_extension_closure', 'X, Y and Z are closed under extensions')
    for c, member in classes.items():
        inside = [m for m in catalog if member(m)]
        for m, n in itertools.combinations_with_replacement(inside, 2):
            sums.case(member(direct_sum(m, n)), **witness('direct_sum', m, n, cls= c))
        for m, n in itertools.product(inside, repeat= 2):
            for e in extension_middles(m, n, rng= rng):
                ext.case(member(e), **witness('extension', m, n, e, cls= c))
    return report


def verify_radical_functor(i, sequences):
    r"""
    (-)[I] is an idempotent left exact radical and M -> M/MI an idempotent
    right exact coradical; both commute with finite direct sums up to isomorphism.
    Each counterexample names the middle term E of its sequence first.
    """
    p = i.algebra.p
    report = Report(context= {'engine': 'radical_functor', 'ideal': i.rows})

    left_exact = report.tally('annihilator_left_exact', 'M -> M[I] is left exact')
    radical = report.tally('annihilator_radical', '(M/M[I])[I] = 0')
    idem = report.tally('annihilator_idempotent', 'M[I][I] = M[I]')
    sums = report.tally('annihilator_direct_sums', '(S + Q)[I] is isomorphic to S[I] + Q[I]')
    right_exact = report.tally('coradical_right_exact', 'M -> M/MI is right exact')
    coradical = report.tally('coradical_property', '(M/MI)I = 0')
    trace_idem = report.tally('trace_idempotent', '(MI)I = MI')
    trace_sums = report.tally('trace_direct_sums', '(S + Q)I is isomorphic to SI + QI')

    for seq in sequences:
        E, S, Q = seq.middle, seq.sub_module, seq.quotient
        ann_E = annihilated_part(E, i)
        ann_S = annihilated_part(S, i)
        inside = mulmod(ann_S.rows, seq.sub.rows, p)
        ok = np.array_equal(row_space(inside, p), intersection(ann_E.rows, seq.sub.rows, p))
        left_exact.case(ok, **witness('left_exact', E, S, Q))

        top, _ = quotient(E, ann_E)
        radical.case(annihilated_part(top, i).dim == 0, **witness('radical', E))
        idem.case(annihilated_part(ann_E.as_module(), i).dim == ann_E.dim, **witness('idempotent', E))

        both = direct_sum(S, Q)
        pieces = direct_sum(ann_S.as_module(), annihilated_part(Q, i).as_module())
        ok = find_isomorphism(annihilated_part(both, i).as_module(), pieces) is not None
        sums.case(ok, **witness('direct_sums', E, S, Q))

        tr_E, tr_S, tr_Q = trace_ideal_part(E, i), trace_ideal_part(S, i), trace_ideal_part(Q, i)
        inclusion = seq.sub.inclusion(S)
        f1 = induced_quotient_map(inclusion, tr_S, tr_E)
        f2 = induced_quotient_map(seq.projection, tr_E, tr_Q)
        composite_zero = not np.any(mulmod(f1.matrix, f2.matrix, p))
        exact = f2.is_surjective() and composite_zero \
            and rank(f1.matrix, p) == f1.target.dim - f2.target.dim
        right_exact.case(exact, **witness('right_exact', E, S, Q))

        top_E, _ = quotient(E, tr_E)
        coradical.case(trace_ideal_part(top_E, i).dim == 0, **witness('coradical', E))
        trace_idem.case(trace_ideal_part(tr_E.as_module(), i).dim == tr_E.dim, **witness('trace_idempotent', E))
        pieces = direct_sum(tr_S.as_module(), tr_Q.as_module())
        ok = find_isomorphism(trace_ideal_part(both, i).as_module(), pieces) is not None
        trace_sums.case(ok, **witness('trace_sums', E, S, Q))
    return report


@dataclass
class BruteTTFResult:
    r"""
    TTF classes found by brute force on a catalog, each given as the sorted
    tuple of catalog indices of its middle class Y
    """
    catalog: object
    classes: list

    @property
    def count(self):
        return len(self.classes)


def _catalog_structure(catalog, rng= None, verbose= False):
    r"""
    for each catalog module: its (sub, quotient) class pairs; for each pair of
    classes: the direct sum and all extension middles that fit in the catalog
    """
    N = len(catalog)
    bound = catalog.dim_bound
    subs = []
    for m in tqdm(catalog, disable= not verbose, desc= 'submodules'):
        pairs = set()
        for s in submodules(m):
            q, _ = quotient(m, s)
            pairs.add((catalog.index_of(s.as_module()), catalog.index_of(q)))
        subs.append(pairs)
    sums, exts = {}, {}
    for k, l in itertools.product(range(N), repeat= 2):
        if catalog[k].dim + catalog[l].dim > bound:
            continue
        sums[k, l] = catalog.index_of(direct_sum(catalog[k], catalog[l]))
        exts[k, l] = {catalog.index_of(e) for e in extension_middles(catalog[k], catalog[l], rng= rng)}
    hom_zero = np.array([[hom_dim(m, n) == 0 for n in catalog] for m in catalog], dtype= bool)
    return subs, sums, exts, hom_zero


def _is_ttf_class(Y, N, subs, sums, exts, hom_zero):
    for k in Y:
        if any(s not in Y or q not in Y for s, q in subs[k]):
            return False
    for (k, l), s in sums.items():
        if k in Y and l in Y and s not in Y:
            return False
    for (k, l), middles in exts.items():
        if k in Y and l in Y and not middles <= Y:
            return False
    ys = sorted(Y)
    X = {k for k in range(N) if hom_zero[k, ys].all()}
    Z = {k for k in range(N) if hom_zero[ys, k].all()}
    for k in range(N):
        if not any(s in X and q in Y for s, q in subs[k]):
            return False
        if not any(s in Y and q in Z for s, q in subs[k]):
            return False
    return True


def brute_force_ttf_triples(a, dim_bound, catalog= None, budget= TTF_SUBSET_BUDGET, rng= None, verbose= False):
    r"""
    Enumerates the TTF-triples of mod A seen through the catalog of modules of
    dimension <= dim_bound, independently of ideals: a set Y of classes
    containing 0 qualifies when it is closed under submodules, quotients,
    direct sums and extensions (within the catalog) and every catalog module
    has decompositions for (perp-left Y, Y) and (Y, perp-right Y).

    # Returns
    _________
    BruteTTFResult
    """
    if catalog is None:
        catalog = module_catalog(a, dim_bound, verbose= verbose)
    N = len(catalog)
    size = 2 ** (N - 1)
    if size > budget:
        raise BudgetExceeded('TTF class search', size, budget, hint= 'lower the dimension bound')
    structure = _catalog_structure(catalog, rng, verbose)
    classes = []
    for bits in tqdm(itertools.product((0, 1), repeat= N - 1), total= size, disable= not verbose, desc= 'classes'):
        Y = {0} | {k + 1 for k, b in enumerate(bits) if b}
        if _is_ttf_class(Y, N, *structure):
            classes.append(tuple(sorted(Y)))
    return BruteTTFResult(catalog, sorted(classes, key= lambda c: (len(c), c)))


def middle_class(catalog, i):
    r"""catalog indices of the modules killed by I"""
    return tuple(k for k, m in enumerate(catalog) if trace_ideal_part(m, i).dim == 0)
