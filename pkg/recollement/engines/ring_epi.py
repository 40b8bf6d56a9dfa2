import itertools

import numpy as np

from recollement.core.ideals import as_ideal, ideal_product, quotient_algebra
from recollement.engines.ttf import FINITE_PRODUCTS_NOTE, trace_ideal_part
from recollement.modules.homology import hom_over, tensor_over, tor1
from recollement.modules.module import (
    ModuleMap, cokernel, direct_sum, find_isomorphism, hom_space, kernel, make_bimodule, make_module,
    regular_module, restrict_scalars,
)
from recollement.utils.errors import InternalInconsistency
from recollement.utils.linalg import complement_columns
from recollement.utils.report import Report, witness


def _stack(mats, d):
    return np.stack(mats) if mats else np.zeros((0, d, d), dtype= np.int64)


def quotient_bimodules(a, i):
    r"""
    B = A/I in the module structures needed for the ring epimorphism A -> B.

    # Returns
    _________
    dict with
        'algebra' : B
        'projection' : (dim A, dim B) matrix of A -> B
        'right' : B as a right A-module
        'A-A', 'A-B', 'B-A' : B as a bimodule over the named pair
    """
    i = as_ideal(a, i)
    B, P = quotient_algebra(a, i, name= f'{a.name or "A"}/I')
    d = B.dim
    via_a_left = _stack([B.left_mult_matrix(x) for x in P], d)
    via_a_right = _stack([B.right_mult_matrix(x) for x in P], d)
    eye = np.eye(d, dtype= np.int64)
    own_left = _stack([B.left_mult_matrix(x) for x in eye], d)
    own_right = _stack([B.right_mult_matrix(x) for x in eye], d)
    return {
        'algebra': B,
        'projection': P,
        'right': make_module(a, via_a_right, 'A/I', check= False),
        'A-A': make_bimodule(a, a, via_a_left, via_a_right, name= 'A/I', check= False),
        'A-B': make_bimodule(a, B, via_a_left, own_right, name= 'A/I', check= False),
        'B-A': make_bimodule(B, a, own_left, via_a_right, name= 'A/I', check= False),
    }


def tor1_self_quotient(a, i):
    r"""
    dim Tor_1^A(A/I, A/I), computed from a free presentation, together with
    dim I/I^2, which it must equal. I is idempotent exactly when both vanish.

    # Returns
    _________
    (tor, expected) : tuple of int
    """
    i = as_ideal(a, i)
    parts = quotient_bimodules(a, i)
    tor = tor1(parts['right'], parts['A-A'])
    expected = i.dim - ideal_product(i, i).dim
    if tor != expected:
        raise InternalInconsistency(f'Tor_1(A/I, A/I) has dimension {tor}, but dim I/I^2 = {expected}')
    return tor, expected


def _descend(m, i, B):
    r"""an A-module killed by I, read as a B-module"""
    keep = complement_columns(i.pivots, m.algebra.dim)
    action = m.action[keep] if B.dim else np.zeros((0, m.dim, m.dim), dtype= np.int64)
    return make_module(B, action, m.name, check= False)


def check_bireflective_image(a, i, catalog):
    r"""
    The modules killed by I form a bireflective subcategory: closed under
    kernels, cokernels and finite direct sums; - (x)_A A/I and Hom_A(A/I, -)
    restrict to the identity on them; the unit M -> M (x)_A A/I is onto with
    kernel M.I; and the multiplication B (x)_A B -> B is an isomorphism.

    # Arguments
    ___________
    a : Algebra
    i : Ideal
    catalog : ModuleCatalog
        A-modules; those with M.I = 0 are tested for closure and reflection

    # Returns
    _________
    Report
    """
    i = as_ideal(a, i)
    parts = quotient_bimodules(a, i)
    B, P = parts['algebra'], parts['projection']
    report = Report(context= {'engine': 'bireflective', 'ideal': i.rows})
    report.notes.append(FINITE_PRODUCTS_NOTE)

    square = tensor_over(parts['right'], parts['A-B'], name= 'B(x)B')
    report.check('ring_epimorphism', 'B (x)_A B is isomorphic to B',
                 find_isomorphism(square.module, regular_module(B)) is not None,
                 tensor_dim= square.module.dim, quotient_dim= B.dim)

    def killed(m):
        return trace_ideal_part(m, i).dim == 0

    inside = [m for m in catalog if killed(m)]
    closed = report.tally('bireflective_closure', 'modules killed by I are closed under kernels, cokernels and finite sums')
    for m, n in itertools.product(inside, repeat= 2):
        closed.case(killed(direct_sum(m, n)), **witness('direct_sum', m, n))
        for f in hom_space(m, n):
            ok = killed(kernel(f).as_module()) and killed(cokernel(f)[0])
            closed.case(ok, **witness('kernel_cokernel', m, n, map= f.matrix))

    left = report.tally('tensor_reflection', 'M (x)_A A/I is isomorphic to M when M.I = 0')
    right = report.tally('hom_coreflection', 'Hom_A(A/I, M) is isomorphic to M when M.I = 0')
    for m in inside:
        target = _descend(m, i, B)
        t = tensor_over(m, parts['A-B'])
        left.case(find_isomorphism(t.module, target) is not None, **witness('tensor_reflection', m))
        h = hom_over(parts['B-A'], m)
        right.case(find_isomorphism(h.module, target) is not None, **witness('hom_coreflection', m))

    unit = report.tally('reflection_unit', 'M -> M (x)_A A/I is onto a module killed by I, with kernel M.I')
    one = B.one()
    for m in catalog:
        t = tensor_over(m, parts['A-B'])
        back = restrict_scalars(t.module, a, P)
        u = ModuleMap(m, back, t.element(np.eye(m.dim, dtype= np.int64), one) if m.dim
                      else np.zeros((0, back.dim), dtype= np.int64))
        ok = u.is_homomorphism() and u.is_surjective() and killed(back) \
            and kernel(u) == trace_ideal_part(m, i)
        unit.case(ok, **witness('reflection_unit', m))
    return report
