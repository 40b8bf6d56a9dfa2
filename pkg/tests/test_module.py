import numpy as np
import pytest
from hypothesis import given, strategies as st

from recollement.modules.module import (
    cokernel, direct_sum, find_isomorphism, hom_dim, hom_space, identity_map, is_indecomposable,
    is_simple, kernel, make_module, module_map, quotient, regular_module, representation_law_violation,
    submodule_generated, submodules,
)
from recollement.utils.errors import AlgebraMismatch, RepresentationLawViolation, WrongCategory


def one_dim(a, values, name= None):
    return make_module(a, np.asarray(values, dtype= np.int64).reshape(a.dim, 1, 1), name)


@pytest.fixture
def t2_modules(t2):
    s1 = one_dim(t2, [1, 0, 0], 'S1')
    s2 = one_dim(t2, [0, 0, 1], 'S2')
    A = regular_module(t2)
    p1 = submodule_generated(A, [[1, 0, 0]]).as_module('P1')
    return s1, s2, p1


def test_regular_module(t2):
    A = regular_module(t2)
    assert A.dim == 3
    assert representation_law_violation(t2, A.action) is None
    assert hom_dim(A, A) == 3


def test_hom_from_regular_module(t2, t2_catalog):
    A = regular_module(t2)
    for m in t2_catalog:
        assert hom_dim(A, m) == m.dim


def test_corrupted_action_is_rejected(t2):
    with pytest.raises(RepresentationLawViolation) as err:
        one_dim(t2, [1, 0, 1])
    assert err.value.pair == (0, 2)
    with pytest.raises(AlgebraMismatch):
        make_module(t2, np.zeros((2, 1, 1), dtype= np.int64))


def test_simples_and_projectives(t2_modules):
    s1, s2, p1 = t2_modules
    assert p1.dim == 2
    assert is_simple(s1) and is_simple(s2)
    assert not is_simple(p1)
    assert is_indecomposable(p1)
    assert not is_indecomposable(direct_sum(s1, s2))
    assert hom_dim(p1, s1) == 1
    assert hom_dim(s1, p1) == 0
    assert hom_dim(s2, p1) == 1
    assert len(submodules(p1)) == 3


def test_isomorphism_search(t2_modules):
    s1, s2, p1 = t2_modules
    f = find_isomorphism(direct_sum(s1, s2), direct_sum(s2, s1))
    assert f is not None and f.is_homomorphism() and f.is_isomorphism()
    assert find_isomorphism(direct_sum(s1, s2), p1) is None
    assert find_isomorphism(s1, s2) is None


def test_kernel_and_cokernel(t2_modules):
    s1, s2, p1 = t2_modules
    top, = hom_space(p1, s1)
    assert top.is_surjective()
    K = kernel(top)
    assert K.dim == 1
    assert find_isomorphism(K.as_module(), s2) is not None
    assert cokernel(top)[0].dim == 0
    q, proj = quotient(p1, K)
    assert proj.is_homomorphism() and proj.is_surjective()
    assert find_isomorphism(q, s1) is not None


def test_module_map_checks_linearity(t2_modules, f2):
    s1, s2, p1 = t2_modules
    with pytest.raises(WrongCategory):
        module_map(s1, s2, [[1]])
    with pytest.raises(WrongCategory):
        identity_map(s1).then(identity_map(p1))
    with pytest.raises(AlgebraMismatch):
        module_map(s1, regular_module(f2), [[1]])


@given(st.data())
def test_hom_is_additive(t2_catalog, data):
    modules = st.sampled_from(list(t2_catalog))
    m, n, l = data.draw(modules), data.draw(modules), data.draw(modules)
    assert hom_dim(direct_sum(m, n), l) == hom_dim(m, l) + hom_dim(n, l)
    assert hom_dim(l, direct_sum(m, n)) == hom_dim(l, m) + hom_dim(l, n)
