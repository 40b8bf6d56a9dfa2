import numpy as np
import pytest

from recollement.core.algebra import parse_element
from recollement.core.ideals import idempotent_to_ideal
from recollement.engines.ring_epi import quotient_bimodules
from recollement.modules.homology import (
    ext1, extension_middles, extension_space, free_presentation, hom_over, tensor_over, tor1,
)
from recollement.modules.module import (
    direct_sum, find_isomorphism, make_bimodule, make_module, regular_bimodule, regular_module,
    submodule_generated,
)
from recollement.utils.errors import AlgebraMismatch, BudgetExceeded
from recollement.utils.linalg import rank


def one_dim(a, values, name= None):
    return make_module(a, np.asarray(values, dtype= np.int64).reshape(a.dim, 1, 1), name)


@pytest.fixture
def t2_simples(t2):
    return one_dim(t2, [1, 0, 0], 'S1'), one_dim(t2, [0, 0, 1], 'S2')


def test_ext_between_t2_simples(t2_simples):
    s1, s2 = t2_simples
    assert [ext1(s1, s2), ext1(s2, s1)] == [1, 0]
    assert ext1(s1, s1) == 0 and ext1(s2, s2) == 0


def test_projectives_have_no_extensions(t2, t2_catalog):
    A = regular_module(t2)
    for m in t2_catalog:
        assert ext1(A, m) == 0


def test_dual_numbers_self_extension(dual):
    s = one_dim(dual, [1, 0], 'S')
    assert ext1(s, s) == 1
    pres = free_presentation(s)
    assert pres.projection.is_surjective()
    assert find_isomorphism(pres.kernel_module, s) is not None


def test_extension_space_matches_ext(t2_simples, t2):
    s1, s2 = t2_simples
    assert extension_space(s1, s2).dim == ext1(s1, s2)
    assert extension_space(s2, s1).dim == 0
    middles = extension_middles(s1, s2)
    assert len(middles) == 2
    p1 = submodule_generated(regular_module(t2), [[1, 0, 0]]).as_module()
    assert find_isomorphism(middles[0], direct_sum(s2, s1)) is not None
    assert find_isomorphism(middles[1], p1) is not None


def test_extension_budget(dual):
    s = one_dim(dual, [1, 0])
    square = direct_sum(s, s)
    with pytest.raises(BudgetExceeded):
        extension_middles(square, square, budget= 2)
    sampled = extension_middles(square, square, budget= 2, rng= np.random.default_rng(0), samples= 4)
    assert len(sampled) == 5
    assert all(m.dim == 4 for m in sampled)


def test_regular_bimodule_is_neutral(t2, t2_catalog):
    A = regular_bimodule(t2)
    for m in t2_catalog:
        t = tensor_over(m, A)
        assert t.module.dim == m.dim
        assert find_isomorphism(t.module, m) is not None
        h = hom_over(A, m)
        assert h.module.dim == m.dim
        assert find_isomorphism(h.module, m) is not None
        assert tor1(m, A) == 0


def test_tor_of_dual_number_simples(dual):
    s = one_dim(dual, [1, 0], 'S')
    values = np.array([1, 0], dtype= np.int64).reshape(2, 1, 1)
    bimodule = make_bimodule(dual, dual, values, values, name= 'S')
    assert tor1(s, bimodule) == 1
    assert tensor_over(s, bimodule).module.dim == 1


def test_mismatched_algebras(t2_simples, dual):
    s1, _ = t2_simples
    with pytest.raises(AlgebraMismatch):
        ext1(s1, one_dim(dual, [1, 0]))
    with pytest.raises(AlgebraMismatch):
        tensor_over(s1, regular_bimodule(dual))


def test_tensor_and_hom_with_a_quotient_bimodule(t2, t2_simples):
    s1, s2 = t2_simples
    parts = quotient_bimodules(t2, idempotent_to_ideal(t2, parse_element(t2, 'e11')))
    # A/Ae11A is S2 on both sides: S1 dies, S2 survives
    assert tensor_over(s1, parts['A-A']).module.dim == 0
    t = tensor_over(s2, parts['A-A'])
    assert find_isomorphism(t.module, s2) is not None
    assert t.element([1], [1]).tolist() == [1]
    assert np.array_equal(t.element(np.eye(1, dtype= np.int64), [1]), [[1]])
    assert hom_over(parts['A-A'], s1).module.dim == 0
    h = hom_over(parts['A-A'], s2)
    assert find_isomorphism(h.module, s2) is not None
    assert h.matrix([1]).tolist() == [[1]]


def test_tensor_elements_of_the_regular_bimodule(t2):
    A = regular_module(t2)
    t = tensor_over(A, regular_bimodule(t2))
    e11, e12, e22 = np.eye(3, dtype= np.int64)
    # x (x) 1 runs over a basis, and (x b) (x) y = x (x) (b y)
    images = t.element(np.eye(3, dtype= np.int64), t2.unit)
    assert images.shape == (3, 3) and rank(images, 2) == 3
    assert np.array_equal(t.element(t2.mul(e11, e12), e22), t.element(e11, t2.mul(e12, e22)))
    assert not np.any(t.element(e12, e11))
