import numpy as np
import pytest
from hypothesis import given, strategies as st

from recollement.core.algebra import (
    build_algebra, enumerate_idempotents, format_element, parse_element, peirce_corner,
    product_algebra, vertex_subset_idempotents, zero_algebra,
)
from recollement.data.builtin import BUILTIN_ALGEBRAS, load_builtin
from recollement.utils.errors import BadUnit, BudgetExceeded, NonAssociative, NotIdempotent, NotPrime, SpecParseError

builtin_names = st.sampled_from(sorted(BUILTIN_ALGEBRAS))


def test_field_as_algebra():
    a = build_algebra(2, ['1x'], [[[1]]], [1])
    assert a.dim == 1
    assert np.array_equal(a.mul(a.one(), a.one()), a.one())


def test_rejects_bad_input():
    with pytest.raises(NotPrime):
        build_algebra(4, ['u'], [[[1]]], [1])
    table = np.zeros((2, 2, 2), dtype= np.int64)
    table[0, 0] = [0, 1]
    table[0, 1] = [1, 0]
    with pytest.raises(NonAssociative) as err:
        build_algebra(2, ['u', 'v'], table, [1, 0])
    assert len(err.value.triple) == 3
    with pytest.raises(BadUnit):
        build_algebra(2, ['u'], [[[1]]], [0])


def test_t2_structure(t2):
    assert t2.dim == 3
    assert t2.basis == ('e11', 'e12', 'e22')
    e11, e12 = t2.basis_vector(0), t2.basis_vector(1)
    assert np.array_equal(t2.mul(e11, e12), e12)
    assert not np.any(t2.mul(e12, e11))
    x = parse_element(t2, 'e11+e12')
    assert np.array_equal(x @ t2.left_mult_matrix(e11) % 2, t2.mul(e11, x))
    assert np.array_equal(x @ t2.right_mult_matrix(e11) % 2, t2.mul(x, e11))


def test_element_expressions(t2):
    assert np.array_equal(parse_element(t2, 'e11 + e22'), [1, 0, 1])
    assert np.array_equal(parse_element(t2, '1'), t2.unit)
    assert not np.any(parse_element(t2, '0'))
    assert np.array_equal(parse_element(t2, '3*e12 - e11'), [1, 1, 0])
    assert format_element(t2, [1, 0, 1]) == 'e11+e22'
    assert format_element(t2, [0, 0, 0]) == '0'
    with pytest.raises(SpecParseError):
        parse_element(t2, 'e33')
    with pytest.raises(SpecParseError):
        parse_element(t2, 'e11 e22')


def test_t2_idempotents(t2):
    idempotents = {format_element(t2, e) for e in enumerate_idempotents(t2, mode= 'exhaustive')}
    assert idempotents == {'0', 'e11', 'e22', 'e11+e22', 'e11+e12', 'e12+e22'}


def test_idempotent_budget(t2, t3):
    with pytest.raises(BudgetExceeded):
        enumerate_idempotents(t2, budget= 4, mode= 'exhaustive')
    with pytest.raises(BudgetExceeded):
        enumerate_idempotents(t2, mode= 'restricted')
    assert len(enumerate_idempotents(t3, mode= 'restricted')) == 8
    assert len(vertex_subset_idempotents(t3)) == 8


@given(builtin_names)
def test_idempotents_closed_under_complement(name):
    a = load_builtin(name)
    found = {e.tobytes() for e in enumerate_idempotents(a)}
    for e in enumerate_idempotents(a):
        assert a.is_idempotent(e)
        assert ((a.one() - e) % a.p).tobytes() in found


@given(builtin_names)
def test_builtins_are_associative(name):
    a = load_builtin(name)
    left = np.einsum('ijl,lkm->ijkm', a.table, a.table) % a.p
    right = np.einsum('jkl,ilm->ijkm', a.table, a.table) % a.p
    assert np.array_equal(left, right)


def test_peirce_corners(t2):
    corner, W = peirce_corner(t2, parse_element(t2, 'e11'))
    assert corner.dim == 1
    assert np.array_equal(W, [[1, 0, 0]])
    assert np.array_equal(corner.unit, [1])
    full, _ = peirce_corner(t2, t2.one())
    assert full.dim == 3
    empty, _ = peirce_corner(t2, t2.zero())
    assert empty.dim == 0
    with pytest.raises(NotIdempotent):
        peirce_corner(t2, parse_element(t2, 'e12'))


def test_corner_keeps_vertex_data(t3):
    corner, _ = peirce_corner(t3, parse_element(t3, 'e1+e2'))
    assert corner.dim == 3
    assert corner.quiver is not None
    assert corner.quiver.vertex_names == ('1', '2')
    assert corner.quiver.radical_rows.shape[0] == 1


def test_zero_and_product_algebras():
    z = zero_algebra(3)
    assert z.dim == 0
    f = product_algebra(3, 2)
    assert f.basis == ('e1', 'e2')
    assert np.array_equal(f.unit, [1, 1])
