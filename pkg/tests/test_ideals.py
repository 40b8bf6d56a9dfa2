import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from recollement.core.algebra import matrix_units_algebra, parse_element
from recollement.core.ideals import (
    Ideal, as_ideal, basic_structure, check_idempotent_ideal, enumerate_ideals, enumerate_idempotent_ideals,
    ideal_generated, ideal_product, idempotent_to_ideal, is_idempotent_ideal, is_semiprimary, nilpotency_index,
    quotient_algebra, radical,
)
from recollement.data.builtin import load_builtin
from recollement.utils.errors import CharacteristicTooSmall, NotAnIdeal, NotIdempotentIdeal

ORACLE_ALGEBRAS = ['F2', 'F2xF2', 'F2[x]/x2', 'T2_F2', 'M2_F2']


def test_t2_idempotent_ideals(t2):
    ideals = enumerate_idempotent_ideals(t2, mode= 'brute')
    assert [i.dim for i in ideals] == [0, 2, 2, 3]
    assert idempotent_to_ideal(t2, parse_element(t2, 'e11')) in ideals
    assert idempotent_to_ideal(t2, parse_element(t2, 'e22')) in ideals
    assert sorted(i.labels() for i in ideals if i.dim == 2) == [['e11', 'e12'], ['e12', 'e22']]


@pytest.mark.parametrize('name, count', [('F2', 2), ('F2xF2', 4), ('F2[x]/x2', 2), ('T2_F2', 4), ('M2_F2', 2)])
def test_idempotent_ideal_counts(name, count):
    assert len(enumerate_idempotent_ideals(load_builtin(name), mode= 'brute')) == count


@pytest.mark.parametrize('name', ['T2_F2', 'T3_F2', 'A3_quiver_with_zero_relation', 'F2xF2'])
def test_vertex_mode_agrees_with_brute(name):
    a = load_builtin(name)
    assert enumerate_idempotent_ideals(a, mode= 'vertex') == enumerate_idempotent_ideals(a, mode= 'brute')


def test_generated_ideals(t2, m2):
    assert ideal_generated(t2, [parse_element(t2, 'e12')]) == radical(t2)
    assert ideal_generated(t2, [parse_element(t2, 'e11')]).labels() == ['e11', 'e12']
    assert ideal_generated(m2, [parse_element(m2, 'e11')]).dim == 4
    assert ideal_generated(t2, []).dim == 0


def test_radicals(t2, dual, f2xf2, m2, t3):
    assert radical(t2).labels() == ['e12']
    assert radical(dual).labels() == ['x']
    assert radical(f2xf2).dim == 0
    assert radical(m2).dim == 0
    assert radical(t3).dim == 3


def test_radical_needs_budget_in_small_characteristic(m2):
    with pytest.raises(CharacteristicTooSmall):
        radical(m2, budget= 8)


def test_trace_form_radical():
    # p > dim: upper triangular 2x2 matrices over F_5
    a = matrix_units_algebra(5, [(1, 1), (1, 2), (2, 2)])
    assert radical(a).labels() == ['e12']


@pytest.mark.parametrize('name, index', [('T2_F2', 2), ('F2', 1), ('F2[x]/x2', 2), ('T3_F2', 3)])
def test_semiprimary(name, index):
    witness = is_semiprimary(load_builtin(name))
    assert witness.is_semiprimary
    assert witness.nilpotency_index == index


def test_quotients(t2):
    i = idempotent_to_ideal(t2, parse_element(t2, 'e11'))
    b, P = quotient_algebra(t2, i)
    assert b.dim == 1
    assert P.shape == (3, 1)
    same, _ = quotient_algebra(t2, Ideal(t2, []))
    assert same.dim == 3
    zero, _ = quotient_algebra(t2, Ideal(t2, np.eye(3)))
    assert zero.dim == 0
    top, _ = quotient_algebra(t2, radical(t2))
    assert radical(top).dim == 0


def test_not_an_ideal(t2):
    with pytest.raises(NotAnIdeal):
        as_ideal(t2, [parse_element(t2, 'e11')])


def test_not_idempotent_ideal_carries_quotient_dim(t2):
    with pytest.raises(NotIdempotentIdeal) as err:
        check_idempotent_ideal(radical(t2))
    assert err.value.quotient_dim == 1
    assert nilpotency_index(radical(t2)) == 2


def test_basic_structure(t2, m2):
    quiver = basic_structure(t2)
    assert [t2.format(v) for v in quiver.vertex_idempotents] == ['e11', 'e22']
    assert basic_structure(m2) is None


@given(st.sampled_from(ORACLE_ALGEBRAS), st.data())
def test_ideal_product_laws(name, data):
    a = load_builtin(name)
    ideals = enumerate_ideals(a)
    i, j, k = (data.draw(st.sampled_from(ideals)) for _ in range(3))
    assert ideal_product(i, ideal_product(j, k)) == ideal_product(ideal_product(i, j), k)
    if j.contains(i.rows):
        assert ideal_product(j, k).contains(ideal_product(i, k).rows)


def test_ideal_counts(t2):
    ideals = enumerate_ideals(t2)
    assert len(ideals) == 5
    assert sum(is_idempotent_ideal(i) for i in ideals) == 4
    for i, j in itertools.combinations(ideals, 2):
        assert i != j
