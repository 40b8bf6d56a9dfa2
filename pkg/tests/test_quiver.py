import numpy as np
import pytest

from recollement.core.algebra import parse_element
from recollement.core.quiver import make_presentation, path_algebra
from recollement.utils.errors import InvalidQuiver, NotFiniteDimensional, PresentationError


def test_one_arrow_gives_t2(t2):
    q = make_presentation(['1', '2'], [('1', '2', 'a')])
    a = path_algebra(q, 2)
    assert a.dim == 3
    assert a.basis == ('e1', 'e2', 'a')
    # e1, a, e2 play the roles of e11, e12, e22
    perm = [0, 2, 1]
    table = a.table[np.ix_(perm, perm, perm)]
    assert np.array_equal(table, t2.table)


def test_dual_numbers(dual):
    assert dual.basis == ('e1', 'x')
    x = parse_element(dual, 'x')
    assert not np.any(dual.mul(x, x))
    assert dual.quiver.radical_rows.shape[0] == 1


def test_paths_and_relations(t3, a3):
    assert t3.dim == 6
    assert 'a.b' in t3.basis
    ab = parse_element(t3, 'a.b')
    assert np.array_equal(t3.mul(parse_element(t3, 'a'), parse_element(t3, 'b')), ab)
    assert not np.any(t3.mul(parse_element(t3, 'b'), parse_element(t3, 'a')))
    assert a3.dim == 5
    assert 'a.b' not in a3.basis
    assert not np.any(a3.mul(parse_element(a3, 'a'), parse_element(a3, 'b')))


def test_vertex_data(t3):
    assert t3.quiver.vertex_names == ('1', '2', '3')
    assert np.array_equal(t3.quiver.vertex_idempotents.sum(axis= 0) % 2, t3.unit)
    assert t3.quiver.radical_rows.shape[0] == 3


def test_commutativity_relation():
    q = make_presentation(['1', '2', '3', '4'],
                          [('1', '2', 'a'), ('2', '4', 'b'), ('1', '3', 'c'), ('3', '4', 'd')],
                          ['a.b - c.d'])
    a = path_algebra(q, 3)
    assert a.dim == 4 + 4 + 1
    ab = a.mul(parse_element(a, 'a'), parse_element(a, 'b'))
    cd = a.mul(parse_element(a, 'c'), parse_element(a, 'd'))
    assert np.array_equal(ab, cd)


def test_cap_exceeded():
    q = make_presentation(['1'], [('1', '1', 'x')], nilpotency_cap= 2)
    with pytest.raises(NotFiniteDimensional):
        path_algebra(q, 2)


@pytest.mark.parametrize('vertices, arrows, relations', [
    (['1', '1'], [], []),
    (['1', '2'], [('1', '3', 'a')], []),
    (['1', '2'], [('1', '2', 'a'), ('2', '1', 'a')], []),
    (['1', '2'], [('1', '2', 'e1')], []),
    (['1', '2'], [('1', '2', 'a')], ['a']),
    (['1', '2', '3'], [('1', '2', 'a'), ('2', '3', 'b'), ('1', '2', 'c')], ['a.b - c']),
])
def test_invalid_presentations(vertices, arrows, relations):
    with pytest.raises(InvalidQuiver):
        make_presentation(vertices, arrows, relations)


def test_graph(t3):
    G = t3.quiver.presentation.graph()
    assert sorted(G.nodes) == ['1', '2', '3']
    assert sorted(k for _, _, k in G.edges(keys= True)) == ['a', 'b']


@pytest.mark.parametrize('relation, path, length', [('a', 'a', 1), ('e1', 'e1', 0), ('a.b - a.b.c', 'a.b.c', 3)])
def test_relation_lengths_are_named(relation, path, length):
    arrows = [('1', '2', 'a'), ('2', '3', 'b'), ('3', '3', 'c')]
    with pytest.raises(PresentationError) as err:
        make_presentation(['1', '2', '3'], arrows, [relation], nilpotency_cap= 2)
    assert err.value.path == path
    assert err.value.length == length
    assert err.value.relation == relation
