import pytest

from recollement.core.algebra import parse_element
from recollement.core.ideals import enumerate_idempotent_ideals, idempotent_to_ideal, radical
from recollement.data.builtin import load_builtin
from recollement.engines.ttf import (
    TTFTriple, brute_force_ttf_triples, ideal_from_ttf, middle_class, short_exact_sequences, trace_ideal_part,
    ttf_from_ideal, verify_radical_functor, verify_torsion_pair, verify_ttf_closure,
)
from recollement.modules.catalog import module_catalog
from recollement.modules.module import regular_module
from recollement.utils.errors import AlgebraMismatch, NotIdempotentIdeal


@pytest.fixture(scope= 'module')
def t2_ideal(t2):
    return idempotent_to_ideal(t2, parse_element(t2, 'e11'))


def test_membership(t2, t2_ideal, t2_catalog):
    t = ttf_from_ideal(t2, t2_ideal)
    e11 = parse_element(t2, 'e11')
    # catalog order is not vertex order: tell the simples apart by the action of e11
    simples = [m for m in t2_catalog if m.dim == 1]
    [s1] = [m for m in simples if m.action_of(e11).any()]
    [s2] = [m for m in simples if not m.action_of(e11).any()]
    assert t.membership(s1) == {'X': True, 'Y': False, 'Z': True}
    assert t.membership(s2) == {'X': False, 'Y': True, 'Z': False}
    zero = t2_catalog[0]
    assert t.membership(zero) == {'X': True, 'Y': True, 'Z': True}


def test_ideal_round_trip(t2):
    for i in enumerate_idempotent_ideals(t2):
        assert ideal_from_ttf(ttf_from_ideal(t2, i)) == i


def test_rejects_non_idempotent_ideal(t2):
    with pytest.raises(NotIdempotentIdeal) as err:
        ttf_from_ideal(t2, radical(t2))
    assert err.value.quotient_dim == 1


def test_torsion_pairs(t2, t2_catalog):
    for i in enumerate_idempotent_ideals(t2):
        for which in ('lower', 'upper'):
            report = verify_torsion_pair(i, which, t2_catalog)
            assert report.ok, report.to_json()
    with pytest.raises(ValueError):
        verify_torsion_pair(radical(t2), 'middle', t2_catalog)


def test_decompositions(t2, t2_ideal, t2_catalog):
    t = TTFTriple(t2, t2_ideal)
    A = regular_module(t2)
    lower = t.lower_decomposition(A)
    assert lower.torsion.dim == 2 and lower.quotient.dim == 1
    upper = t.upper_decomposition(A)
    assert upper.torsion.dim == 2 and upper.quotient.dim == 1
    assert t.in_middle(lower.quotient) and t.in_middle(upper.torsion_module)


def test_closure(t2, t2_catalog):
    for i in enumerate_idempotent_ideals(t2):
        report = verify_ttf_closure(TTFTriple(t2, i), t2_catalog)
        assert report.ok, report.to_json()


def test_radical_functor(t2, t2_catalog):
    sequences = short_exact_sequences(t2_catalog)
    assert sequences
    for i in enumerate_idempotent_ideals(t2):
        report = verify_radical_functor(i, sequences)
        assert report.ok, report.to_json()


@pytest.mark.parametrize('name, bound, count', [
    ('F2', 2, 2),
    ('F2xF2', 1, 4),
    ('F2xF2', 2, 4),
    ('F2[x]/x2', 2, 2),
    ('T2_F2', 2, 4),
    ('M2_F2', 2, 2),
])
def test_brute_force_matches_idempotent_ideals(name, bound, count):
    a = load_builtin(name)
    catalog = module_catalog(a, bound)
    found = brute_force_ttf_triples(a, bound, catalog= catalog)
    assert found.count == count
    from_ideals = {middle_class(catalog, i) for i in enumerate_idempotent_ideals(a)}
    assert set(found.classes) == from_ideals


def test_mismatched_algebra(t2_ideal, dual):
    with pytest.raises(AlgebraMismatch):
        trace_ideal_part(regular_module(dual), t2_ideal)


def test_torsion_part_is_the_largest_torsion_submodule(t2, t2_catalog):
    for i in enumerate_idempotent_ideals(t2):
        report = verify_torsion_pair(i, 'lower', t2_catalog)
        record = next(c for c in report.checks if c.name == 'lower_torsion_part')
        assert record.passed and record.cases == len(t2_catalog)
    # for the radical MI need not lie in X, but M[I] is always the largest submodule killed by I
    lower = verify_torsion_pair(radical(t2), 'lower', t2_catalog)
    upper = verify_torsion_pair(radical(t2), 'upper', t2_catalog)
    assert 'lower_torsion_part' in [c.name for c in lower.violations]
    assert 'upper_torsion_part' not in [c.name for c in upper.violations]
    counterexample = next(c for c in lower.checks if c.name == 'lower_torsion_part').counterexample
    assert counterexample['largest_dim'] < counterexample['canonical_dim']


@pytest.mark.parametrize('fixture', ['t3', 'a3'])
def test_torsion_pairs_beyond_t2(fixture, request):
    a = request.getfixturevalue(fixture)
    catalog = module_catalog(a, 2)
    for i in enumerate_idempotent_ideals(a):
        for which in ('lower', 'upper'):
            report = verify_torsion_pair(i, which, catalog)
            assert report.ok, report.to_json()


def test_radical_functor_sums_up_to_isomorphism(a3):
    sequences = short_exact_sequences(module_catalog(a3, 2))
    for i in enumerate_idempotent_ideals(a3):
        report = verify_radical_functor(i, sequences)
        assert report.ok, report.to_json()
        sums = {c.name: c for c in report.checks if c.name.endswith('direct_sums')}
        assert set(sums) == {'annihilator_direct_sums', 'trace_direct_sums'}
        assert all(c.cases == len(sequences) for c in sums.values())
