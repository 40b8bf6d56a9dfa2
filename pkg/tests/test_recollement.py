import itertools

import pytest
from hypothesis import given, strategies as st

from recollement.core.algebra import enumerate_idempotents, parse_element
from recollement.engines.recollement import (
    FunctorTag, apply_functor, check_quotient_equivalence, counit_j_shriek, equivalent_recollements, gabriel_hom_dim,
    gabriel_stages, image_identification_checks, recollement_from_idempotent, unit_j_shriek, verify_recollement,
)
from recollement.modules.catalog import module_catalog
from recollement.modules.module import direct_sum, find_isomorphism, hom_dim, regular_module
from recollement.utils.errors import NotIdempotent, WrongCategory


def recollement_at(a, text):
    return recollement_from_idempotent(a, parse_element(a, text))


@pytest.mark.parametrize('idempotent', ['e11', 'e22', '0', '1'])
def test_t2_recollements(t2, t2_catalog, idempotent):
    r = recollement_at(t2, idempotent)
    catalog_b = module_catalog(r.quotient_algebra, 2)
    catalog_c = module_catalog(r.corner, 2)
    report = verify_recollement(r, t2_catalog, catalog_b, catalog_c)
    assert report.ok, report.to_json()
    assert check_quotient_equivalence(r, t2_catalog).ok
    assert image_identification_checks(r, t2_catalog).ok


def test_a3_recollement(a3):
    r = recollement_at(a3, 'e2')
    catalog_a = module_catalog(a3, 2)
    report = verify_recollement(r, catalog_a, module_catalog(r.quotient_algebra, 2), module_catalog(r.corner, 2))
    assert report.ok, report.to_json()


def test_functor_dimensions(t2):
    A = regular_module(t2)
    r = recollement_at(t2, 'e11')
    assert r.corner.dim == 1 and r.quotient_algebra.dim == 1
    assert apply_functor(r, 'j*', A).dim == 1
    assert apply_functor(r, FunctorTag.I_SHRIEK, A).dim == 2
    assert apply_functor(r, FunctorTag.I_STAR, A).dim == 1
    corner = regular_module(r.corner)
    assert apply_functor(r, 'j_!', corner).dim == 2
    assert apply_functor(r, 'j_*', corner).dim == 1
    assert recollement_at(t2, 'e22').corner.dim == 1
    assert apply_functor(recollement_at(t2, 'e22'), 'j*', A).dim == 2


def test_units_and_counits(t2):
    r = recollement_at(t2, 'e11')
    corner = regular_module(r.corner)
    assert unit_j_shriek(r, corner).is_isomorphism()
    A = regular_module(t2)
    eps = counit_j_shriek(r, A)
    assert eps.is_homomorphism()
    assert eps.rank() == 2


def test_functors_check_their_domain(t2):
    r = recollement_at(t2, 'e11')
    with pytest.raises(WrongCategory):
        apply_functor(r, 'j_!', regular_module(t2))
    with pytest.raises(WrongCategory):
        apply_functor(r, 'j*', regular_module(r.corner))
    with pytest.raises(ValueError):
        apply_functor(r, 'k*', regular_module(t2))


def test_rejects_non_idempotent(t2):
    with pytest.raises(NotIdempotent):
        recollement_from_idempotent(t2, parse_element(t2, 'e12'))


def test_gabriel_quotient(t2, t2_catalog):
    r = recollement_at(t2, 'e11')
    for m in t2_catalog:
        for n in t2_catalog:
            stages = gabriel_stages(m, n, r.ideal)
            assert stages['stable']
            assert gabriel_hom_dim(m, n, r.ideal) == hom_dim(apply_functor(r, 'j*', m), apply_functor(r, 'j*', n))


def test_j_shriek_image(t2):
    r = recollement_at(t2, 'e11')
    P1 = apply_functor(r, 'j_!', regular_module(r.corner))
    assert find_isomorphism(apply_functor(r, 'j_!', apply_functor(r, 'j*', P1)), P1) is not None
    assert hom_dim(P1, regular_module(t2)) == 1
    assert hom_dim(regular_module(t2), P1) == 2


@given(st.data())
def test_adjunction_dimensions(t2, t2_catalog, data):
    e = data.draw(st.sampled_from(list(enumerate_idempotents(t2, mode= 'exhaustive'))))
    r = recollement_from_idempotent(t2, e)
    corner_modules = list(module_catalog(r.corner, 2))
    m = data.draw(st.sampled_from(list(t2_catalog)))
    x = data.draw(st.sampled_from(corner_modules))
    assert hom_dim(apply_functor(r, 'j_!', x), m) == hom_dim(x, apply_functor(r, 'j*', m))
    assert hom_dim(apply_functor(r, 'j*', m), x) == hom_dim(m, apply_functor(r, 'j_*', x))
    assert apply_functor(r, 'j*', apply_functor(r, 'j_!', x)).dim == x.dim


@pytest.mark.parametrize('idempotent', ['e1', 'e2', 'e1+e3', 'e2+e3'])
def test_t3_recollements(t3, idempotent):
    r = recollement_at(t3, idempotent)
    catalog_a = module_catalog(t3, 2)
    report = verify_recollement(r, catalog_a, module_catalog(r.quotient_algebra, 2), module_catalog(r.corner, 2))
    assert report.ok, report.to_json()
    assert check_quotient_equivalence(r, catalog_a).ok
    assert image_identification_checks(r, catalog_a).ok


def test_a3_quotient_checks(a3):
    catalog = module_catalog(a3, 2)
    for idempotent in ('e1', 'e2', 'e3'):
        r = recollement_at(a3, idempotent)
        assert check_quotient_equivalence(r, catalog).ok
        assert image_identification_checks(r, catalog).ok
        for m, n in itertools.product(catalog, repeat= 2):
            assert gabriel_stages(m, n, r.ideal)['stable']


def test_t2_recollement_at_dimension_three(t2):
    r = recollement_at(t2, 'e11')
    catalog_a = module_catalog(t2, 3)
    assert len(catalog_a) == 13
    report = verify_recollement(r, catalog_a, module_catalog(r.quotient_algebra, 3), module_catalog(r.corner, 3))
    assert report.ok, report.to_json()


@pytest.mark.parametrize('fixture, idempotent, copies', [
    ('t2', 'e11', 2),
    ('t3', 'e1+e2', 1),
    ('t3', 'e1+e2', 2),
    ('t3', '1', 1),
])
def test_unit_j_shriek_on_several_generators(fixture, idempotent, copies, request):
    a = request.getfixturevalue(fixture)
    r = recollement_at(a, idempotent)
    x = direct_sum(*([regular_module(r.corner)] * copies))
    assert x.dim == r.corner.dim * copies
    eta = unit_j_shriek(r, x)
    assert eta.is_homomorphism() and eta.is_isomorphism()
    for m in module_catalog(r.corner, 2):
        assert unit_j_shriek(r, m).is_isomorphism()


@pytest.mark.parametrize('fixture, e, other', [
    ('t2', 'e11', 'e11+e12'),
    ('t2', '1', '1'),
    ('t3', 'e1', 'e1+a'),
    ('t3', 'e1+e2', 'e1+e2+b'),
])
def test_equivalent_recollements(fixture, e, other, request):
    a = request.getfixturevalue(fixture)
    report = equivalent_recollements(a, parse_element(a, e), parse_element(a, other))
    assert report.ok, report.to_json()
    assert report.results['corner_dim'] == report.results['other_corner_dim'] == report.results['generator_dim']


def test_recollements_of_different_ideals_are_not_compared(t2):
    report = equivalent_recollements(t2, parse_element(t2, 'e11'), parse_element(t2, 'e22'))
    assert [c.name for c in report.checks] == ['same_ideal']
    assert not report.ok
    assert report.checks[0].detail == {'ideal': ['e11', 'e12'], 'other_ideal': ['e12', 'e22']}
