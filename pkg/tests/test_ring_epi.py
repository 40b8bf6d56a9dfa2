import numpy as np
import pytest

from recollement.core.algebra import parse_element
from recollement.core.ideals import as_ideal, enumerate_ideals, idempotent_to_ideal, radical
from recollement.data.builtin import load_builtin
from recollement.engines.ring_epi import check_bireflective_image, quotient_bimodules, tor1_self_quotient


def test_quotient_bimodules(t2):
    parts = quotient_bimodules(t2, idempotent_to_ideal(t2, parse_element(t2, 'e11')))
    B = parts['algebra']
    assert B.dim == 1
    assert parts['projection'].shape == (3, 1)
    assert parts['right'].dim == parts['A-A'].dim == 1
    assert parts['A-B'].right_algebra is B and parts['B-A'].left_algebra is B


@pytest.mark.parametrize('generator, expected', [('e11', (0, 0)), ('e22', (0, 0)), ('0', (0, 0)), ('1', (0, 0))])
def test_tor_vanishes_for_idempotent_ideals(t2, generator, expected):
    assert tor1_self_quotient(t2, idempotent_to_ideal(t2, parse_element(t2, generator))) == expected


def test_tor_of_radical(t2, dual):
    assert tor1_self_quotient(t2, radical(t2)) == (1, 1)
    assert tor1_self_quotient(dual, radical(dual)) == (1, 1)


@pytest.mark.parametrize('name', ['T2_F2', 'F2[x]/x2', 'F2xF2'])
def test_tor_matches_square_quotient(name):
    a = load_builtin(name)
    for i in enumerate_ideals(a):
        tor, expected = tor1_self_quotient(a, i)
        assert tor == expected


def test_bireflective_image(t2, t2_catalog):
    for generator in ('e11', 'e22'):
        report = check_bireflective_image(t2, idempotent_to_ideal(t2, parse_element(t2, generator)), t2_catalog)
        assert report.ok, report.to_json()


def test_radical_quotient_is_still_an_epimorphism(t2, t2_catalog):
    report = check_bireflective_image(t2, radical(t2), t2_catalog)
    assert report.ok, report.to_json()


def test_whole_algebra(t2):
    parts = quotient_bimodules(t2, as_ideal(t2, np.eye(3, dtype= np.int64)))
    assert parts['algebra'].dim == 0
    assert parts['right'].dim == 0
