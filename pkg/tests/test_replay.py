import json

import numpy as np
import pytest

from recollement.core.algebra import parse_element
from recollement.core.ideals import idempotent_to_ideal, radical
from recollement.engines.kuhn import kuhn_construction
from recollement.engines.recollement import (
    check_quotient_equivalence, equivalent_recollements, image_identification_checks, recollement_from_idempotent,
    verify_recollement,
)
from recollement.engines.replay import replay_counterexample
from recollement.engines.ring_epi import check_bireflective_image
from recollement.engines.ttf import (
    TTFTriple, short_exact_sequences, verify_radical_functor, verify_torsion_pair, verify_ttf_closure,
)
from recollement.modules.catalog import module_catalog
from recollement.modules.module import make_module
from recollement.utils.report import Report, to_builtin, witness


def through_json(payload):
    return json.loads(json.dumps(payload, default= to_builtin))


def replay_failure(report, name, algebra):
    record = next(c for c in report.checks if c.name == name)
    assert not record.passed, f'{name} unexpectedly passed'
    return replay_counterexample(through_json(record.counterexample), algebra)


@pytest.fixture(scope= 'module')
def small_catalog(t2):
    return module_catalog(t2, 1)


@pytest.fixture(scope= 'module')
def e11(t2):
    return parse_element(t2, 'e11')


@pytest.mark.parametrize('name', ['lower_decomposition', 'lower_torsion_part'])
def test_torsion_pair(t2, t2_catalog, name):
    report = verify_torsion_pair(radical(t2), 'lower', t2_catalog)
    replayed = replay_failure(report, name, t2)
    assert replayed['reproduced'] is True
    assert replayed['record'].name == name
    assert all(m.algebra is t2 for m in replayed['modules'])


def test_ttf_closure(t2, t2_catalog):
    report = verify_ttf_closure(TTFTriple(t2, radical(t2)), t2_catalog)
    replayed = replay_failure(report, 'ttf_extension_closure', t2)
    assert replayed['reproduced'] is True
    assert len(replayed['modules']) == 3


def test_radical_functor(t2, t2_catalog):
    report = verify_radical_functor(radical(t2), short_exact_sequences(t2_catalog))
    replayed = replay_failure(report, 'trace_idempotent', t2)
    assert replayed['reproduced'] is True
    assert [m.dim for m in replayed['modules']] == [2]


def test_equivalence(t2):
    report = equivalent_recollements(t2, parse_element(t2, 'e11'), parse_element(t2, 'e22'))
    replayed = replay_failure(report, 'same_ideal', t2)
    assert replayed['reproduced'] is True
    assert replayed['modules'] == []


def test_recollement(t2, e11, small_catalog, monkeypatch):
    monkeypatch.setattr('recollement.engines.recollement.representation_law_violation', lambda a, action: (0, 0))
    r = recollement_from_idempotent(t2, e11)
    report = verify_recollement(r, small_catalog, module_catalog(r.quotient_algebra, 1), module_catalog(r.corner, 1))
    replayed = replay_failure(report, 'functor_images_are_modules', t2)
    assert replayed['reproduced'] is True
    assert replayed['record'].counterexample['functor'] == 'i*'


def test_gabriel(t2, e11, small_catalog, monkeypatch):
    stages = {'earlier': 0, 'terminal': -1, 'restriction_rank': 0, 'stable': False}
    monkeypatch.setattr('recollement.engines.recollement.gabriel_stages', lambda m, n, i: stages)
    report = check_quotient_equivalence(recollement_from_idempotent(t2, e11), small_catalog)
    for name in ('gabriel_quotient_matches_corner', 'gabriel_colimit_stabilises'):
        replayed = replay_failure(report, name, t2)
        assert replayed['reproduced'] is True
        assert len(replayed['modules']) == 2


def test_image_identification(t2, e11, small_catalog, monkeypatch):
    monkeypatch.setattr('recollement.engines.recollement.ext1', lambda m, n: 1)
    report = image_identification_checks(recollement_from_idempotent(t2, e11), small_catalog)
    name = report.violations[0].name
    replayed = replay_failure(report, name, t2)
    assert replayed['reproduced'] is True


def test_bireflective(t2, e11, small_catalog, monkeypatch):
    monkeypatch.setattr('recollement.engines.ring_epi.find_isomorphism', lambda m, n: None)
    report = check_bireflective_image(t2, idempotent_to_ideal(t2, e11), small_catalog)
    for name in ('ring_epimorphism', 'tensor_reflection'):
        assert replay_failure(report, name, t2)['reproduced'] is True


def test_kuhn(t2, e11, small_catalog, monkeypatch):
    monkeypatch.setattr('recollement.engines.kuhn.is_invertible', lambda matrix, p: False)
    w = kuhn_construction(t2, idempotent_to_ideal(t2, e11), catalog= small_catalog)
    payload = through_json(next(c for c in w.report.checks if c.name == 'certificates').counterexample)
    assert payload['engine'] == 'kuhn' and payload['multiplicity'] == 1
    assert replay_counterexample(payload, t2)['reproduced'] is True
    # a failure caused by the patch does not survive its removal
    monkeypatch.undo()
    assert replay_counterexample(payload, t2)['reproduced'] is False


@pytest.mark.parametrize('record, reproduced', [
    ('tor_vanishes', True),
    ('tor_criterion', False),
    ('jans_round_trip', False),
    ('idempotent_generation', True),
])
def test_ideal_records(t2, record, reproduced):
    payload = through_json({'record': f'e11:{record}', 'engine': 'ideal', 'ideal': radical(t2).rows})
    assert replay_counterexample(payload, t2)['reproduced'] is reproduced


@pytest.mark.parametrize('element, reproduced', [('e12', True), ('e11', False), ('e11+e12', False)])
def test_idempotent_records(t2, element, reproduced):
    payload = through_json({'record': 'idempotents_closed_under_complement', 'engine': 'idempotent',
                            'element': parse_element(t2, element)})
    assert replay_counterexample(payload, t2)['reproduced'] is reproduced


def test_module_records(t2):
    bad = make_module(t2, np.array([1, 0, 1]).reshape(3, 1, 1), 'broken', check= False)
    report = Report(context= {'engine': 'module'})
    report.tally('representation_law', 'the unit acts as the identity').case(False, **witness('representation_law', bad))
    replayed = replay_failure(report, 'representation_law', t2)
    assert replayed['reproduced'] is True
    assert replayed['modules'][0].name == 'broken'
    assert np.array_equal(replayed['modules'][0].action, bad.action)
    assert replayed['violation'] == (0, 2)


def test_payload_without_engine(t2):
    bad = make_module(t2, np.array([1, 0, 1]).reshape(3, 1, 1), 'broken', check= False)
    replayed = replay_counterexample(through_json(witness('representation_law', bad)), t2)
    assert replayed['record'] is None and replayed['reproduced'] is None
    assert replayed['violation'] == (0, 2)
