import numpy as np

from recollement.core.ideals import as_ideal
from recollement.engines.kuhn import idempotent_generation_check, kuhn_construction
from recollement.engines.recollement import (
    check_quotient_equivalence, compare_recollements, image_identification_checks, other_corner_name,
    recollement_from_idempotent, verify_recollement,
)
from recollement.engines.ring_epi import check_bireflective_image, tor1_self_quotient
from recollement.engines.ttf import (
    TTFTriple, ideal_from_ttf, short_exact_sequences, verify_radical_functor, verify_torsion_pair,
    verify_ttf_closure,
)
from recollement.modules.module import representation_law_violation
from recollement.utils.errors import InternalInconsistency, NotIdempotentIdeal
from recollement.utils.report import Report, rebuild_modules


def _ideal(a, payload):
    return as_ideal(a, np.asarray(payload['ideal'], dtype= np.int64).reshape(-1, a.dim))


def _vector(payload, key):
    return np.asarray(payload[key], dtype= np.int64)


def _split(modules, *algebras):
    return [[m for m in modules if m.algebra is alg] for alg in algebras]


def _recollement(a, payload):
    r = recollement_from_idempotent(a, _vector(payload, 'idempotent'))
    modules = rebuild_modules(payload, a, r.quotient_algebra, r.corner)
    return r, modules


def _replay_recollement(a, payload):
    r, modules = _recollement(a, payload)
    return modules, verify_recollement(r, *_split(modules, a, r.quotient_algebra, r.corner))


def _replay_gabriel(a, payload):
    r, modules = _recollement(a, payload)
    return modules, check_quotient_equivalence(r, modules)


def _replay_image_identification(a, payload):
    r, modules = _recollement(a, payload)
    return modules, image_identification_checks(r, modules)


def _replay_equivalence(a, payload):
    r = recollement_from_idempotent(a, _vector(payload, 'idempotent'))
    r2 = recollement_from_idempotent(a, _vector(payload, 'other_idempotent'), corner_name= other_corner_name(a))
    modules = rebuild_modules(payload, a, r.corner, r2.corner)
    catalog, corner, other = _split(modules, a, r.corner, r2.corner)
    return modules, compare_recollements(r, r2, catalog, corner, other)


def _replay_torsion_pair(a, payload):
    modules = rebuild_modules(payload, a)
    return modules, verify_torsion_pair(_ideal(a, payload), payload['which'], modules)


def _replay_ttf_closure(a, payload):
    modules = rebuild_modules(payload, a)
    rng = np.random.default_rng(payload.get('seed', 0))
    return modules, verify_ttf_closure(TTFTriple(a, _ideal(a, payload)), modules, rng)


def _replay_radical_functor(a, payload):
    modules = rebuild_modules(payload, a)
    return modules, verify_radical_functor(_ideal(a, payload), short_exact_sequences(modules[:1]))


def _replay_bireflective(a, payload):
    modules = rebuild_modules(payload, a)
    return modules, check_bireflective_image(a, _ideal(a, payload), modules)


def _replay_kuhn(a, payload):
    modules = rebuild_modules(payload, a)
    w = kuhn_construction(a, _ideal(a, payload), _vector(payload, 'idempotent'),
                          multiplicity= payload.get('multiplicity', 1), catalog= modules)
    return modules, w.report


def _tor_holds(a, i):
    try:
        tor1_self_quotient(a, i)
        return True
    except InternalInconsistency:
        return False


def _generated_by_idempotent(a, i):
    try:
        return idempotent_generation_check(a, i) is not None
    except NotIdempotentIdeal:
        return False


IDEAL_PREDICATES = {
    'tor_criterion': _tor_holds,
    'tor_vanishes': lambda a, i: _tor_holds(a, i) and tor1_self_quotient(a, i)[0] == 0,
    'jans_round_trip': lambda a, i: ideal_from_ttf(TTFTriple(a, i)) == i,
    'idempotent_generation': _generated_by_idempotent,
}


def _replay_ideal(a, payload):
    name = payload['record'].split(':')[-1]
    report = Report()
    report.tally(name, 'rerun on the recorded ideal').case(IDEAL_PREDICATES[name](a, _ideal(a, payload)))
    return [], report


def _replay_idempotent(a, payload):
    e = _vector(payload, 'element')
    ok = a.is_idempotent(e) and a.is_idempotent((a.one() - e) % a.p)
    report = Report()
    report.tally(payload['record'], 'rerun on the recorded element').case(ok)
    return [], report


def _replay_module(a, payload):
    modules = rebuild_modules(payload, a)
    report = Report()
    record = report.tally(payload['record'], 'rerun on the recorded module')
    for m in modules:
        record.case(representation_law_violation(a, m.action) is None)
    return modules, report


REPLAYERS = {
    'recollement': _replay_recollement,
    'gabriel': _replay_gabriel,
    'image_identification': _replay_image_identification,
    'equivalent_recollements': _replay_equivalence,
    'torsion_pair': _replay_torsion_pair,
    'ttf_closure': _replay_ttf_closure,
    'radical_functor': _replay_radical_functor,
    'bireflective': _replay_bireflective,
    'kuhn': _replay_kuhn,
    'ideal': _replay_ideal,
    'idempotent': _replay_idempotent,
    'module': _replay_module,
}


def replay_counterexample(payload, algebra):
    r"""
    Rebuilds the objects stored in a counterexample and reruns the engine that
    produced it on them alone.

    # Arguments
    ___________
    payload : dict
        a `counterexample` of a report record, possibly read back from JSON
    algebra : Algebra
        the algebra the report was computed over

    # Returns
    _________
    dict with
        'modules' : the rebuilt modules
        'record' : the CheckRecord of the same name from the rerun, or None
        'reproduced' : whether the rerun fails again (None without an engine)
        'violation' : for representation law counterexamples, the failing pair
    """
    replayer = REPLAYERS.get(payload.get('engine'))
    if replayer is None:
        modules = rebuild_modules(payload, algebra) if payload.get('modules') else []
        out = {'modules': modules, 'record': None, 'reproduced': None}
    else:
        modules, report = replayer(algebra, payload)
        name = payload['record'].split(':')[-1]
        record = next((c for c in report.checks if c.name.split(':')[-1] == name), None)
        out = {'modules': modules, 'record': record,
               'reproduced': None if record is None else not record.passed}
    if payload.get('check') == 'representation_law' and out['modules']:
        m = out['modules'][0]
        out['violation'] = representation_law_violation(m.algebra, m.action)
    return out
