import os
import sys
import json
import argparse
import itertools
from dataclasses import asdict, dataclass

import numpy as np

from recollement import __version__
from recollement.core.algebra import DEFAULT_BUDGET, enumerate_idempotents, format_element, parse_element
from recollement.core.ideals import (
    DEFAULT_SUBSPACE_BUDGET, basic_structure, enumerate_ideals, enumerate_idempotent_ideals,
    ideal_generated, ideal_product, idempotent_to_ideal, is_idempotent_ideal, is_semiprimary,
    radical,
)
from recollement.data.load_data import load_algebra, load_modules
from recollement.engines.kuhn import idempotent_generation_check, kuhn_construction
from recollement.engines.recollement import (
    check_quotient_equivalence, equivalent_recollements, image_identification_checks, recollement_from_idempotent,
    verify_recollement,
)
from recollement.engines.ring_epi import check_bireflective_image, tor1_self_quotient
from recollement.engines.ttf import (
    brute_force_ttf_triples, ideal_from_ttf, middle_class, short_exact_sequences, ttf_from_ideal,
    verify_radical_functor, verify_torsion_pair, verify_ttf_closure,
)
from recollement.modules.catalog import module_catalog
from recollement.modules.module import is_indecomposable, representation_law_violation
from recollement.utils.errors import RecollementError
from recollement.utils.report import Report, witness

ALL_VERTEX_SUBSETS = 'all-vertex-subsets'


@dataclass
class RunConfig:
    command: str
    algebra: str
    idempotent: str = ALL_VERTEX_SUBSETS
    ideal: str = None
    dim_bound: int = 2
    seed: int = 0
    report: str = None
    mode: str = 'auto'
    budget: int = DEFAULT_BUDGET
    compare_with: str = None
    modules: str = None
    verbose: bool = False

    @classmethod
    def from_args(cls, args):
        return cls(**{k: getattr(args, k) for k in cls.__dataclass_fields__})

    def log(self, *message):
        if self.verbose:
            print(*message, file= sys.stderr)


def build_parser():
    common = argparse.ArgumentParser(add_help= False)
    common.add_argument('--algebra', type= str, required= True,
                        help= 'a built-in algebra name (e.g. T2_F2) or the path of an algebra spec document')
    common.add_argument('--idempotent', type= str, default= ALL_VERTEX_SUBSETS,
                        help= f'an element expression such as "e11+e22", or {ALL_VERTEX_SUBSETS} (default)')
    common.add_argument('--ideal', type= str, default= None,
                        help= 'generators of the ideal, comma separated, or "rad" (default: generated by --idempotent)')
    common.add_argument('--dim-bound', '--dim_bound', dest= 'dim_bound', type= int, default= 2,
                        help= 'largest module dimension in the catalogs (default: 2)')
    common.add_argument('--seed', type= int, default= 0,
                        help= 'seed of the sampled extension classes (default: 0)')
    common.add_argument('--report', type= str, default= None,
                        help= 'a path to save the JSON report; the arguments are saved next to it')
    common.add_argument('--mode', type= str, default= 'auto', choices= ('auto', 'brute', 'vertex'),
                        help= 'idempotent ideal enumeration: brute subspace scan or vertex idempotents (default: auto)')
    common.add_argument('--budget', type= int, default= DEFAULT_BUDGET,
                        help= f'largest number of elements scanned by the idempotent search (default: {DEFAULT_BUDGET})')
    common.add_argument('--compare-with', '--compare_with', dest= 'compare_with', type= str, default= None,
                        help= 'verify-recollement: a second idempotent whose recollement is compared with each selected one')
    common.add_argument('--modules', type= str, default= None,
                        help= 'check-modules: the path of a JSON document listing module actions')
    common.add_argument('--verbose', action= 'store_true',
                        help= 'print progress to stderr')

    parser = argparse.ArgumentParser(prog= 'recollement',
                                     description= 'idempotent ideals, TTF-triples and recollements of finite-dimensional algebras')
    parser.add_argument('--version', action= 'version', version= f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest= 'command', required= True)
    sub.add_parser('analyze', parents= [common], help= 'radical, idempotents and idempotent ideals')
    sub.add_parser('jans-check', parents= [common], help= 'idempotent ideals against TTF classes found by brute force')
    sub.add_parser('verify-recollement', parents= [common], help= 'recollement axioms for the selected idempotents')
    sub.add_parser('kuhn-demo', parents= [common], help= 'Morita realisation of the corner of an idempotent ideal')
    sub.add_parser('ideals', parents= [common], help= 'all ideals with dim I/I^2 and Tor_1(A/I, A/I)')
    sub.add_parser('ttf', parents= [common], help= 'torsion pair and closure checks for each idempotent ideal')
    sub.add_parser('check-modules', parents= [common], help= 'representation law for the modules given by --modules')
    return parser


def _merge(report, sub, prefix):
    for record in sub.checks:
        record.name = f'{prefix}:{record.name}'
    return report.extend(sub)


def _ideal_witness(i):
    return {'engine': 'ideal', 'ideal': i.rows, 'labels': i.labels()}


def _select_idempotents(a, config):
    if config.idempotent != ALL_VERTEX_SUBSETS:
        return [parse_element(a, config.idempotent)]
    if a.quiver is None and a.p ** a.dim <= config.budget:
        quiver = basic_structure(a, config.budget)
        if quiver is not None:
            V = quiver.vertex_idempotents
            return [np.asarray(s, dtype= np.int64) @ V % a.p for s in itertools.product((0, 1), repeat= len(V))]
    mode = 'restricted' if a.quiver is not None else 'exhaustive'
    return enumerate_idempotents(a, config.budget, mode= mode)


def _select_ideal(a, config):
    if config.ideal is None:
        if config.idempotent == ALL_VERTEX_SUBSETS:
            raise RecollementError('give --ideal or a single --idempotent')
        return idempotent_to_ideal(a, parse_element(a, config.idempotent))
    if config.ideal.strip() == 'rad':
        return radical(a, config.budget)
    return ideal_generated(a, [parse_element(a, g) for g in config.ideal.split(',')])


def cmd_analyze(config, a):
    report = Report(config.command, asdict(config), __version__)
    J = radical(a, config.budget)
    semi = is_semiprimary(a, config.budget)
    idempotents = enumerate_idempotents(a, config.budget)
    ideals = enumerate_idempotent_ideals(a, mode= config.mode, verbose= config.verbose)

    report.check('radical_nilpotent', 'the radical is a nilpotent ideal', semi.nilpotency_index is not None,
                 nilpotency_index= semi.nilpotency_index)
    report.check('top_semisimple', 'A/J(A) has zero radical', semi.is_semiprimary,
                 semisimple_quotient_dim= semi.semisimple_quotient_dim)
    closed = report.tally('idempotents_closed_under_complement', 'e idempotent implies 1 - e idempotent')
    for e in idempotents:
        closed.case(a.is_idempotent(e) and a.is_idempotent((a.one() - e) % a.p),
                    engine= 'idempotent', element= e, label= format_element(a, e))

    report.results = {
        'algebra': {'name': a.name, 'p': a.p, 'dim': a.dim, 'basis': list(a.basis)},
        'radical': {'dim': J.dim, 'basis': J.labels()},
        'semiprimary': asdict(semi),
        'idempotents': [format_element(a, e) for e in idempotents],
        'idempotent_ideals': [i.labels() for i in ideals],
        'counts': {'idempotents': len(idempotents), 'idempotent_ideals': len(ideals)},
    }
    return report


def cmd_jans_check(config, a):
    report = Report(config.command, asdict(config), __version__)
    ideals = enumerate_idempotent_ideals(a, mode= config.mode, verbose= config.verbose)
    catalog = module_catalog(a, config.dim_bound, verbose= config.verbose)
    brute = brute_force_ttf_triples(a, config.dim_bound, catalog= catalog,
                                    rng= np.random.default_rng(config.seed), verbose= config.verbose)
    report.notes.append(f'TTF classes are read on the catalog of modules of dimension <= {config.dim_bound}')
    report.check('jans_counts_agree', 'idempotent ideals and TTF-triples are in bijection',
                 len(ideals) == brute.count, ideals= len(ideals), ttf_classes= brute.count)

    round_trip = report.tally('jans_round_trip', 'ideal -> TTF-triple -> ideal is the identity')
    matched = report.tally('jans_matching', 'each idempotent ideal gives a distinct TTF class found by brute force')
    matching, seen = [], set()
    for i in ideals:
        t = ttf_from_ideal(a, i)
        round_trip.case(ideal_from_ttf(t) == i, **_ideal_witness(i))
        Y = middle_class(catalog, i)
        matched.case(Y in brute.classes and Y not in seen, ideal= i.labels(), middle_class= list(Y))
        seen.add(Y)
        matching.append({'ideal': i.labels(), 'middle_class': [catalog[k].name for k in Y]})
    report.results = {'idempotent_ideals': len(ideals), 'ttf_classes': brute.count,
                      'catalog': catalog.names, 'matching': matching}
    return report


def cmd_ideals(config, a):
    report = Report(config.command, asdict(config), __version__)
    ideals = enumerate_ideals(a, DEFAULT_SUBSPACE_BUDGET, verbose= config.verbose)
    record = report.tally('tor_criterion', 'Tor_1(A/I, A/I) = I/I^2, zero exactly for idempotent I')
    rows = []
    for i in ideals:
        try:
            tor, expected = tor1_self_quotient(a, i)
            record.case(True)
        except RecollementError as err:
            tor, expected = None, i.dim - ideal_product(i, i).dim
            record.case(False, error= str(err), **_ideal_witness(i))
        rows.append({'ideal': i.labels(), 'dim': i.dim, 'idempotent': is_idempotent_ideal(i),
                     'quotient_by_square': expected, 'tor1': tor})
    report.results = {'ideals': rows}
    return report


def cmd_ttf(config, a):
    report = Report(config.command, asdict(config), __version__)
    catalog = module_catalog(a, config.dim_bound, verbose= config.verbose)
    sequences = short_exact_sequences(catalog)
    rng = np.random.default_rng(config.seed)
    classes = []
    for k, i in enumerate(enumerate_idempotent_ideals(a, mode= config.mode, verbose= config.verbose)):
        t = ttf_from_ideal(a, i)
        prefix = f'I{k}'
        config.log(f'{prefix}: {i!r}')
        _merge(report, verify_torsion_pair(i, 'lower', catalog), prefix)
        _merge(report, verify_torsion_pair(i, 'upper', catalog), prefix)
        _merge(report, verify_ttf_closure(t, catalog, rng), prefix)
        _merge(report, verify_radical_functor(i, sequences), prefix)
        classes.append({'ideal': i.labels(),
                        'membership': {m.name: t.membership(m) for m in catalog}})
    report.results = {'catalog': catalog.names, 'ttf_triples': classes}
    return report


def cmd_verify_recollement(config, a):
    report = Report(config.command, asdict(config), __version__)
    rng = np.random.default_rng(config.seed)
    catalog_a = module_catalog(a, config.dim_bound, verbose= config.verbose)
    sequences = short_exact_sequences(catalog_a)
    summary = []
    for e in _select_idempotents(a, config):
        label = format_element(a, e)
        config.log(f'recollement at e = {label}')
        r = recollement_from_idempotent(a, e)
        catalog_b = module_catalog(r.quotient_algebra, config.dim_bound)
        catalog_c = module_catalog(r.corner, config.dim_bound)
        _merge(report, verify_recollement(r, catalog_a, catalog_b, catalog_c), label)
        _merge(report, check_quotient_equivalence(r, catalog_a), label)
        _merge(report, image_identification_checks(r, catalog_a), label)
        _merge(report, verify_torsion_pair(r.ideal, 'lower', catalog_a), label)
        _merge(report, verify_torsion_pair(r.ideal, 'upper', catalog_a), label)
        _merge(report, verify_ttf_closure(ttf_from_ideal(a, r.ideal), catalog_a, rng), label)
        _merge(report, verify_radical_functor(r.ideal, sequences), label)
        _merge(report, check_bireflective_image(a, r.ideal, catalog_a), label)
        if config.compare_with is not None:
            other = parse_element(a, config.compare_with)
            tag = f'{label}~{config.compare_with}'
            comparison = equivalent_recollements(a, e, other, catalog_a)
            _merge(report, comparison, tag)
            if comparison.ok:
                # mod e'Ae' realised as a corner of End(A^n), certified on the same catalog
                _merge(report, kuhn_construction(a, r.ideal, other, catalog= catalog_a).report, f'{tag}:kuhn')
        tor, expected = tor1_self_quotient(a, r.ideal)
        report.check(f'{label}:tor_vanishes', 'Tor_1(A/AeA, A/AeA) = 0', tor == expected == 0,
                     counterexample= _ideal_witness(r.ideal), tor1= tor)
        summary.append({'idempotent': label, 'ideal': r.ideal.labels(),
                        'corner_dim': r.corner.dim, 'quotient_dim': r.quotient_algebra.dim})
    report.results = {'recollements': summary}
    return report


def cmd_kuhn_demo(config, a):
    report = Report(config.command, asdict(config), __version__)
    i = _select_ideal(a, config)
    e = idempotent_generation_check(a, i, config.budget)
    report.check('idempotent_generation', 'every idempotent ideal is generated by an idempotent', e is not None,
                 counterexample= _ideal_witness(i), ideal= i.labels())
    if e is None:
        return report
    w = kuhn_construction(a, i, e, dim_bound= config.dim_bound)
    _merge(report, w.report, 'kuhn')
    report.results = {**w.summary(), 'generator_endomorphisms_dim': w.generator_endomorphisms.dim,
                      'ideal': i.labels(), 'idempotent': format_element(a, e)}
    return report


def cmd_check_modules(config, a):
    if config.modules is None:
        raise RecollementError('give --modules')
    report = Report(config.command, asdict(config), __version__, context= {'engine': 'module'})
    modules = load_modules(config.modules, a)
    record = report.tally('representation_law', 'each basis pair acts as its product and the unit acts as the identity')
    rows = []
    for m in modules:
        bad = representation_law_violation(a, m.action)
        record.case(bad is None, **witness('representation_law', m, pair= bad))
        rows.append({'name': m.name, 'dim': m.dim, 'valid': bad is None,
                     'indecomposable': bad is None and is_indecomposable(m)})
    report.results = {'modules': rows}
    return report


HANDLERS = {
    'analyze': cmd_analyze,
    'jans-check': cmd_jans_check,
    'verify-recollement': cmd_verify_recollement,
    'kuhn-demo': cmd_kuhn_demo,
    'ideals': cmd_ideals,
    'ttf': cmd_ttf,
    'check-modules': cmd_check_modules,
}


def _error_report(config, err):
    report = Report(config.command, asdict(config), __version__)
    payload = {'type': type(err).__name__, 'message': str(err)}
    for key in ('quotient_dim', 'line', 'column', 'triple', 'size', 'budget', 'relation', 'path', 'length'):
        if hasattr(err, key):
            payload[key] = getattr(err, key)
    report.results = {'error': payload}
    return report


def run(config):
    r"""
    runs one command; returns (report, exit code) with exit code 0 when every
    check passes, 1 on a failing check and 2 on an error
    """
    try:
        a = load_algebra(config.algebra)
        report = HANDLERS[config.command](config, a)
        code = report.exit_code()
    except RecollementError as err:
        report, code = _error_report(config, err), 2
    return report, code


def main(argv= None):
    args = build_parser().parse_args(argv)
    config = RunConfig.from_args(args)
    config.log(args)

    if config.report is not None:
        path = os.path.dirname(os.path.abspath(config.report))
        os.makedirs(path, exist_ok= True)
        config.log(f'saving the commandline arguments in the path: {path}...')
        with open(os.path.join(path, 'commandline_args.txt'), 'w') as f:
            json.dump(args.__dict__, f, indent= 2)

    report, code = run(config)
    if config.report is not None:
        report.write(config.report)
    print(report.to_json())
    return code


if __name__ == '__main__':
    sys.exit(main())
