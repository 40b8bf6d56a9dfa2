import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from recollement.modules.module import make_module
from recollement.utils.errors import AlgebraMismatch

TOOL = 'recollement'


def to_builtin(obj):
    r"""json.dump default: numpy scalars and arrays to plain Python"""
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f'{type(obj).__name__} is not JSON serialisable')


@dataclass
class CheckRecord:
    r"""
    One named check, accumulated over many cases. The first failing case
    is kept as the counterexample.

    # Arguments
    ___________
    name : str
    anchor : str
        the statement being tested, in words
    context : dict
        what the producing engine needs to rerun the check (engine name,
        idempotents, ideal rows); copied into the counterexample
    """
    name: str
    anchor: str
    cases: int = 0
    failures: int = 0
    counterexample: Optional[dict] = None
    detail: dict = field(default_factory= dict)
    context: dict = field(default_factory= dict)

    @property
    def passed(self):
        return self.failures == 0

    @property
    def status(self):
        return 'pass' if self.passed else 'fail'

    def case(self, ok, **witness):
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = {'record': self.name, **self.context, **witness}
        return bool(ok)

    def to_dict(self):
        out = {'name': self.name, 'anchor': self.anchor, 'status': self.status,
               'cases': self.cases, 'failures': self.failures,
               'counterexample': self.counterexample}
        if self.detail:
            out['detail'] = self.detail
        return out


class Report:
    r"""
    Ordered collection of CheckRecords plus free-form results.
    Serialises to JSON with a stable key order and no timestamps.
    """

    def __init__(self, command= None, config= None, version= None, context= None):
        self.command = command
        self.config = dict(config or {})
        self.version = version
        self.context = dict(context or {})
        self.checks = []
        self.results = {}
        self.notes = []

    def tally(self, name, anchor, **detail):
        record = CheckRecord(name, anchor, detail= dict(detail), context= self.context)
        self.checks.append(record)
        return record

    def check(self, name, anchor, ok, counterexample= None, **detail):
        record = self.tally(name, anchor, **detail)
        record.case(ok, **(counterexample or {}))
        return record

    def extend(self, other):
        self.checks.extend(other.checks)
        for note in other.notes:
            if note not in self.notes:
                self.notes.append(note)
        return self

    @property
    def violations(self):
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self):
        return not self.violations

    def summary(self):
        return {'checks': len(self.checks),
                'passed': sum(c.passed for c in self.checks),
                'failed': len(self.violations)}

    def to_dict(self):
        return {'tool': TOOL, 'version': self.version, 'command': self.command,
                'config': self.config, 'notes': self.notes,
                'checks': [c.to_dict() for c in self.checks],
                'results': self.results, 'summary': self.summary()}

    def to_json(self):
        return json.dumps(self.to_dict(), indent= 2, default= to_builtin)

    def write(self, path):
        with open(path, 'w') as f:
            json.dump(self.to_dict(), f, indent= 2, default= to_builtin)

    def exit_code(self):
        return 0 if self.ok else 1


def witness(check, *modules, **extra):
    r"""counterexample payload naming the check and carrying the modules involved"""
    return {'check': check, 'modules': [m.payload() for m in modules], **extra}


def rebuild_modules(payload, *algebras):
    r"""
    The modules stored in a counterexample, rebuilt without validation over
    whichever of `algebras` carries the recorded algebra name.
    """
    by_name = {}
    for a in algebras:
        by_name.setdefault(a.name, a)
    modules = []
    for m in payload.get('modules', []):
        a = by_name.get(m.get('algebra'), algebras[0] if len(algebras) == 1 else None)
        if a is None:
            raise AlgebraMismatch(f'no algebra named {m.get("algebra")!r} among {list(by_name)}')
        action = np.asarray(m['action'], dtype= np.int64).reshape(a.dim, m['dim'], m['dim'])
        modules.append(make_module(a, action, m.get('name'), check= False))
    return modules
