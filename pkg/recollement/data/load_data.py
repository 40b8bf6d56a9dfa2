import json
import os
import re

import numpy as np

from recollement.core.algebra import build_algebra, parse_element, parse_terms
from recollement.core.quiver import DEFAULT_NILPOTENCY_CAP, make_presentation, path_algebra
from recollement.data.builtin import BUILTIN_ALGEBRAS, load_builtin
from recollement.modules.module import make_module
from recollement.utils.errors import RecollementError, SpecParseError

KINDS = ('structure_constants', 'quiver')


def strip_comments(text):
    r"""
    Blanks out '#' comments outside of JSON strings. Every removed character
    is replaced by a space so decode errors keep their line and column.
    """
    out, in_string, escaped, in_comment = [], False, False, False
    for ch in text:
        if in_comment:
            if ch == '\n':
                in_comment = False
                out.append(ch)
            else:
                out.append(' ')
            continue
        if in_string:
            if escaped:
                escaped = False
            elif ch == '\\':
                escaped = True
            elif ch == '"':
                in_string = False
        elif ch == '"':
            in_string = True
        elif ch == '#':
            in_comment = True
            out.append(' ')
            continue
        out.append(ch)
    return ''.join(out)


def _position(text, key):
    r"""(line, column) of the first occurrence of the JSON key, (1, 1) if absent"""
    m = re.search(rf'"{re.escape(key)}"\s*:', text)
    if m is None:
        return 1, 1
    line = text.count('\n', 0, m.start()) + 1
    column = m.start() - (text.rfind('\n', 0, m.start()) + 1) + 1
    return line, column


def _require(doc, key):
    if key not in doc:
        raise SpecParseError(f'missing field {key!r}', 1, 1)
    return doc[key]


def _table(doc, basis, text):
    r"""
    The table is either a dense dim x dim x dim array of structure constants, or a
    mapping "x*y" -> element expression where unlisted products vanish.
    """
    n = len(basis)
    raw = _require(doc, 'table')
    if not isinstance(raw, dict):
        table = np.asarray(raw, dtype= np.int64)
        if table.shape != (n, n, n):
            raise SpecParseError(f'table has shape {table.shape}, expected {(n, n, n)}', *_position(text, 'table'))
        return table
    index = {b: k for k, b in enumerate(basis)}
    table = np.zeros((n, n, n), dtype= np.int64)
    for product, value in raw.items():
        factors = [f.strip() for f in product.split('*')]
        if len(factors) != 2 or any(f not in index for f in factors):
            raise SpecParseError(f'bad product key {product!r}', *_position(text, product))
        for coef, atom in parse_terms(value):
            if atom not in index:
                raise SpecParseError(f'unknown label {atom!r} in the product {product!r}', *_position(text, product))
            table[index[factors[0]], index[factors[1]], index[atom]] += coef
    return table


def _unit(doc, basis, text):
    raw = _require(doc, 'unit')
    if isinstance(raw, list):
        return np.asarray(raw, dtype= np.int64)
    index = {b: k for k, b in enumerate(basis)}
    unit = np.zeros(len(basis), dtype= np.int64)
    for coef, atom in parse_terms(raw):
        if atom not in index:
            raise SpecParseError(f'unknown label {atom!r} in the unit', *_position(text, 'unit'))
        unit[index[atom]] += coef
    return unit


def parse_spec(text, name= None):
    r"""
    Algebra from a spec document: JSON (with '#' comments) holding "kind", "p" and either
        structure_constants: "basis", "unit", "table", optional "dim"
        quiver: "vertices", "arrows" ([source, target, label]), "relations", "nilpotency_cap"
    plus optional "name" and "elements" (label -> element expression).

    # Returns
    _________
    Algebra
    """
    try:
        doc = json.loads(strip_comments(text))
    except json.JSONDecodeError as err:
        raise SpecParseError(err.msg, err.lineno, err.colno) from err
    if not isinstance(doc, dict):
        raise SpecParseError('the document must be a JSON object', 1, 1)
    kind = _require(doc, 'kind')
    if kind not in KINDS:
        raise SpecParseError(f'unknown kind {kind!r}, expected one of {KINDS}', *_position(text, 'kind'))
    p = _require(doc, 'p')
    name = doc.get('name', name)
    elements = doc.get('elements', {})

    if kind == 'structure_constants':
        basis = [str(b) for b in _require(doc, 'basis')]
        if 'dim' in doc and doc['dim'] != len(basis):
            raise SpecParseError(f'dim {doc["dim"]} differs from the {len(basis)} basis labels', *_position(text, 'dim'))
        return build_algebra(p, basis, _table(doc, basis, text), _unit(doc, basis, text),
                             name= name, elements= elements)

    q = make_presentation(_require(doc, 'vertices'), _require(doc, 'arrows'),
                          doc.get('relations', []), doc.get('nilpotency_cap', DEFAULT_NILPOTENCY_CAP))
    a = path_algebra(q, p, name= name)
    for label, value in elements.items():
        a.elements[label] = parse_element(a, value)
    return a


def load_algebra(source):
    r"""
    A built-in algebra name or the path of a spec document.
    """
    if source in BUILTIN_ALGEBRAS:
        return load_builtin(source)
    if not os.path.exists(source):
        raise SpecParseError(f'{source!r} is neither a built-in algebra nor a file', 0, 0)
    with open(source) as f:
        text = f.read()
    try:
        return parse_spec(text, name= os.path.splitext(os.path.basename(source))[0])
    except SpecParseError:
        raise
    except (TypeError, ValueError) as err:
        raise SpecParseError(f'malformed spec document: {err}', 1, 1) from err


def _action(entry, a, text):
    r"""
    "action" is either a list of dim A matrices, one per basis element, or a
    mapping label -> matrix where unlisted basis elements act by zero
    """
    name = entry.get('name', '?')
    raw = entry.get('action')
    if raw is None:
        raise SpecParseError(f'module {name!r} has no "action"', *_position(text, 'action'))
    if isinstance(raw, dict):
        d = int(entry.get('dim', len(next(iter(raw.values()), []))))
        action = np.zeros((a.dim, d, d), dtype= np.int64)
        index = {b: k for k, b in enumerate(a.basis)}
        for label, matrix in raw.items():
            if label not in index:
                raise SpecParseError(f'unknown label {label!r} in module {name!r}', *_position(text, label))
            action[index[label]] = np.asarray(matrix, dtype= np.int64).reshape(d, d)
        return action
    action = np.asarray(raw, dtype= np.int64)
    if action.ndim == 1 and action.size == a.dim:
        action = action.reshape(a.dim, 1, 1)
    if action.ndim != 3 or action.shape[0] != a.dim or action.shape[1] != action.shape[2]:
        raise SpecParseError(f'module {name!r} has an action of shape {action.shape}', *_position(text, 'action'))
    return action


def load_modules(source, a):
    r"""
    Modules from a JSON document (with '#' comments) of the form
        {"modules": [{"name": ..., "action": ...}, ...]}
    They are built without checking the representation law, so broken
    actions can be reported as counterexamples.

    # Returns
    _________
    list of Module
    """
    if not os.path.exists(source):
        raise SpecParseError(f'{source!r} is not a file', 0, 0)
    with open(source) as f:
        text = f.read()
    try:
        doc = json.loads(strip_comments(text))
    except json.JSONDecodeError as err:
        raise SpecParseError(err.msg, err.lineno, err.colno) from err
    entries = doc.get('modules') if isinstance(doc, dict) else doc
    if not isinstance(entries, list):
        raise SpecParseError('expected a list of modules', 1, 1)
    try:
        return [make_module(a, _action(entry, a, text), entry.get('name'), check= False) for entry in entries]
    except SpecParseError:
        raise
    except (TypeError, ValueError, RecollementError) as err:
        raise SpecParseError(f'malformed module document: {err}', 1, 1) from err
