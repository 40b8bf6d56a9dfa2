from collections import namedtuple
from dataclasses import dataclass

import networkx as nx
import numpy as np

from recollement.core.algebra import QuiverData, build_algebra, parse_terms
from recollement.utils.errors import InvalidQuiver, NotFiniteDimensional, PresentationError, SpecParseError
from recollement.utils.linalg import complement_columns, quotient_projection, rref

# paths of length cap+1 and above must vanish modulo the relations
DEFAULT_NILPOTENCY_CAP = 8

Path = namedtuple('Path', ['source', 'target', 'arrows'])


def path_label(path):
    return '.'.join(path.arrows) if path.arrows else f'e{path.source}'


@dataclass(frozen= True)
class QuiverPresentation:
    r"""
    Quiver with relations. Paths are composed left to right: in the path
    a.b the target of a is the source of b.

    # Arguments
    ___________
    vertices : tuple of str
    arrows : tuple of (source, target, label)
    relations : tuple of tuple of (coefficient, path label)
        each relation is a linear combination of paths of length >= 2
        sharing source and target
    nilpotency_cap : int
    """
    vertices: tuple
    arrows: tuple
    relations: tuple = ()
    nilpotency_cap: int = DEFAULT_NILPOTENCY_CAP

    def graph(self):
        G = nx.MultiDiGraph()
        G.add_nodes_from(self.vertices)
        for s, t, label in self.arrows:
            G.add_edge(s, t, key= label)
        return G

    def arrow(self, label):
        for s, t, a in self.arrows:
            if a == label:
                return s, t
        raise InvalidQuiver(f'unknown arrow {label!r}')

    def to_path(self, label):
        r"""parses "e1" or "a.b.c" into a Path"""
        trivial = {f'e{v}': v for v in self.vertices}
        if label in trivial:
            return Path(trivial[label], trivial[label], ())
        arrows = tuple(label.split('.'))
        ends = [self.arrow(a) for a in arrows]
        for (_, t), (s, _) in zip(ends[:-1], ends[1:]):
            if t != s:
                raise InvalidQuiver(f'{label!r} is not a path: {t} != {s}')
        return Path(ends[0][0], ends[-1][1], arrows)

    def paths(self, max_length):
        r"""
        every path of length <= max_length, by length and then in the
        order of vertices and arrows
        """
        G = self.graph()
        layer = [Path(v, v, ()) for v in self.vertices]
        out = list(layer)
        for _ in range(max_length):
            layer = [Path(q.source, t, q.arrows + (key,))
                     for q in layer for _, t, key in G.out_edges(q.target, keys= True)]
            out.extend(layer)
        return out


def make_presentation(vertices, arrows, relations= (), nilpotency_cap= DEFAULT_NILPOTENCY_CAP):
    r"""
    Validates quiver data. Relations are given as strings ("a.b - c.d")
    or as lists of (coefficient, path label) pairs.
    """
    vertices = tuple(str(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise InvalidQuiver(f'duplicate vertices in {vertices}')
    arrows = tuple((str(s), str(t), str(label)) for s, t, label in arrows)
    labels = [label for _, _, label in arrows]
    if len(set(labels)) != len(labels):
        raise InvalidQuiver(f'duplicate arrow labels in {labels}')
    for s, t, label in arrows:
        if s not in vertices or t not in vertices:
            raise InvalidQuiver(f'arrow {label} joins unknown vertices {s} -> {t}')
        if '.' in label or label in {f'e{v}' for v in vertices}:
            raise InvalidQuiver(f'arrow label {label!r} clashes with path notation')
    if nilpotency_cap < 1:
        raise InvalidQuiver(f'nilpotency cap must be positive, got {nilpotency_cap}')

    q = QuiverPresentation(vertices, arrows, (), int(nilpotency_cap))
    parsed = []
    for rel in relations:
        try:
            terms = parse_terms(rel) if isinstance(rel, str) else [(int(c), str(w)) for c, w in rel]
        except SpecParseError as err:
            raise InvalidQuiver(f'cannot parse relation {rel!r}: {err}') from err
        ends = set()
        for _, label in terms:
            path = q.to_path(label)
            if len(path.arrows) < 2:
                raise PresentationError(rel, label, len(path.arrows), '>= 2')
            if len(path.arrows) > nilpotency_cap:
                raise PresentationError(rel, label, len(path.arrows), f'<= {nilpotency_cap}')
            ends.add((path.source, path.target))
        if len(ends) > 1:
            raise InvalidQuiver(f'relation {rel!r} mixes paths between different vertices')
        parsed.append(tuple(terms))
    return QuiverPresentation(vertices, arrows, tuple(parsed), int(nilpotency_cap))


def _concat(u, v):
    if u.target != v.source:
        return None
    return Path(u.source, v.target, u.arrows + v.arrows)


def path_algebra(q, p, name= None):
    r"""
    kQ/I for a quiver presentation. The ideal I is generated by the relations
    inside the algebra of paths of length <= cap+1; every path of length cap+1
    must lie in I, otherwise kQ/I is reported as not finite dimensional.

    The basis consists of paths (shortest first) that are not leading terms of I,
    where longer paths lead.

    # Arguments
    ___________
    q : QuiverPresentation
    p : int
    name : str

    # Returns
    _________
    Algebra with QuiverData: vertex idempotents are the trivial paths and the
    radical is the image of the arrow ideal.
    """
    top = q.nilpotency_cap + 1
    paths = q.paths(top)
    # columns ordered longest path first, so pivots land on long paths
    order = sorted(range(len(paths)), key= lambda k: (-len(paths[k].arrows), -k))
    column = {paths[k]: c for c, k in enumerate(order)}
    N = len(paths)

    def vector(terms):
        v = np.zeros(N, dtype= np.int64)
        for coef, path in terms:
            if path is not None and len(path.arrows) <= top:
                v[column[path]] += coef
        return v % p

    rows = []
    for rel in q.relations:
        terms = [(c, q.to_path(label)) for c, label in rel]
        s, t = terms[0][1].source, terms[0][1].target
        for u in paths:
            if u.target != s:
                continue
            for w in paths:
                if w.source != t or len(u.arrows) + len(w.arrows) + 2 > top:
                    continue
                rows.append(vector([(c, _concat(_concat(u, r), w)) for c, r in terms]))
    I, pivots = rref(np.array(rows, dtype= np.int64).reshape(-1, N), p)

    free = complement_columns(pivots, N)[::-1]
    P = quotient_projection(I, pivots, N, p)[:, ::-1]
    for path in paths:
        if len(path.arrows) == top and np.any(P[column[path]]):
            raise NotFiniteDimensional(q.nilpotency_cap, path_label(path))
    basis = [paths[order[c]] for c in free]
    n = len(basis)

    table = np.zeros((n, n, n), dtype= np.int64)
    for i, u in enumerate(basis):
        for j, w in enumerate(basis):
            uw = _concat(u, w)
            if uw is not None and len(uw.arrows) <= top:
                table[i, j] = P[column[uw]]
    unit = np.zeros(n, dtype= np.int64)
    vertex_idempotents = np.zeros((len(q.vertices), n), dtype= np.int64)
    for i, u in enumerate(basis):
        if not u.arrows:
            unit[i] = 1
            vertex_idempotents[q.vertices.index(u.source), i] = 1
    radical = np.zeros((n, n), dtype= np.int64)
    for i, u in enumerate(basis):
        if u.arrows:
            radical[i, i] = 1
    radical = radical[[i for i, u in enumerate(basis) if u.arrows]]

    quiver = QuiverData(vertex_idempotents, radical, q.vertices, q)
    return build_algebra(p, [path_label(u) for u in basis], table, unit, name= name, quiver= quiver)
