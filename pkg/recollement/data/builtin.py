from functools import lru_cache

from recollement.core.algebra import matrix_units_algebra, product_algebra
from recollement.core.quiver import make_presentation, path_algebra


def _f2():
    return product_algebra(2, 1, name= 'F2')


def _f2xf2():
    return product_algebra(2, 2, name= 'F2xF2')


def _dual_numbers():
    q = make_presentation(['1'], [('1', '1', 'x')], ['x.x'], nilpotency_cap= 2)
    return path_algebra(q, 2, name= 'F2[x]/x2')


def _t2():
    return matrix_units_algebra(2, [(1, 1), (1, 2), (2, 2)], name= 'T2_F2')


def _t3():
    q = make_presentation(['1', '2', '3'], [('1', '2', 'a'), ('2', '3', 'b')])
    return path_algebra(q, 2, name= 'T3_F2')


def _a3_zero_relation():
    q = make_presentation(['1', '2', '3'], [('1', '2', 'a'), ('2', '3', 'b')], ['a.b'])
    return path_algebra(q, 2, name= 'A3_quiver_with_zero_relation')


def _m2():
    return matrix_units_algebra(2, [(1, 1), (1, 2), (2, 1), (2, 2)], name= 'M2_F2')


BUILTIN_ALGEBRAS = {
    'F2': _f2,
    'F2xF2': _f2xf2,
    'F2[x]/x2': _dual_numbers,
    'T2_F2': _t2,
    'T3_F2': _t3,
    'A3_quiver_with_zero_relation': _a3_zero_relation,
    'M2_F2': _m2,
}


@lru_cache(maxsize= None)
def load_builtin(name):
    r"""
    A built-in algebra by name; repeated calls return the same object, so
    modules built from different calls can be compared.
    """
    if name not in BUILTIN_ALGEBRAS:
        raise KeyError(f'unknown built-in algebra {name!r}, choose one of {sorted(BUILTIN_ALGEBRAS)}')
    return BUILTIN_ALGEBRAS[name]()
