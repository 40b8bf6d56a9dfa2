import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from recollement.data.builtin import load_builtin
from recollement.modules.catalog import module_catalog

settings.register_profile('recollement', deadline= None, max_examples= 25,
                          suppress_health_check= [HealthCheck.too_slow])
settings.load_profile('recollement')


@pytest.fixture(scope= 'session')
def t2():
    return load_builtin('T2_F2')


@pytest.fixture(scope= 'session')
def t3():
    return load_builtin('T3_F2')


@pytest.fixture(scope= 'session')
def a3():
    return load_builtin('A3_quiver_with_zero_relation')


@pytest.fixture(scope= 'session')
def dual():
    return load_builtin('F2[x]/x2')


@pytest.fixture(scope= 'session')
def f2():
    return load_builtin('F2')


@pytest.fixture(scope= 'session')
def f2xf2():
    return load_builtin('F2xF2')


@pytest.fixture(scope= 'session')
def m2():
    return load_builtin('M2_F2')


@pytest.fixture(scope= 'session')
def t2_catalog(t2):
    return module_catalog(t2, 2)
