import random

import pytest

from coulombkit import GaugeData, VariableTable, fixed_points
from coulombkit.coulomb import CoulombAlgebra


@pytest.fixture(scope="session")
def tp1():
    return GaugeData.create([[1], [1]], [1])


@pytest.fixture(scope="session")
def tp1_alg(tp1):
    return CoulombAlgebra(tp1)


@pytest.fixture(scope="session")
def a2():
    return GaugeData.create([[1, 0], [0, 1], [-1, -1]], [2, 1])


@pytest.fixture(scope="session")
def a2_alg(a2):
    return CoulombAlgebra(a2)


@pytest.fixture(scope="session")
def sqed11():
    # one positive and one negative weight; the simplest reversing wall
    return GaugeData.create([[1], [-1]], [1])


def tpn(n):
    return GaugeData.create([[1]] * (n + 1), [1])


def tgr_model(k, n):
    """Hom(C^n, C^k) weights under the diagonal torus, one GL block."""
    chi = []
    for j in range(k):
        for i in range(n):
            chi.append([1 if t == j else 0 for t in range(k)])
    table = VariableTable(n * k, k)
    aspec = {}
    for j in range(k):
        for i in range(n):
            aspec[j * n + i] = table.mono({table.a(i): -1})
    return GaugeData.create(chi, [1] * k, blocks=[k], a_specialization=aspec)


@pytest.fixture(scope="session")
def tgr24():
    return tgr_model(2, 4)


@pytest.fixture(scope="session")
def tgr24_alg(tgr24):
    return CoulombAlgebra(tgr24)


@pytest.fixture(scope="session")
def tgr12():
    return tgr_model(1, 2)


def point_by_support(data, support):
    for p in fixed_points(data):
        if p.support == tuple(sorted(support)):
            return p
    raise KeyError(support)


def rand_mono(rng, table, span=2, vars_=None):
    m = [0] * table.width
    idxs = vars_ if vars_ is not None else range(table.width)
    for idx in idxs:
        step = 2 if table.is_half_variable(idx) else 1
        m[idx] = step * rng.randint(-span, span)
    return tuple(m)


def rand_poly(rng, table, terms=3, span=2, vars_=None):
    from coulombkit import Poly
    items = []
    for _ in range(rng.randint(1, terms)):
        items.append((rand_mono(rng, table, span, vars_), rng.randint(-4, 4)))
    p = Poly.from_terms(table.width, items)
    if p.is_zero():
        p = Poly.one(table.width)
    return p


def rng_for(name):
    return random.Random("coulombkit:" + name)
