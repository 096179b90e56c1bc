"""Convolution algebra: relations, normal form, mixed generators, module."""

import itertools

import pytest

from coulombkit import GaugeData, Scalar, specialize_q1
from coulombkit.coulomb import CoulombAlgebra, delta, epsilon
from coulombkit.exactring import mono_mul, one_minus
from coulombkit.hypertoric import pair
from coulombkit.pochhammer import hq_ratio, hq_ratio_inv, poch, q_shifted, sign_kernel

from conftest import rng_for, tpn


def test_structure_constant_identity(a2_alg):
    rng = rng_for("sc-identity")
    for _ in range(10):
        d = (rng.randint(-3, 3), rng.randint(-3, 3))
        assert a2_alg.structure_constant((0, 0), d) == Scalar.one(a2_alg.table.width)
        assert a2_alg.structure_constant(d, (0, 0)) == Scalar.one(a2_alg.table.width)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_tpn_relation(n, d):
    """r_{-d} r_d on the rank-1 model with n+1 equal weights."""
    alg = CoulombAlgebra(tpn(n))
    t = alg.table
    w = t.width
    got = alg.structure_constant((-d,), (d,))
    expected = Scalar.one(w)
    h2 = t.mono({1: 2})
    for i in range(n + 1):
        x = alg.x_mono(i)
        expected = expected * sign_kernel(-d, w) \
            * poch(q_shifted(x, 1), d) / poch(mono_mul(h2, x), d)
    assert got == expected


def test_abelian_point_relations():
    data = GaugeData.create([[1, 0], [0, 1]], [1, 1])
    alg = CoulombAlgebra(data)
    t = alg.table
    w = t.width
    h2 = t.mono({1: 2})
    b = [(1, 0), (0, 1)]
    nb = [(-1, 0), (0, -1)]
    # commuting pairs for distinct coordinates
    for ei in (b[0], nb[0]):
        for ej in (b[1], nb[1]):
            assert alg.mul(alg.r(ei), alg.r(ej)) == alg.mul(alg.r(ej), alg.r(ei))
    for i in range(2):
        x = alg.x_mono(i)
        lhs = alg.mul(alg.r(nb[i]), alg.r(b[i]))
        coeff = sign_kernel(-1, w) * Scalar(
            w, one_minus(q_shifted(x, 1)), atoms={mono_mul(h2, x): 1})
        assert lhs == alg.r((0, 0), coeff)
        lhs2 = alg.mul(alg.r(b[i]), alg.r(nb[i]))
        coeff2 = sign_kernel(-1, w) * Scalar(
            w, one_minus(x), atoms={q_shifted(mono_mul(h2, x), -1): 1})
        assert lhs2 == alg.r((0, 0), coeff2)


def test_shift_lemma_as_elements(a2_alg):
    t = a2_alg.table
    rng = rng_for("shift-lemma")
    for _ in range(8):
        d = (rng.randint(-2, 2), rng.randint(-2, 2))
        j = rng.randint(0, 1)
        sj = Scalar.monomial(t.mono({t.s(j): 1}))
        lhs = a2_alg.mul(a2_alg.r(d), a2_alg.cartan(sj))
        rhs = a2_alg.mul(a2_alg.cartan(sj.q_shift(t.s(j), -d[j])), a2_alg.r(d))
        assert lhs == rhs, (d, j)


def _random_element(alg, rng, span=3, with_coeff=False):
    t = alg.table
    d = tuple(rng.randint(-span, span) for _ in range(alg.data.k))
    if not with_coeff:
        return alg.r(d)
    m = t.mono({t.s(rng.randint(0, alg.data.k - 1)): rng.randint(-1, 1),
                t.a(rng.randint(0, alg.data.n - 1)): rng.randint(0, 1)})
    return alg.r(d, Scalar.monomial(m, rng.choice([1, 2, -1])))


@pytest.mark.parametrize("pol", [None, frozenset(), frozenset({0, 2})])
def test_associativity_three_polarizations(a2_alg, pol):
    rng = rng_for("assoc-%r" % (sorted(pol) if pol else pol,))
    for _ in range(12):
        a = _random_element(a2_alg, rng, with_coeff=True)
        b = _random_element(a2_alg, rng)
        c = _random_element(a2_alg, rng)
        lhs = a2_alg.mul(a2_alg.mul(a, b, pol), c, pol)
        rhs = a2_alg.mul(a, a2_alg.mul(b, c, pol), pol)
        assert lhs == rhs


def test_associativity_tp1(tp1_alg):
    rng = rng_for("assoc-tp1")
    for _ in range(12):
        a = _random_element(tp1_alg, rng, with_coeff=True)
        b = _random_element(tp1_alg, rng)
        c = _random_element(tp1_alg, rng)
        assert tp1_alg.mul(tp1_alg.mul(a, b), c) == tp1_alg.mul(a, tp1_alg.mul(b, c))


def test_identity_element(a2_alg):
    rng = rng_for("identity")
    for _ in range(6):
        a = _random_element(a2_alg, rng, with_coeff=True)
        assert a2_alg.mul(a2_alg.one(), a) == a
        assert a2_alg.mul(a, a2_alg.one()) == a


def test_tau(a2_alg):
    rng = rng_for("tau")
    for _ in range(10):
        a = _random_element(a2_alg, rng, with_coeff=True)
        b = _random_element(a2_alg, rng, span=2)
        assert a2_alg.tau(a2_alg.tau(a)) == a
        assert a2_alg.tau(a2_alg.mul(a, b)) == a2_alg.mul(a2_alg.tau(b), a2_alg.tau(a))
    for d in [(1, 0), (0, -2), (2, 1)]:
        assert a2_alg.tau(a2_alg.r(d)) == a2_alg.r(tuple(-x for x in d))


def test_mixed_generator_zero(a2_alg):
    assert a2_alg.mixed_generator((0, 0)) == a2_alg.one()


def _effective_degrees(alg, order):
    from coulombkit.hypertoric import enumerate_degrees
    return enumerate_degrees(alg.eff(), alg.data.theta, order)


def test_mixed_product_law(a2_alg):
    degs = _effective_degrees(a2_alg, 3)
    for c in degs:
        for d in degs:
            s = tuple(x + y for x, y in zip(c, d))
            if pair(a2_alg.data.theta, s) > 3:
                continue
            assert a2_alg.mul(a2_alg.mixed_generator(c), a2_alg.mixed_generator(d)) \
                == a2_alg.mixed_generator(s), (c, d)
            nc = tuple(-x for x in c)
            nd = tuple(-x for x in d)
            ns = tuple(-x for x in s)
            assert a2_alg.mul(a2_alg.mixed_generator(nc), a2_alg.mixed_generator(nd)) \
                == a2_alg.mixed_generator(ns), (c, d)


def test_mixed_inverse_products(a2_alg):
    w = a2_alg.table.width
    for d in _effective_degrees(a2_alg, 3):
        nd = tuple(-x for x in d)
        plus = a2_alg.mul(a2_alg.mixed_generator(d), a2_alg.mixed_generator(nd)).scalar_part()
        minus = a2_alg.mul(a2_alg.mixed_generator(nd), a2_alg.mixed_generator(d)).scalar_part()
        e1 = Scalar.one(w)
        e2 = Scalar.one(w)
        for i in range(a2_alg.data.n):
            di = a2_alg.data.pairing(i, d)
            e1 = e1 * hq_ratio(a2_alg.x_mono(i), -di)
            e2 = e2 * hq_ratio_inv(a2_alg.x_mono(i), di)
        assert plus == e1, d
        assert minus == e2, d


def test_tau_of_mixed(a2_alg):
    for d in _effective_degrees(a2_alg, 3):
        nd = tuple(-x for x in d)
        assert a2_alg.tau(a2_alg.mixed_generator(d)) == a2_alg.mixed_generator(nd)
        assert a2_alg.tau(a2_alg.mixed_generator(nd)) == a2_alg.mixed_generator(d)


def test_cowall_invariance(a2_alg):
    # (1,0) and (2,0) sit on the cowall between the two effective cochambers
    for d in [(1, 0), (2, 0)]:
        both = [a2_alg.xi_phi_generator(d, frozenset({0, 1})),
                a2_alg.xi_phi_generator(d, frozenset({0}))]
        assert both[0] == both[1]
        assert both[0] == a2_alg.mixed_generator(d)
        # the same two cochambers serve the negated degree
        nd = tuple(-x for x in d)
        both_n = [a2_alg.xi_phi_generator(nd, frozenset({0, 1})),
                  a2_alg.xi_phi_generator(nd, frozenset({0}))]
        assert both_n[0] == both_n[1]
        assert both_n[0] == a2_alg.mixed_generator(nd)


def test_hamiltonian_reduction_oracle(a2_alg):
    """Lift products through independent coordinates reproduce the structure
    constants after the gauge-variable substitution."""
    ab = a2_alg.abelian_point_algebra()
    lifts = {}
    for c in itertools.product((-2, -1, 0, 1, 2), repeat=2):
        lifts[c] = a2_alg.abelian_point_lift(c, ab)
    for c in lifts:
        for d in lifts:
            prod = ab.mul(lifts[c], lifts[d])
            total = tuple(x + y for x, y in zip(c, d))
            iota = tuple(a2_alg.data.pairing(i, total) for i in range(a2_alg.data.n))
            assert set(prod.terms) == {iota}, (c, d)
            got = a2_alg.project_lift_scalar(prod.terms[iota], ab)
            assert got == a2_alg.structure_constant(c, d), (c, d)


def test_lift_of_tp1_circuit(tp1_alg):
    ab = tp1_alg.abelian_point_algebra()
    lift = tp1_alg.abelian_point_lift((1,), ab)
    direct = ab.mul(ab.r((1, 0)), ab.r((0, 1)))
    assert lift == direct
    assert tp1_alg.abelian_point_lift((0,), ab) == ab.one()


def test_q1_commutativity(a2_alg):
    t = a2_alg.table
    for c in itertools.product((-2, -1, 0, 1, 2), repeat=2):
        for d in itertools.product((-2, -1, 0, 1, 2), repeat=2):
            g1 = specialize_q1(a2_alg.structure_constant(c, d), t)
            g2 = specialize_q1(a2_alg.structure_constant(d, c), t)
            assert g1 == g2, (c, d)
    # and for a composite with Cartan coefficients
    f = Scalar.monomial(t.mono({t.s(0): 1}))
    g = Scalar.monomial(t.mono({t.s(1): -1}))
    a = a2_alg.r((1, 0), f)
    b = a2_alg.r((0, 1), g)
    ab_ = a2_alg.mul(a, b).terms[(1, 1)]
    ba_ = a2_alg.mul(b, a).terms[(1, 1)]
    assert specialize_q1(ab_, t) == specialize_q1(ba_, t)


def test_module_action(a2_alg):
    w = a2_alg.table.width
    tc = a2_alg.t((1, 1))
    assert a2_alg.module_act(tc, a2_alg.one()) == tc
    for d in _effective_degrees(a2_alg, 2):
        if not any(d):
            continue
        plus = a2_alg.module_act(tc, a2_alg.mixed_generator(d))
        assert plus == a2_alg.t(tuple(x + y for x, y in zip((1, 1), d))), d
        nd = tuple(-x for x in d)
        got = a2_alg.module_act(tc, a2_alg.mixed_generator(nd))
        coeff = Scalar.one(w)
        for i in range(a2_alg.data.n):
            coeff = coeff * hq_ratio(a2_alg.x_mono(i), -a2_alg.data.pairing(i, d))
        cd = tuple(x - y for x, y in zip((1, 1), d))
        assert got == a2_alg.t(cd, a2_alg.shift_coefficient(coeff, cd)), d


def test_module_grading(a2_alg):
    rng = rng_for("module-grading")
    for _ in range(8):
        c = (rng.randint(-2, 2), rng.randint(-2, 2))
        d = (rng.randint(-2, 2), rng.randint(-2, 2))
        out = a2_alg.module_act(a2_alg.t(c), a2_alg.r(d))
        assert set(out.terms) <= {tuple(x + y for x, y in zip(c, d))}


def test_symmetrized_generator_trivial_blocks():
    data = GaugeData.create([[1], [1]], [1], blocks=[1])
    alg = CoulombAlgebra(data)
    for d in [(0,), (1,), (2,)]:
        assert alg.symmetrized_generator(d) == alg.mixed_generator(d)


def test_symmetrized_generator_weyl_invariance(tgr24_alg):
    sg = tgr24_alg.symmetrized_generator((1, 0))
    for w in tgr24_alg.weyl_elements():
        assert tgr24_alg.weyl_on_element(w, sg) == sg
    assert tgr24_alg.symmetrized_generator((0, 0)) == tgr24_alg.one()


def test_symmetrized_generator_requires_blocks(a2_alg):
    with pytest.raises(ValueError, match="no block structure"):
        a2_alg.symmetrized_generator((1, 0))
    with pytest.raises(ValueError, match="dominant"):
        tgr = CoulombAlgebra(GaugeData.create([[1, 0], [0, 1]], [1, 1], blocks=[2]))
        tgr.symmetrized_generator((0, 1))


def test_epsilon_delta():
    assert [epsilon(v) for v in (-3, 0, 5)] == [-1, 0, 1]
    assert delta(2, 3) == 0 and delta(-2, -3) == 0 and delta(0, 4) == 0
    assert delta(2, -3) == 2 and delta(-4, 1) == 1
