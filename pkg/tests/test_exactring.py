"""Ring axioms, factored-scalar reduction, substitution homomorphisms."""

import pytest

from coulombkit import Poly, PoleEvaluationError, Scalar, VariableTable
from coulombkit.exactring import (one_minus, scalar_str,
                                  scalar_from_structured, scalar_structured,
                                  shift_s_by_degree, substitute_monomials)

from conftest import rand_mono, rand_poly, rng_for

T = VariableTable(2, 2)
W = T.width


def mono(**kw):
    entries = {}
    for name, e in kw.items():
        if name == "q":
            entries[0] = 2 * e
        elif name == "h":
            entries[1] = 2 * e
        elif name.startswith("a"):
            entries[T.a(int(name[1:]) - 1)] = e
        elif name.startswith("s"):
            entries[T.s(int(name[1:]) - 1)] = e
    return T.mono(entries)


def test_poly_ring_axioms_random():
    rng = rng_for("ring-axioms")
    for _ in range(60):
        p = rand_poly(rng, T, terms=6)
        q = rand_poly(rng, T, terms=6)
        r = rand_poly(rng, T, terms=6)
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r


def test_scalar_add_identity_and_telescoping():
    x = mono(s1=1)
    zero = Scalar.zero(W)
    f = Scalar.atom_inverse(mono(q=1, s1=1))
    assert zero + f == f
    # 1/(1-qx) + (-qx)/(1-qx) = 1
    g = Scalar(W, Poly.monomial(mono(q=1, s1=1), -1), atoms={mono(q=1, s1=1): 1})
    assert f + g == Scalar.one(W)
    # 1/(1-x) + 1/(1-qx) = (2 - x - qx)/((1-x)(1-qx))
    lhs = Scalar.atom_inverse(x) + Scalar.atom_inverse(mono(q=1, s1=1))
    num = Poly.from_terms(W, [(T.unit(), 2), (x, -1), (mono(q=1, s1=1), -1)])
    rhs = Scalar(W, num, atoms={x: 1, mono(q=1, s1=1): 1})
    assert lhs == rhs
    assert set(lhs.atoms) <= {x, mono(q=1, s1=1)}


def test_scalar_mul_and_inv():
    m = mono(s1=1)
    x = Scalar(W, one_minus(mono(h=1, s1=1)), atoms={mono(q=1, s1=1): 1})
    assert x * x.inv() == Scalar.one(W)
    sq = Scalar.atom_inverse(m) * Scalar.atom_inverse(m)
    assert sq.atoms == {m: 2}
    # inv((-q^(1/2)h^(-1/2)) (1-x)/(1-hx)) = (-q^(-1/2)h^(1/2)) (1-hx)/(1-x)
    k = Scalar(W, one_minus(m), pre=T.mono({0: 1, 1: -1}), atoms={mono(h=1, s1=1): 1}).scale(-1)
    ki = k.inv()
    expected = Scalar(W, one_minus(mono(h=1, s1=1)), pre=T.mono({0: -1, 1: 1}),
                      atoms={m: 1}).scale(-1)
    assert ki == expected
    with pytest.raises(ZeroDivisionError):
        Scalar.zero(W).inv()


def test_inv_general_denominator_flag():
    # 1 + s1 does not split into atoms; the inverse must carry a general denominator
    f = Scalar(W, Poly.from_terms(W, [(T.unit(), 1), (mono(s1=1), 1)]))
    g = f.inv()
    assert g.gden is not None
    assert f * g == Scalar.one(W)


def test_substitute_monomials_pole_and_cancellation():
    x = Scalar(W, one_minus(mono(a1=1, s1=1)))
    # numerator (1 - a1 s1) with s1 -> a1^-1 must cancel exactly when dividing itself
    out = Scalar.atom_inverse(mono(a1=1, s1=1)) * x
    got = substitute_monomials(out, T, {0: mono(a1=-1)})
    assert got == Scalar.one(W)
    # but a true pole raises
    with pytest.raises(PoleEvaluationError):
        substitute_monomials(Scalar.atom_inverse(mono(a1=1, s1=1)), T, {0: mono(a1=-1)})
    # plain evaluation: (1-q s1)/(1-h s1) at s1 -> 1
    f = Scalar(W, one_minus(mono(q=1, s1=1)), atoms={mono(h=1, s1=1): 1})
    got = substitute_monomials(f, T, {0: T.unit(), 1: T.unit()})
    expected = Scalar(W, one_minus(mono(q=1)), atoms={mono(h=1): 1})
    assert got == expected


def test_substitution_is_ring_homomorphism():
    rng = rng_for("subs-hom")
    smap = {0: mono(a1=1, h=-1), 1: mono(a2=-2)}
    for _ in range(30):
        f = Scalar.from_poly(rand_poly(rng, T, terms=4))
        g = Scalar.from_poly(rand_poly(rng, T, terms=4))
        sub = lambda z: substitute_monomials(z, T, smap)
        assert sub(f * g) == sub(f) * sub(g)
        assert sub(f + g) == sub(f) + sub(g)


def test_q_shift():
    s = Scalar.monomial(mono(s1=1))
    assert s.q_shift(T.s(0), 1) == Scalar.monomial(mono(q=1, s1=1))
    core = Scalar(W, one_minus(mono(a1=1, s1=1)))
    shifted = core.q_shift(T.s(0), -1)
    assert shifted == Scalar(W, one_minus(mono(q=-1, a1=1, s1=1)))
    rng = rng_for("q-shift")
    for _ in range(20):
        f = Scalar.from_poly(rand_poly(rng, T, terms=5))
        assert f.q_shift(T.s(0), 1).q_shift(T.s(0), -1) == f
        g = Scalar.from_poly(rand_poly(rng, T, terms=5))
        assert (f * g).q_shift(T.s(1), 2) == f.q_shift(T.s(1), 2) * g.q_shift(T.s(1), 2)


def test_cross_multiplication_equality_routes():
    rng = rng_for("eq-routes")
    for _ in range(25):
        p = rand_poly(rng, T, terms=3)
        a = rand_mono(rng, T, span=1)
        if not any(a):
            a = mono(s1=1)
        # two routes to p/(1-a): direct, and (p*(1-a))/(1-a)^2
        r1 = Scalar(W, p, atoms={a: 1})
        r2 = Scalar(W, p * one_minus(a), atoms={a: 2})
        assert r1 == r2
        r3 = Scalar(W, p * one_minus(a) * one_minus(a), atoms={a: 3})
        assert r2 == r3 and r1 == r3


def test_exact_div():
    rng = rng_for("exact-div")
    for _ in range(40):
        f = rand_poly(rng, T, terms=4)
        g = rand_poly(rng, T, terms=4)
        prod = f * g
        q = prod.exact_div(g)
        assert q is not None and q == f
    f = Poly.from_terms(W, [(T.unit(), 1), (mono(s1=1), 1)])
    d = Poly.from_terms(W, [(T.unit(), 1), (mono(s1=1), -1)])
    assert f.exact_div(d) is None


def test_structured_roundtrip():
    rng = rng_for("structured")
    for _ in range(15):
        f = Scalar(W, rand_poly(rng, T), pre=rand_mono(rng, T, span=1),
                   atoms={mono(q=1, s1=1): 2, mono(h=1, a1=1, s2=-1): 1})
        data = scalar_structured(f)
        back = scalar_from_structured(W, data)
        assert back == f
        assert scalar_structured(back) == data


def test_canonical_rendering_deterministic():
    f = Scalar(W, Poly.from_terms(W, [(T.unit(), 2), (mono(s1=1), -1),
                                      (mono(q=1, s1=1), -1)]),
               atoms={mono(s1=1): 1, mono(q=1, s1=1): 1})
    assert scalar_str(T, f) == "(2 - s1 - q*s1) / (1 - s1)*(1 - q*s1)"
    g = Scalar.monomial(T.mono({0: 1, 1: -1}), -1)
    assert scalar_str(T, g) == "-q^(1/2)*h^(-1/2)"


def test_shift_s_by_degree_matches_manual():
    f = Scalar(W, one_minus(mono(a1=1, s1=1, s2=-1)))
    g = shift_s_by_degree(f, T, (2, 1))
    assert g == Scalar(W, one_minus(mono(q=1, a1=1, s1=1, s2=-1)))
