"""Finite q-Pochhammer symbols and the sign kernel used by every relation.

The convention is (x; q)_d = (x; q)_inf / (q^d x; q)_inf, made finite:

    d > 0:  (1 - x)(1 - q x) ... (1 - q^{d-1} x)
    d = 0:  1
    d < 0:  1 / ((1 - q^{-1} x)(1 - q^{-2} x) ... (1 - q^d x))

Negative lengths go directly to denominator atoms, never expanded, so the
factored-denominator discipline survives evaluation.  Infinite symbols and
theta functions are deliberately not represented.
"""

from __future__ import annotations

from fractions import Fraction

from .exactring import HBAR_HALF, Poly, Q_HALF, Scalar, mono_inv, mono_mul, mono_pow


def _q_power(width: int, m: int) -> tuple:
    t = [0] * width
    t[Q_HALF] = 2 * m
    return tuple(t)


def q_shifted(x: tuple, m: int) -> tuple:
    """The monomial q^m * x."""
    if m == 0:
        return x
    return mono_mul(x, _q_power(len(x), m))


def poch(x: tuple, d: int) -> Scalar:
    """(x; q)_d for a monomial argument x."""
    w = len(x)
    if d == 0:
        return Scalar.one(w)
    if d > 0:
        num = Poly.one(w)
        for m in range(d):
            num = num * Poly.from_terms(w, [((0,) * w, 1), (q_shifted(x, m), -1)])
        return Scalar(w, num)
    atoms = {}
    for m in range(1, -d + 1):
        g = q_shifted(x, -m)
        atoms[g] = atoms.get(g, 0) + 1
    return Scalar(w, Poly.one(w), atoms=atoms)


def sign_kernel(d: int, width: int) -> Scalar:
    """(-q^(1/2) h^(-1/2))^d as a signed monomial."""
    m = [0] * width
    m[Q_HALF] = d
    m[HBAR_HALF] = -d
    return Scalar.monomial(tuple(m), Fraction(-1) ** d)


def poch_qinv(x: tuple, d: int) -> Scalar:
    """(x; q^{-1})_d, computed as (-1)^d x^d q^{-d(d-1)/2} (x^{-1}; q)_d."""
    w = len(x)
    head = mono_mul(mono_pow(x, d), _q_power(w, 0))
    m = list(head)
    m[Q_HALF] += -d * (d - 1)
    return Scalar.monomial(tuple(m), Fraction(-1) ** d) * poch(mono_inv(x), d)


def hq_ratio(x: tuple, d: int) -> Scalar:
    """sign_kernel(d) * (h x)_d / (q x)_d, with the denominator kept factored.

    This is the kernel factor that the convolution relations, vertex
    coefficients and module actions are built from.
    """
    w = len(x)
    out = sign_kernel(d, w)
    hm = [0] * w
    hm[HBAR_HALF] = 2
    hx = mono_mul(tuple(hm), x)
    qx = q_shifted(x, 1)
    if d >= 0:
        num = Poly.one(w)
        for m in range(d):
            num = num * Poly.from_terms(w, [((0,) * w, 1), (q_shifted(hx, m), -1)])
        atoms = {}
        for m in range(1, d + 1):
            g = q_shifted(x, m)
            atoms[g] = atoms.get(g, 0) + 1
        return out * Scalar(w, num, atoms=atoms)
    num = Poly.one(w)
    for m in range(1, -d + 1):
        num = num * Poly.from_terms(w, [((0,) * w, 1), (q_shifted(qx, -m), -1)])
    atoms = {}
    for m in range(1, -d + 1):
        g = q_shifted(hx, -m)
        atoms[g] = atoms.get(g, 0) + 1
    return out * Scalar(w, num, atoms=atoms)


def hq_ratio_inv(x: tuple, d: int) -> Scalar:
    """[sign_kernel(d) * (h x)_d / (q x)_d]^{-1}, built directly in factored form."""
    w = len(x)
    out = sign_kernel(-d, w)
    hm = [0] * w
    hm[HBAR_HALF] = 2
    hx = mono_mul(tuple(hm), x)
    qx = q_shifted(x, 1)
    if d >= 0:
        num = Poly.one(w)
        for m in range(1, d + 1):
            num = num * Poly.from_terms(w, [((0,) * w, 1), (q_shifted(x, m), -1)])
        atoms = {}
        for m in range(d):
            g = q_shifted(hx, m)
            atoms[g] = atoms.get(g, 0) + 1
        return out * Scalar(w, num, atoms=atoms)
    num = Poly.one(w)
    for m in range(1, -d + 1):
        num = num * Poly.from_terms(w, [((0,) * w, 1), (q_shifted(hx, -m), -1)])
    atoms = {}
    for m in range(1, -d + 1):
        g = q_shifted(qx, -m)
        atoms[g] = atoms.get(g, 0) + 1
    return out * Scalar(w, num, atoms=atoms)
