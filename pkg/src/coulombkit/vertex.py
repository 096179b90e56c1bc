"""Truncated descendent vertex series at fixed points, and their q-difference checks.

Coefficients are computed directly from the closed localization product --
never through the module pairing -- so that the pairing route implemented in
:mod:`coulombkit.verma` is a genuinely independent cross-check.  A series is
stored degreewise: the key carries the Kahler power, the value is a scalar
in the residue variables only.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .coulomb import CoulombAlgebra
from .exactring import (PoleEvaluationError, Poly, Scalar,
                        identity_images, mono_subs, shift_s_by_degree)
from .hypertoric import FixedPoint, enumerate_degrees, pair
from .pochhammer import hq_ratio, hq_ratio_inv, q_shifted, sign_kernel
from .verma import VermaModule


def _ordered_map(fn, items):
    """Map with an optional thread pool (COULOMBKIT_THREADS), order preserved."""
    try:
        workers = int(os.environ.get("COULOMBKIT_THREADS", "1"))
    except ValueError:
        workers = 1
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


class Descendent:
    """Polynomial insertion in the gauge variables (no denominators allowed)."""

    __slots__ = ("poly",)

    def __init__(self, poly: Poly):
        self.poly = poly

    def as_scalar(self) -> Scalar:
        return Scalar.from_poly(self.poly)


@dataclass
class QSeries:
    """Truncated series: degree tuple -> residue-variable coefficient."""

    order: int
    coeffs: dict

    def coefficient(self, d, width: int) -> Scalar:
        return self.coeffs.get(tuple(d), Scalar.zero(width))

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        keys = {d for d, f in self.coeffs.items() if not f.is_zero()}
        keys |= {d for d, f in other.coeffs.items() if not f.is_zero()}
        for d in keys:
            a = self.coeffs.get(d)
            b = other.coeffs.get(d)
            if a is None or b is None or not (a == b):
                return False
        return True


def restriction_images(alg: CoulombAlgebra, p: FixedPoint, specialize: bool = False):
    """Variable images of evaluation at the point, optionally composed with
    the model's flavor specialization."""
    table = alg.table
    images = identity_images(table.width)
    if specialize:
        aspec = alg.data.a_specialization or {}
        for row, mono in aspec.items():
            images[table.a(row)] = tuple(mono)
    for j, mono in p.restriction.items():
        images[table.s(j)] = mono_subs(mono, images)
    return images


def evaluate_at_point(alg: CoulombAlgebra, images, f: Scalar) -> Scalar:
    try:
        return f.subs(images, alg.table.width)
    except PoleEvaluationError as exc:
        raise PoleEvaluationError("pole at fixed point: %s" % exc)


def matter_kernel(alg: CoulombAlgebra, d) -> Scalar:
    """The degree-d localization weight of the matter rows, unevaluated."""
    out = Scalar.one(alg.table.width)
    for i in range(alg.data.n):
        di = alg.data.pairing(i, d)
        if di:
            out = out * hq_ratio(alg.x_mono(i), di)
    return out


def vertex_fp(alg: CoulombAlgebra, p: FixedPoint, tau: Descendent | Scalar,
              order: int) -> QSeries:
    """Degreewise vertex series at a fixed point of an abelian model."""
    insertion = tau.as_scalar() if isinstance(tau, Descendent) else tau
    images = restriction_images(alg, p)
    degrees = enumerate_degrees(alg.eff(), alg.data.theta, order)

    def coeff(d):
        weight = matter_kernel(alg, d) * shift_s_by_degree(insertion, alg.table, d)
        return evaluate_at_point(alg, images, weight)

    values = _ordered_map(coeff, degrees)
    coeffs = {d: v for d, v in zip(degrees, values) if not v.is_zero()}
    return QSeries(order=order, coeffs=coeffs)


def whittaker_function(alg: CoulombAlgebra, p: FixedPoint, tau: Descendent | Scalar,
                       order: int) -> QSeries:
    """The same series through the module pairing; the independent second path."""
    insertion = tau.as_scalar() if isinstance(tau, Descendent) else tau
    module = VermaModule(alg, p)
    w = module.whittaker_vector(order)
    tw = module.act(alg.cartan(insertion), w)
    table = alg.table
    coeffs = {}
    for d, u in w.terms.items():
        v = tw.terms.get(d)
        if v is None:
            continue
        value = u * v * module.norm(d)
        stripped = _strip_kahler_power(table, value, d)
        if not stripped.is_zero():
            coeffs[d] = stripped
    return QSeries(order=order, coeffs=coeffs)


def _strip_kahler_power(table, value: Scalar, d) -> Scalar:
    """Remove the expected Q^d factor; every Q half-power must be even."""
    images = identity_images(table.width)
    unit = table.unit()
    for j in range(table.k):
        images[table.qvar(j)] = unit
    expected = {table.qvar(j): 2 * dj for j, dj in enumerate(d) if dj}
    pre = value.pre
    for j in range(table.k):
        idx = table.qvar(j)
        if pre[idx] != expected.get(idx, 0):
            raise AssertionError("Kahler power of coefficient at %r is not Q^%r" % (d, d))
    for poly in (value.num, value.gden) if value.gden is not None else (value.num,):
        for m in poly.terms:
            for j in range(table.k):
                if m[table.qvar(j)]:
                    raise AssertionError("stray Kahler variable inside coefficient at %r" % (d,))
    for g in value.atoms:
        for j in range(table.k):
            if g[table.qvar(j)]:
                raise AssertionError("stray Kahler variable inside denominator at %r" % (d,))
    return value.subs(images, table.width)


# ---------------------------------------------------------------------------
# q-difference checks
# ---------------------------------------------------------------------------

def _restricted_x(alg: CoulombAlgebra, images, i: int) -> tuple:
    return mono_subs(alg.x_mono(i), images)


def _diag_poch(width: int, y: tuple, m: int, base_qinv: bool, hbar: bool) -> Scalar:
    """Finite operator eigenvalue: (h^? y; q^{+-1})_m as an explicit product."""
    out = Poly.one(width)
    for t in range(m):
        arg = list(q_shifted(y, -t if base_qinv else t))
        if hbar:
            arg[1] += 2
        out = out * Poly.from_terms(width, [((0,) * width, 1), (tuple(arg), -1)])
    return Scalar(width, out)


@dataclass
class QdeReport:
    circuit: tuple
    passed: bool
    residuals: dict


def qde_check(alg: CoulombAlgebra, p: FixedPoint, tau: Descendent | Scalar,
              circuit, order: int) -> QdeReport:
    """Apply the annihilating operator of one circuit to the vertex series.

    The shift operator attached to a matter row acts on the degree-d
    coefficient by the eigenvalue q^{<chi_i, d>} times the restriction of
    the row monomial, matching the convention in which the operator also
    shifts the row monomial.  Annihilation holds for insertions free of the
    gauge variables; a decorated series picks up a conjugated relation and
    the report comes back failed, which is the honest answer.
    """
    c = tuple(circuit)
    series = vertex_fp(alg, p, tau, order)
    images = restriction_images(alg, p)
    table = alg.table
    w = table.width
    cs = [alg.data.pairing(i, c) for i in range(alg.data.n)]
    xs = [_restricted_x(alg, images, i) for i in range(alg.data.n)]
    sign = sign_kernel(sum(cs), w)

    def term1_eigen(d):
        out = Scalar.one(w)
        for i, ci in enumerate(cs):
            y = q_shifted(xs[i], alg.data.pairing(i, d))
            if ci > 0:
                out = out * _diag_poch(w, y, ci, base_qinv=True, hbar=False)
            elif ci < 0:
                out = out * _diag_poch(w, y, -ci, base_qinv=False, hbar=True)
        return out

    def term2_eigen(d):
        out = Scalar.one(w)
        for i, ci in enumerate(cs):
            y = q_shifted(xs[i], alg.data.pairing(i, d))
            if ci > 0:
                out = out * _diag_poch(w, y, ci, base_qinv=False, hbar=True)
            elif ci < 0:
                out = out * _diag_poch(w, y, -ci, base_qinv=True, hbar=False)
        return out

    eff = alg.eff()
    degrees = set(enumerate_degrees(eff, alg.data.theta, order))
    degrees |= {tuple(x + y for x, y in zip(d, c))
                for d in degrees
                if pair(alg.data.theta, d) + pair(alg.data.theta, c) <= order}
    residuals = {}
    passed = True
    for d in sorted(degrees, key=lambda dd: (pair(alg.data.theta, dd), dd)):
        if pair(alg.data.theta, d) > order:
            continue
        vd = series.coefficient(d, w)
        dmc = tuple(x - y for x, y in zip(d, c))
        vdc = series.coefficient(dmc, w)
        res = term1_eigen(d) * vd - sign * term2_eigen(dmc) * vdc
        if not res.is_zero():
            passed = False
            residuals[d] = res
        else:
            residuals[d] = Scalar.zero(w)
    return QdeReport(circuit=c, passed=passed, residuals=residuals)


def kaehler_relation_check(alg: CoulombAlgebra, p: FixedPoint, tau: Descendent | Scalar,
                           circuit, order: int) -> bool:
    """Multiplying by one Kahler monomial equals conjugating the insertion."""
    c = tuple(circuit)
    insertion = tau.as_scalar() if isinstance(tau, Descendent) else tau
    nc = tuple(-x for x in c)
    conjugated = alg.mul(alg.mul(alg.mixed_generator(c), alg.cartan(insertion)),
                         alg.mixed_generator(nc)).scalar_part()
    lhs = vertex_fp(alg, p, conjugated, order)
    rhs = vertex_fp(alg, p, insertion, order)
    w = alg.table.width
    for d in enumerate_degrees(alg.eff(), alg.data.theta, order):
        dmc = tuple(x - y for x, y in zip(d, c))
        if not (lhs.coefficient(d, w) == rhs.coefficient(dmc, w)):
            return False
    return True


# ---------------------------------------------------------------------------
# block models via the abelianized series
# ---------------------------------------------------------------------------

def vertex_fp_nonab(alg: CoulombAlgebra, ptilde: FixedPoint, tau: Descendent | Scalar,
                    order: int) -> QSeries:
    """Vertex series of a block model as a Weyl-collapsed abelianized sum.

    ``ptilde`` is a fixed point of the underlying abelian model lifting an
    isolated fixed point; the flavor specialization recorded in the model
    collapses the big flavor torus onto the acting one, and the degree keys
    record only the per-block total.
    """
    insertion = tau.as_scalar() if isinstance(tau, Descendent) else tau
    images = restriction_images(alg, ptilde, specialize=True)
    slices = alg.data.block_slices()
    roots = alg.roots()
    degrees = enumerate_degrees(alg.eff(), alg.data.theta, order)

    def coeff(d):
        weight = matter_kernel(alg, d)
        for root in roots:
            m = alg.root_pairing(root, d)
            if m:
                weight = weight * hq_ratio_inv(alg.root_mono(root), m)
        weight = weight * shift_s_by_degree(insertion, alg.table, d)
        return evaluate_at_point(alg, images, weight)

    values = _ordered_map(coeff, degrees)
    coeffs = {}
    for d, value in zip(degrees, values):
        if value.is_zero():
            continue
        dbar = tuple(sum(d[a:b]) for a, b in slices)
        coeffs[dbar] = coeffs[dbar] + value if dbar in coeffs else value
    return QSeries(order=order, coeffs={d: f for d, f in coeffs.items() if not f.is_zero()})
