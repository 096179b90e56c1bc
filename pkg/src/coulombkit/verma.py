"""Lowest-level representation theory at a fixed point: the module with basis
indexed by the effective cone of the point, the contravariant form, and the
eigenvector generating function in half-powers of the Kahler parameters.

The action of an algebra element on a basis vector is computed through the
algebra normal form plus evaluation, never through an abstract quotient:
rewrite r_c * (mixed generator at e) as a left scalar times r_{c+e}, convert
back to the mixed generator at c+e, then evaluate the total left scalar with
the gauge variables sent to q^{(c+e)_j} times their restriction at the point.
Degrees outside the effective cone of the point contribute zero.
"""

from __future__ import annotations

from .coulomb import AlgebraElement, CoulombAlgebra
from .exactring import (PoleEvaluationError, Q_HALF, Scalar, identity_images)
from .hypertoric import FixedPoint, eff_cone_fp


class VermaVector:
    """Finite combination sum_d f_d * (mixed generator at d applied to the cyclic vector)."""

    __slots__ = ("module", "terms")

    def __init__(self, module, terms: dict):
        self.module = module
        self.terms = {d: f for d, f in terms.items() if not f.is_zero()}

    def __add__(self, other):
        terms = dict(self.terms)
        for d, f in other.terms.items():
            terms[d] = terms[d] + f if d in terms else f
        return VermaVector(self.module, terms)

    def __eq__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        zero = Scalar.zero(self.module.algebra.table.width)
        return all(self.terms.get(d, zero) == other.terms.get(d, zero) for d in keys)

    __hash__ = None

    def scale(self, f: Scalar) -> "VermaVector":
        return VermaVector(self.module, {d: g * f for d, g in self.terms.items()})

    def truncate(self, order: int) -> "VermaVector":
        theta = self.module.algebra.data.theta
        return VermaVector(self.module, {
            d: f for d, f in self.terms.items()
            if sum(t * x for t, x in zip(theta, d)) <= order})


class VermaModule:
    """The module attached to one fixed point of one model."""

    def __init__(self, algebra: CoulombAlgebra, point: FixedPoint):
        self.algebra = algebra
        self.point = point
        self.cone = eff_cone_fp(algebra.data, point)
        self._norm_cache = {}
        self._images = None

    # -- evaluation -------------------------------------------------------

    def _base_images(self):
        if self._images is None:
            table = self.algebra.table
            images = identity_images(table.width)
            for j, mono in self.point.restriction.items():
                images[table.s(j)] = mono
            self._images = images
        return self._images

    def evaluate(self, f: Scalar, shift_degree=None) -> Scalar:
        """Evaluate at the point, with s_j sent to q^{shift_j} times its restriction."""
        table = self.algebra.table
        images = list(self._base_images())
        if shift_degree is not None and any(shift_degree):
            for j, dj in enumerate(shift_degree):
                if dj:
                    img = list(images[table.s(j)])
                    img[Q_HALF] += 2 * dj
                    images[table.s(j)] = tuple(img)
        try:
            return f.subs(images, table.width)
        except PoleEvaluationError as exc:
            raise PoleEvaluationError("pole at fixed point %s: %s" % (self.point.label(), exc))

    # -- module structure ----------------------------------------------------

    def highest_weight(self) -> VermaVector:
        return VermaVector(self, {self.algebra.zero_degree(): Scalar.one(self.algebra.table.width)})

    def act(self, a: AlgebraElement, u: VermaVector) -> VermaVector:
        alg = self.algebra
        terms = {}
        for c, f in a.terms.items():
            for e, g in u.terms.items():
                target = tuple(x + y for x, y in zip(c, e))
                if not self.cone.contains(target):
                    continue
                h = f * alg.shift_coefficient(alg.mixed_coefficient(e), c)
                h = h * alg.structure_constant(c, e)
                h = h * alg.mixed_coefficient_inv(target)
                coeff = g * self.evaluate(h, shift_degree=target)
                terms[target] = terms[target] + coeff if target in terms else coeff
        return VermaVector(self, terms)

    def norm(self, d) -> Scalar:
        """The diagonal value of the contravariant form on the basis vector at d."""
        d = tuple(d)
        got = self._norm_cache.get(d)
        if got is not None:
            return got
        alg = self.algebra
        nd = tuple(-x for x in d)
        prod = alg.mul(alg.mixed_generator(nd), alg.mixed_generator(d))
        out = self.evaluate(prod.scalar_part())
        self._norm_cache[d] = out
        return out

    def contravariant_form(self, u: VermaVector, w: VermaVector) -> Scalar:
        out = Scalar.zero(self.algebra.table.width)
        for d, f in u.terms.items():
            g = w.terms.get(d)
            if g is None:
                continue
            out = out + f * g * self.norm(d)
        return out

    def whittaker_vector(self, order: int) -> VermaVector:
        """Truncated eigenvector: coefficient Q^{d/2} / norm(d) on the basis vector at d."""
        if order < 0:
            raise ValueError("order must be nonnegative")
        from .hypertoric import enumerate_degrees
        table = self.algebra.table
        terms = {}
        for d in enumerate_degrees(self.cone, self.algebra.data.theta, order):
            qmono = table.mono({table.qvar(j): dj for j, dj in enumerate(d)})
            terms[d] = Scalar.monomial(qmono) * self.norm(d).inv()
        return VermaVector(self, terms)
