"""The convolution algebra on cocharacter generators, in left-coefficient normal form.

An :class:`AlgebraElement` is a finite map from degrees d in Z^k to scalar
coefficients, standing for sum_d f_d(a, s, q, h) * r_d with every
coefficient on the LEFT of its generator.  Moving a generator past a gauge
variable costs a q-shift:

    r_d s_j = q^{-d_j} s_j r_d,

and the product of two generators is a single generator scaled by a
structure constant built from Pochhammer kernel factors; the constant
depends on a polarization (a subset of the matter rows), the default being
the canonical one containing every row.

Mixed generators rescale r_d by an explicit kernel coefficient depending on
which side of the effective cone d lies; products of mixed generators inside
the cone are degreewise trivial, which is what the Verma and vertex layers
are built on.  Structure constants are memoized per (c, d, polarization);
cached values are immutable, so concurrent identical insertions are
harmless.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .exactring import (Scalar, VariableTable, identity_images,
                        shift_s_by_degree)
from .hypertoric import GaugeData, eff_cone, mixed_polarization
from .pochhammer import hq_ratio, hq_ratio_inv, q_shifted


def epsilon(c: int) -> int:
    return (c > 0) - (c < 0)


def delta(c: int, d: int) -> int:
    if c * d < 0:
        return min(abs(c), abs(d))
    return 0


class AlgebraElement:
    """Finite left-normal-form combination sum_d f_d * r_d."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms: dict):
        self.algebra = algebra
        self.terms = {d: f for d, f in terms.items() if not f.is_zero()}

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        terms = dict(self.terms)
        for d, f in other.terms.items():
            terms[d] = terms[d] + f if d in terms else f
        return AlgebraElement(self.algebra, terms)

    def __neg__(self):
        return AlgebraElement(self.algebra, {d: -f for d, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.algebra.mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        zero = Scalar.zero(self.algebra.table.width)
        return all(self.terms.get(d, zero) == other.terms.get(d, zero) for d in keys)

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def scalar_part(self) -> Scalar:
        """Coefficient of r_0 (the element must be concentrated in degree 0)."""
        zero = (0,) * self.algebra.data.k
        extra = [d for d in self.terms if d != zero]
        if extra:
            raise ValueError("element is not a Cartan scalar; degrees %r present" % extra)
        return self.terms.get(zero, Scalar.zero(self.algebra.table.width))

    def __repr__(self):
        return "AlgebraElement(%r)" % sorted(self.terms)


class ModuleElement:
    """Finite combination sum_c f_c * t_c of the right-module basis."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms: dict):
        self.algebra = algebra
        self.terms = {c: f for c, f in terms.items() if not f.is_zero()}

    def __add__(self, other):
        terms = dict(self.terms)
        for d, f in other.terms.items():
            terms[d] = terms[d] + f if d in terms else f
        return ModuleElement(self.algebra, terms)

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        zero = Scalar.zero(self.algebra.table.width)
        return all(self.terms.get(d, zero) == other.terms.get(d, zero) for d in keys)

    __hash__ = None


class CoulombAlgebra:
    """Model-bound algebra: structure constants, mixed generators, module action."""

    def __init__(self, data: GaugeData):
        self.data = data
        self.table: VariableTable = data.table()
        self.canonical_pol = frozenset(range(data.n))
        self._sc_cache = {}
        self._mixed_cache = {}
        self._mixed_inv_cache = {}
        self._eff = None
        self._x = [self.table.x_mono(i, data.chi[i]) for i in range(data.n)]

    # -- basic builders -------------------------------------------------

    def eff(self):
        if self._eff is None:
            self._eff = eff_cone(self.data)
        return self._eff

    def zero_degree(self):
        return (0,) * self.data.k

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, {self.zero_degree(): Scalar.one(self.table.width)})

    def r(self, d, coeff: Scalar | None = None) -> AlgebraElement:
        d = tuple(d)
        return AlgebraElement(self, {d: coeff if coeff is not None else Scalar.one(self.table.width)})

    def cartan(self, f: Scalar) -> AlgebraElement:
        return AlgebraElement(self, {self.zero_degree(): f})

    def t(self, c, coeff: Scalar | None = None) -> ModuleElement:
        c = tuple(c)
        return ModuleElement(self, {c: coeff if coeff is not None else Scalar.one(self.table.width)})

    def x_mono(self, i: int):
        return self._x[i]

    # -- structure constants ---------------------------------------------

    def structure_constant(self, c, d, pol: frozenset | None = None) -> Scalar:
        """The scalar gamma with r_c(Pol) r_d(Pol) = gamma r_{c+d}(Pol)."""
        pol = self.canonical_pol if pol is None else frozenset(pol)
        key = (tuple(c), tuple(d), pol)
        got = self._sc_cache.get(key)
        if got is not None:
            return got
        out = Scalar.one(self.table.width)
        for i in range(self.data.n):
            ci = self.data.pairing(i, c)
            di = self.data.pairing(i, d)
            length = epsilon(ci) * delta(ci, di)
            if length == 0:
                continue
            y = q_shifted(self._x[i], -ci)
            if (i in pol) == (epsilon(ci) > 0):
                factor = hq_ratio_inv(y, length)
            else:
                factor = hq_ratio(y, length)
            out = out * factor
        self._sc_cache[key] = out
        return out

    def shift_coefficient(self, f: Scalar, c) -> Scalar:
        """Move a coefficient across r_c: every s_j picks up q^{-c_j}."""
        return shift_s_by_degree(f, self.table, [-cj for cj in c])

    def mul(self, first: AlgebraElement, second: AlgebraElement,
            pol: frozenset | None = None) -> AlgebraElement:
        terms = {}
        for c, f in first.terms.items():
            for d, g in second.terms.items():
                coeff = f * self.shift_coefficient(g, c) * self.structure_constant(c, d, pol)
                key = tuple(x + y for x, y in zip(c, d))
                terms[key] = terms[key] + coeff if key in terms else coeff
        return AlgebraElement(self, terms)

    def tau(self, a: AlgebraElement) -> AlgebraElement:
        """Anti-automorphism fixing the Cartan and sending r_d to r_{-d}."""
        terms = {}
        for d, f in a.terms.items():
            nd = tuple(-x for x in d)
            coeff = shift_s_by_degree(f, self.table, d)
            terms[nd] = terms[nd] + coeff if nd in terms else coeff
        return AlgebraElement(self, terms)

    # -- mixed generators --------------------------------------------------

    def xi_phi_coefficient(self, d, pol: frozenset) -> Scalar:
        """Left coefficient of the polarization-change image of r_d(Pol)."""
        out = Scalar.one(self.table.width)
        for i in range(self.data.n):
            if i in pol:
                continue
            di = self.data.pairing(i, d)
            if di == 0:
                continue
            if di > 0:
                out = out * hq_ratio_inv(self._x[i], -di)
            else:
                out = out * hq_ratio(self._x[i], -di)
        return out

    def xi_phi_generator(self, d, pol: frozenset) -> AlgebraElement:
        return self.r(d, self.xi_phi_coefficient(d, pol))

    def mixed_coefficient(self, d) -> Scalar:
        """Left coefficient of the mixed generator at degree d."""
        d = tuple(d)
        got = self._mixed_cache.get(d)
        if got is not None:
            return got
        eff = self.eff()
        if eff.contains(d):
            pol = mixed_polarization(self.data, d)
        elif eff.contains(tuple(-x for x in d)):
            pol = frozenset(i for i in range(self.data.n) if self.data.pairing(i, d) <= 0)
        else:
            pol = self.canonical_pol
        out = self.xi_phi_coefficient(d, pol)
        self._mixed_cache[d] = out
        return out

    def mixed_coefficient_inv(self, d) -> Scalar:
        d = tuple(d)
        got = self._mixed_inv_cache.get(d)
        if got is None:
            got = self.mixed_coefficient(d).inv()
            self._mixed_inv_cache[d] = got
        return got

    def mixed_generator(self, d) -> AlgebraElement:
        d = tuple(d)
        return self.r(d, self.mixed_coefficient(d))

    # -- right module -------------------------------------------------------

    def module_factor(self, c, d, pol: frozenset | None = None) -> Scalar:
        """Scalar with t_c(Pol) r_d(Pol) = factor * t_{c+d}(Pol)."""
        pol = self.canonical_pol if pol is None else frozenset(pol)
        out = Scalar.one(self.table.width)
        for i in range(self.data.n):
            di = self.data.pairing(i, d)
            if di == 0:
                continue
            if (di < 0) != (i in pol):
                continue
            ci = self.data.pairing(i, c)
            y = q_shifted(self._x[i], -ci)
            out = out * hq_ratio_inv(y, -di)
        return out

    def module_act(self, t: ModuleElement, a: AlgebraElement,
                   pol: frozenset | None = None) -> ModuleElement:
        terms = {}
        for c, g in t.terms.items():
            for d, f in a.terms.items():
                coeff = g * self.shift_coefficient(f, c) * self.module_factor(c, d, pol)
                key = tuple(x + y for x, y in zip(c, d))
                terms[key] = terms[key] + coeff if key in terms else coeff
        return ModuleElement(self, terms)

    # -- quantum Hamiltonian reduction oracle ---------------------------------

    def abelian_point_algebra(self) -> "CoulombAlgebra":
        """The rank-n model where every row acts by its own coordinate."""
        n = self.data.n
        chi = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
        return CoulombAlgebra(GaugeData.create(chi, (1,) * n))

    def abelian_point_lift(self, d, ab: "CoulombAlgebra | None" = None) -> AlgebraElement:
        """The generator word in the rank-n model whose image is r_d."""
        ab = ab or self.abelian_point_algebra()
        word = ab.one()
        for i in range(self.data.n):
            di = self.data.pairing(i, d)
            if di > 0:
                b = tuple(1 if j == i else 0 for j in range(self.data.n))
                for _ in range(di):
                    word = ab.mul(word, ab.r(b))
        for i in range(self.data.n):
            di = self.data.pairing(i, d)
            if di < 0:
                b = tuple(-1 if j == i else 0 for j in range(self.data.n))
                for _ in range(-di):
                    word = ab.mul(word, ab.r(b))
        return word

    def project_lift_scalar(self, f: Scalar, ab: "CoulombAlgebra") -> Scalar:
        """Send the lift's gauge variables to s^{chi_i} (the reduction map)."""
        images = identity_images(ab.table.width)
        for i in range(self.data.n):
            mono = [0] * self.table.width
            for j, cij in enumerate(self.data.chi[i]):
                mono[self.table.s(j)] = cij
            images[ab.table.s(i)] = tuple(mono)
        for idx in range(ab.table.width):
            if idx < 2:
                images[idx] = self.table.mono({idx: 1})
            elif idx < 2 + self.data.n and idx >= 2:
                images[idx] = self.table.mono({self.table.a(idx - 2): 1})
            elif idx >= 2 + 2 * self.data.n:
                images[idx] = self.table.unit()
        return f.subs(images, self.table.width)

    # -- Weyl machinery -------------------------------------------------------

    def weyl_elements(self):
        """All block permutations, as index tuples acting on degree vectors."""
        slices = self.data.block_slices()
        pools = [itertools.permutations(range(a, b)) for a, b in slices]
        out = []
        for combo in itertools.product(*pools):
            perm = []
            for part in combo:
                perm.extend(part)
            out.append(tuple(perm))
        return out

    def roots(self):
        """Coordinate-difference roots within blocks (empty for trivial blocks)."""
        out = []
        for a, b in self.data.block_slices():
            for u in range(a, b):
                for v in range(a, b):
                    if u != v:
                        out.append((u, v))
        return out

    def root_mono(self, root):
        u, v = root
        return self.table.mono({self.table.s(u): 1, self.table.s(v): -1})

    @staticmethod
    def root_pairing(root, d):
        u, v = root
        return d[u] - d[v]

    def weyl_on_degree(self, w, d):
        """Permute a degree vector: entry j comes from position w[j]."""
        inv = [0] * len(w)
        for pos, src in enumerate(w):
            inv[src] = pos
        return tuple(d[inv[j]] for j in range(len(w)))

    def weyl_on_scalar(self, w, f: Scalar) -> Scalar:
        images = identity_images(self.table.width)
        for j, src in enumerate(w):
            images[self.table.s(src)] = self.table.mono({self.table.s(j): 1})
            images[self.table.qvar(src)] = self.table.mono({self.table.qvar(j): 1})
        return f.subs(images, self.table.width)

    def weyl_on_element(self, w, a: AlgebraElement) -> AlgebraElement:
        terms = {}
        for d, f in a.terms.items():
            nd = self.weyl_on_degree(w, d)
            coeff = self.weyl_on_scalar(w, f)
            terms[nd] = terms[nd] + coeff if nd in terms else coeff
        return AlgebraElement(self, terms)

    def is_dominant(self, d) -> bool:
        for a, b in self.data.block_slices():
            for j in range(a, b - 1):
                if d[j] < d[j + 1]:
                    return False
        return True

    def symmetrized_generator(self, d) -> AlgebraElement:
        """Weyl-averaged mixed generator weighted by the orbit normal kernel."""
        if self.data.blocks is None:
            raise ValueError("no block structure")
        d = tuple(d)
        if not self.is_dominant(d):
            raise ValueError("degree %r is not dominant for the blocks" % (d,))
        ws = self.weyl_elements()
        total = AlgebraElement(self, {})
        inv_order = Fraction(1, len(ws))
        for w in ws:
            wd = self.weyl_on_degree(w, d)
            coeff = Scalar.one(self.table.width).scale(inv_order)
            for root in self.roots():
                m = self.root_pairing(root, wd)
                if m > 0:
                    coeff = coeff * hq_ratio_inv(self.root_mono(root), -m)
            total = total + self.mul(self.cartan(coeff), self.mixed_generator(wd))
        return total
