"""Exact arithmetic layer: Laurent polynomials and factored rational scalars.

Values live in a Laurent ring whose variables are, in canonical order,

    q^(1/2) < h^(1/2) < a_1 < ... < a_n < s_1 < ... < s_k < Q_1^(1/2) < ... < Q_k^(1/2)

where h denotes the symplectic weight hbar.  Half-integer powers of q, h and
Q are encoded as integer exponents on the square-root base variables, so an
exponent vector is always an integer tuple; printed output rewrites even
exponents as integer powers of q, h, Q.

A :class:`Scalar` is a rational function kept in the factored shape

    prefactor * numerator / ( prod_t (1 - g_t)^{m_t} * general_denominator )

where the prefactor is a single monomial, the numerator is an expanded
Laurent polynomial with ``Fraction`` coefficients, each denominator atom
``(1 - g_t)`` is recorded by its monomial ``g_t != 1`` with a multiplicity,
and the optional general denominator polynomial only appears when inverting
a numerator that does not split into monomial times atoms.

No multivariate gcd is ever computed.  Scalars are reduced by monomial
content extraction and by cancelling atoms against the numerator through
trial exact division; equality is decided by cross-multiplication.  All
values are immutable after construction and safe to share between workers.
"""

from __future__ import annotations

import heapq
import random
from fractions import Fraction


Q_HALF = 0
HBAR_HALF = 1

_SCREEN_CACHE: dict = {}


def _screen_weights(width: int):
    got = _SCREEN_CACHE.get(width)
    if got is None:
        rng = random.Random(0x5EED ^ width)
        got = tuple([rng.randrange(1, 1 << 30) for _ in range(width)] for _ in range(2))
        _SCREEN_CACHE[width] = got
    return got


def _fold_divisible(terms: dict, g: tuple, weights) -> bool | None:
    """Divisibility of the univariate image by (1 - z^T); None if degenerate."""
    t_val = sum(w * e for w, e in zip(weights, g))
    if t_val == 0:
        return None
    buckets = {}
    for m, c in terms.items():
        lam = sum(w * e for w, e in zip(weights, m)) % t_val
        buckets[lam] = buckets.get(lam, 0) + c
    return all(v == 0 for v in buckets.values())


def likely_divisible(terms: dict, g: tuple, width: int) -> bool:
    """Cheap necessary test for (1 - g) dividing the polynomial.

    Maps every variable to a power of one variable z; divisibility survives
    the map, so a failed fold rules the division out with no false negative.
    """
    for weights in _screen_weights(width):
        res = _fold_divisible(terms, g, weights)
        if res is False:
            return False
    return True


class PoleEvaluationError(ArithmeticError):
    """A substitution made a denominator factor vanish with no cancellation."""


class VariableTable:
    """Canonical, totally ordered variable layout for a rank-k model with n matter rows."""

    __slots__ = ("n", "k", "width")

    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        self.width = 2 + n + 2 * k

    def a(self, i: int) -> int:
        """Index of the flavor variable a_{i+1} (0-based i)."""
        return 2 + i

    def s(self, j: int) -> int:
        """Index of the gauge variable s_{j+1} (0-based j)."""
        return 2 + self.n + j

    def qvar(self, j: int) -> int:
        """Index of the Kahler half-power variable Q_{j+1}^(1/2) (0-based j)."""
        return 2 + self.n + self.k + j

    def unit(self) -> tuple:
        return (0,) * self.width

    def mono(self, entries: dict) -> tuple:
        m = [0] * self.width
        for idx, e in entries.items():
            m[idx] = e
        return tuple(m)

    def x_mono(self, i: int, chi_row) -> tuple:
        """The monomial a_i * s^{chi_i} attached to the i-th matter row."""
        m = [0] * self.width
        m[self.a(i)] = 1
        for j, c in enumerate(chi_row):
            m[self.s(j)] = c
        return tuple(m)

    def var_label(self, idx: int) -> str:
        if idx == Q_HALF:
            return "q"
        if idx == HBAR_HALF:
            return "h"
        if idx < 2 + self.n:
            return "a%d" % (idx - 1)
        if idx < 2 + self.n + self.k:
            return "s%d" % (idx - 1 - self.n)
        return "Q%d" % (idx - 1 - self.n - self.k)

    def is_half_variable(self, idx: int) -> bool:
        return idx < 2 or idx >= 2 + self.n + self.k


def mono_mul(m1: tuple, m2: tuple) -> tuple:
    return tuple(a + b for a, b in zip(m1, m2))


def mono_div(m1: tuple, m2: tuple) -> tuple:
    return tuple(a - b for a, b in zip(m1, m2))


def mono_inv(m: tuple) -> tuple:
    return tuple(-a for a in m)


def mono_pow(m: tuple, e: int) -> tuple:
    return tuple(a * e for a in m)


def mono_is_unit(m: tuple) -> bool:
    return not any(m)


def mono_subs(m: tuple, images) -> tuple:
    """Image of a monomial under variable -> monomial images (a ring map)."""
    out = None
    for idx, e in enumerate(m):
        if not e:
            continue
        img = images[idx]
        if out is None:
            out = [x * e for x in img]
        else:
            for t, x in enumerate(img):
                out[t] += x * e
    if out is None:
        w = len(images[0]) if images else 0
        return (0,) * w
    return tuple(out)


def _grkey(m: tuple):
    return (sum(m), m)


def identity_images(width: int):
    """Variable images of the identity substitution."""
    return [tuple(1 if t == i else 0 for t in range(width)) for i in range(width)]


class Poly:
    """Sparse Laurent polynomial: exponent tuple -> nonzero Fraction."""

    __slots__ = ("w", "terms")

    def __init__(self, width: int, terms: dict | None = None):
        self.w = width
        self.terms = terms or {}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, width: int) -> "Poly":
        return cls(width, {})

    @classmethod
    def one(cls, width: int) -> "Poly":
        return cls(width, {(0,) * width: Fraction(1)})

    @classmethod
    def monomial(cls, m: tuple, coeff=1) -> "Poly":
        c = Fraction(coeff)
        if c == 0:
            return cls.zero(len(m))
        return cls(len(m), {m: c})

    @classmethod
    def from_terms(cls, width: int, items) -> "Poly":
        terms = {}
        for m, c in items:
            c = Fraction(c)
            if c == 0:
                continue
            acc = terms.get(m)
            nc = c if acc is None else acc + c
            if nc:
                terms[m] = nc
            elif acc is not None:
                del terms[m]
        return cls(width, terms)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other):
        return isinstance(other, Poly) and self.w == other.w and self.terms == other.terms

    __hash__ = None

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m)
            nc = c if acc is None else acc + c
            if nc:
                terms[m] = nc
            elif acc is not None:
                del terms[m]
        return Poly(self.w, terms)

    def __neg__(self) -> "Poly":
        return Poly(self.w, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.w)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                acc = terms.get(m)
                nc = c if acc is None else acc + c
                if nc:
                    terms[m] = nc
                elif acc is not None:
                    del terms[m]
        return Poly(self.w, terms)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.one(self.w)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly.zero(self.w)
        return Poly(self.w, {m: cc * c for m, cc in self.terms.items()})

    def mul_mono(self, m: tuple) -> "Poly":
        if mono_is_unit(m):
            return self
        return Poly(self.w, {mono_mul(t, m): c for t, c in self.terms.items()})

    # -- structure -----------------------------------------------------

    def content_mono(self) -> tuple:
        """Componentwise minimum exponent over all terms (unit for zero)."""
        if not self.terms:
            return (0,) * self.w
        it = iter(self.terms)
        lo = list(next(it))
        for m in it:
            for t, e in enumerate(m):
                if e < lo[t]:
                    lo[t] = e
        return tuple(lo)

    def vars_used(self):
        used = set()
        for m in self.terms:
            for idx, e in enumerate(m):
                if e:
                    used.add(idx)
        return used

    def subs(self, images, target_width: int) -> "Poly":
        terms = {}
        for m, c in self.terms.items():
            im = mono_subs(m, images) if any(m) else (0,) * target_width
            acc = terms.get(im)
            nc = c if acc is None else acc + c
            if nc:
                terms[im] = nc
            elif acc is not None:
                del terms[im]
        return Poly(target_width, terms)

    def exact_div(self, d: "Poly"):
        """Exact quotient self/d as a Laurent polynomial, or None.

        Both operands are shifted to honest polynomials by content
        extraction; the greedy leading-term loop then terminates because
        graded-lex is a well order on nonnegative exponent tuples.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return Poly.zero(self.w)
        cf = self.content_mono()
        cd = d.content_mono()
        fterms = {mono_div(m, cf): c for m, c in self.terms.items()}
        dterms = {mono_div(m, cd): c for m, c in d.terms.items()}
        lt_d = max(dterms, key=_grkey)
        c_d = dterms[lt_d]
        d_rest = [(m, c) for m, c in dterms.items() if m != lt_d]
        quot = {}
        rem = fterms
        heap = [(-sum(m), tuple(-e for e in m)) for m in rem]
        heapq.heapify(heap)
        while heap:
            ng, nm = heapq.heappop(heap)
            lt_r = tuple(-e for e in nm)
            coeff = rem.get(lt_r)
            if not coeff:
                continue
            qm = mono_div(lt_r, lt_d)
            if any(e < 0 for e in qm):
                return None
            qc = coeff / c_d
            quot[qm] = qc
            del rem[lt_r]
            for m, c in d_rest:
                mm = mono_mul(qm, m)
                acc = rem.get(mm)
                if acc is None:
                    rem[mm] = -qc * c
                    heapq.heappush(heap, (-sum(mm), tuple(-e for e in mm)))
                else:
                    nc = acc - qc * c
                    if nc:
                        rem[mm] = nc
                    else:
                        del rem[mm]
        if rem:
            return None
        shift = mono_div(cf, cd)
        return Poly(self.w, {mono_mul(m, shift): c for m, c in quot.items()})

    def sorted_terms(self):
        """Terms in ascending graded-lex order (the canonical print order)."""
        return sorted(self.terms.items(), key=lambda mc: _grkey(mc[0]))

    def __repr__(self):
        return "Poly(%r)" % (self.terms,)


def one_minus(g: tuple) -> Poly:
    """The atom polynomial 1 - g."""
    w = len(g)
    if mono_is_unit(g):
        return Poly.zero(w)
    return Poly(w, {(0,) * w: Fraction(1), g: Fraction(-1)})


def _binomial_factorization(p: Poly):
    """Split p as unit_coeff * unit_mono * prod (1 - g_t)^{m_t}, or None.

    Candidate atoms are differences of term exponents against the
    graded-lex minimal term; only factors with literal coefficient pattern
    (1 - monomial) are discovered, which is exactly the shape the factored
    denominators require.
    """
    if p.is_zero():
        return None
    work = p
    atoms = {}
    for _ in range(256):
        if work.is_monomial():
            (m, c), = work.terms.items()
            return c, m, atoms
        m0 = min(work.terms, key=_grkey)
        progressed = False
        for m in sorted(work.terms, key=_grkey):
            if m == m0:
                continue
            g = mono_div(m, m0)
            if not likely_divisible(work.terms, g, work.w):
                continue
            q = work.exact_div(one_minus(g))
            if q is not None:
                atoms[g] = atoms.get(g, 0) + 1
                work = q
                progressed = True
                break
        if not progressed:
            return None
    return None


class Scalar:
    """Factored rational function; see the module docstring for the shape.

    Construction normalizes: numerator content moves to the prefactor,
    atoms equal to numerator factors cancel by trial division, and a zero
    numerator collapses the value to canonical zero.
    """

    __slots__ = ("w", "num", "pre", "atoms", "gden")

    def __init__(self, width, num: Poly, pre: tuple | None = None,
                 atoms: dict | None = None, gden: Poly | None = None):
        self.w = width
        pre = pre if pre is not None else (0,) * width
        atoms = dict(atoms) if atoms else {}
        if num.is_zero():
            self.num = Poly.zero(width)
            self.pre = (0,) * width
            self.atoms = {}
            self.gden = None
            return
        for g in list(atoms):
            if mono_is_unit(g):
                raise ZeroDivisionError("denominator atom (1 - 1) is zero")
            if atoms[g] <= 0:
                del atoms[g]
        # cancel atoms against numerator factors (screened trial division)
        changed = True
        while changed and atoms and len(num.terms) >= 2:
            changed = False
            screens = _screen_weights(width)
            lams = [{m: sum(w * e for w, e in zip(ws, m)) for m in num.terms}
                    for ws in screens]
            for g in list(atoms):
                ok = True
                for ws, lam in zip(screens, lams):
                    t_val = sum(w * e for w, e in zip(ws, g))
                    if not t_val:
                        continue
                    buckets = {}
                    for m, c in num.terms.items():
                        r = lam[m] % t_val
                        buckets[r] = buckets.get(r, 0) + c
                    if any(buckets.values()):
                        ok = False
                        break
                if not ok:
                    continue
                q = num.exact_div(one_minus(g))
                if q is None:
                    continue
                num = q
                atoms[g] -= 1
                if not atoms[g]:
                    del atoms[g]
                changed = True
                break
        if gden is not None:
            if gden.is_zero():
                raise ZeroDivisionError("zero general denominator")
            q = num.exact_div(gden)
            if q is not None:
                num = q
                gden = None
            elif gden.is_monomial():
                (m, c), = gden.terms.items()
                num = num.scale(Fraction(1) / c)
                pre = mono_div(pre, m)
                gden = None
        cm = num.content_mono()
        if any(cm):
            num = num.mul_mono(mono_inv(cm))
            pre = mono_mul(pre, cm)
        if gden is not None:
            cg = gden.content_mono()
            if any(cg):
                gden = gden.mul_mono(mono_inv(cg))
                pre = mono_div(pre, cg)
        self.num = num
        self.pre = pre
        self.atoms = atoms
        self.gden = gden

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, width: int) -> "Scalar":
        return cls(width, Poly.zero(width))

    @classmethod
    def one(cls, width: int) -> "Scalar":
        return cls(width, Poly.one(width))

    @classmethod
    def from_poly(cls, p: Poly) -> "Scalar":
        return cls(p.w, p)

    @classmethod
    def monomial(cls, m: tuple, coeff=1) -> "Scalar":
        return cls(len(m), Poly.monomial((0,) * len(m), coeff), pre=m)

    @classmethod
    def atom_inverse(cls, g: tuple, mult: int = 1) -> "Scalar":
        """1 / (1 - g)^mult."""
        return cls(len(g), Poly.one(len(g)), atoms={g: mult})

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self == Scalar.one(self.w)

    def numerator_poly(self) -> Poly:
        """Prefactor times numerator, expanded."""
        return self.num.mul_mono(self.pre)

    def expand_denominator(self) -> Poly:
        out = Poly.one(self.w)
        for g, mult in self.atoms.items():
            out = out * (one_minus(g) ** mult)
        if self.gden is not None:
            out = out * self.gden
        return out

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.w != other.w:
            return False
        return (self.numerator_poly() * other.expand_denominator()
                == other.numerator_poly() * self.expand_denominator())

    __hash__ = None

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        atoms = dict(self.atoms)
        for g, mult in other.atoms.items():
            if atoms.get(g, 0) < mult:
                atoms[g] = mult
        gden = None
        extra_self = Poly.one(self.w)
        extra_other = Poly.one(self.w)
        if self.gden is None and other.gden is None:
            pass
        elif self.gden is not None and other.gden is not None and self.gden == other.gden:
            gden = self.gden
        else:
            if self.gden is not None:
                extra_other = extra_other * self.gden
            if other.gden is not None:
                extra_self = extra_self * other.gden
            gden = None if (self.gden is None and other.gden is None) else \
                (self.gden or Poly.one(self.w)) * (other.gden or Poly.one(self.w))
        for g, mult in atoms.items():
            ds = mult - self.atoms.get(g, 0)
            do = mult - other.atoms.get(g, 0)
            if ds:
                extra_self = extra_self * (one_minus(g) ** ds)
            if do:
                extra_other = extra_other * (one_minus(g) ** do)
        num = (self.numerator_poly() * extra_self) + (other.numerator_poly() * extra_other)
        return Scalar(self.w, num, atoms=atoms, gden=gden)

    def __neg__(self) -> "Scalar":
        return Scalar(self.w, -self.num, pre=self.pre, atoms=self.atoms, gden=self.gden)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __mul__(self, other: "Scalar") -> "Scalar":
        if self.is_zero() or other.is_zero():
            return Scalar.zero(self.w)
        atoms = dict(self.atoms)
        for g, mult in other.atoms.items():
            atoms[g] = atoms.get(g, 0) + mult
        gden = None
        if self.gden is not None or other.gden is not None:
            gden = (self.gden or Poly.one(self.w)) * (other.gden or Poly.one(self.w))
        return Scalar(self.w, self.num * other.num,
                      pre=mono_mul(self.pre, other.pre), atoms=atoms, gden=gden)

    def times_poly(self, p: Poly) -> "Scalar":
        return Scalar(self.w, self.num * p, pre=self.pre, atoms=self.atoms, gden=self.gden)

    def scale(self, c) -> "Scalar":
        return Scalar(self.w, self.num.scale(c), pre=self.pre, atoms=self.atoms, gden=self.gden)

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        fact = _binomial_factorization(self.num)
        denom = self.expand_denominator()
        if fact is not None:
            coeff, umono, atoms = fact
            return Scalar(self.w, denom.scale(Fraction(1) / coeff),
                          pre=mono_inv(mono_mul(self.pre, umono)), atoms=atoms)
        return Scalar(self.w, denom, pre=mono_inv(self.pre), gden=self.num)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inv()

    def __pow__(self, e: int) -> "Scalar":
        if e < 0:
            return self.inv() ** (-e)
        out = Scalar.one(self.w)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- substitution ------------------------------------------------------

    def subs(self, images, target_width: int) -> "Scalar":
        """Apply the ring map sending each variable to a monomial.

        Atoms whose image monomial collapses to 1 must cancel against the
        numerator (trial exact division before substituting); otherwise a
        :class:`PoleEvaluationError` is raised.
        """
        num = self.num
        new_atoms = {}
        for g, mult in self.atoms.items():
            gm = mono_subs(g, images)
            if mono_is_unit(gm):
                factor = one_minus(g)
                for _ in range(mult):
                    q = num.exact_div(factor)
                    if q is None:
                        raise PoleEvaluationError(
                            "pole at evaluation point: atom (1 - %r) vanishes" % (g,))
                    num = q
            else:
                new_atoms[gm] = new_atoms.get(gm, 0) + mult
        new_num = num.subs(images, target_width)
        new_pre = mono_subs(self.pre, images) if any(self.pre) else (0,) * target_width
        new_gden = None
        if self.gden is not None:
            new_gden = self.gden.subs(images, target_width)
            if new_gden.is_zero():
                raise PoleEvaluationError("pole at evaluation point: general denominator vanishes")
        return Scalar(target_width, new_num, pre=new_pre, atoms=new_atoms, gden=new_gden)

    def q_shift(self, var_idx: int, m: int) -> "Scalar":
        """Replace the variable by q^m * itself (exponent e adds 2*m*e to q^(1/2))."""
        if m == 0:
            return self
        images = identity_images(self.w)
        img = list(images[var_idx])
        img[Q_HALF] += 2 * m
        images[var_idx] = tuple(img)
        return self.subs(images, self.w)

    def vars_used(self):
        used = self.num.vars_used()
        for idx, e in enumerate(self.pre):
            if e:
                used.add(idx)
        for g in self.atoms:
            for idx, e in enumerate(g):
                if e:
                    used.add(idx)
        if self.gden is not None:
            used |= self.gden.vars_used()
        return used

    def __repr__(self):
        return "Scalar(num=%r, pre=%r, atoms=%r, gden=%r)" % (
            self.num.terms, self.pre, self.atoms, self.gden)


def substitute_monomials(x: Scalar, table: VariableTable, s_images: dict) -> Scalar:
    """Homomorphic image replacing each gauge variable s_j by a monomial.

    ``s_images`` maps 0-based gauge indices to monomial tuples of the same
    table; every s_j occurring in x must be covered.
    """
    used = x.vars_used()
    for j in range(table.k):
        if table.s(j) in used and j not in s_images:
            raise ValueError("substitution does not cover s%d" % (j + 1))
    images = identity_images(table.width)
    for j, m in s_images.items():
        images[table.s(j)] = m
    return x.subs(images, table.width)


def shift_s_by_degree(x: Scalar, table: VariableTable, dvec) -> Scalar:
    """Shift every gauge variable: s_j -> q^{d_j} s_j."""
    if not any(dvec):
        return x
    images = identity_images(table.width)
    for j, dj in enumerate(dvec):
        if dj:
            img = list(images[table.s(j)])
            img[Q_HALF] += 2 * dj
            images[table.s(j)] = tuple(img)
    return x.subs(images, table.width)


def specialize_q1(x: Scalar, table: VariableTable) -> Scalar:
    """Set q^(1/2) -> 1 (the commutative limit of the convolution product)."""
    images = identity_images(table.width)
    images[Q_HALF] = table.unit()
    return x.subs(images, table.width)


# ---------------------------------------------------------------------------
# canonical text rendering
# ---------------------------------------------------------------------------

def _exp_str(table: VariableTable, idx: int, e: int) -> str:
    label = table.var_label(idx)
    if table.is_half_variable(idx):
        if e % 2 == 0:
            e //= 2
            if e == 1:
                return label
            return "%s^%d" % (label, e)
        sign = "-" if e < 0 else ""
        return "%s^(%s%d/2)" % (label, sign, abs(e))
    if e == 1:
        return label
    return "%s^%d" % (label, e)


def mono_str(table: VariableTable, m: tuple) -> str:
    parts = [_exp_str(table, idx, e) for idx, e in enumerate(m) if e]
    return "*".join(parts) if parts else "1"


def _term_str(table: VariableTable, m: tuple, c: Fraction) -> str:
    mstr = mono_str(table, m)
    if mstr == "1":
        return str(c)
    if c == 1:
        return mstr
    if c == -1:
        return "-" + mstr
    return "%s*%s" % (c, mstr)


def poly_str(table: VariableTable, p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for m, c in p.sorted_terms():
        t = _term_str(table, m, c)
        if not parts:
            parts.append(t)
        elif t.startswith("-"):
            parts.append("- " + t[1:])
        else:
            parts.append("+ " + t)
    return " ".join(parts)


def atom_str(table: VariableTable, g: tuple, mult: int = 1) -> str:
    body = "(1 - %s)" % mono_str(table, g)
    if mult != 1:
        body += "^%d" % mult
    return body


def scalar_str(table: VariableTable, x: Scalar) -> str:
    """Canonical deterministic rendering of a scalar."""
    if x.is_zero():
        return "0"
    if x.num.is_monomial():
        (m, c), = x.num.terms.items()
        head = _term_str(table, mono_mul(x.pre, m), c)
    else:
        parts = []
        if any(x.pre):
            parts.append(mono_str(table, x.pre))
        nstr = poly_str(table, x.num)
        parts.append("(%s)" % nstr if (" " in nstr and (x.atoms or x.gden or parts)) else nstr)
        head = " * ".join(parts)
    denom_parts = [atom_str(table, g, mult)
                   for g, mult in sorted(x.atoms.items(), key=lambda gm: _grkey(gm[0]))]
    if x.gden is not None:
        denom_parts.append("[%s]" % poly_str(table, x.gden))
    if denom_parts:
        return "%s / %s" % (head, "*".join(denom_parts))
    return head


# ---------------------------------------------------------------------------
# lossless structured rendering
# ---------------------------------------------------------------------------

def poly_structured(p: Poly):
    return [[str(c), list(m)] for m, c in p.sorted_terms()]

def poly_from_structured(width: int, data) -> Poly:
    return Poly.from_terms(width, ((tuple(m), Fraction(c)) for c, m in data))


def scalar_structured(x: Scalar):
    return {
        "pre": list(x.pre),
        "num": poly_structured(x.num),
        "atoms": [[list(g), mult]
                  for g, mult in sorted(x.atoms.items(), key=lambda gm: _grkey(gm[0]))],
        "gden": poly_structured(x.gden) if x.gden is not None else None,
    }


def scalar_from_structured(width: int, data) -> Scalar:
    return Scalar(
        width,
        poly_from_structured(width, data["num"]),
        pre=tuple(data["pre"]),
        atoms={tuple(g): mult for g, mult in data["atoms"]},
        gden=poly_from_structured(width, data["gden"]) if data.get("gden") is not None else None,
    )
