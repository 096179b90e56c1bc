"""Lattice combinatorics of the character arrangement.

Everything here is exact: walls, circuits, fixed points, effective cones,
mixed polarizations, degree enumeration and restriction maps are computed
with Fraction Gaussian elimination on integer matrices; no floating point
is used anywhere.  Dimensions are desk scale (n <= 16, k <= 8).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exactring import HBAR_HALF, VariableTable


class ModelError(ValueError):
    """An integer datum violates a structural assumption."""


class ThetaOnWallError(ModelError):
    """The stability vector lies on a wall of the arrangement."""


def pair(chi_row, d) -> int:
    return sum(c * x for c, x in zip(chi_row, d))


# ---------------------------------------------------------------------------
# exact linear algebra helpers
# ---------------------------------------------------------------------------

def _rank(rows) -> int:
    mat = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def det_int(rows) -> int:
    n = len(rows)
    mat = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = Fraction(1) / mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col]:
                f = mat[r][col] * inv
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    assert det.denominator == 1
    return int(det)


def solve_square(rows, rhs):
    """Solve M x = rhs exactly (M square nonsingular, columns of M = rows arg rows)."""
    n = len(rows)
    mat = [[Fraction(x) for x in r] + [Fraction(rhs[i])] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col]), None)
        if piv is None:
            raise ModelError("singular system")
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = Fraction(1) / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        for r in range(n):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return [mat[r][n] for r in range(n)]


def inverse_unimodular(rows):
    """Integer inverse of a unimodular integer matrix."""
    n = len(rows)
    cols = []
    for t in range(n):
        e = [0] * n
        e[t] = 1
        cols.append(solve_square(rows, e))
    inv = [[cols[t][l] for t in range(n)] for l in range(n)]
    out = []
    for row in inv:
        irow = []
        for v in row:
            assert v.denominator == 1
            irow.append(int(v))
        out.append(irow)
    return out


def primitive(vec):
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    if g == 0:
        return None
    return tuple(v // g for v in vec)


def kernel_normal(rows, k):
    """Primitive generator of the 1-dim kernel of <row, .> = 0 (rank k-1 rows)."""
    if k == 1:
        return (1,)
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(k):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    if rank != k - 1:
        return None
    free = next(c for c in range(k) if c not in pivots)
    sol = [Fraction(0)] * k
    sol[free] = Fraction(1)
    for r, col in enumerate(pivots):
        sol[col] = -mat[r][free]
    denom = 1
    for v in sol:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in sol]
    return primitive(ints)


# ---------------------------------------------------------------------------
# model data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaugeData:
    """Integer model datum: weight rows chi, stability theta, optional GL blocks."""

    n: int
    k: int
    chi: tuple
    theta: tuple
    blocks: tuple | None = None
    labels: tuple | None = None
    a_specialization: dict | None = field(default=None, compare=False)

    @classmethod
    def create(cls, chi, theta, blocks=None, labels=None, a_specialization=None):
        chi = tuple(tuple(int(x) for x in row) for row in chi)
        theta = tuple(int(x) for x in theta)
        n = len(chi)
        k = len(theta)
        for i, row in enumerate(chi):
            if len(row) != k:
                raise ModelError("row chi_%d has length %d, expected %d" % (i + 1, len(row), k))
            if not any(row):
                raise ModelError("row chi_%d is zero" % (i + 1))
        if _rank(chi) != k:
            raise ModelError("chi has rank %d < %d; the gauge torus does not act with finite kernel"
                             % (_rank(chi), k))
        for subset in itertools.combinations(range(n), k):
            d = det_int([chi[i] for i in subset])
            if d != 0 and abs(d) != 1:
                raise ModelError("subset {%s} non-unimodular (det %d); model rejected as non-smooth"
                                 % (",".join(str(i + 1) for i in subset), d))
        if blocks is not None:
            blocks = tuple(int(b) for b in blocks)
            if sum(blocks) != k or any(b <= 0 for b in blocks):
                raise ModelError("blocks %r do not partition 1..%d" % (blocks, k))
            _check_block_symmetry(chi, theta, blocks)
        data = cls(n=n, k=k, chi=chi, theta=theta, blocks=blocks,
                   labels=tuple(labels) if labels else None,
                   a_specialization=dict(a_specialization) if a_specialization else None)
        circuits(data)  # raises if theta is on a wall
        return data

    def table(self) -> VariableTable:
        return VariableTable(self.n, self.k)

    def block_slices(self):
        if self.blocks is None:
            return [(j, j + 1) for j in range(self.k)]
        out = []
        start = 0
        for b in self.blocks:
            out.append((start, start + b))
            start += b
        return out

    def pairing(self, i: int, d) -> int:
        return pair(self.chi[i], d)


def _check_block_symmetry(chi, theta, blocks):
    start = 0
    rows = sorted(chi)
    for b in blocks:
        for u in range(start, start + b - 1):
            perm = list(range(len(theta)))
            perm[u], perm[u + 1] = perm[u + 1], perm[u]
            swapped = sorted(tuple(row[p] for p in perm) for row in chi)
            if swapped != rows:
                raise ModelError("rows are not invariant under within-block permutations")
            if theta[u] != theta[u + 1]:
                raise ModelError("theta is not constant on a GL block")
        start += b


@dataclass(frozen=True)
class Circuit:
    """Primitive cowall normal, oriented positively against theta."""

    vector: tuple
    wall_rows: frozenset


@dataclass(frozen=True)
class FixedPoint:
    """Unimodular size-k support with sign split and monomial restriction.

    ``restriction`` maps 0-based gauge indices j to the monomial value of
    s_{j+1} in the flavor variables (and even powers of h^(1/2)); ``rays``
    is the Z-basis of the effective cone of the point.
    """

    support: tuple
    plus: frozenset
    minus: frozenset
    coeffs: tuple
    restriction: dict = field(compare=False)
    rays: tuple = ()

    def label(self) -> str:
        return "p{%s}" % ",".join(str(i + 1) for i in self.support)


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone with both generator and facet descriptions."""

    generators: tuple
    facet_normals: tuple

    def __post_init__(self):
        for g in self.generators:
            if any(pair(f, g) < 0 for f in self.facet_normals):
                raise ModelError("cone descriptions disagree on generator %r" % (g,))

    def contains(self, d) -> bool:
        return all(pair(f, d) >= 0 for f in self.facet_normals)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def circuits(data: GaugeData):
    """One circuit per wall, signed by theta, deduplicated."""
    k = data.k
    found = {}
    for subset in itertools.combinations(range(data.n), k - 1):
        rows = [data.chi[i] for i in subset]
        rho = kernel_normal(rows, k)
        if rho is None:
            continue
        t = pair(data.theta, rho)
        if t == 0:
            raise ThetaOnWallError(
                "theta lies on wall spanned by {%s}" % ",".join("chi_%d" % (i + 1) for i in subset))
        if t < 0:
            rho = tuple(-x for x in rho)
        if rho not in found:
            wall = frozenset(i for i in range(data.n) if data.pairing(i, rho) == 0)
            found[rho] = Circuit(vector=rho, wall_rows=wall)
    return [found[v] for v in sorted(found)]


def fixed_points(data: GaugeData, table: VariableTable | None = None):
    """All torus-fixed points with sign splits, restriction maps and cone rays."""
    table = table or data.table()
    out = []
    for subset in itertools.combinations(range(data.n), data.k):
        rows = [data.chi[i] for i in subset]
        d = det_int(rows)
        if d == 0:
            continue
        if abs(d) != 1:
            raise ModelError("non-unimodular subset {%s} encountered"
                             % ",".join(str(i + 1) for i in subset))
        # theta = sum_j c_j chi_j: columns of the system are the chi rows
        cols = [[rows[t][l] for t in range(data.k)] for l in range(data.k)]
        c = solve_square(cols, list(data.theta))
        if any(v == 0 for v in c):
            raise ThetaOnWallError("theta on wall of subset {%s}"
                                   % ",".join(str(i + 1) for i in subset))
        plus = frozenset(subset[t] for t in range(data.k) if c[t] > 0)
        minus = frozenset(subset[t] for t in range(data.k) if c[t] < 0)
        binv = inverse_unimodular(rows)
        restriction = {}
        for l in range(data.k):
            mono = [0] * table.width
            for t in range(data.k):
                mono[table.a(subset[t])] -= binv[l][t]
                if subset[t] in minus:
                    mono[HBAR_HALF] -= 2 * binv[l][t]
            restriction[l] = tuple(mono)
        rays = []
        for t in range(data.k):
            sign = 1 if subset[t] in plus else -1
            rays.append(tuple(sign * binv[l][t] for l in range(data.k)))
        out.append(FixedPoint(support=tuple(subset), plus=plus, minus=minus,
                              coeffs=tuple(c), restriction=restriction, rays=tuple(rays)))
    return out


def _facets_from_generators(gens, k):
    if k == 1:
        sign = 1 if gens[0][0] > 0 else -1
        return ((sign,),)
    facets = set()
    for subset in itertools.combinations(range(len(gens)), k - 1):
        rows = [gens[i] for i in subset]
        f = kernel_normal(rows, k)
        if f is None:
            continue
        pos = sum(1 for g in gens if pair(f, g) > 0)
        neg = sum(1 for g in gens if pair(f, g) < 0)
        if neg == 0 and pos > 0:
            facets.add(f)
        elif pos == 0 and neg > 0:
            facets.add(tuple(-x for x in f))
    return tuple(sorted(facets))


def eff_cone(data: GaugeData) -> Cone:
    """The effective cone, generated by the circuits."""
    gens = tuple(c.vector for c in circuits(data))
    return Cone(generators=gens, facet_normals=_facets_from_generators(gens, data.k))


def eff_cone_fp(data: GaugeData, p: FixedPoint) -> Cone:
    """Effective cone of a fixed point: facets from the sign split, rays from the dual basis."""
    facets = tuple(sorted(
        [data.chi[j] for j in sorted(p.plus)]
        + [tuple(-x for x in data.chi[j]) for j in sorted(p.minus)]))
    return Cone(generators=tuple(sorted(p.rays)), facet_normals=facets)


def mixed_polarization(data: GaugeData, d) -> frozenset:
    """Row indices whose pairing with d is nonnegative (ties included)."""
    return frozenset(i for i in range(data.n) if data.pairing(i, d) >= 0)


def enumerate_degrees(cone: Cone, theta, order: int):
    """Lattice points of the cone with <theta, d> <= order, sorted by (level, lex)."""
    k = len(theta)
    if order < 0:
        return []
    bounds = [0] * k
    for g in cone.generators:
        lg = pair(theta, g)
        if lg <= 0:
            raise ModelError("cone not pointed for grading: generator %r has level %d" % (g, lg))
        for j in range(k):
            b = -(-order * abs(g[j]) // lg)  # ceil
            bounds[j] = max(bounds[j], b)
    out = []
    for d in itertools.product(*[range(-b, b + 1) for b in bounds]):
        lvl = pair(theta, d)
        if 0 <= lvl <= order and cone.contains(d):
            out.append((lvl, d))
    out.sort()
    return [d for _, d in out]


def separating_circuits(data: GaugeData, theta2):
    """Split circuits into those whose wall separates theta from theta2, and the rest."""
    theta2 = tuple(int(x) for x in theta2)
    reversing, kept = [], []
    for c in circuits(data):
        t2 = pair(theta2, c.vector)
        if t2 == 0:
            raise ThetaOnWallError("theta2 on wall with normal %r" % (c.vector,))
        (reversing if t2 < 0 else kept).append(c)
    return reversing, kept
