"""Comparison of two stability conditions inside one ambient localized algebra.

Both mixed-generator families live in the same algebra; they differ only
through which effective cone the rescaling coefficients see.  Reversing
circuits invert across the wall and the difference-relation systems match
after inverting the relation, which is verified symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coulomb import AlgebraElement, CoulombAlgebra
from .exactring import Scalar
from .hypertoric import GaugeData, separating_circuits
from .bethe import _root_shift_factor


@dataclass
class WallCrossScenario:
    algebra: CoulombAlgebra
    algebra2: CoulombAlgebra
    theta2: tuple
    reversing: tuple
    kept: tuple


def make_scenario(alg: CoulombAlgebra, theta2) -> WallCrossScenario:
    theta2 = tuple(int(x) for x in theta2)
    reversing, kept = separating_circuits(alg.data, theta2)
    data2 = GaugeData.create(alg.data.chi, theta2, blocks=alg.data.blocks,
                             labels=alg.data.labels,
                             a_specialization=alg.data.a_specialization)
    return WallCrossScenario(algebra=alg, algebra2=CoulombAlgebra(data2), theta2=theta2,
                             reversing=tuple(c.vector for c in reversing),
                             kept=tuple(c.vector for c in kept))


def primed_generator(scn: WallCrossScenario, d) -> AlgebraElement:
    """The second stability condition's mixed generator, as an element of the
    common algebra."""
    return scn.algebra.r(tuple(d), scn.algebra2.mixed_coefficient(d))


@dataclass
class ReversalReport:
    circuit: tuple
    reversing: bool
    passed: bool


def check_reversal(scn: WallCrossScenario, rho) -> ReversalReport:
    """For a reversing circuit the primed generators invert; otherwise they agree."""
    alg = scn.algebra
    rho = tuple(rho)
    nrho = tuple(-x for x in rho)
    if rho in scn.reversing:
        ok = True
        for sign_d in (rho, nrho):
            opposite = tuple(-x for x in sign_d)
            prod = alg.mul(alg.mixed_generator(opposite), primed_generator(scn, sign_d))
            ok = ok and (prod == alg.one())
        return ReversalReport(circuit=rho, reversing=True, passed=ok)
    ok = (primed_generator(scn, rho) == alg.mixed_generator(rho)
          and primed_generator(scn, nrho) == alg.mixed_generator(nrho))
    return ReversalReport(circuit=rho, reversing=False, passed=ok)


@dataclass
class DmoduleMatchReport:
    circuit: tuple
    passed: bool


def _relation_apply(alg_gen, scn: WallCrossScenario, wc, insertion: Scalar,
                    primed: bool) -> Scalar:
    """Scalar of (generator at wc) insertion (generator at -wc) times the root factor."""
    alg = scn.algebra
    nwc = tuple(-x for x in wc)
    gen_plus = primed_generator(scn, wc) if primed else alg.mixed_generator(wc)
    gen_minus = primed_generator(scn, nwc) if primed else alg.mixed_generator(nwc)
    prod = alg.mul(alg.mul(gen_plus, alg.cartan(insertion)), gen_minus)
    return prod.scalar_part() * _root_shift_factor(alg, wc)


def dmodule_match(scn: WallCrossScenario, c, insertions=None) -> DmoduleMatchReport:
    """Invert the first relation and land exactly on the second side's relation.

    Applying the reversing relation of the first stability condition and then
    the relation of the second one at the opposite circuit must return every
    test insertion unchanged (the two Kahler shifts cancel).
    """
    alg = scn.algebra
    c = tuple(c)
    table = alg.table
    if insertions is None:
        insertions = [Scalar.one(table.width),
                      Scalar.monomial(table.mono({table.s(0): 1}))]
    ws = alg.weyl_elements() if alg.data.blocks is not None else [tuple(range(alg.data.k))]
    passed = True
    for w in ws:
        wc = alg.weyl_on_degree(w, c)
        nwc = tuple(-x for x in wc)
        for insertion in insertions:
            if c in scn.reversing:
                forward = _relation_apply(alg, scn, wc, insertion, primed=False)
                back = _relation_apply(alg, scn, nwc, forward, primed=True)
                passed = passed and (back == insertion)
            else:
                first = _relation_apply(alg, scn, wc, insertion, primed=False)
                second = _relation_apply(alg, scn, wc, insertion, primed=True)
                passed = passed and (first == second)
    return DmoduleMatchReport(circuit=c, passed=passed)
