"""Generators of the quantum difference relations and their q = 1 limits.

Relations are emitted as scalar data tagged by the Kahler degree they are
set equal to; quotient-module arithmetic is out of scope.  For block models
one relation is produced per (dominant circuit, Weyl element) pair, carrying
the root-system correction factor; the degree tag then records only the
per-block image of the circuit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coulomb import CoulombAlgebra
from .exactring import (Q_HALF, Scalar, _binomial_factorization, atom_str,
                        mono_str, scalar_structured, specialize_q1)
from .hypertoric import circuits
from .pochhammer import poch, q_shifted


@dataclass(frozen=True)
class Relation:
    """One relation: lhs scalar = Kahler monomial of degree rhs_degree."""

    lhs: Scalar
    rhs_degree: tuple
    kind: str  # "dmodule" | "bethe_q1"
    circuit: tuple
    weyl_rep: tuple | None = None


def _root_shift_factor(alg: CoulombAlgebra, wc) -> Scalar:
    out = Scalar.one(alg.table.width)
    hm = alg.table.mono({1: 2})
    for root in alg.roots():
        mu = alg.root_pairing(root, wc)
        if mu == 0:
            continue
        y = alg.root_mono(root)
        qy = q_shifted(y, 1)
        hy = tuple(a + b for a, b in zip(hm, y))
        out = out * poch(qy, -mu) * poch(hy, -mu).inv()
    return out


def _block_image(alg: CoulombAlgebra, c) -> tuple:
    return tuple(sum(c[a:b]) for a, b in alg.data.block_slices())


def _specialize_flavors(alg: CoulombAlgebra, x: Scalar) -> Scalar:
    aspec = alg.data.a_specialization
    if not aspec:
        return x
    from .exactring import identity_images
    images = identity_images(alg.table.width)
    for row, mono in aspec.items():
        images[alg.table.a(row)] = tuple(mono)
    return x.subs(images, alg.table.width)


def dmodule_relations(alg: CoulombAlgebra):
    """One relation per circuit (times Weyl element when blocks are present)."""
    out = []
    circs = circuits(alg.data)
    if alg.data.blocks is None:
        for circ in circs:
            c = circ.vector
            nc = tuple(-x for x in c)
            lhs = alg.mul(alg.mixed_generator(c), alg.mixed_generator(nc)).scalar_part()
            out.append(Relation(lhs=lhs, rhs_degree=c, kind="dmodule", circuit=c))
        return out
    for circ in circs:
        c = circ.vector
        if not alg.is_dominant(c):
            continue
        for w in alg.weyl_elements():
            wc = alg.weyl_on_degree(w, c)
            nwc = tuple(-x for x in wc)
            lhs = alg.mul(alg.mixed_generator(wc), alg.mixed_generator(nwc)).scalar_part()
            lhs = _specialize_flavors(alg, lhs * _root_shift_factor(alg, wc))
            out.append(Relation(lhs=lhs, rhs_degree=_block_image(alg, c),
                                kind="dmodule", circuit=c, weyl_rep=w))
    return out


def bethe_relations_q1(alg: CoulombAlgebra):
    """The q = 1 specialization of the difference relations."""
    out = []
    for rel in dmodule_relations(alg):
        lhs = specialize_q1(rel.lhs, alg.table)
        if any(m[Q_HALF] for m in lhs.num.terms) or lhs.pre[Q_HALF] or \
                any(g[Q_HALF] for g in lhs.atoms):
            raise AssertionError("q variable survived the q=1 specialization")
        out.append(Relation(lhs=lhs, rhs_degree=rel.rhs_degree, kind="bethe_q1",
                            circuit=rel.circuit, weyl_rep=rel.weyl_rep))
    return out


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _orient_factor(g: tuple, mult: int):
    """Canonical orientation of a binomial factor (1 - g)^mult.

    Prefers the representative with positive total degree, then the
    lexicographically smaller exponent vector; returns (g', unit monomial,
    sign) with (1 - g)^mult = sign * unit * (1 - g')^mult.
    """
    gi = tuple(-e for e in g)
    keep = (sum(g) > sum(gi)) or (sum(g) == sum(gi) and g < gi)
    if keep:
        return g, (0,) * len(g), 1
    # (1 - g) = (-g) (1 - g^{-1})
    unit = tuple(e * mult for e in g)
    sign = 1 if mult % 2 == 0 else -1
    return gi, unit, sign


def _factored_str(alg: CoulombAlgebra, x: Scalar) -> str:
    """Factored canonical rendering; falls back to the expanded numerator."""
    table = alg.table
    if x.is_zero():
        return "0"
    fact = _binomial_factorization(x.num)
    parts = []
    if fact is not None:
        coeff, umono, atoms = fact
        head_mono = tuple(a + b for a, b in zip(x.pre, umono))
        oriented = {}
        for g, mult in atoms.items():
            g2, unit, sign = _orient_factor(g, mult)
            head_mono = tuple(a + b for a, b in zip(head_mono, unit))
            coeff = coeff * sign
            oriented[g2] = oriented.get(g2, 0) + mult
        head = mono_str(table, head_mono)
        if coeff == -1:
            head = "-" + head
        elif coeff != 1:
            head = "%s*%s" % (coeff, head) if head != "1" else str(coeff)
        parts.append(head)
        for g, mult in sorted(oriented.items(), key=lambda gm: (sum(gm[0]), gm[0])):
            parts.append(atom_str(table, g, mult))
    else:
        from .exactring import poly_str
        if any(x.pre):
            parts.append(mono_str(table, x.pre))
        parts.append("(%s)" % poly_str(table, x.num))
    head = " * ".join(parts)
    denom = [atom_str(table, g, mult)
             for g, mult in sorted(x.atoms.items(), key=lambda gm: (sum(gm[0]), gm[0]))]
    if x.gden is not None:
        from .exactring import poly_str
        denom.append("[%s]" % poly_str(table, x.gden))
    if denom:
        return "%s / ( %s )" % (head, " * ".join(denom))
    return head


def _rhs_str(alg: CoulombAlgebra, rel: Relation) -> str:
    table = alg.table
    if alg.data.blocks is None:
        mono = table.mono({table.qvar(j): 2 * cj for j, cj in enumerate(rel.rhs_degree) if cj})
        return mono_str(table, mono)
    slices = alg.data.block_slices()
    mono = table.mono({table.qvar(slices[b][0]): 2 * cb
                       for b, cb in enumerate(rel.rhs_degree) if cb})
    return mono_str(table, mono)


def _relation_tag(rel: Relation) -> str:
    tag = "c=(%s)" % ",".join(str(x) for x in rel.circuit)
    if rel.weyl_rep is not None:
        tag += " w=(%s)" % ",".join(str(x + 1) for x in rel.weyl_rep)
    return tag


def render_bethe_system(alg: CoulombAlgebra, relations, fmt: str = "text"):
    """Deterministic rendering of a relation system, one equation per line."""
    relations = sorted(relations, key=lambda r: (r.circuit, r.weyl_rep or ()))
    if fmt == "json":
        return [{
            "kind": rel.kind,
            "circuit": list(rel.circuit),
            "weyl": list(rel.weyl_rep) if rel.weyl_rep is not None else None,
            "rhs_degree": list(rel.rhs_degree),
            "lhs": scalar_structured(rel.lhs),
        } for rel in relations]
    lines = []
    for rel in relations:
        lines.append("%s [%s]: %s = %s" % (
            rel.kind, _relation_tag(rel), _factored_str(alg, rel.lhs), _rhs_str(alg, rel)))
    return "\n".join(lines) + ("\n" if lines else "")
