"""Dehn-twist factorizations on the genus-g surface with homology payloads.

A Factorization is an ordered word of twists about named curves, each
carrying its class in H1(Sigma_g; Z) and, when the curve is symmetric
under the hyperelliptic involution, an arc descriptor on the marked
sphere.  The word represents the product of the twists acting left to
right; its target is either the identity (a Lefschetz fibration over S^2)
or the boundary multitwist (a pencil, with one section record per base
point).

The homological shadow is exact: Sp products, Hurwitz moves, chain
substitutions and the descent to the braid group are all verified at
construction time.  Geometric isotopy beyond that fidelity is not
modelled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from . import braid as br
from .braid import BraidWord
from .homology import (
    chain_class,
    pairing,
    sp_product,
    transvection,
    solve_twist_square,
)
from .intmat import Matrix, Vector, identity, mat_mul, mat_pow, mat_inverse_int

IDENTITY = "IDENTITY"
BOUNDARY_MULTITWIST = "BOUNDARY_MULTITWIST"


@dataclass(frozen=True)
class Arc:
    """Symmetric-arc descriptor: a standard arc between marked points p < q,
    optionally dragged by a braid conjugator."""

    p: int
    q: int
    conjugator: Optional[BraidWord] = None

    def half_twist(self, strands: int) -> BraidWord:
        base = br.band_generator(strands, self.p, self.q)
        if self.conjugator is None:
            return base
        w = self.conjugator
        return w.inverse() * base * w


@dataclass(frozen=True)
class Curve:
    name: str
    h1: tuple[int, ...]
    arc: Optional[Arc] = None

    def h1_vec(self) -> Vector:
        return list(self.h1)


@dataclass(frozen=True)
class Section:
    square: int


@dataclass(frozen=True)
class Factorization:
    genus: int
    boundary_count: int
    twists: tuple[tuple[Curve, int], ...]
    target: str = IDENTITY
    sections: tuple[Section, ...] = ()
    # closing-handle framing of the associated sphere-braid closure, when known
    # (computed by descent for hyperelliptic words, or carried as construction
    # data from the handle calculus); feeds the spin test.
    closing_framing: Optional[int] = None

    def __post_init__(self):
        if self.target not in (IDENTITY, BOUNDARY_MULTITWIST):
            raise ValueError(f"unknown target {self.target}")
        if self.target == BOUNDARY_MULTITWIST:
            if self.boundary_count < 1:
                raise ValueError("a pencil needs at least one boundary component")
            if len(self.sections) != self.boundary_count:
                raise ValueError("need one section record per boundary component")
        for c, s in self.twists:
            if s not in (1, -1):
                raise ValueError("twist sign must be +-1")
            if len(c.h1) != 2 * self.genus:
                raise ValueError(f"curve {c.name} has wrong class length")
        m = self.sp_matrix()
        if m != identity(2 * self.genus):
            raise ValueError("Sp product of word does not match target")

    @property
    def length(self) -> int:
        return len(self.twists)

    def classes(self) -> list[Vector]:
        return [list(c.h1) for c, _ in self.twists]

    def sp_matrix(self) -> Matrix:
        m = identity(2 * self.genus)
        for c, s in self.twists:
            t = transvection(self.genus, list(c.h1))
            if s < 0:
                t = mat_inverse_int(t)
            m = mat_mul(m, t)
        return m

    def is_positive(self) -> bool:
        return all(s == 1 for _, s in self.twists)


def _conjugate_curve(g: int, moved: Curve, by: Curve, inverse: bool) -> Curve:
    """Payload of the curve t_by^{+-1}(moved): transvect the class, drag the arc.

    When the two classes pair to zero the twist acts trivially on the class;
    for the chain-model catalog such pairs are geometrically disjoint, so the
    curve is returned unchanged (name, arc and all).
    """
    ip = pairing(g, list(moved.h1), list(by.h1))
    if ip == 0:
        return moved
    sign = -1 if inverse else 1
    new_class = tuple(x + sign * ip * y for x, y in zip(moved.h1, by.h1))
    new_arc = None
    if moved.arc is not None and by.arc is not None:
        # conjugation at the braid level: the dragged arc picks up the half
        # twist of the acting curve (or its inverse)
        n = 2 * g + 2
        h = by.arc.half_twist(n)
        w = h if inverse else h.inverse()
        conj = moved.arc.conjugator
        new_conj = w if conj is None else conj * w
        new_arc = Arc(moved.arc.p, moved.arc.q, new_conj)
    name = f"{moved.name}^{by.name}" if not inverse else f"{moved.name}^{by.name}'"
    return Curve(name, new_class, new_arc)


def hurwitz_move(f: Factorization, position: int, direction: str = "left") -> Factorization:
    """Elementary Hurwitz transposition of the twists at position, position+1.

    direction "left": (t_a, t_b) -> (t_b, t_{t_b^-1(a)});
    direction "right" is its inverse: (t_a, t_b) -> (t_{t_a(b)}, t_a).
    Word length and the Sp product are preserved.
    """
    if not 0 <= position < len(f.twists) - 1:
        raise IndexError(f"no adjacent pair at position {position}")
    (a, sa), (b, sb) = f.twists[position], f.twists[position + 1]
    if direction == "left":
        moved = _conjugate_curve(f.genus, a, b, inverse=(sb == 1))
        new_pair = ((b, sb), (moved, sa))
    elif direction == "right":
        moved = _conjugate_curve(f.genus, b, a, inverse=(sa == -1))
        new_pair = ((moved, sb), (a, sa))
    else:
        raise ValueError("direction must be 'left' or 'right'")
    twists = f.twists[:position] + new_pair + f.twists[position + 2:]
    return replace(f, twists=twists)


def cyclic_rotate(f: Factorization, amount: int) -> Factorization:
    """Cyclic permutation of the word.

    Legal for relators outright; for pencils the boundary multitwist is
    central in the mapping class group of the bounded surface, so rotation
    again preserves the factorized element.
    """
    n = len(f.twists)
    if n == 0:
        return f
    k = amount % n
    return replace(f, twists=f.twists[k:] + f.twists[:k])


def cap_boundary(f: Factorization) -> Factorization:
    """Cap off all boundary components: the pencil becomes the Lefschetz
    fibration on the blow-up at the base points.

    Boundary twists disappear from the word (the catalog keeps them out of
    the word to begin with; any zero-class placeholder named delta* is
    dropped here).  Section records are retained: each base point becomes an
    exceptional sphere of square -1.
    """
    if f.target != BOUNDARY_MULTITWIST:
        raise ValueError("cap_boundary expects a pencil")
    twists = tuple((c, s) for c, s in f.twists if not c.name.startswith("delta"))
    sections = tuple(Section(-1) for _ in f.sections)
    return replace(f, boundary_count=0, twists=twists, target=IDENTITY,
                   sections=sections)


@dataclass(frozen=True)
class ChainSpec:
    """A (2h+1)-chain of curves with its boundary pair, ready to unchain."""

    curves: tuple[Curve, ...]
    boundary_pair: tuple[Curve, Curve]

    def __post_init__(self):
        if len(self.curves) % 2 == 0:
            raise ValueError("chain length must be odd")
        g = len(self.curves[0].h1) // 2
        for i, a in enumerate(self.curves):
            for j in range(i + 1, len(self.curves)):
                p = pairing(g, list(a.h1), list(self.curves[j].h1))
                if j == i + 1 and abs(p) != 1:
                    raise ValueError("consecutive chain classes must pair to +-1")
                if j > i + 1 and p != 0:
                    raise ValueError("distant chain classes must pair to zero")

    @property
    def h(self) -> int:
        return (len(self.curves) - 1) // 2

    def word(self) -> tuple[Curve, ...]:
        return self.curves

    def validate(self, g: int) -> None:
        """Check the homological shadow of the chain relation:
        (Sp of chain word)^(2h+2) = T_{b1} T_{b2}."""
        m = mat_pow(sp_product(g, [list(c.h1) for c in self.curves]),
                    2 * self.h + 2)
        b1, b2 = self.boundary_pair
        rhs = mat_mul(transvection(g, list(b1.h1)), transvection(g, list(b2.h1)))
        if m != rhs:
            raise ValueError("boundary classes fail the chain-relation identity")


def chain_spec(g: int, start: int, h: int, b_name: str = "x") -> ChainSpec:
    """ChainSpec for the chain c_start, ..., c_{start+2h} in the standard model.

    The boundary classes are solved from the homological identity
    (Sp of chain word)^{2h+2} = T_b^2, with the convention b2 = -b1.
    """
    curves = tuple(standard_curve(g, j) for j in range(start, start + 2 * h + 1))
    m = mat_pow(sp_product(g, [list(c.h1) for c in curves]), 2 * h + 2)
    b = solve_twist_square(g, m)
    if b is None:
        raise ValueError("chain word is not homologically a twist square")
    b1 = Curve(b_name, tuple(b))
    b2 = Curve(b_name + "'", tuple(-x for x in b))
    spec = ChainSpec(curves, (b1, b2))
    spec.validate(g)
    return spec


def standard_curve(g: int, j: int) -> Curve:
    """The j-th chain curve c_j with its class and standard arc (j, j+1)."""
    return Curve(f"c{j}", tuple(chain_class(g, j)), Arc(j, j + 1))


def standard_chain(g: int) -> ChainSpec:
    """The full chain c_1..c_{2g+1}; its boundary pair is null-homologous
    (the two boundary curves of the chain neighbourhood cap to zero)."""
    if g < 1:
        raise ValueError("need g >= 1")
    return chain_spec(g, 1, g, b_name="delta")


@dataclass(frozen=True)
class LanternRecord:
    """Verified homological shadow of the lantern relation: the product of
    the four boundary twists equals the product of the three interior ones."""

    left: tuple[Curve, ...]
    right: tuple[Curve, ...]


def lantern_quadruple(g: int) -> LanternRecord:
    """Homological lantern record along the first two handles of Sigma_g.

    Boundary classes are pairwise disjoint with u4 = -(u1+u2+u3); the
    interior classes are the pairwise sums.  For g >= 3 all seven classes
    are primitive; on Sigma_2 the isotropic rank forces one doubled class.
    """
    if g < 2:
        raise ValueError("need g >= 2 to embed a lantern")
    a1 = [0] * (2 * g); a1[0] = 1
    a2 = [0] * (2 * g); a2[1] = 1
    if g >= 3:
        u3 = [0] * (2 * g); u3[2] = 1
    else:
        u3 = [x + 2 * y for x, y in zip(a1, a2)]
    u1, u2 = a1, a2
    u4 = [-(x + y + z) for x, y, z in zip(u1, u2, u3)]
    x = [a + b for a, b in zip(u1, u2)]
    y = [a + b for a, b in zip(u2, u3)]
    z = [a + b for a, b in zip(u1, u3)]
    left = [u1, u2, u3, u4]
    right = [x, y, z]
    lhs = sp_product(g, left)
    rhs = sp_product(g, right)
    if lhs != rhs:
        raise ValueError("lantern classes fail the Sp identity")
    mk = lambda n, v: Curve(n, tuple(v))
    return LanternRecord(
        (mk("l1", u1), mk("l2", u2), mk("l3", u3), mk("l4", u4)),
        (mk("l12", x), mk("l23", y), mk("l13", z)),
    )


def unchain(f: Factorization, position: int, spec: ChainSpec) -> Factorization:
    """Replace the subword (t_{c1} ... t_{c_{2h+1}})^{2h+2} at position by the
    two boundary twists t_{b1} t_{b2} of the chain neighbourhood."""
    h = spec.h
    block = tuple(spec.curves) * (2 * h + 2)
    L = len(block)
    sub = f.twists[position:position + L]
    if len(sub) != L:
        raise ValueError("chain block does not fit at this position")
    for (c, s), want in zip(sub, block):
        if s != 1 or c.name != want.name or c.h1 != want.h1:
            raise ValueError(
                f"subword at position {position} does not match the chain word")
    spec.validate(f.genus)
    b1, b2 = spec.boundary_pair
    twists = f.twists[:position] + ((b1, 1), (b2, 1)) + f.twists[position + L:]
    return replace(f, twists=twists)


def rechain(f: Factorization, position: int, spec: ChainSpec) -> Factorization:
    """Inverse of unchain: replace t_{b1} t_{b2} at position by the chain word."""
    b1, b2 = spec.boundary_pair
    sub = f.twists[position:position + 2]
    if len(sub) != 2 or sub[0][0].h1 != b1.h1 or sub[1][0].h1 != b2.h1:
        raise ValueError("boundary pair not found at this position")
    spec.validate(f.genus)
    block = tuple((c, 1) for c in spec.curves) * (2 * spec.h + 2)
    twists = f.twists[:position] + block + f.twists[position + 2:]
    return replace(f, twists=twists)


def descend_to_braid(f: Factorization) -> BraidWord:
    """Birman-Hilden descent: map each symmetric twist to its half-twist braid
    word on 2g+2 strands and concatenate.

    Requires a relator (target IDENTITY) in which every curve carries an arc
    descriptor; refuses anything else.
    """
    if f.target != IDENTITY:
        raise ValueError("descent is defined for relators")
    n = 2 * f.genus + 2
    word = br.identity_braid(n)
    for c, s in f.twists:
        if c.arc is None:
            raise ValueError(f"curve {c.name} has no arc descriptor")
        h = c.arc.half_twist(n)
        word = word * (h if s == 1 else h.inverse())
    return word


def closing_framing_by_descent(f: Factorization) -> Optional[int]:
    """Closing-handle framing of a hyperelliptic relator: the descended braid
    word equals a power k of the full twist, and the closing handle has
    framing -k."""
    w = descend_to_braid(f)
    k = br.full_twist_power(w)
    if k is None:
        return None
    return -k


# --- JSON round trip ------------------------------------------------------

def to_json(f: Factorization) -> str:
    def arc_obj(a: Optional[Arc]):
        if a is None:
            return None
        obj = {"p": a.p, "q": a.q}
        if a.conjugator is not None:
            obj["conjugator"] = br.format_braid(a.conjugator)
        return obj

    payload = {
        "genus": f.genus,
        "boundary_count": f.boundary_count,
        "target": f.target,
        "twists": [
            {"name": c.name, "h1": list(c.h1), "arc": arc_obj(c.arc), "sign": s}
            for c, s in f.twists
        ],
        "sections": [{"square": s.square} for s in f.sections],
    }
    if f.closing_framing is not None:
        payload["closing_framing"] = f.closing_framing
    return json.dumps(payload, indent=2)


def from_json(text: str) -> Factorization:
    obj = json.loads(text)
    g = obj["genus"]
    n = 2 * g + 2

    def parse_arc(a):
        if a is None:
            return None
        conj = None
        if a.get("conjugator"):
            conj = br.parse_braid(n, a["conjugator"])
        return Arc(a["p"], a["q"], conj)

    twists = tuple(
        (Curve(t["name"], tuple(t["h1"]), parse_arc(t.get("arc"))), t["sign"])
        for t in obj["twists"]
    )
    return Factorization(
        genus=g,
        boundary_count=obj["boundary_count"],
        twists=twists,
        target=obj["target"],
        sections=tuple(Section(s["square"]) for s in obj["sections"]),
        closing_framing=obj.get("closing_framing"),
    )
