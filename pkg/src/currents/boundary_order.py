"""Exact intersection numbers via the cyclic order on the circle at infinity.

The universal cover of a surface with boundary retracts onto the universal
cover of its one-vertex spine, a regular tree whose vertices are reduced
words and whose 2k directions at every vertex inherit the spine's cyclic
half-edge order.  The ends of this planar tree are exactly the ideal points
of the universal cover, and three distinct ends acquire a cyclic sign by
comparing the three directions at the median vertex of their tripod.

A conjugacy class w acts as a translation whose axis has the ends w^inf and
(w^-1)^inf.  Two geodesics cross transversely if and only if their endpoint
pairs link on the circle, so the geometric intersection number of two
classes is the number of linked axis pairs taken over double-coset
representatives.  Crossings are normalized by translating the first shared
tree vertex of the two axes into a fundamental window of length |w|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .surface import CurveClass, RationalCurrent, RibbonSpine
from .words import inverse, inverse_letter, primitive_root


class RayError(ValueError):
    """Raised when boundary rays are degenerate (equal or unreduced)."""


@dataclass(frozen=True)
class BoundaryRay:
    """Eventually periodic reduced infinite word: an end of the spine tree.

    Stored in canonical form: the period is primitive and the preperiod is
    minimal (no trailing preperiod letter equal to the last period letter).
    """

    pre: str
    per: str

    @staticmethod
    def make(pre: str, per: str) -> "BoundaryRay":
        if not per:
            raise RayError("period must be nonempty")
        per, _ = primitive_root(per)
        pre_l = list(pre)
        while pre_l and pre_l[-1] == per[-1]:
            pre_l.pop()
            per = per[-1] + per[:-1]
        return BoundaryRay("".join(pre_l), per)

    def letter(self, t: int) -> str:
        if t < len(self.pre):
            return self.pre[t]
        return self.per[(t - len(self.pre)) % len(self.per)]

    def __str__(self) -> str:
        return f"{self.pre}({self.per})^inf"


def ray_of_power(word: str) -> BoundaryRay:
    """End w^inf of a cyclically reduced word, based at the identity."""
    return BoundaryRay.make("", word)


def translate_ray(prefix: str, word: str) -> BoundaryRay:
    """Reduced form of the end prefix * word^inf.

    ``prefix`` must be reduced and ``word`` cyclically reduced; cancellation
    at the junction consumes at most |prefix| letters.
    """
    pre = list(prefix)
    rot = word
    while pre and pre[-1] == inverse_letter(rot[0]):
        pre.pop()
        rot = rot[1:] + rot[0]
    return BoundaryRay.make("".join(pre), rot)


def axis_rays(cls: CurveClass) -> tuple[BoundaryRay, BoundaryRay]:
    return ray_of_power(cls.word), ray_of_power(inverse(cls.word))


def _divergence(x: BoundaryRay, y: BoundaryRay) -> int:
    """Length of the common prefix of two distinct rays."""
    bound = max(len(x.pre), len(y.pre)) + len(x.per) * len(y.per) // gcd(
        len(x.per), len(y.per)
    )
    for t in range(bound + 1):
        if x.letter(t) != y.letter(t):
            return t
    raise RayError(f"rays {x} and {y} coincide")


def cyclic_order(spine: RibbonSpine, x: BoundaryRay, y: BoundaryRay, z: BoundaryRay) -> int:
    """Sign of the cyclic triple (x, y, z) on the circle at infinity.

    Returns +1 when, walking in the positive direction from x, the end y is
    met before z.  The sign is computed at the median vertex of the tripod
    spanned by the three ends: the median is the longest of the three
    pairwise common prefixes, and the three directions there are compared in
    the spine's half-edge cyclic order.
    """
    dxy, dyz, dxz = _divergence(x, y), _divergence(y, z), _divergence(x, z)
    m = max(dxy, dyz, dxz)
    # The median vertex is the longest pairwise common prefix; one of the two
    # rays realizing it serves as a witness spelling the median word.
    witness = y if m == dyz else x

    def passes_median(r: BoundaryRay) -> bool:
        return all(r.letter(t) == witness.letter(t) for t in range(m))

    dirs = []
    for r in (x, y, z):
        if passes_median(r):
            dirs.append(r.letter(m))
        else:
            # Geodesic from the median to r starts with the backward step.
            dirs.append(inverse_letter(witness.letter(m - 1)))
    dx, dy, dz = dirs
    if len({dx, dy, dz}) != 3:
        raise RayError("degenerate tripod: rays not pairwise distinct")
    px, py, pz = (spine.position(d) for d in (dx, dy, dz))
    nh = 2 * spine.rank
    return 1 if (py - px) % nh < (pz - px) % nh else -1


def rays_linked(
    spine: RibbonSpine,
    a: tuple[BoundaryRay, BoundaryRay],
    b: tuple[BoundaryRay, BoundaryRay],
) -> bool:
    """Whether the unordered endpoint pairs a and b separate each other."""
    s1 = cyclic_order(spine, a[0], b[0], a[1])
    s2 = cyclic_order(spine, a[0], b[1], a[1])
    return s1 != s2


def linked_pairs(spine: RibbonSpine, u: str, v: str, skip_diagonal: bool) -> list[tuple[int, int]]:
    """Normalized linked axis pairs between classes u and v.

    Enumerates the m*l cyclic-shift pairs (p, v_j) with p running over one
    translation period of the u-axis; a pair counts when the axis through
    p of the j-th rotation of v links with the u-axis and p is the first
    shared vertex (its axis predecessor does not lie on the v-axis).  The
    crossing at (i, j) is realized by the conjugate p v_j p^-1, p = u[:i].
    """
    m, l = len(u), len(v)
    u_axis = (ray_of_power(u), ray_of_power(inverse(u)))
    pairs = []
    for i in range(m):
        p = u[:i]
        back = inverse_letter(p[-1]) if i > 0 else inverse_letter(u[-1])
        for j in range(l):
            if skip_diagonal and j == i:
                continue
            vj = v[j:] + v[:j]
            if back == vj[0] or back == inverse_letter(vj[-1]):
                continue  # predecessor on the other axis: not the first vertex
            b_plus = translate_ray(p, vj)
            b_minus = translate_ray(p, inverse(vj))
            if rays_linked(spine, u_axis, (b_plus, b_minus)):
                pairs.append((i, j))
    return pairs


def crossing_witness(u: str, v: str, pair: tuple[int, int]) -> str:
    """Conjugate of v realizing the normalized crossing with u at ``pair``."""
    i, j = pair
    p = u[:i]
    vj = v[j:] + v[:j]
    from .words import free_reduce

    return free_reduce(p + vj + inverse(p))


def _linked_crossing_count(spine: RibbonSpine, u: str, v: str, skip_diagonal: bool) -> int:
    return len(linked_pairs(spine, u, v, skip_diagonal))


@lru_cache(maxsize=65536)
def _intersection_cached(spine: RibbonSpine, u: str, v: str) -> int:
    return _linked_crossing_count(spine, u, v, skip_diagonal=False)


@lru_cache(maxsize=65536)
def _self_intersection_cached(spine: RibbonSpine, u: str) -> int:
    raw = _linked_crossing_count(spine, u, u, skip_diagonal=True)
    assert raw % 2 == 0, "unordered crossing pairs must come in twos"
    return raw // 2


def intersection_number(c1: CurveClass, c2: CurveClass, spine: RibbonSpine) -> int:
    """Geometric intersection number of two classes on the same spine.

    Symmetric; zero against every boundary class.  For equal classes this
    returns the self-intersection number, the diagonal convention used by
    the bilinear pairing on currents.
    """
    if c1 == c2:
        return self_intersection(c1, spine)
    return _intersection_cached(spine, c1.word, c2.word)


def self_intersection(c: CurveClass, spine: RibbonSpine) -> int:
    """Minimal number of transverse self-crossings of the class.

    Zero exactly for embedded (simple) curves.  Counts linked pairs of
    distinct axes of conjugates, halved because each physical crossing is
    seen from both strands.
    """
    return _self_intersection_cached(spine, c.word)


def is_simple(c: CurveClass, spine: RibbonSpine) -> bool:
    return self_intersection(c, spine) == 0


def current_pairing(m1: RationalCurrent, m2: RationalCurrent, spine: RibbonSpine) -> Fraction:
    """Bilinear extension of the intersection number to rational currents."""
    total = Fraction(0)
    for c1, w1 in m1:
        for c2, w2 in m2:
            total += w1 * w2 * intersection_number(c1, c2, spine)
    return total


def spine_edge_crossings(c: CurveClass, edge: str, spine: RibbonSpine) -> int:
    """Crossings of the class with the arc dual to a spine edge.

    For cyclically reduced words this is the number of occurrences of the
    generator or its inverse.
    """
    if edge not in spine.generators:
        raise ValueError(f"no spine edge {edge!r}")
    return c.word.count(edge) + c.word.count(edge.upper())
