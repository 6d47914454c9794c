"""Arc coordinates for integral simple multi-curves and their censuses.

The one-vertex spine is blown up into a trivalent fatgraph: the 2k-valent
vertex becomes a caterpillar tree of 2k-2 trivalent vertices whose legs keep
the spine's cyclic half-edge order.  The arcs dual to the 3k-3 = N'(R) edges
of the blown graph form a maximal system meeting the boundary orthogonally,
and the complement regions are hexagons, one per trivalent vertex.

A simple multi-curve carried by the spine crosses the arc dual to a petal
edge once per occurrence of the corresponding letter, and the arc dual to a
tree edge once per cyclic turn whose legs lie on opposite sides.  The
resulting vector m satisfies, at every trivalent vertex with incident edge
triple (i1, i2, i3), that m_i1 + m_i2 + m_i3 is even and at least 2 m_i for
each incident i; conversely any such admissible vector is realized by a
unique multi-curve, rebuilt by placing the forced number of disjoint strands
in each hexagon corner and gluing matched endpoints across the arcs.

Census enumeration weights each arc by the collar width Col(length) and
streams, in lexicographic order, the admissible vectors whose weighted total
does not exceed the bound.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .boundary_order import intersection_number, self_intersection
from .hyperbolic import (
    HyperbolicStructure,
    collar_width,
    fixed_points,
    geodesic_distance,
    mat_inv,
    mat_mul,
)
from .surface import CurveClass, RationalCurrent, RibbonSpine, canonicalize_curve
from .words import inverse_letter

# default arc length: collar weight exactly 1, so l_P = sum(m) combinatorially
UNIT_COLLAR_LENGTH = 2.0 * math.asinh(1.0 / math.sinh(1.0))


class DTError(ValueError):
    pass


@dataclass(frozen=True)
class _Blowup:
    """Caterpillar blow-up of the spine vertex into trivalent vertices."""

    spine: RibbonSpine
    vertices: tuple[tuple[tuple[str, int], ...], ...]  # per vertex: 3 germs in ccw order
    germ_edge: dict  # germ -> edge label
    germ_partner: dict  # germ -> germ across its edge
    leg_vertex: dict  # half-edge letter -> vertex index


def _build_blowup(spine: RibbonSpine) -> _Blowup:
    order = spine.half_edge_order
    k = spine.rank
    nv = 2 * k - 2
    # germs are (kind, data): ('leg', letter) or ('tree', index, end)
    verts: list[list] = [[] for _ in range(nv)]
    leg_vertex: dict[str, int] = {}

    def leg(v: int, letter: str):
        verts[v].append(("leg", letter))
        leg_vertex[letter] = v

    if nv == 1:
        raise DTError("blow-up needs rank >= 2")
    leg(0, order[0])
    leg(0, order[1])
    verts[0].append(("tree", 0, 0))
    for v in range(1, nv - 1):
        verts[v].append(("tree", v - 1, 1))
        leg(v, order[v + 1])
        verts[v].append(("tree", v, 0))
    verts[nv - 1].append(("tree", nv - 2, 1))
    leg(nv - 1, order[nv])
    leg(nv - 1, order[nv + 1])

    germ_edge: dict = {}
    germ_partner: dict = {}
    for letter in order:
        if letter.islower():
            g1, g2 = ("leg", letter), ("leg", letter.upper())
            germ_edge[g1] = germ_edge[g2] = letter
            germ_partner[g1], germ_partner[g2] = g2, g1
    for t in range(nv - 1):
        g1, g2 = ("tree", t, 0), ("tree", t, 1)
        germ_edge[g1] = germ_edge[g2] = f"t{t + 1}"
        germ_partner[g1], germ_partner[g2] = g2, g1

    return _Blowup(
        spine,
        tuple(tuple(v) for v in verts),
        germ_edge,
        germ_partner,
        leg_vertex,
    )


def _blowup_boundary_words(bl: _Blowup) -> tuple[str, ...]:
    """Boundary cycles of the blown fatgraph, reading only petal letters."""
    germ_at: dict = {}
    for vi, germs in enumerate(bl.vertices):
        for si, g in enumerate(germs):
            germ_at[g] = (vi, si)

    def succ(g):
        partner = bl.germ_partner[g]
        vi, si = germ_at[partner]
        return bl.vertices[vi][(si - 1) % 3]

    words = []
    seen = set()
    for start_v in bl.vertices:
        for start in start_v:
            if start in seen:
                continue
            g = start
            letters = []
            while True:
                seen.add(g)
                if g[0] == "leg":
                    letters.append(g[1])
                g = succ(g)
                if g == start:
                    break
            words.append("".join(letters))
    return tuple(words)


def _boundary_walk_word(bl: _Blowup, germ) -> str:
    """Letters recorded along the boundary cycle through the given germ."""
    germ_at: dict = {}
    for vi, germs in enumerate(bl.vertices):
        for si, g in enumerate(germs):
            germ_at[g] = (vi, si)
    g = germ
    letters = []
    while True:
        if g[0] == "leg":
            letters.append(g[1])
        partner = bl.germ_partner[g]
        vi, si = germ_at[partner]
        g = bl.vertices[vi][(si - 1) % 3]
        if g == germ:
            break
    return "".join(letters)


@dataclass(frozen=True)
class ArcSystem:
    """Maximal orthogonal arc system dual to the blown-up spine.

    ``edges`` fixes the coordinate order (petals in generator order, then
    tree edges); ``lengths`` are hyperbolic arc lengths and ``col`` their
    collar weights, the coefficients of the weighted coordinate length l_P.
    """

    spine: RibbonSpine
    edges: tuple[str, ...]
    lengths: tuple[float, ...]
    vertex_triples: tuple[tuple[str, str, str], ...]
    col: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        nv = len(self.vertex_triples)
        if 3 * nv != 2 * len(self.edges):
            raise DTError("arc system is not trivalent-dual")
        sig = self.spine.sig
        if nv != 4 * sig.genus - 4 + 2 * sig.n_boundary:
            raise DTError("wrong number of complement hexagons")
        if nv - len(self.edges) != sig.euler():
            raise DTError("dual graph is not a spine (Euler characteristic)")
        if any(x <= 0 for x in self.lengths):
            raise DTError("arc lengths must be positive")
        object.__setattr__(self, "col", tuple(collar_width(x) for x in self.lengths))

    @property
    def size(self) -> int:
        return len(self.edges)

    def index(self, edge: str) -> int:
        return self.edges.index(edge)

    def lp(self, m: Sequence[int]) -> float:
        """Collar-weighted coordinate length of a vector."""
        return sum(mi * ci for mi, ci in zip(m, self.col, strict=True))

    def lp_current(self, mc: RationalCurrent) -> float:
        """Weighted coordinate length of a multi-curve (components assumed
        simple and disjoint; use dt_coordinates to validate)."""
        return sum(
            float(w) * self.lp(class_dt_vector(cls, self)) for cls, w in mc
        )


_BLOWUPS: dict[RibbonSpine, _Blowup] = {}


def _blowup(spine: RibbonSpine) -> _Blowup:
    bl = _BLOWUPS.get(spine)
    if bl is None:
        bl = _build_blowup(spine)
        traced = sorted(canonicalize_curve(w, spine)[0].word for w in _blowup_boundary_words(bl))
        expected = sorted(b.word for b in spine.boundary_classes())
        if traced != expected:
            raise DTError("blow-up does not retract onto the spine")
        _BLOWUPS[spine] = bl
    return bl


def _numeric_arc_lengths(spine: RibbonSpine, h: HyperbolicStructure) -> list[float]:
    """Orthogeodesic length of each dual arc from the holonomy.

    The arc dual to an edge runs between the two boundary lifts adjacent to
    the sides of the edge's base lift; each side is read off by a boundary
    walk of the blown fatgraph, and a petal's far side is conjugated by the
    petal letter to account for the basepoint shift.
    """
    bl = _blowup(spine)
    out = []
    for edge in _arc_edges(spine):
        if edge.startswith("t"):
            g1, g2 = ("tree", int(edge[1:]) - 1, 0), ("tree", int(edge[1:]) - 1, 1)
            w1 = _boundary_walk_word(bl, g1)
            w2 = _boundary_walk_word(bl, g2)
            m1, m2 = h.rho(w1), h.rho(w2)
        else:
            w1 = _boundary_walk_word(bl, ("leg", edge))
            w2 = _boundary_walk_word(bl, ("leg", edge.upper()))
            m1 = h.rho(w1)
            mx = h.rho(edge)
            m2 = mat_mul(mat_mul(mx, h.rho(w2)), mat_inv(mx))
        out.append(geodesic_distance(fixed_points(m1), fixed_points(m2)))
    return out


def _arc_edges(spine: RibbonSpine) -> tuple[str, ...]:
    k = spine.rank
    return tuple(spine.generators) + tuple(f"t{i + 1}" for i in range(2 * k - 3))


def build_arc_system(
    spine: RibbonSpine,
    h: HyperbolicStructure | None = None,
    arc_lengths: Sequence[float] | None = None,
) -> ArcSystem:
    """Arc system dual to the blown-up spine.

    Lengths come from ``arc_lengths`` when given, else from the holonomy as
    true orthogeodesic lengths, else default to the length whose collar
    weight is 1 (so l_P counts total crossings).
    """
    bl = _blowup(spine)
    edges = _arc_edges(spine)
    if arc_lengths is not None:
        lengths = list(arc_lengths)
        if len(lengths) != len(edges):
            raise DTError(f"need {len(edges)} arc lengths")
    elif h is not None:
        lengths = _numeric_arc_lengths(spine, h)
    else:
        lengths = [UNIT_COLLAR_LENGTH] * len(edges)
    triples = tuple(
        tuple(bl.germ_edge[g] for g in germs) for germs in bl.vertices
    )
    return ArcSystem(spine, edges, tuple(lengths), triples)


# ---------------------------------------------------------------------------
# forward map: crossings of a class with every arc
# ---------------------------------------------------------------------------

def _tree_path_range(u: int, v: int) -> range:
    """Tree edges strictly between caterpillar vertices u and v."""
    return range(min(u, v), max(u, v))


def class_dt_vector(cls: CurveClass, arcs: ArcSystem) -> tuple[int, ...]:
    bl = _blowup(arcs.spine)
    word = cls.word
    m = [0] * arcs.size
    for i, gen in enumerate(arcs.spine.generators):
        m[i] = word.count(gen) + word.count(gen.upper())
    k = arcs.spine.rank
    for i, x in enumerate(word):
        y = word[(i + 1) % len(word)]
        u = bl.leg_vertex[inverse_letter(x)]
        v = bl.leg_vertex[y]
        for t in _tree_path_range(u, v):
            m[k + t] += 1
    return tuple(m)


def dt_coordinates(mc: RationalCurrent, arcs: ArcSystem) -> tuple[int, ...]:
    """Coordinates of an integral simple multi-curve: crossings with each arc.

    Every component must be simple, the components pairwise disjoint and the
    weights positive integers.
    """
    spine = arcs.spine
    classes = mc.classes()
    for c, w in mc:
        if w.denominator != 1:
            raise DTError(f"weight of {c} is not an integer")
        if self_intersection(c, spine) != 0:
            raise DTError(f"component {c} is not simple")
    for i, c1 in enumerate(classes):
        for c2 in classes[i + 1 :]:
            if intersection_number(c1, c2, spine) != 0:
                raise DTError(f"components {c1} and {c2} intersect")
    m = [0] * arcs.size
    for c, w in mc:
        vec = class_dt_vector(c, arcs)
        for i, val in enumerate(vec):
            m[i] += int(w) * val
    return tuple(m)


def is_admissible(m: Sequence[int], arcs: ArcSystem) -> bool:
    """Parity and triangle constraints at every complement hexagon."""
    if len(m) != arcs.size:
        raise DTError(f"vector has length {len(m)}, expected {arcs.size}")
    if any(x < 0 or int(x) != x for x in m):
        return False
    idx = {e: i for i, e in enumerate(arcs.edges)}
    for triple in arcs.vertex_triples:
        vals = [m[idx[e]] for e in triple]
        s = sum(vals)
        if s % 2 or any(s < 2 * x for x in vals):
            return False
    return True


# ---------------------------------------------------------------------------
# inverse map: hexagon strands and gluing
# ---------------------------------------------------------------------------

def reconstruct(m: Sequence[int], arcs: ArcSystem) -> RationalCurrent:
    """The unique integral simple multi-curve with the given coordinates.

    Each hexagon receives the forced corner strand counts; endpoints are
    matched across every arc in reversed slot order (the orientation of the
    two hexagon sides disagree along the shared arc).  Tracing the glued
    strands and recording petal letters yields the component words; parallel
    components merge into integer weights.
    """
    if not is_admissible(m, arcs):
        raise DTError(f"vector {tuple(m)} is not admissible")
    bl = _blowup(arcs.spine)
    idx = {e: i for i, e in enumerate(arcs.edges)}
    within: dict = {}
    for germs in bl.vertices:
        d = [m[idx[bl.germ_edge[g]]] for g in germs]
        for i in range(3):
            j = (i + 1) % 3
            l = (i + 2) % 3
            x = (d[i] + d[j] - d[l]) // 2  # corner strands between germs i, j
            for t in range(x):
                a = (germs[i], d[i] - 1 - t)
                b = (germs[j], t)
                within[a] = b
                within[b] = a
    across: dict = {}
    for germs in bl.vertices:
        for g in germs:
            partner = bl.germ_partner[g]
            d = m[idx[bl.germ_edge[g]]]
            for s in range(d):
                across[(g, s)] = (partner, d - 1 - s)

    seen: set = set()
    weights: dict[CurveClass, Fraction] = {}
    for start in within:
        if start in seen:
            continue
        letters = []
        state = start
        while True:
            seen.add(state)
            mate = within[state]
            seen.add(mate)
            g, _ = mate
            if g[0] == "leg":
                letters.append(g[1])
            state = across[mate]
            if state == start:
                break
        if not letters:
            raise DTError("traced a strand crossing no petal arc")
        cls, exponent = canonicalize_curve("".join(letters), arcs.spine)
        if exponent != 1:
            raise DTError("traced strand is a proper power")
        weights[cls] = weights.get(cls, Fraction(0)) + 1
    return RationalCurrent.from_dict(weights)


def boundary_vectors(arcs: ArcSystem) -> tuple[tuple[int, ...], ...]:
    """Coordinates of one parallel copy of each boundary circle."""
    return tuple(
        class_dt_vector(b, arcs) for b in arcs.spine.boundary_classes()
    )


def _peels_off(m: Sequence[int], p: Sequence[int], arcs: ArcSystem) -> bool:
    diff = [a - b for a, b in zip(m, p)]
    return all(x >= 0 for x in diff) and is_admissible(diff, arcs)


def is_internal_vector(m: Sequence[int], arcs: ArcSystem) -> bool:
    """No boundary-parallel component: no boundary vector peels off.

    A multi-curve contains a parallel copy of boundary j exactly when the
    coordinates minus that boundary's vector stay admissible, since a
    boundary-parallel circle is disjoint from every simple multi-curve and
    the coordinates are injective.
    """
    return not any(_peels_off(m, p, arcs) for p in boundary_vectors(arcs))


# ---------------------------------------------------------------------------
# census enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CensusRecord:
    L: float
    count_all: int
    count_internal: int
    meta: tuple[tuple[str, object], ...] = ()


def iter_census(arcs: ArcSystem, L: float) -> Iterator[tuple[int, ...]]:
    """Admissible vectors with l_P at most L, in lexicographic order."""
    if L < 0:
        raise DTError("census bound must be nonnegative")
    n = arcs.size
    caps = [int(math.floor(L / c + 1e-12)) for c in arcs.col]
    idx = {e: i for i, e in enumerate(arcs.edges)}
    # vertex checks become decidable once their last coordinate is assigned
    checks_at: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for triple in arcs.vertex_triples:
        pos = sorted(idx[e] for e in triple)
        checks_at[pos[-1]].append(tuple(pos))
    m = [0] * n

    def rec(i: int, used: float) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(m)
            return
        cap = caps[i]
        for v in range(cap + 1):
            budget = used + v * arcs.col[i]
            if budget > L + 1e-9:
                break
            m[i] = v
            ok = True
            for (p1, p2, p3) in checks_at[i]:
                s = m[p1] + m[p2] + m[p3]
                if s % 2 or s < 2 * m[p1] or s < 2 * m[p2] or s < 2 * m[p3]:
                    ok = False
                    break
            if ok:
                yield from rec(i + 1, budget)
        m[i] = 0

    return rec(0, 0.0)


def enumerate_census(arcs: ArcSystem, L: float) -> CensusRecord:
    count_all = 0
    count_internal = 0
    for m in iter_census(arcs, L):
        count_all += 1
        if is_internal_vector(m, arcs):
            count_internal += 1
    meta = (
        ("edges", arcs.edges),
        ("col", arcs.col),
        ("caps", tuple(int(math.floor(L / c + 1e-12)) for c in arcs.col)),
    )
    return CensusRecord(L, count_all, count_internal, meta)


def write_census_csv(path: str | Path, arcs: ArcSystem, L: float, resume: bool = True) -> CensusRecord:
    """Persist the census stream; resumable through a checkpoint comment.

    The file carries one row per vector (coordinates, l_P, internal flag)
    and a final comment line naming the last written vector, so an
    interrupted run can be continued in place.
    """
    path = Path(path)
    checkpoint: tuple[int, ...] | None = None
    rows_kept: list[str] = []
    if resume and path.exists():
        for line in path.read_text().splitlines():
            if line.startswith("# checkpoint:"):
                checkpoint = tuple(int(x) for x in line.split(":")[1].split(","))
            elif line and not line.startswith("#") and not line.startswith("m_"):
                rows_kept.append(line)
    header = [f"m_{e}" for e in arcs.edges] + ["ell_P", "internal"]
    count_all = count_internal = 0
    with path.open("w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        for row in rows_kept:
            f.write(row + "\n")
            count_all += 1
            count_internal += int(row.rsplit(",", 1)[1] == "1")
        last = checkpoint
        for m in iter_census(arcs, L):
            if checkpoint is not None and m <= checkpoint:
                continue
            internal = is_internal_vector(m, arcs)
            count_all += 1
            count_internal += int(internal)
            w.writerow(list(m) + [f"{arcs.lp(m):.12g}", int(internal)])
            last = m
        if last is not None:
            f.write(f"# checkpoint: {','.join(str(x) for x in last)}\n")
    return CensusRecord(L, count_all, count_internal, (("path", str(path)),))


def census_classes(
    arcs: ArcSystem,
    L: float,
    internal_only: bool = False,
) -> Iterator[tuple[tuple[int, ...], RationalCurrent]]:
    """Census stream with reconstructed multi-curves attached."""
    for m in iter_census(arcs, L):
        if internal_only and not is_internal_vector(m, arcs):
            continue
        yield m, reconstruct(m, arcs)


_SIMPLE_CACHE: dict[tuple, tuple[float, tuple[tuple[CurveClass, float], ...]]] = {}


def _simple_classes_with_length(
    arcs: ArcSystem, h: HyperbolicStructure | None, lp_bound: float
) -> tuple[tuple[CurveClass, float], ...]:
    """All simple non-peripheral classes with l_P below the bound, paired
    with their reported length (holonomy length when h is given)."""
    key = (arcs, h)
    cached = _SIMPLE_CACHE.get(key)
    if cached is not None and cached[0] >= lp_bound:
        return tuple(x for x in cached[1] if arcs.lp(class_dt_vector(x[0], arcs)) <= lp_bound + 1e-9)
    spine = arcs.spine
    out: list[tuple[CurveClass, float]] = []
    seen: set[CurveClass] = set()
    for _, mc in census_classes(arcs, lp_bound):
        for cls, _w in mc:
            if cls in seen or spine.is_peripheral(cls):
                continue
            seen.add(cls)
            if h is not None:
                from .hyperbolic import curve_length

                out.append((cls, curve_length(h, cls)))
            else:
                out.append((cls, arcs.lp(class_dt_vector(cls, arcs))))
    result = tuple(out)
    _SIMPLE_CACHE[key] = (lp_bound, result)
    return result


def simple_classes_up_to(
    arcs: ArcSystem,
    h: HyperbolicStructure | None,
    bound: float,
    distortion: float = 2.0,
) -> Iterator[CurveClass]:
    """Simple non-peripheral classes of length at most ``bound``, deduplicated.

    Length means holonomy length when ``h`` is given (the census is run out
    to distortion * bound in l_P and filtered), else l_P itself.
    """
    lp_bound = bound * (distortion if h is not None else 1.0)
    for cls, length in _simple_classes_with_length(arcs, h, lp_bound):
        if length <= bound + 1e-9:
            yield cls
