"""Standard decomposition of rational currents and binding diagnostics.

A rational current splits uniquely as boundary part + simple multi-curve
part + remainder: the boundary part collects classes conjugate to boundary
words, the simple part collects the components that are embedded and
disjoint from everything else, and the remainder has no such component
(it is "scc-free"; for rational currents no lamination piece occurs).

The remainder's hull is the smallest subsurface containing its support.
It is computed from the crossing pattern: classes crossing each other merge
into connected pieces, each piece spans the subgroup generated by its
classes together with one conjugate witness per normalized crossing (the
fundamental group of a neighborhood of the geodesic union), and candidate
boundary circles are the census classes disjoint from the piece that are
conjugate into that subgroup.  Piece types follow from the subgroup rank
and the boundary count.  A current is binding exactly when no essential
simple class is disjoint from it and its hull is the whole surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .boundary_order import (
    crossing_witness,
    intersection_number,
    linked_pairs,
    self_intersection,
)
from .dt_census import ArcSystem, build_arc_system, class_dt_vector, simple_classes_up_to
from .hyperbolic import HyperbolicStructure, curve_length
from .subgroups import CoreGraph
from .surface import (
    CurveClass,
    RationalCurrent,
    RibbonSpine,
    SurfaceSig,
    interior_boundary_split,
)
from .words import inverse


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class StandardDecomposition:
    """c = gamma + alpha + boundary, the unique split of a rational current.

    ``gamma`` is a weighted simple multi-curve, ``alpha`` has no simple
    component disjoint from the rest, ``boundary`` lists one nonnegative
    weight per boundary circle.  The lamination part of the general theory
    is identically zero for rational currents.
    """

    gamma: RationalCurrent
    alpha: RationalCurrent
    boundary: tuple[Fraction, ...]

    def reassemble(self, spine: RibbonSpine) -> RationalCurrent:
        from .surface import boundary_current

        total = self.gamma + self.alpha
        if any(self.boundary):
            total = total + boundary_current(spine, self.boundary)
        return total


@dataclass(frozen=True)
class SubsurfacePiece:
    boundary_classes: tuple[CurveClass, ...]
    sig: SurfaceSig | None
    peripheral_in_s: tuple[int, ...]  # indices of ambient boundary circles inside
    coincident_boundary: bool = False


@dataclass(frozen=True)
class SubsurfaceDescription:
    """Isotopy data of a subsurface: per piece, boundary classes and type."""

    pieces: tuple[SubsurfacePiece, ...]
    ambient: SurfaceSig
    full: bool

    def euler_total(self) -> int:
        return sum(p.sig.euler() for p in self.pieces if p.sig is not None)

    def boundary_words(self) -> set[str]:
        return {c.word for p in self.pieces for c in p.boundary_classes}

    @staticmethod
    def whole_surface(sig: SurfaceSig) -> "SubsurfaceDescription":
        piece = SubsurfacePiece((), sig, tuple(range(sig.n_boundary)))
        return SubsurfaceDescription((piece,), sig, True)

    @staticmethod
    def empty(sig: SurfaceSig) -> "SubsurfaceDescription":
        return SubsurfaceDescription((), sig, False)


def scc_split(c0: RationalCurrent, spine: RibbonSpine) -> tuple[RationalCurrent, RationalCurrent]:
    """Split an internal current into (simple multi-curve part, scc-free rest).

    A component joins the simple part exactly when it is embedded and
    disjoint from every other component; the split is unique and idempotent.
    """
    for b in spine.boundary_classes():
        if c0.weight(b) != 0:
            raise DecompositionError("scc_split expects an internal current")
    classes = c0.classes()
    gamma: dict[CurveClass, Fraction] = {}
    alpha: dict[CurveClass, Fraction] = {}
    for cls, w in c0:
        simple = self_intersection(cls, spine) == 0
        disjoint = all(
            intersection_number(cls, other, spine) == 0
            for other in classes
            if other != cls
        )
        (gamma if simple and disjoint else alpha)[cls] = w
    return RationalCurrent.from_dict(gamma), RationalCurrent.from_dict(alpha)


def standard_decomposition(c: RationalCurrent, spine: RibbonSpine) -> StandardDecomposition:
    c0, u = interior_boundary_split(c, spine)
    gamma, alpha = scc_split(c0, spine)
    return StandardDecomposition(gamma, alpha, u)


def _length(c: RationalCurrent | CurveClass, spine: RibbonSpine,
            h: HyperbolicStructure | None, arcs: ArcSystem) -> float:
    if h is not None:
        return curve_length(h, c)
    if isinstance(c, CurveClass):
        return arcs.lp(class_dt_vector(c, arcs))
    return sum(float(w) * arcs.lp(class_dt_vector(cls, arcs)) for cls, w in c)


def disjoint_simple_curves(
    alpha: RationalCurrent,
    spine: RibbonSpine,
    h: HyperbolicStructure | None = None,
    bound: float | None = None,
    arcs: ArcSystem | None = None,
) -> list[CurveClass]:
    """Non-peripheral simple classes of length at most ``bound`` disjoint
    from every component of ``alpha``.

    Candidates stream from the census reconstruction.  The default bound is
    2 * length(alpha) + 1: a boundary circle of a complement region is a
    concatenation of subarcs of the support traversed at most twice, and
    tightening only shortens.  With no holonomy the collar-weighted arc
    coordinate length is used throughout, for which the same count holds.
    """
    if arcs is None:
        arcs = build_arc_system(spine, h)
    if bound is None:
        if not alpha:
            raise DecompositionError("a bound is required for the zero current")
        bound = 2.0 * _length(alpha, spine, h, arcs) + 1.0
    out = []
    for cls in simple_classes_up_to(arcs, h, bound):
        if all(intersection_number(cls, a, spine) == 0 for a in alpha.classes()):
            out.append(cls)
    out.sort(key=lambda c: c.word)
    return out


def is_binding(
    alpha: RationalCurrent,
    spine: RibbonSpine,
    h: HyperbolicStructure | None = None,
    bound: float | None = None,
    arcs: ArcSystem | None = None,
) -> bool:
    """Whether the current crosses every essential geodesic.

    True exactly when no essential simple class is disjoint from it and its
    hull is the whole surface; on a pair of pants the first condition is
    vacuous since every simple class is boundary-parallel.
    """
    if not alpha:
        raise DecompositionError("the zero current does not bind")
    _, boundary_weights = interior_boundary_split(alpha, spine)
    if any(boundary_weights):
        raise DecompositionError("binding test expects an internal current")
    # A proper hull would expose its boundary circles as disjoint simple
    # classes, so emptiness of the search settles both conditions at once;
    # a simple component disjoint from the rest is itself such a class.
    return not disjoint_simple_curves(alpha, spine, h, bound, arcs)


def _crossing_components(alpha: RationalCurrent, spine: RibbonSpine) -> list[list[CurveClass]]:
    classes = list(alpha.classes())
    parent = {c: c for c in classes}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for i, c1 in enumerate(classes):
        for c2 in classes[i + 1 :]:
            if intersection_number(c1, c2, spine) > 0:
                parent[find(c1)] = find(c2)
    comps: dict[CurveClass, list[CurveClass]] = {}
    for c in classes:
        comps.setdefault(find(c), []).append(c)
    return list(comps.values())


def _piece_subgroup(component: Sequence[CurveClass], spine: RibbonSpine) -> CoreGraph:
    """Fundamental group of a neighborhood of the geodesic union.

    Generated by the component classes and one conjugate witness per
    normalized crossing, self-crossings included.
    """
    gens: list[str] = [c.word for c in component]
    for idx, c1 in enumerate(component):
        for pair in linked_pairs(spine, c1.word, c1.word, skip_diagonal=True):
            gens.append(crossing_witness(c1.word, c1.word, pair))
        for c2 in component[idx + 1 :]:
            for pair in linked_pairs(spine, c1.word, c2.word, skip_diagonal=False):
                gens.append(crossing_witness(c1.word, c2.word, pair))
    return CoreGraph(gens)


def hull(
    alpha: RationalCurrent,
    spine: RibbonSpine,
    h: HyperbolicStructure | None = None,
    bound: float | None = None,
    arcs: ArcSystem | None = None,
    _allow_simple: bool = False,
) -> SubsurfaceDescription:
    """Smallest subsurface containing the support of an scc-free current.

    Pieces correspond to crossing-connected components of the support; each
    piece's boundary classes are the disjoint simple census classes that are
    conjugate into the piece subgroup, its ambient boundary circles are the
    boundary words conjugate into the subgroup, and its type follows from
    the subgroup rank.  Inputs whose data force two coincident boundary
    circles are flagged on the affected piece.
    """
    if not alpha:
        raise DecompositionError("the zero current has no hull")
    _, boundary_weights = interior_boundary_split(alpha, spine)
    if any(boundary_weights):
        raise DecompositionError("hull expects an internal current")
    if not _allow_simple:
        gamma, _ = scc_split(alpha, spine)
        if gamma:
            raise DecompositionError(
                "current has a disjoint simple component; split it off first"
            )
    candidates = disjoint_simple_curves(alpha, spine, h, bound, arcs)
    if not candidates:
        return SubsurfaceDescription.whole_surface(spine.sig)

    pieces = []
    for component in _crossing_components(alpha, spine):
        graph = _piece_subgroup(component, spine)
        rank = graph.rank()
        boundary_classes = tuple(
            c for c in candidates if graph.traces_cycle(c.word) or graph.traces_cycle(inverse(c.word))
        )
        peripheral = tuple(
            j for j, b in enumerate(spine.boundary_classes())
            if graph.traces_cycle(b.word) or graph.traces_cycle(inverse(b.word))
        )
        n_b = len(boundary_classes) + len(peripheral)
        coincident = False
        if (rank + 1 - n_b) % 2 or rank + 1 - n_b < 0:
            # a non-separating cut can bound the piece from both sides
            n_b = len(boundary_classes) * 2 + len(peripheral)
            coincident = True
        genus2 = rank + 1 - n_b
        if genus2 < 0 or genus2 % 2:
            raise DecompositionError(
                f"inconsistent hull bookkeeping: rank {rank}, boundary {n_b}"
            )
        pieces.append(
            SubsurfacePiece(
                boundary_classes,
                SurfaceSig(genus2 // 2, n_b),
                peripheral,
                coincident,
            )
        )
    full = all(
        not p.boundary_classes
        and p.sig == spine.sig
        for p in pieces
    ) and len(pieces) == 1
    return SubsurfaceDescription(tuple(pieces), spine.sig, full)


@dataclass(frozen=True)
class PartitionType:
    """Invariant partition data (R, C, A) of a rational current.

    R is always empty in the rational case; C is the unweighted support of
    the simple part; A describes the hull of the scc-free remainder.
    """

    C: tuple[CurveClass, ...]
    A: SubsurfaceDescription
    ambient: SurfaceSig

    @property
    def R_empty(self) -> bool:
        return True


def partition_type(
    c: RationalCurrent,
    spine: RibbonSpine,
    h: HyperbolicStructure | None = None,
    arcs: ArcSystem | None = None,
) -> PartitionType:
    dec = standard_decomposition(c, spine)
    C = dec.gamma.classes()
    if dec.alpha:
        A = hull(dec.alpha, spine, h, None, arcs)
    else:
        A = SubsurfaceDescription.empty(spine.sig)
    return PartitionType(C, A, spine.sig)


def is_complete_pair(
    R: SubsurfaceDescription | None,
    c: RationalCurrent,
    spine: RibbonSpine,
    h: HyperbolicStructure | None = None,
    arcs: ArcSystem | None = None,
) -> bool:
    """Whether every boundary circle of R is accounted for by c.

    The pair condition (disjointness of R and the support of c) is checked
    through intersection numbers with R's boundary classes; completeness
    requires each boundary class of R to be peripheral in the ambient
    surface, or a component of the simple part of c, or isotopic to a hull
    boundary of the remainder part.
    """
    if R is None or not R.pieces:
        return True
    if R.full:
        return not c or all(
            spine.is_peripheral(cls) for cls in c.classes()
        )
    for piece in R.pieces:
        for b in piece.boundary_classes:
            for cls in c.classes():
                if intersection_number(b, cls, spine) != 0:
                    raise DecompositionError("(R, c) is not a pair: supports cross")
    dec = standard_decomposition(c, spine)
    gamma_support = {cls.word for cls in dec.gamma.classes()}
    hull_words: set[str] = set()
    if dec.alpha:
        hull_words = hull(dec.alpha, spine, h, None, arcs).boundary_words()
    peripheral = {b.word for b in spine.boundary_classes()}
    for piece in R.pieces:
        for b in piece.boundary_classes:
            if b.word in peripheral or b.word in gamma_support or b.word in hull_words:
                continue
            return False
    return True
