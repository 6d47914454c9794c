"""Topological surfaces with boundary and their one-vertex ribbon spines.

A compact oriented surface of genus g with n >= 1 boundary circles and
negative Euler characteristic deformation-retracts onto a wedge of
k = 2g + n - 1 circles.  Fixing a cyclic order of the 2k half-edges at the
wedge point (a ribbon structure) determines the surface up to homeomorphism;
the boundary circles are recovered by tracing the fatgraph.  All word-based
operations in this package run over such a spine.

Boundary tracing convention: after arriving at the vertex through half-edge
h, the boundary continues along the predecessor of h's partner in the cyclic
order.  With the documented orders this yields, e.g., the single boundary
word "abAB" on the one-holed torus and boundary words "a", "b", "AB" on the
pair of pants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .words import (
    WordError,
    canonical_cyclic,
    check_alphabet,
    cyclic_reduce,
    generators,
    inverse_letter,
    primitive_root,
    word_key,
)


class SurfaceError(ValueError):
    """Raised for non-hyperbolic or unsupported surface signatures."""


@dataclass(frozen=True, order=True)
class SurfaceSig:
    """Topological type (genus, number of boundary circles)."""

    genus: int
    n_boundary: int

    def __post_init__(self):
        if self.genus < 0 or self.n_boundary < 0:
            raise SurfaceError("genus and boundary count must be nonnegative")
        if self.euler() >= 0:
            raise SurfaceError(
                f"signature (g={self.genus}, n={self.n_boundary}) is not hyperbolic"
            )

    def euler(self) -> int:
        return 2 - 2 * self.genus - self.n_boundary

    @property
    def rank(self) -> int:
        return 2 * self.genus + self.n_boundary - 1


def complexity_constants(sig: SurfaceSig | None) -> dict:
    """Dimension constants N = 6g - 6 + 2n and N' = 6g - 6 + 3n.

    N is the dimension of the cone of measured laminations supported in the
    interior, N' additionally counts the boundary-parallel directions.  The
    empty surface (None) has N = N' = 0 by convention.
    """
    if sig is None:
        return {"N": 0, "Nprime": 0}
    g, n = sig.genus, sig.n_boundary
    N = 6 * g - 6 + 2 * n
    assert N == -3 * sig.euler() - n
    return {"N": N, "Nprime": 6 * g - 6 + 3 * n}


# Documented canonical half-edge orders.  Lowercase letter = half-edge leaving
# along the generator, uppercase = half-edge leaving along its inverse.  These
# are chosen so that boundary tracing yields the standard boundary words:
#   (1,1) -> abAB            (0,3) -> a, b, AB
#   (1,2) -> abABc, C        (0,4) -> abc, A, B, C
#   (2,1) -> abABcdCD
_HALF_EDGE_ORDERS = {
    (1, 1): ("a", "b", "A", "B"),
    (0, 3): ("a", "A", "b", "B"),
    (1, 2): ("a", "C", "c", "b", "A", "B"),
    (0, 4): ("a", "C", "c", "B", "b", "A"),
    (2, 1): ("a", "d", "C", "D", "c", "b", "A", "B"),
}


def _generic_order(sig: SurfaceSig) -> tuple[str, ...]:
    # Handle pairs first, then one loop per extra boundary circle.
    gens = generators(sig.rank)
    order: list[str] = []
    for i in range(sig.genus):
        a, b = gens[2 * i], gens[2 * i + 1]
        order += [a, b, a.upper(), b.upper()]
    for c in gens[2 * sig.genus :]:
        order += [c, c.upper()]
    return tuple(order)


@dataclass(frozen=True)
class RibbonSpine:
    """One-vertex fatgraph presentation of a surface with boundary."""

    sig: SurfaceSig
    half_edge_order: tuple[str, ...]
    boundary_words: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        k = self.sig.rank
        expected = set(generators(k)) | {x.upper() for x in generators(k)}
        if set(self.half_edge_order) != expected or len(self.half_edge_order) != 2 * k:
            raise SurfaceError("half-edge order must list each of the 2k half-edges once")
        words = trace_boundary(self.half_edge_order)
        if len(words) != self.sig.n_boundary:
            raise SurfaceError(
                f"half-edge order traces {len(words)} boundary cycles, "
                f"expected {self.sig.n_boundary}"
            )
        object.__setattr__(self, "boundary_words", words)

    @property
    def rank(self) -> int:
        return self.sig.rank

    @property
    def generators(self) -> tuple[str, ...]:
        return generators(self.sig.rank)

    def position(self, half_edge: str) -> int:
        return self.half_edge_order.index(half_edge)

    def boundary_classes(self) -> tuple["CurveClass", ...]:
        return tuple(CurveClass.from_word(w, self) for w in self.boundary_words)

    def is_peripheral(self, cls: "CurveClass") -> bool:
        return cls.word in {b.word for b in self.boundary_classes()}


def trace_boundary(order: Iterable[str]) -> tuple[str, ...]:
    """Boundary cycles of the one-vertex fatgraph, as words in the generators.

    Each half-edge is traversed exactly once over all cycles; the letters
    traversed along one cycle spell a boundary word.
    """
    order = tuple(order)
    pos = {h: i for i, h in enumerate(order)}
    nhalf = len(order)

    def successor(h: str) -> str:
        partner = inverse_letter(h)
        return order[(pos[partner] - 1) % nhalf]

    words = []
    seen: set[str] = set()
    for start in order:
        if start in seen:
            continue
        cycle = []
        h = start
        while True:
            cycle.append(h)
            seen.add(h)
            h = successor(h)
            if h == start:
                break
        words.append("".join(cycle))
    return tuple(words)


def build_standard_spine(sig: SurfaceSig, half_edge_order: Iterable[str] | None = None) -> RibbonSpine:
    """Spine with the documented canonical half-edge order for (g, n)."""
    if sig.n_boundary < 1:
        raise SurfaceError("word engine requires boundary: closed surfaces unsupported")
    if half_edge_order is None:
        key = (sig.genus, sig.n_boundary)
        half_edge_order = _HALF_EDGE_ORDERS.get(key) or _generic_order(sig)
    return RibbonSpine(sig, tuple(half_edge_order))


@dataclass(frozen=True, order=True)
class CurveClass:
    """Unoriented free homotopy class of a primitive essential closed curve.

    ``word`` is the canonical cyclic form: least string among all rotations
    of the cyclically reduced word and of its inverse.
    """

    word: str

    @staticmethod
    def from_word(word: str, spine: RibbonSpine) -> "CurveClass":
        cls, exponent = canonicalize_curve(word, spine)
        if exponent != 1:
            raise WordError(f"{word!r} is a proper power; weight the root instead")
        return cls

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return self.word


def canonicalize_curve(word: str, spine: RibbonSpine) -> tuple[CurveClass, int]:
    """Cyclic reduction, primitive-root extraction and symmetrized minimum.

    Returns the primitive class and the exponent; proper powers fold the
    exponent into the weight of a current.
    """
    check_alphabet(word, spine.rank)
    reduced = cyclic_reduce(word)
    if not reduced:
        raise WordError(f"word {word!r} reduces to the trivial class")
    root, exponent = primitive_root(reduced)
    return CurveClass(canonical_cyclic(root)), exponent


Weight = Fraction


def _as_weight(w) -> Fraction:
    f = Fraction(w)
    if f <= 0:
        raise ValueError("current weights must be positive")
    return f


@dataclass(frozen=True)
class RationalCurrent:
    """Finite positively-weighted formal sum of curve classes.

    Immutable; classes are stored in canonical form with positive rational
    weights.  Proper powers are normalized away at construction, so the
    support always consists of primitive classes.
    """

    weights: tuple[tuple[CurveClass, Fraction], ...]

    @staticmethod
    def zero() -> "RationalCurrent":
        return RationalCurrent(())

    @staticmethod
    def from_dict(d: Mapping[CurveClass, Fraction | int]) -> "RationalCurrent":
        items = [(c, _as_weight(w)) for c, w in d.items()]
        items.sort(key=lambda cw: word_key(cw[0].word))
        return RationalCurrent(tuple(items))

    @staticmethod
    def from_words(spine: RibbonSpine, pairs: Iterable[tuple[str, Fraction | int | str]]) -> "RationalCurrent":
        acc: dict[CurveClass, Fraction] = {}
        for word, w in pairs:
            cls, exponent = canonicalize_curve(word, spine)
            acc[cls] = acc.get(cls, Fraction(0)) + _as_weight(w) * exponent
        return RationalCurrent.from_dict(acc)

    def __iter__(self):
        return iter(self.weights)

    def __bool__(self) -> bool:
        return bool(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def classes(self) -> tuple[CurveClass, ...]:
        return tuple(c for c, _ in self.weights)

    def weight(self, cls: CurveClass) -> Fraction:
        for c, w in self.weights:
            if c == cls:
                return w
        return Fraction(0)

    def __add__(self, other: "RationalCurrent") -> "RationalCurrent":
        acc = {c: w for c, w in self.weights}
        for c, w in other.weights:
            acc[c] = acc.get(c, Fraction(0)) + w
        return RationalCurrent.from_dict(acc)

    def scale(self, t) -> "RationalCurrent":
        t = Fraction(t)
        if t == 0:
            return RationalCurrent.zero()
        return RationalCurrent.from_dict({c: w * t for c, w in self.weights})

    def key(self) -> tuple:
        return tuple((c.word, w) for c, w in self.weights)

    def __str__(self) -> str:
        if not self.weights:
            return "0"
        return " + ".join(f"{w}*{c}" for c, w in self.weights)


def interior_boundary_split(
    current: RationalCurrent, spine: RibbonSpine
) -> tuple[RationalCurrent, tuple[Fraction, ...]]:
    """Unique splitting c = c0 + sum_j u_j * (j-th boundary class).

    ``c0`` carries the classes not conjugate to a boundary word or its
    inverse; ``u`` lists one nonnegative weight per boundary circle.
    """
    boundary = spine.boundary_classes()
    index = {b: j for j, b in enumerate(boundary)}
    u = [Fraction(0)] * spine.sig.n_boundary
    internal: dict[CurveClass, Fraction] = {}
    for cls, w in current:
        if cls in index:
            u[index[cls]] += w
        else:
            internal[cls] = w
    return RationalCurrent.from_dict(internal), tuple(u)


def boundary_current(spine: RibbonSpine, weights: Iterable[Fraction | int]) -> RationalCurrent:
    """Current supported on the boundary with the given per-circle weights."""
    acc: dict[CurveClass, Fraction] = {}
    for b, w in zip(spine.boundary_classes(), weights, strict=True):
        w = Fraction(w)
        if w < 0:
            raise ValueError("boundary weights must be nonnegative")
        if w > 0:
            acc[b] = acc.get(b, Fraction(0)) + w
    return RationalCurrent.from_dict(acc)
