"""Mapping classes as free-group automorphisms and orbit search.

A mapping class is stored by the reduced images of the spine generators,
together with the images under its inverse.  The tables in
``twist_generators`` hold Dehn twists along a documented curve system for
each supported signature; every table entry fixes each boundary class up to
conjugacy and free inversion, which the constructor checks.

Orbit enumeration is breadth-first over the generator family with canonical
deduplication.  Hyperbolic length is not monotone along generator paths, so
pruning is heuristic: the frontier keeps elements up to ``slack`` times the
target radius, and the slack escalates until the reported ball stabilizes
twice.  Completeness is therefore certified empirically per query and the
result carries an explicit stability flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .boundary_order import current_pairing
from .hyperbolic import HyperbolicStructure, curve_length
from .surface import (
    CurveClass,
    RationalCurrent,
    RibbonSpine,
    SurfaceError,
    canonicalize_curve,
)
from .words import free_reduce, inverse


class MCGError(ValueError):
    pass


@dataclass(frozen=True)
class MappingClass:
    """Automorphism of the spine's free group with a stored inverse."""

    spine: RibbonSpine
    images: tuple[tuple[str, str], ...]
    inverse_images: tuple[tuple[str, str], ...]
    name: str = ""

    def __post_init__(self):
        img = dict(self.images)
        inv = dict(self.inverse_images)
        for g in self.spine.generators:
            if g not in img or g not in inv:
                raise MCGError(f"missing image for generator {g!r}")
            round_trip = free_reduce("".join(
                img[x] if x.islower() else inverse(img[x.lower()]) for x in inv[g]
            ))
            if round_trip != g:
                raise MCGError(f"{self.name or 'map'}: inverse fails on {g!r}")
        for b in self.spine.boundary_classes():
            if self.apply_class(b) != b:
                raise MCGError(f"{self.name or 'map'} moves boundary class {b}")

    def apply_word(self, word: str) -> str:
        img = dict(self.images)
        return free_reduce("".join(
            img[x] if x.islower() else inverse(img[x.lower()]) for x in word
        ))

    def apply_class(self, cls: CurveClass) -> CurveClass:
        out, exponent = canonicalize_curve(self.apply_word(cls.word), self.spine)
        assert exponent == 1, "automorphisms preserve primitivity"
        return out

    def apply_current(self, c: RationalCurrent) -> RationalCurrent:
        acc: dict[CurveClass, Fraction] = {}
        for cls, w in c:
            img = self.apply_class(cls)
            acc[img] = acc.get(img, Fraction(0)) + w
        return RationalCurrent.from_dict(acc)

    def inverse_map(self) -> "MappingClass":
        return MappingClass(
            self.spine, self.inverse_images, self.images, name=f"{self.name}^-1"
        )

    def compose(self, other: "MappingClass") -> "MappingClass":
        """self after other."""
        images = tuple(
            (g, self.apply_word(dict(other.images)[g])) for g in self.spine.generators
        )
        inv = tuple(
            (g, other.inverse_map().apply_word(dict(self.inverse_images)[g]))
            for g in self.spine.generators
        )
        return MappingClass(self.spine, images, inv, name=f"{self.name}*{other.name}")


def apply(phi: MappingClass, c: CurveClass | RationalCurrent):
    if isinstance(c, CurveClass):
        return phi.apply_class(c)
    return phi.apply_current(c)


def identity_map(spine: RibbonSpine) -> MappingClass:
    ids = tuple((g, g) for g in spine.generators)
    return MappingClass(spine, ids, ids, name="id")


def _twist(spine: RibbonSpine, name: str, **imgs: str) -> MappingClass:
    """Table entry: images for moved generators plus the inverse images."""
    fwd = {g: g for g in spine.generators}
    fwd.update({k: v for k, v in imgs.items() if not k.endswith("_inv")})
    bwd = {g: g for g in spine.generators}
    bwd.update({k[:-4]: v for k, v in imgs.items() if k.endswith("_inv")})
    return MappingClass(
        spine,
        tuple(sorted(fwd.items())),
        tuple(sorted(bwd.items())),
        name=name,
    )


def twist_generators(spine: RibbonSpine) -> list[MappingClass]:
    """Dehn twists along the documented curve system of the signature.

    (1,1): twists along the core curves a and b.
    (0,3): twists along the boundary-parallel curves (inner, hence acting
           trivially on unoriented classes).
    (1,2), (2,1): handle twists plus the twist along the separating curve
           bounding the first handle.
    (0,4): twists along the curves enclosing boundary pairs {1,2} and {2,3}.
    """
    key = (spine.sig.genus, spine.sig.n_boundary)
    if key == (1, 1):
        return [
            _twist(spine, "T_a", b="ba", b_inv="bA"),
            _twist(spine, "T_b", a="ab", a_inv="aB"),
        ]
    if key == (0, 3):
        return [
            _twist(spine, "T_bnd1", b="abA", b_inv="Aba"),
            _twist(spine, "T_bnd2", a="baB", a_inv="Bab"),
        ]
    if key == (1, 2):
        d, di = "abAB", "baBA"
        return [
            _twist(spine, "T_a", b="ba", b_inv="bA"),
            _twist(spine, "T_b", a="ab", a_inv="aB"),
            _twist(
                spine, "T_sep",
                a=f"{d}a{di}", b=f"{d}b{di}",
                a_inv=f"{di}a{d}", b_inv=f"{di}b{d}",
            ),
        ]
    if key == (0, 4):
        return [
            _twist(spine, "T_12", c="abcBA", c_inv="BAcab"),
            _twist(spine, "T_23", a="bcaCB", a_inv="CBabc"),
        ]
    if key == (2, 1):
        d, di = "abAB", "baBA"
        return [
            _twist(spine, "T_a", b="ba", b_inv="bA"),
            _twist(spine, "T_b", a="ab", a_inv="aB"),
            _twist(spine, "T_c", d="dc", d_inv="dC"),
            _twist(spine, "T_d", c="cd", c_inv="cD"),
            _twist(
                spine, "T_sep",
                a=f"{d}a{di}", b=f"{d}b{di}",
                a_inv=f"{di}a{d}", b_inv=f"{di}b{d}",
            ),
        ]
    raise SurfaceError(f"no twist table for signature {key}")


def generator_family(spine: RibbonSpine) -> list[MappingClass]:
    gens = twist_generators(spine)
    return gens + [g.inverse_map() for g in gens]


@dataclass(frozen=True)
class OrbitBall:
    """Orbit elements of length at most L, with a completeness flag."""

    elements: tuple[RationalCurrent, ...]
    radius: float
    slack_used: float
    stable: bool
    explored: int
    budget_exhausted: bool = False

    def keys(self) -> set:
        return {c.key() for c in self.elements}


def _ball_once(
    start: RationalCurrent,
    gens: list[MappingClass],
    h: HyperbolicStructure,
    L: float,
    slack: float,
    max_elements: int,
) -> tuple[dict, int, bool]:
    """Visited currents within slack * L; returns (ball dict, explored, exhausted)."""
    cutoff = slack * L
    visited = {start.key(): start}
    frontier = [start]
    exhausted = False
    while frontier and not exhausted:
        nxt = []
        for cur in frontier:
            for g in gens:
                img = g.apply_current(cur)
                key = img.key()
                if key in visited:
                    continue
                if curve_length(h, img) > cutoff:
                    continue
                visited[key] = img
                nxt.append(img)
                if len(visited) > max_elements:
                    exhausted = True
                    break
            if exhausted:
                break
        frontier = nxt
    ball = {
        k: c for k, c in visited.items() if curve_length(h, c) <= L + 1e-9
    }
    return ball, len(visited), exhausted


def orbit_ball(
    c: RationalCurrent | CurveClass,
    h: HyperbolicStructure,
    L: float,
    slack: float = 2.0,
    max_elements: int = 200000,
    spine: RibbonSpine | None = None,
) -> OrbitBall:
    """Mapping-class orbit elements of c with length at most L.

    Breadth-first closure over the twist generator family, deduplicated by
    canonical form, frontier pruned at ``slack * L``.  The slack escalates
    in steps of 0.5 until the reported ball is unchanged twice in a row;
    ``stable`` records whether that happened within budget.
    """
    if L <= 0:
        raise MCGError("orbit ball needs a positive radius")
    if isinstance(c, CurveClass):
        c = RationalCurrent.from_dict({c: Fraction(1)})
    if spine is None:
        spine = h.spine
    if curve_length(h, c) > L + 1e-9:
        return OrbitBall((), L, slack, True, 1)
    gens = generator_family(spine)
    history: list[tuple[float, dict]] = []
    sl = slack
    explored = 0
    exhausted = False
    while True:
        ball, explored, exhausted = _ball_once(c, gens, h, L, sl, max_elements)
        history.append((sl, ball))
        if exhausted or sl > slack + 6.0:
            break
        if len(history) >= 3 and set(history[-1][1]) == set(history[-2][1]) == set(history[-3][1]):
            break
        sl += 0.5
    stable = (
        not exhausted
        and len(history) >= 3
        and set(history[-1][1]) == set(history[-2][1]) == set(history[-3][1])
    )
    sl_used, final = history[-1]
    ordered = tuple(sorted(final.values(), key=lambda x: x.key()))
    return OrbitBall(ordered, L, sl_used, stable, explored, exhausted)


def orbit_divergence_profile(
    c: RationalCurrent,
    b_prime: RationalCurrent,
    spine: RibbonSpine,
    max_shell: int = 30,
    margin: float = 10.0,
    max_elements: int = 200000,
) -> dict[int, int]:
    """Shell counts {l: #orbit elements with pairing against b' in [l, l+1)}.

    ``b_prime`` must bind; the orbit of c is then discrete in the pairing,
    every shell is finite, and the minimal pairing over the discovered orbit
    grows without bound as the search deepens.  Shells are enumerated by a
    pruned breadth-first search whose cutoff escalates until the counts up
    to ``max_shell`` stabilize twice.
    """
    from .decompose import is_binding

    if not is_binding(b_prime, spine):
        raise MCGError("reference multi-curve does not bind")
    gens = generator_family(spine)

    def shells_with(cutoff: float) -> dict[int, int]:
        visited = {c.key()}
        frontier = [c]
        shells: dict[int, int] = {}
        val0 = current_pairing(c, b_prime, spine)
        if val0 < cutoff:
            shells[int(val0)] = 1
        while frontier:
            nxt = []
            for cur in frontier:
                for g in gens:
                    img = g.apply_current(cur)
                    key = img.key()
                    if key in visited:
                        continue
                    visited.add(key)
                    val = current_pairing(img, b_prime, spine)
                    if val > cutoff or len(visited) > max_elements:
                        continue
                    if val <= max_shell:
                        shells[int(val)] = shells.get(int(val), 0) + 1
                    nxt.append(img)
            frontier = nxt
        return shells

    prev = None
    stable_runs = 0
    cut = max_shell + margin
    while True:
        shells = shells_with(cut)
        if shells == prev:
            stable_runs += 1
            if stable_runs >= 2:
                return shells
        else:
            stable_runs = 0
        prev = shells
        cut += margin
        if cut > max_shell + 8 * margin:
            return shells
