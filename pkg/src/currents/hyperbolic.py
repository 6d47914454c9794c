"""Hyperbolic structures with geodesic boundary and trace-based lengths.

A structure is a discrete faithful representation of the spine's free group
into SL(2, R), built from Fenchel-Nielsen data.  The length of a class is
2*arccosh(|tr|/2) of its holonomy, extended linearly in the weights to
rational currents.  Constructions:

* pair of pants (0,3): the trace triple (tr a, tr b, tr ab) =
  (-2cosh(x1/2), -2cosh(x3/2), -2cosh(x2/2)) realized by explicit matrices;
  all three traces <= -2 puts the representation in the Fricke region.
* one-holed torus (1,1): a is diagonal with translation length l_a; the
  off-diagonal entries of b are forced by the commutator trace identity
  tr[a,b] = 2 - 4 q r sinh^2(l_a/2), so the boundary length is met exactly
  and is independent of the twist.

The module also carries the planar geometry used by arc lengths and the
test-time crossing oracle: fixed points on the circle at infinity, distances
between geodesics via spacelike normal vectors in the Minkowski model, and
crossing parameters along an oriented axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .surface import CurveClass, RationalCurrent, RibbonSpine, SurfaceSig
from .words import check_alphabet, free_reduce

Mat = tuple[float, float, float, float]  # row-major 2x2, determinant 1

_ID: Mat = (1.0, 0.0, 0.0, 1.0)

# words used for the hyperbolicity spot check of a freshly built structure
_SANITY_WORDS = ("a", "b", "ab", "aB", "aab", "abb", "abaB")


class GeometryError(ValueError):
    pass


def mat_mul(m: Mat, n: Mat) -> Mat:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_inv(m: Mat) -> Mat:
    a, b, c, d = m
    return (d, -b, -c, a)


def trace(m: Mat) -> float:
    return m[0] + m[3]


@dataclass(frozen=True)
class HyperbolicStructure:
    """SL(2,R) holonomy for each spine generator, with FN metadata."""

    spine: RibbonSpine
    matrices: tuple[tuple[str, Mat], ...]
    meta: tuple[tuple[str, float], ...] = ()

    def matrix(self, gen: str) -> Mat:
        for g, m in self.matrices:
            if g == gen:
                return m
        raise GeometryError(f"no matrix for generator {gen!r}")

    def rho(self, word: str) -> Mat:
        check_alphabet(word, self.spine.rank)
        out = _ID
        for x in word:
            m = self.matrix(x.lower())
            if x.isupper():
                m = mat_inv(m)
            out = mat_mul(out, m)
        return out

    @property
    def sig(self) -> SurfaceSig:
        return self.spine.sig

    def boundary_lengths(self) -> tuple[float, ...]:
        return tuple(curve_length(self, CurveClass(w)) for w in
                     (b.word for b in self.spine.boundary_classes()))


def curve_length(h: HyperbolicStructure, c: CurveClass | RationalCurrent) -> float:
    """Translation length of a class; linear in the weights on currents."""
    if isinstance(c, RationalCurrent):
        return sum(float(w) * curve_length(h, cls) for cls, w in c)
    word = free_reduce(c.word)
    if not word:
        raise GeometryError("trivial word has no length")
    t = abs(trace(h.rho(word)))
    if t <= 2.0:
        raise GeometryError(f"non-hyperbolic holonomy for {c.word!r} (|tr| = {t})")
    return 2.0 * math.acosh(t / 2.0)


def collar_width(x: float) -> float:
    """Half-width arcsinh(1/sinh(x/2)) of the embedded collar of a geodesic.

    Strictly decreasing; the fixed point is at x = 2 arcsinh(1).
    """
    if x <= 0:
        raise GeometryError("collar width needs a positive length")
    return math.asinh(1.0 / math.sinh(x / 2.0))


def orthoarc_length(boundary_lengths: Sequence[float], pair: tuple[int, int]) -> float:
    """Length of the orthogeodesic arc between two pants boundary circles.

    Right-angled hexagon identity: with boundary half-lengths xi = x_i/2,
    cosh(l_ij) = (cosh(x_k) + cosh(x_i) cosh(x_j)) / (sinh(x_i) sinh(x_j)).
    """
    if len(boundary_lengths) != 3 or any(x <= 0 for x in boundary_lengths):
        raise GeometryError("need three positive pants boundary lengths")
    i, j = pair
    if i == j or not {i, j} <= {0, 1, 2}:
        raise GeometryError("pair must name two distinct pants boundaries")
    k = ({0, 1, 2} - {i, j}).pop()
    xi, xj, xk = (boundary_lengths[t] / 2.0 for t in (i, j, k))
    val = (math.cosh(xk) + math.cosh(xi) * math.cosh(xj)) / (
        math.sinh(xi) * math.sinh(xj)
    )
    return math.acosh(val)


def _sanity_check(h: HyperbolicStructure, boundary_lengths: Sequence[float]) -> None:
    traced = h.boundary_lengths()
    for want, got in zip(boundary_lengths, traced, strict=True):
        if abs(want - got) > 1e-9:
            raise GeometryError(
                f"boundary length contract violated: wanted {want}, traced {got}"
            )
    for w in _SANITY_WORDS:
        try:
            check_alphabet(w, h.spine.rank)
        except Exception:
            continue
        if abs(trace(h.rho(w))) <= 2.0:
            raise GeometryError(f"sanity sample word {w!r} is not hyperbolic")


def from_fenchel_nielsen(
    sig: SurfaceSig,
    spine: RibbonSpine,
    lengths: Sequence[float] = (),
    twists: Sequence[float] = (),
    boundary_lengths: Sequence[float] = (),
) -> HyperbolicStructure:
    """Hyperbolic structure from pants data on the supported signatures.

    (0,3): no pants curves; boundary_lengths = (x1, x2, x3) prescribes the
    lengths of the traced boundary classes in spine order.
    (1,1): one pants curve (the a-generator) with length and twist;
    boundary_lengths = (l_boundary,).
    """
    if any(x <= 0 for x in lengths) or any(x <= 0 for x in boundary_lengths):
        raise GeometryError("all lengths must be positive")
    key = (sig.genus, sig.n_boundary)
    if key == (0, 3):
        if lengths or twists or len(boundary_lengths) != 3:
            raise GeometryError("pants take no FN curves and three boundary lengths")
        x1, x2, x3 = boundary_lengths
        alpha = -2.0 * math.cosh(x1 / 2.0)
        beta = -2.0 * math.cosh(x3 / 2.0)
        mu = math.exp(x2 / 2.0)
        A: Mat = (alpha, 1.0, -1.0, 0.0)
        B: Mat = (0.0, mu, -1.0 / mu, beta)
        h = HyperbolicStructure(
            spine,
            (("a", A), ("b", B)),
            meta=(("x1", x1), ("x2", x2), ("x3", x3)),
        )
        _sanity_check(h, boundary_lengths)
        return h
    if key == (1, 1):
        if len(lengths) != 1 or len(boundary_lengths) != 1:
            raise GeometryError("one-holed torus takes one FN length and one boundary length")
        la = lengths[0]
        tau = twists[0] if twists else 0.0
        lb = boundary_lengths[0]
        u = math.exp(la / 2.0)
        r = math.cosh(lb / 4.0) / math.sinh(la / 2.0)
        p = math.sqrt(1.0 + r * r)
        et = math.exp(tau / 2.0)
        A: Mat = (u, 0.0, 0.0, 1.0 / u)
        B: Mat = (p * et, r * et, r / et, p / et)
        h = HyperbolicStructure(
            spine,
            (("a", A), ("b", B)),
            meta=(("l_a", la), ("twist", tau), ("l_boundary", lb)),
        )
        _sanity_check(h, boundary_lengths)
        return h
    raise GeometryError(f"no Fenchel-Nielsen table for signature {key}")


def comparison_constant_estimate(h: HyperbolicStructure, lp, sample: Iterable) -> tuple[float, int]:
    """Empirical distortion between hyperbolic length and collar-weighted
    arc-coordinate length over a sample of integral simple multi-curves.

    ``lp`` maps a current to its arc-coordinate length.  Returns (k, size)
    with k = max over the sample of max(l_h/l_P, l_P/l_h); k >= 1 and is
    nondecreasing as the sample grows.
    """
    k = 1.0
    size = 0
    for mc in sample:
        lh = curve_length(h, mc)
        lpv = lp(mc)
        if lh <= 0 or lpv <= 0:
            raise GeometryError("lengths in the comparison sample must be positive")
        k = max(k, lh / lpv, lpv / lh)
        size += 1
    if size == 0:
        raise GeometryError("empty comparison sample")
    return k, size


# ---------------------------------------------------------------------------
# planar geometry: fixed points, normals, distances, crossing parameters
# ---------------------------------------------------------------------------

INF = float("inf")


def fixed_points(m: Mat) -> tuple[float, float]:
    """(attracting, repelling) fixed points of a hyperbolic matrix on R u inf."""
    a, b, c, d = m
    t = a + d
    if abs(t) <= 2.0:
        raise GeometryError("matrix is not hyperbolic")
    disc = math.sqrt(t * t - 4.0)
    lam1 = (t + disc) / 2.0
    lam2 = (t - disc) / 2.0
    if abs(lam1) < abs(lam2):
        lam1, lam2 = lam2, lam1  # lam1 expanding

    def fp(lam: float) -> float:
        if abs(c) > 1e-14:
            return (lam - d) / c
        # upper triangular: fixed points are inf and b/(d-a)
        return INF if abs(a - lam) < abs(d - lam) else b / (d - a)

    return fp(lam1), fp(lam2)


def _light(p: float) -> tuple[float, float, float]:
    if p == INF:
        return (0.0, 1.0, 1.0)
    return (2.0 * p, p * p - 1.0, p * p + 1.0)


def _geodesic_normal(p: float, q: float) -> tuple[float, float, float]:
    u, v = _light(p), _light(q)
    cx = u[1] * v[2] - u[2] * v[1]
    cy = u[2] * v[0] - u[0] * v[2]
    cz = u[0] * v[1] - u[1] * v[0]
    # lower the index for the form diag(1, 1, -1)
    return (cx, cy, -cz)


def _mink(u, v) -> float:
    return u[0] * v[0] + u[1] * v[1] - u[2] * v[2]


def geodesic_cos_angle(e1: tuple[float, float], e2: tuple[float, float]) -> float:
    """|<n1, n2>| / (|n1| |n2|): < 1 iff the geodesics cross, cosh(dist) if disjoint."""
    n1 = _geodesic_normal(*e1)
    n2 = _geodesic_normal(*e2)
    s1 = math.sqrt(_mink(n1, n1))
    s2 = math.sqrt(_mink(n2, n2))
    return abs(_mink(n1, n2)) / (s1 * s2)


def geodesic_distance(e1: tuple[float, float], e2: tuple[float, float]) -> float:
    """Distance between two disjoint geodesics given by endpoint pairs."""
    c = geodesic_cos_angle(e1, e2)
    if c < 1.0:
        raise GeometryError("geodesics cross; no positive distance")
    return math.acosh(c)


def _to_zero_inf(axis: tuple[float, float]) -> Mat:
    """Moebius matrix sending (x-, x+) to (0, inf)."""
    xm, xp = axis
    if xm == INF:
        return (0.0, 1.0, 1.0, -xp)
    if xp == INF:
        return (1.0, -xm, 0.0, 1.0)
    return (1.0, -xm, 1.0, -xp)


def _apply_boundary(m: Mat, x: float) -> float:
    a, b, c, d = m
    if x == INF:
        return a / c if abs(c) > 1e-300 else INF
    den = c * x + d
    if abs(den) < 1e-300:
        return INF
    return (a * x + b) / den


def crossing_parameter(axis: tuple[float, float], other: tuple[float, float],
                       tol: float = 1e-9) -> float | None:
    """Where ``other`` crosses the oriented axis (x- -> x+), or None.

    The parameter is the signed distance along the axis from the point above
    the normalizing base; translating by the axis holonomy shifts it by the
    translation length.  Raises when an endpoint sits within ``tol`` of the
    axis ends (non-transverse configuration).
    """
    m = _to_zero_inf(axis)
    u1 = _apply_boundary(m, other[0])
    u2 = _apply_boundary(m, other[1])
    if u1 == INF or u2 == INF or abs(u1) < tol or abs(u2) < tol:
        raise GeometryError("axis endpoints too close to a crossing endpoint")
    if u1 * u2 > 0:
        return None
    return 0.5 * math.log(-u1 * u2)


def translation_length(m: Mat) -> float:
    t = abs(trace(m))
    if t <= 2.0:
        raise GeometryError("matrix is not hyperbolic")
    return 2.0 * math.acosh(t / 2.0)


def point_image(m: Mat, z: complex) -> complex:
    a, b, c, d = m
    return (a * z + b) / (c * z + d)


def point_distance(z: complex, w: complex) -> float:
    return math.acosh(1.0 + (abs(z - w) ** 2) / (2.0 * z.imag * w.imag))


def _hyperboloid(z: complex) -> tuple[float, float, float]:
    x, y = z.real, z.imag
    n = x * x + y * y
    return (x / y, (n - 1.0) / (2.0 * y), (n + 1.0) / (2.0 * y))


def point_to_geodesic(z: complex, axis: tuple[float, float]) -> float:
    """Distance from a point of the upper half-plane to a geodesic."""
    n = _geodesic_normal(*axis)
    s = math.sqrt(_mink(n, n))
    return math.asinh(abs(_mink(_hyperboloid(z), n)) / s)


def axis_point(axis: tuple[float, float], t: float) -> complex:
    """Point at signed parameter t along the axis."""
    m = _to_zero_inf(axis)
    return point_image(mat_inv(m), complex(0.0, math.exp(t)))


def foot_parameter(axis: tuple[float, float], z: complex) -> float:
    """Parameter of the orthogonal projection of z onto the axis."""
    m = _to_zero_inf(axis)
    w = point_image(m, z)
    return 0.5 * math.log(w.real * w.real + w.imag * w.imag)


def point_to_segment(z: complex, axis: tuple[float, float], t0: float, t1: float) -> float:
    """Distance from z to the axis segment between parameters t0 <= t1."""
    t = foot_parameter(axis, z)
    if t0 <= t <= t1:
        return point_to_geodesic(z, axis)
    return point_distance(z, axis_point(axis, min(max(t, t0), t1)))
