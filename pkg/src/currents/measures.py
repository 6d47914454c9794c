"""Ball volumes, counting-measure estimates and orbit-growth experiments.

The cone of weighted simple multi-curves carries a translation-invariant
measure of homogeneity N = 6g - 6 + 2n, normalized here so that integral
points have density one; censuses of integral multi-curves therefore
estimate ball volumes.  Closed forms implemented:

* the simplex integral int_D (1 - sum t)^N over the standard n-simplex,
  exactly N!/(N+n)! by the Dirichlet recursion I(N, n) = I(N, n-1)/(N+n);
* the volume of the radius-L ball of weighted multi-curves including
  boundary-parallel directions, m * L^(N+n) * I(N, n) / prod(l_j);
* the one-parameter family of cone measures of homogeneity d spread along
  a ray of currents of length l, whose radius-L ball has measure
  m * N!/(d(d-1)...(d-N)) * L^d / l^(d-N), finite exactly when d > N.

Every closed form is paired with an independent numeric route (adaptive
quadrature or Monte-Carlo, seeded) so the experiments can cross-check
themselves; experiment records carry the bounds and slack actually used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from scipy.integrate import quad

from .dt_census import (
    ArcSystem,
    boundary_vectors,
    census_classes,
    enumerate_census,
    is_internal_vector,
    iter_census,
)
from .hyperbolic import HyperbolicStructure, curve_length
from .mcg import OrbitBall, orbit_ball
from .surface import CurveClass, RationalCurrent, complexity_constants


class NotLocallyFiniteError(ValueError):
    """Raised when a homogeneity exponent makes a measure infinite on balls."""


class ExperimentError(ValueError):
    pass


def simplex_integral(N: int, n: int) -> Fraction:
    """Exact value of int_D (1 - t_1 - ... - t_n)^N over the unit n-simplex.

    Computed by the iterated one-variable reduction I(N, n) = I(N, n-1)
    / (N + n), I(N, 0) = 1, which evaluates to N!/(N+n)!.
    """
    if N < 0 or n < 0:
        raise ValueError("exponent and dimension must be nonnegative")
    value = Fraction(1)
    for j in range(1, n + 1):
        value /= N + j
    return value


def simplex_integral_printed(N: int, n: int) -> Fraction:
    """The commonly quoted closed form 1/((N+n)(n-1)!).

    Agrees with the exact recursion only for n = 1; kept for comparison and
    flagged against the exact value by ``simplex_constant_report``.
    """
    if n < 1:
        raise ValueError("printed form needs n >= 1")
    return Fraction(1, (N + n) * math.factorial(n - 1))


@dataclass(frozen=True)
class SimplexReport:
    N: int
    n: int
    exact: Fraction
    printed: Fraction
    matches: bool


def simplex_constant_report(N: int, n: int) -> SimplexReport:
    exact = simplex_integral(N, n)
    printed = simplex_integral_printed(N, n)
    return SimplexReport(N, n, exact, printed, exact == printed)


def ml_ball_volume(
    L: float,
    m_th_ball: float,
    boundary_lengths: Sequence[float],
    N: int,
) -> float:
    """Volume of the radius-L ball of weighted multi-curves with boundary.

    The boundary-parallel directions contribute a simplex factor::

        v(L) = m_th_ball * L^(N + n) * I(N, n) / prod_j l_j

    with n the number of boundary circles; v is homogeneous of degree N + n.
    """
    if any(l <= 0 for l in boundary_lengths):
        raise ValueError("boundary lengths must be positive")
    if L < 0 or m_th_ball < 0:
        raise ValueError("radius and ball mass must be nonnegative")
    n = len(boundary_lengths)
    prod = 1.0
    for l in boundary_lengths:
        prod *= l
    return m_th_ball * L ** (N + n) * float(simplex_integral(N, n)) / prod


def homogeneous_ball_volume(
    d: float,
    N_R: int,
    L: float,
    ell_c: float,
    m_th_ball: float = 1.0,
) -> float:
    """Ball measure of the d-homogeneous cone measure along a length-l ray.

    Finite exactly when d > N_R, in which case::

        m(l_h <= L) = m_th_ball * N! / (d (d-1) ... (d-N)) * L^d / l^(d-N)

    Raises ``NotLocallyFiniteError`` for d <= N_R.
    """
    if ell_c <= 0 or L <= 0:
        raise ValueError("lengths must be positive")
    if d <= N_R:
        raise NotLocallyFiniteError(
            f"homogeneity {d} <= {N_R}: the measure is not locally finite"
        )
    denom = 1.0
    for i in range(N_R + 1):
        denom *= d - i
    return m_th_ball * math.factorial(N_R) / denom * L ** d / ell_c ** (d - N_R)


def homogeneous_ball_volume_quadrature(
    d: float,
    N_R: int,
    L: float,
    ell_c: float,
    m_th_ball: float = 1.0,
    rel_target: float = 1e-10,
) -> float:
    """Independent adaptive-quadrature route for the same ball measure:
    m_th_ball * int_0^{L/l} t^(d-N-1) (L - t l)^N dt."""
    if d <= N_R:
        raise NotLocallyFiniteError(
            f"homogeneity {d} <= {N_R}: the measure is not locally finite"
        )
    val, _err = quad(
        lambda t: t ** (d - N_R - 1) * (L - t * ell_c) ** N_R,
        0.0,
        L / ell_c,
        epsabs=0.0,
        epsrel=rel_target,
        limit=200,
    )
    return m_th_ball * val


def simplex_integral_monte_carlo(
    N: int, n: int, samples: int = 200_000, seed: int = 7
) -> tuple[float, float]:
    """Seeded Monte-Carlo estimate (mean, standard error) of the simplex
    integral over the unit cube, the cross-check for the exact recursion."""
    import numpy as np

    rng = np.random.default_rng(seed)
    t = rng.random((samples, n)) if n else np.zeros((samples, 0))
    s = t.sum(axis=1)
    vals = np.where(s <= 1.0, (1.0 - s).clip(min=0.0) ** N, 0.0)
    mean = float(vals.mean())
    stderr = float(vals.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return mean, stderr


# ---------------------------------------------------------------------------
# census-backed estimates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThurstonEstimate:
    """Counting estimate of the multi-curve ball mass at one radius."""

    L: float
    count_internal: int
    count_all: int
    m_hat: float
    cross_check_ratio: float


def thurston_ball_estimate(arcs: ArcSystem, grid: Sequence[float]) -> list[ThurstonEstimate]:
    """Ball-mass estimates m_hat(L) = b(L) / L^N along an increasing grid.

    b counts internal integral multi-curves of weighted arc-coordinate
    length at most L.  The cross-check ratio compares the all-curves count
    against the closed-form ball volume fed with m_hat and the coordinate
    lengths of the boundary circles; it tends to 1 as L grows.
    """
    if not grid or list(grid) != sorted(grid):
        raise ExperimentError("grid must be nonempty and increasing")
    sig = arcs.spine.sig
    N = complexity_constants(sig)["N"]
    boundary_lp = [arcs.lp(p) for p in boundary_vectors(arcs)]
    out = []
    for L in grid:
        rec = enumerate_census(arcs, L)
        m_hat = rec.count_internal / L ** N if L > 0 else float("nan")
        v = ml_ball_volume(L, m_hat, boundary_lp, N) if L > 0 and m_hat > 0 else float("nan")
        ratio = rec.count_all / v if v and not math.isnan(v) else float("nan")
        out.append(ThurstonEstimate(L, rec.count_internal, rec.count_all, m_hat, ratio))
    return out


@dataclass(frozen=True)
class UnitBallRow:
    boundary_length: float
    L: float
    count_internal: int
    m_hat: float
    m_hat_scaled: float  # m_hat * l(boundary)^N
    systole: float
    distortion_used: float


def _true_length_internal_count(
    arcs: ArcSystem,
    h: HyperbolicStructure,
    L: float,
    distortion: float,
) -> int:
    count = 0
    for m, mc in census_classes(arcs, distortion * L):
        if not is_internal_vector(m, arcs):
            continue
        if curve_length(h, mc) <= L + 1e-9:
            count += 1
    return count


def unit_ball_bounds_experiment(
    metrics: Sequence[HyperbolicStructure],
    arcs_for: Callable[[HyperbolicStructure], ArcSystem],
    L: float,
    min_systole: float,
    distortion: float = 2.0,
) -> list[UnitBallRow]:
    """Ball-mass estimates across a family of metrics with systole >= s.

    Counts use the true holonomy length: the census is enumerated out to
    ``distortion * L`` in arc-coordinate length, then filtered, and the
    distortion escalates until the count stabilizes.  Rows record m_hat and
    m_hat * l(boundary)^N; across such a family the first stays bounded
    below and the second above.
    """
    rows = []
    for h in metrics:
        arcs = arcs_for(h)
        sys_sample = [length for _, length in _systole_sample(arcs, h)]
        systole = min(sys_sample)
        if systole < min_systole - 1e-9:
            raise ExperimentError(
                f"systole check failed: {systole} < {min_systole}"
            )
        N = complexity_constants(h.sig)["N"]
        dist = distortion
        count = _true_length_internal_count(arcs, h, L, dist)
        while True:
            bigger = _true_length_internal_count(arcs, h, L, dist * 1.5)
            if bigger == count:
                break
            count = bigger
            dist *= 1.5
            if dist > 16 * distortion:
                raise ExperimentError("true-length census did not stabilize")
        bl = sum(h.boundary_lengths())
        m_hat = count / L ** N
        rows.append(
            UnitBallRow(bl, L, count, m_hat, m_hat * bl ** N, systole, dist)
        )
    return rows


def _systole_sample(arcs: ArcSystem, h: HyperbolicStructure):
    sample = list(arcs.spine.boundary_classes())
    seen = set(sample)
    for _, mc in census_classes(arcs, 8.0):
        for cls, _w in mc:
            if cls not in seen:
                seen.add(cls)
                sample.append(cls)
    return [(cls, curve_length(h, cls)) for cls in sample]


@dataclass(frozen=True)
class OrbitCountTable:
    """Orbit-ball counts along a grid with growth-exponent diagnostics."""

    grid: tuple[float, ...]
    counts: tuple[int, ...]
    normalized: tuple[float, ...]
    dimension: int
    slope_fit: float
    top_pair_slope: float
    stable: tuple[bool, ...]
    slack_used: tuple[float, ...]

    def all_stable(self) -> bool:
        return all(self.stable)


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    import numpy as np

    if len(xs) < 2:
        raise ExperimentError("need at least two points for a slope fit")
    lx = np.log([float(x) for x in xs])
    ly = np.log([float(y) for y in ys])
    return float(np.polyfit(lx, ly, 1)[0])


def orbit_counting_experiment(
    gamma: RationalCurrent | CurveClass,
    h: HyperbolicStructure,
    grid: Sequence[float],
    slack: float = 2.0,
    max_elements: int = 200000,
) -> OrbitCountTable:
    """Normalized orbit-ball counts count(L) / L^N along the grid.

    Every grid point carries the stability flag of its ball; the table
    reports the log-log slope over the whole grid and over the top pair.
    """
    if not grid or list(grid) != sorted(grid):
        raise ExperimentError("grid must be nonempty and increasing")
    N = complexity_constants(h.sig)["N"]
    counts: list[int] = []
    stable: list[bool] = []
    slacks: list[float] = []
    for L in grid:
        ball: OrbitBall = orbit_ball(gamma, h, L, slack=slack, max_elements=max_elements)
        counts.append(len(ball.elements))
        stable.append(ball.stable)
        slacks.append(ball.slack_used)
    normalized = tuple(
        c / L ** N if L > 0 else float("nan") for c, L in zip(counts, grid)
    )
    positive = [(L, c) for L, c in zip(grid, counts) if c > 0]
    slope = loglog_slope(*zip(*positive)) if len(positive) >= 2 else float("nan")
    top = (
        math.log(counts[-1] / counts[-2]) / math.log(grid[-1] / grid[-2])
        if len(counts) >= 2 and counts[-2] > 0
        else float("nan")
    )
    return OrbitCountTable(
        tuple(grid),
        tuple(counts),
        normalized,
        N,
        slope,
        top,
        tuple(stable),
        tuple(slacks),
    )
