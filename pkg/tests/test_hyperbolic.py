import math

import pytest

from currents.dt_census import build_arc_system, census_classes
from currents.hyperbolic import (
    GeometryError,
    collar_width,
    comparison_constant_estimate,
    curve_length,
    fixed_points,
    from_fenchel_nielsen,
    geodesic_distance,
    orthoarc_length,
    trace,
)
from currents.surface import CurveClass, RationalCurrent, SurfaceSig, build_standard_spine


def test_boundary_trace_contract(h11, h03):
    assert abs(curve_length(h11, CurveClass("abAB")) - 1.0) < 1e-9
    for b, want in zip(h03.spine.boundary_classes(), (2.0, 2.0, 2.0)):
        assert abs(curve_length(h03, b) - want) < 1e-9


def test_pants_asymmetric_boundary(p03):
    h = from_fenchel_nielsen(SurfaceSig(0, 3), p03, boundary_lengths=[1.0, 2.0, 3.0])
    got = [curve_length(h, b) for b in p03.boundary_classes()]
    assert max(abs(g - w) for g, w in zip(got, (1.0, 2.0, 3.0))) < 1e-9


def test_nonpositive_length_rejected(t11, p03):
    with pytest.raises(GeometryError):
        from_fenchel_nielsen(SurfaceSig(1, 1), t11, lengths=[0.0], boundary_lengths=[1.0])
    with pytest.raises(GeometryError):
        from_fenchel_nielsen(SurfaceSig(0, 3), p03, boundary_lengths=[1.0, -2.0, 3.0])


def test_twist_fixes_boundary_and_moves_transversals(t11):
    hs = [
        from_fenchel_nielsen(SurfaceSig(1, 1), t11, lengths=[1.3], twists=[tau],
                             boundary_lengths=[2.0])
        for tau in (0.0, 0.7, 1.9)
    ]
    blens = [curve_length(h, CurveClass("abAB")) for h in hs]
    assert max(abs(x - 2.0) for x in blens) < 1e-9
    alens = [curve_length(h, CurveClass("a")) for h in hs]
    assert max(abs(x - 1.3) for x in alens) < 1e-9
    tlens = [curve_length(h, CurveClass("b")) for h in hs]
    assert tlens[0] < tlens[1] < tlens[2]


def test_length_conjugation_invariance_and_linearity(h11):
    # the holonomy trace of u w u^-1 equals that of w
    for u in ("a", "B", "ab"):
        t1 = abs(trace(h11.rho("ab")))
        t2 = abs(trace(h11.rho(u + "ab" + u[::-1].swapcase())))
        assert abs(t1 - t2) < 1e-9
    cur = RationalCurrent.from_words(h11.spine, [("a", 2), ("b", 3)])
    direct = 2 * curve_length(h11, CurveClass("a")) + 3 * curve_length(h11, CurveClass("b"))
    assert abs(curve_length(h11, cur) - direct) < 1e-12


def test_trivial_word_rejected(h11):
    with pytest.raises(GeometryError):
        curve_length(h11, CurveClass("aA"))


def test_collar_width():
    x0 = 2.0 * math.asinh(1.0)
    assert abs(collar_width(x0) - math.asinh(1.0)) < 1e-12
    assert collar_width(1.0) > collar_width(2.0)
    # Col(x) * e^(x/2) -> 2 as x -> inf
    for x in (20.0, 40.0):
        assert abs(collar_width(x) * math.exp(x / 2.0) - 2.0) < 1e-3
    with pytest.raises(GeometryError):
        collar_width(0.0)


def test_orthoarc_symmetric_and_limits():
    vals = [orthoarc_length((2.0, 2.0, 2.0), p) for p in ((0, 1), (0, 2), (1, 2))]
    assert max(vals) - min(vals) < 1e-12
    # large boundaries squeeze the arc between them
    small = orthoarc_length((40.0, 40.0, 2.0), (0, 1))
    assert small < 1e-6
    with pytest.raises(GeometryError):
        orthoarc_length((2.0, -1.0, 2.0), (0, 1))
    with pytest.raises(GeometryError):
        orthoarc_length((2.0, 2.0, 2.0), (1, 1))


def test_orthoarc_matches_numeric_axis_distance(h03):
    # arc between the boundaries [a] and [b]: hexagon identity vs the
    # perpendicular distance between the holonomy axes
    want = orthoarc_length((2.0, 2.0, 2.0), (0, 2))
    got = geodesic_distance(fixed_points(h03.rho("a")), fixed_points(h03.rho("b")))
    assert abs(want - got) < 1e-9


def test_hyperbolicity_spot_sample(h11, h03):
    for h in (h11, h03):
        for w in ("a", "b", "ab", "aB", "abb"):
            assert abs(trace(h.rho(w))) > 2.0


def test_comparison_constant(h11, t11):
    arcs = build_arc_system(t11, h11)
    sample = []
    for _, mc in census_classes(arcs, 4.5):
        if mc:
            sample.append(mc)
    k, size = comparison_constant_estimate(h11, arcs.lp_current, sample)
    assert size == len(sample) > 10
    assert 1.0 <= k < 25.0
    # nondecreasing in the sample
    k_small, _ = comparison_constant_estimate(h11, arcs.lp_current, sample[: size // 2])
    assert k_small <= k + 1e-12
    with pytest.raises(GeometryError):
        comparison_constant_estimate(h11, arcs.lp_current, [])
