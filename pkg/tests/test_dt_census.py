import math
from fractions import Fraction
from itertools import product

import pytest

from currents.boundary_order import intersection_number, self_intersection
from currents.dt_census import (
    DTError,
    build_arc_system,
    boundary_vectors,
    class_dt_vector,
    dt_coordinates,
    enumerate_census,
    is_admissible,
    is_internal_vector,
    iter_census,
    reconstruct,
    write_census_csv,
)
from currents.surface import CurveClass, RationalCurrent
from oracles import box_census_count, christoffel, primitive_slopes


def test_arc_system_shape(arcs11, arcs03):
    assert arcs11.size == 3 and arcs03.size == 3
    assert len(arcs11.vertex_triples) == 2
    # counting loops twice: 3 |V| = 2 |E|
    for arcs in (arcs11, arcs03):
        assert 3 * len(arcs.vertex_triples) == 2 * arcs.size


def test_dt_known_vectors(arcs11, t11):
    assert class_dt_vector(CurveClass("abAB"), arcs11) == (2, 2, 2)
    assert class_dt_vector(CurveClass("a"), arcs11) == (1, 0, 1)
    assert class_dt_vector(CurveClass("b"), arcs11) == (0, 1, 1)
    assert class_dt_vector(CurveClass("ab"), arcs11) == (1, 1, 2)
    assert class_dt_vector(CurveClass("aB"), arcs11) == (1, 1, 0)


def test_full_boundary_crosses_each_arc_twice(arcs11, arcs03):
    for arcs in (arcs11, arcs03):
        total = [0] * arcs.size
        for vec in boundary_vectors(arcs):
            total = [x + y for x, y in zip(total, vec)]
        assert total == [2] * arcs.size


def test_dt_of_slope_classes(arcs11, t11):
    for p, q in primitive_slopes(6):
        vec = class_dt_vector(CurveClass.from_word(christoffel(p, q), t11), arcs11)
        assert vec == (abs(p), abs(q), abs(p + q))


def test_dt_coordinates_multicurve(arcs11, t11):
    mc = RationalCurrent.from_words(t11, [("a", 2), ("abAB", 1)])
    assert dt_coordinates(mc, arcs11) == (4, 2, 4)
    empty = RationalCurrent.zero()
    assert dt_coordinates(empty, arcs11) == (0, 0, 0)


def test_dt_rejects_bad_input(arcs11, t11):
    with pytest.raises(DTError, match="not simple"):
        dt_coordinates(RationalCurrent.from_words(t11, [("abaB", 1)]), arcs11)
    with pytest.raises(DTError, match="intersect"):
        dt_coordinates(RationalCurrent.from_words(t11, [("a", 1), ("b", 1)]), arcs11)
    with pytest.raises(DTError, match="integer"):
        dt_coordinates(RationalCurrent.from_words(t11, [("a", Fraction(1, 2))]), arcs11)


def test_admissibility(arcs11):
    assert is_admissible((0, 0, 0), arcs11)
    assert not is_admissible((1, 0, 0), arcs11)
    assert is_admissible((2, 2, 2), arcs11)
    assert not is_admissible((1, 1, 3), arcs11)
    with pytest.raises(DTError):
        is_admissible((1, 2), arcs11)


def test_even_box_inclusion(arcs11, arcs03):
    # every all-even vector with entries in [2M, 3M] is admissible
    for arcs in (arcs11, arcs03):
        for M in (2, 4, 8):
            evens = range(2 * M, 3 * M + 1, 2)
            for m in product(evens, repeat=arcs.size):
                assert is_admissible(m, arcs)


def test_reconstruct_known(arcs11, t11):
    assert reconstruct((0, 0, 0), arcs11).key() == ()
    assert reconstruct((2, 2, 2), arcs11).key() == (("abAB", Fraction(1)),)
    assert reconstruct((0, 2, 2), arcs11).key() == (("b", Fraction(2)),)
    assert reconstruct((1, 1, 0), arcs11).key() == (("aB", Fraction(1)),)
    with pytest.raises(DTError):
        reconstruct((1, 0, 0), arcs11)


def test_roundtrip_and_simplicity(arcs11, arcs03, t11, p03):
    for arcs, spine in ((arcs11, t11), (arcs03, p03)):
        for m in iter_census(arcs, 12.0):
            mc = reconstruct(m, arcs)
            assert dt_coordinates(mc, arcs) == m
            classes = mc.classes()
            for c in classes:
                assert self_intersection(c, spine) == 0
            for i, c1 in enumerate(classes):
                for c2 in classes[i + 1:]:
                    assert intersection_number(c1, c2, spine) == 0


def test_reconstruct_injective(arcs11):
    seen = {}
    for m in iter_census(arcs11, 14.0):
        key = reconstruct(m, arcs11).key()
        assert key not in seen, f"{m} and {seen[key]} reconstruct alike"
        seen[key] = m


def test_census_counts_against_box_oracle(arcs11, arcs03):
    for arcs in (arcs11, arcs03):
        rec = enumerate_census(arcs, 20.0)
        assert rec.count_all == box_census_count(arcs, 20.0)
        assert rec.count_internal <= rec.count_all


def test_census_zero_radius(arcs11):
    rec = enumerate_census(arcs11, 0.0)
    assert rec.count_all == 1 and rec.count_internal == 1
    with pytest.raises(DTError):
        enumerate_census(arcs11, -1.0)


def test_census_monotone(arcs11):
    counts = [enumerate_census(arcs11, L) for L in (8.0, 12.0, 16.0)]
    alls = [r.count_all for r in counts]
    ints = [r.count_internal for r in counts]
    assert alls == sorted(alls) and ints == sorted(ints)


def test_internal_vector_matches_slope_oracle(arcs11):
    # on the one-holed torus: internal iff m_t = m_a + m_b or |m_a - m_b|
    for m in iter_census(arcs11, 18.0):
        x, y, z = m
        want = z == x + y or z == abs(x - y)
        assert is_internal_vector(m, arcs11) == want


def test_internal_vector_on_pants(arcs03):
    # only the empty multi-curve is free of boundary-parallel components
    for m in iter_census(arcs03, 10.0):
        assert is_internal_vector(m, arcs03) == (m == (0, 0, 0))


def test_relabeling_invariance(t11):
    a1 = build_arc_system(t11, arc_lengths=[1.0, 2.0, 1.5])
    a2 = build_arc_system(t11, arc_lengths=[2.0, 1.0, 1.5])
    r1 = enumerate_census(a1, 10.0)
    r2 = enumerate_census(a2, 10.0)
    assert (r1.count_all, r1.count_internal) == (r2.count_all, r2.count_internal)


def test_lexicographic_stream(arcs11):
    vecs = list(iter_census(arcs11, 9.0))
    assert vecs == sorted(vecs)


def test_census_csv_roundtrip_and_resume(tmp_path, arcs11):
    full = tmp_path / "census.csv"
    rec = write_census_csv(full, arcs11, 10.0)
    lines = full.read_text().splitlines()
    data = [l for l in lines if l and not l.startswith("#") and not l.startswith("m_")]
    assert len(data) == rec.count_all
    assert lines[-1].startswith("# checkpoint:")

    # truncate to the first 5 rows and resume
    part = tmp_path / "part.csv"
    head = lines[0]
    kept = data[:5]
    checkpoint = "# checkpoint: " + ",".join(kept[-1].split(",")[:arcs11.size])
    part.write_text("\n".join([head] + kept + [checkpoint]) + "\n")
    rec2 = write_census_csv(part, arcs11, 10.0)
    assert rec2.count_all == rec.count_all
    data2 = [l for l in part.read_text().splitlines()
             if l and not l.startswith("#") and not l.startswith("m_")]
    assert [r.split(",")[: arcs11.size] for r in data2] == \
        [r.split(",")[: arcs11.size] for r in data]


def test_numeric_arc_lengths(t11, h11):
    arcs = build_arc_system(t11, h11)
    assert all(x > 0 for x in arcs.lengths)
    # the collar-weighted length and the holonomy length stay comparable
    from currents.dt_census import census_classes
    from currents.hyperbolic import curve_length

    for m, mc in census_classes(arcs, 4.0):
        if not mc:
            continue
        lh = curve_length(h11, mc)
        lp = arcs.lp(m)
        assert lh / lp < 12.0 and lp / lh < 12.0
