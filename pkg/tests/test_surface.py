from fractions import Fraction

import pytest

from currents.surface import (
    CurveClass,
    RationalCurrent,
    SurfaceError,
    SurfaceSig,
    boundary_current,
    build_standard_spine,
    canonicalize_curve,
    complexity_constants,
    interior_boundary_split,
)
from currents.words import WordError


def test_complexity_constants():
    assert complexity_constants(SurfaceSig(1, 1)) == {"N": 2, "Nprime": 3}
    assert complexity_constants(SurfaceSig(0, 3)) == {"N": 0, "Nprime": 3}
    assert complexity_constants(SurfaceSig(2, 0)) == {"N": 6, "Nprime": 6}
    assert complexity_constants(None) == {"N": 0, "Nprime": 0}


def test_non_hyperbolic_rejected():
    with pytest.raises(SurfaceError):
        SurfaceSig(0, 2)
    with pytest.raises(SurfaceError):
        SurfaceSig(1, 0)
    with pytest.raises(SurfaceError):
        SurfaceSig(0, 0)


def test_closed_surface_has_no_spine():
    with pytest.raises(SurfaceError, match="boundary"):
        build_standard_spine(SurfaceSig(2, 0))


def test_standard_boundary_words(t11, p03, s12, s04, s21):
    assert t11.boundary_words == ("abAB",)
    assert p03.boundary_words == ("a", "AB", "b")
    assert s12.boundary_words == ("abABc", "C")
    assert s04.boundary_words == ("abc", "C", "B", "A")
    assert s21.boundary_words == ("abABcdCD",)


def test_half_edge_sides_used_once(t11, p03, s12, s04, s21):
    for spine in (t11, p03, s12, s04, s21):
        total = sum(len(w) for w in spine.boundary_words)
        assert total == 2 * spine.rank


def test_bad_half_edge_order():
    with pytest.raises(SurfaceError):
        build_standard_spine(SurfaceSig(1, 1), ("a", "b", "A", "A"))
    # a valid permutation tracing the wrong number of cycles
    with pytest.raises(SurfaceError):
        build_standard_spine(SurfaceSig(1, 1), ("a", "A", "b", "B"))


def test_canonicalize_curve(t11):
    cls, e = canonicalize_curve("abB", t11)
    assert (cls.word, e) == ("a", 1)
    cls, e = canonicalize_curve("abab", t11)
    assert (cls.word, e) == ("ab", 2)
    assert canonicalize_curve("ba", t11)[0] == canonicalize_curve("ab", t11)[0]
    assert canonicalize_curve("BA", t11)[0] == canonicalize_curve("ab", t11)[0]
    with pytest.raises(WordError):
        canonicalize_curve("", t11)
    with pytest.raises(WordError):
        canonicalize_curve("aA", t11)
    with pytest.raises(WordError):
        canonicalize_curve("xyz", t11)


def test_current_normalizes_powers(t11):
    c = RationalCurrent.from_words(t11, [("abab", Fraction(1, 2))])
    assert c.weights == ((CurveClass("ab"), Fraction(1)),)


def test_current_merges_classes(t11):
    c = RationalCurrent.from_words(t11, [("ab", 1), ("ba", 2), ("BA", "1/2")])
    assert c.weights == ((CurveClass("ab"), Fraction(7, 2)),)


def test_interior_boundary_split(t11):
    c = RationalCurrent.from_words(t11, [("abAB", 3)])
    c0, u = interior_boundary_split(c, t11)
    assert not c0 and u == (Fraction(3),)

    c = RationalCurrent.from_words(t11, [("a", 2)])
    c0, u = interior_boundary_split(c, t11)
    assert c0.weights == ((CurveClass("a"), Fraction(2)),) and u == (Fraction(0),)

    c = RationalCurrent.from_words(t11, [("a", 1), ("abAB", 1)])
    c0, u = interior_boundary_split(c, t11)
    assert c0.classes() == (CurveClass("a"),) and u == (Fraction(1),)


def test_interior_boundary_split_roundtrip(p03):
    c0 = RationalCurrent.from_words(p03, [("aB", 2), ("aaB", Fraction(1, 3))])
    b = boundary_current(p03, [1, 0, 2])
    c = c0 + b
    got0, gotu = interior_boundary_split(c, p03)
    assert got0.key() == c0.key()
    assert gotu == (Fraction(1), Fraction(0), Fraction(2))


def test_split_idempotent(p03):
    c = RationalCurrent.from_words(p03, [("aB", 1), ("a", 2)])
    c0, u = interior_boundary_split(c, p03)
    again0, againu = interior_boundary_split(c0, p03)
    assert again0.key() == c0.key()
    assert againu == (Fraction(0),) * 3
