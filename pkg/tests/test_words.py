import pytest

from currents.words import (
    WordError,
    canonical_cyclic,
    cyclic_reduce,
    free_reduce,
    inverse,
    primitive_root,
)


def test_free_reduce():
    assert free_reduce("abB") == "a"
    assert free_reduce("aA") == ""
    assert free_reduce("abBA") == ""
    assert free_reduce("aBbA") == ""


def test_cyclic_reduce():
    assert cyclic_reduce("Aba") == "b"
    assert cyclic_reduce("abAB") == "abAB"
    assert cyclic_reduce("Bab") == "a"
    assert cyclic_reduce("BaAb") == ""


def test_inverse():
    assert inverse("ab") == "BA"
    assert inverse(inverse("aBaB")) == "aBaB"


def test_primitive_root():
    assert primitive_root("abab") == ("ab", 2)
    assert primitive_root("aaa") == ("a", 3)
    assert primitive_root("aab") == ("aab", 1)


def test_canonical_rotation_and_inversion_invariance():
    assert canonical_cyclic("ba") == canonical_cyclic("ab")
    assert canonical_cyclic("BA") == canonical_cyclic("ab")
    assert canonical_cyclic("abAB") == canonical_cyclic("BabA")
    # idempotent
    w = canonical_cyclic("bAAB")
    assert canonical_cyclic(w) == w


def test_canonical_prefers_lowercase():
    assert canonical_cyclic("A") == "a"
    assert canonical_cyclic("ab") == "ab"
