"""Free-group words over a surface alphabet.

Conjugacy classes of an unoriented closed curve on a surface with boundary
are represented by cyclically reduced words in the free fundamental group.
A word is a string: lowercase letters are generators, uppercase letters are
their inverses ("abAB" is a b a^-1 b^-1).  The canonical form of a class is
the least string, in alphabet order a < A < b < B < ..., among all rotations
of the word and of its inverse, so canonical forms are rotation- and
orientation-invariant.
"""

from __future__ import annotations

ALPHABET = "abcdefghijklmnopqrstuvwxyz"


class WordError(ValueError):
    """Raised for malformed words (bad letters, empty classes, wrong rank)."""


def generators(rank: int) -> tuple[str, ...]:
    if not 1 <= rank <= len(ALPHABET):
        raise WordError(f"rank {rank} out of supported range")
    return tuple(ALPHABET[:rank])


def inverse_letter(x: str) -> str:
    return x.swapcase()


def inverse(word: str) -> str:
    return word[::-1].swapcase()


def letter_key(x: str) -> tuple[int, int]:
    # a < A < b < B < ...
    return (ALPHABET.index(x.lower()), 0 if x.islower() else 1)


def word_key(word: str) -> tuple[tuple[int, int], ...]:
    return tuple(letter_key(x) for x in word)


def check_alphabet(word: str, rank: int) -> None:
    allowed = set(ALPHABET[:rank]) | set(ALPHABET[:rank].upper())
    for x in word:
        if x not in allowed:
            raise WordError(f"letter {x!r} not in the rank-{rank} alphabet")


def free_reduce(word: str) -> str:
    out: list[str] = []
    for x in word:
        if out and out[-1] == x.swapcase():
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def cyclic_reduce(word: str) -> str:
    word = free_reduce(word)
    i, j = 0, len(word)
    while j - i >= 2 and word[i] == word[j - 1].swapcase():
        i += 1
        j -= 1
    return word[i:j]


def rotations(word: str):
    for i in range(len(word)):
        yield word[i:] + word[:i]


def primitive_root(word: str) -> tuple[str, int]:
    """Return (root, exponent) with word a cyclic power of the primitive root.

    The input must be cyclically reduced and nonempty.
    """
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d], n // d
    raise AssertionError("unreachable")


def canonical_cyclic(word: str) -> str:
    """Least rotation of the word or of its inverse, in alphabet order."""
    best = None
    for w in (word, inverse(word)):
        for r in rotations(w):
            if best is None or word_key(r) < word_key(best):
                best = r
    assert best is not None
    return best
