import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from currents.dt_census import build_arc_system
from currents.hyperbolic import from_fenchel_nielsen
from currents.surface import CurveClass, SurfaceSig, build_standard_spine
from currents.words import canonical_cyclic, cyclic_reduce


@pytest.fixture(scope="session")
def t11():
    return build_standard_spine(SurfaceSig(1, 1))


@pytest.fixture(scope="session")
def p03():
    return build_standard_spine(SurfaceSig(0, 3))


@pytest.fixture(scope="session")
def s12():
    return build_standard_spine(SurfaceSig(1, 2))


@pytest.fixture(scope="session")
def s04():
    return build_standard_spine(SurfaceSig(0, 4))


@pytest.fixture(scope="session")
def s21():
    return build_standard_spine(SurfaceSig(2, 1))


@pytest.fixture(scope="session")
def h11(t11):
    return from_fenchel_nielsen(
        SurfaceSig(1, 1), t11, lengths=[1.0], twists=[0.0], boundary_lengths=[1.0]
    )


@pytest.fixture(scope="session")
def h03(p03):
    return from_fenchel_nielsen(SurfaceSig(0, 3), p03, boundary_lengths=[2.0, 2.0, 2.0])


@pytest.fixture(scope="session")
def arcs11(t11):
    return build_arc_system(t11)


@pytest.fixture(scope="session")
def arcs03(p03):
    return build_arc_system(p03)


def random_word(rng: random.Random, rank: int, max_len: int) -> str:
    letters = "abcdefgh"[:rank]
    letters = letters + letters.upper()
    while True:
        n = rng.randint(1, max_len)
        w = cyclic_reduce("".join(rng.choice(letters) for _ in range(n)))
        if w:
            return w


def random_class(rng: random.Random, spine, max_len: int) -> CurveClass:
    from currents.surface import canonicalize_curve

    while True:
        w = random_word(rng, spine.rank, max_len)
        cls, _ = canonicalize_curve(w, spine)
        return cls
