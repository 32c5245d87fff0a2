from fractions import Fraction

import pytest

from npcuboid import Cuboid, CongruentCurve, SolutionPair, load_seeds


@pytest.fixture(scope="session")
def curve5():
    return CongruentCurve(5)


@pytest.fixture(scope="session")
def golden_pair(curve5):
    """The known N=5 pair: (25/4, 75/8) and (1681/144, 62279/1728)."""
    return SolutionPair(
        curve5.point(Fraction(25, 4), Fraction(75, 8)),
        curve5.point(Fraction(1681, 144), Fraction(62279, 1728)),
    )


@pytest.fixture(scope="session")
def golden_npc():
    """The 672/153/104 nearly-perfect cuboid with integer diagonals."""
    return Cuboid(
        a=Fraction(672),
        b=Fraction(153),
        c=Fraction(104),
        d_bc=Fraction(185),
        d_ac=Fraction(680),
        d_s=Fraction(697),
        d_ab_sq=Fraction(672) ** 2 + Fraction(153) ** 2,
    )


@pytest.fixture(scope="session")
def seeds():
    return load_seeds()
