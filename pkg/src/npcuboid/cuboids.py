"""Nearly-perfect cuboids built from solution pairs.

A nearly-perfect cuboid (NPC) has rational sides a, b, c, rational face
diagonals d_bc, d_ac, rational space diagonal d_s, and exactly one
conditional quantity: the a-b face diagonal, stored here as its exact square
d_ab_sq. The box is a perfect cuboid precisely when d_ab_sq is a rational
square.

Five parametrizations map one solution pair to an NPC; all are emitted in
canonical form, scaled so the six rational entries are coprime positive
integers. The conic helpers and the residual evaluator expose the underlying
circle/hyperbola parameter algebra, including the birational equivalence
between the two hyperbola-based parameter families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curve import SolutionPair
from .errors import DegeneratePair, TrivialParameter, ZeroSide
from .rationals import (
    format_rational,
    is_square,
    parse_rational,
    primitive_integer_scaling,
    sqrt_exact,
)

PARAMETRIZATIONS = ("invariant", "first", "first_reflected", "second", "second_reflected")
FAMILIES = ("first", "second", "third")

# Parameter family feeding each parametrization's variable extraction.
FAMILY_OF_PARAMETRIZATION = {
    "invariant": "third",
    "first": "first",
    "first_reflected": "first",
    "second": "second",
    "second_reflected": "second",
}


def circle_point(t: Fraction) -> tuple[Fraction, Fraction]:
    """Positive rational point (|1-t^2|, |2t|)/(1+t^2) on x^2 + y^2 = 1."""
    t = Fraction(t)
    if t in (0, 1, -1):
        raise TrivialParameter(f"circle parameter {t} degenerates")
    den = 1 + t * t
    return abs(1 - t * t) / den, abs(2 * t) / den


def hyperbola_point_a(t: Fraction) -> tuple[Fraction, Fraction]:
    """Positive rational point (|1+t^2|, |2t|)/|1-t^2| on x^2 - y^2 = 1."""
    t = Fraction(t)
    if t in (0, 1, -1):
        raise TrivialParameter(f"hyperbola parameter {t} degenerates")
    den = abs(1 - t * t)
    return (1 + t * t) / den, abs(2 * t) / den


def hyperbola_point_b(t: Fraction) -> tuple[Fraction, Fraction]:
    """Positive rational point (|1+t^2|, |1-t^2|)/|2t| on x^2 - y^2 = 1."""
    t = Fraction(t)
    if t in (0, 1, -1):
        raise TrivialParameter(f"hyperbola parameter {t} degenerates")
    den = abs(2 * t)
    return (1 + t * t) / den, abs(1 - t * t) / den


def second_parameter_from_third(t: Fraction) -> Fraction:
    """Birational change of variables u = (1-t)/(1+t) between the two
    hyperbola parameter families; it identifies (1-t^2)/(2t) with
    2u/(1-u^2), so zeros of one family's equation map to the other's."""
    t = Fraction(t)
    if t == -1:
        raise TrivialParameter("parameter -1 has no birational image")
    return (1 - t) / (1 + t)


def pc_equation_residual(family: str, alpha: Fraction, beta: Fraction, gamma: Fraction) -> Fraction:
    """Left minus right side of the perfect-cuboid existence equation of the
    given parameter family; exactly zero iff the triple solves it.

    family "first":  (2a/(1+a^2))^2 + (2g/(1+g^2))^2 - (2b/(1+b^2))^2
    family "second": (2g/(1-g^2))^2 + (2b/(1-b^2))^2 - (2a/(1-a^2))^2
    family "third":  ((1-g^2)/2g)^2 + ((1-b^2)/2b)^2 - ((1-a^2)/2a)^2
    """
    alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)

    if family == "first":
        def term(t):
            return (2 * t / (1 + t * t)) ** 2
        return term(alpha) + term(gamma) - term(beta)
    if family == "second":
        for t in (alpha, beta, gamma):
            if t * t == 1:
                raise TrivialParameter(f"parameter {t} vanishes a denominator")
        def term(t):
            return (2 * t / (1 - t * t)) ** 2
        return term(gamma) + term(beta) - term(alpha)
    if family == "third":
        for t in (alpha, beta, gamma):
            if t == 0:
                raise TrivialParameter("parameter 0 vanishes a denominator")
        def term(t):
            return ((1 - t * t) / (2 * t)) ** 2
        return term(gamma) + term(beta) - term(alpha)
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class ParametrizationVariables:
    """Exact conic parameters extracted from one solution pair.

    gamma_condition holds the family's always-rational reduced quantity
    (g/(1+g^2), g/(1-g^2) or (1-g^2)/g); the parameter g itself is rational
    only if a perfect cuboid exists.
    """

    alpha: Fraction
    beta: Fraction
    gamma_condition: Fraction
    eta: Fraction
    family: str


def variables_from_pair(pair: SolutionPair, family: str) -> ParametrizationVariables:
    """Extract the family's (alpha, beta) square roots and its gamma condition.

    The pair invariant keeps every square root rational; vanishing condition
    denominators (X = -Z for the first family, XZ = N^2 for the second) raise
    DegeneratePair.
    """
    n = pair.curve.N
    x, z = pair.P.x, pair.Q.x
    yw = pair.P.y * pair.Q.y
    eta = yw / Fraction(n ** 3)

    if family == "first":
        if x + z == 0:
            raise DegeneratePair("X = -Z vanishes the first-family denominator")
        return ParametrizationVariables(
            alpha=sqrt_exact(x * z) / n,
            beta=sqrt_exact(x / z),
            gamma_condition=yw / ((x * z + n ** 2) * (x + z)),
            eta=eta,
            family=family,
        )
    if family == "second":
        if x * z == n ** 2:
            raise DegeneratePair("XZ = N^2 vanishes the second-family denominator")
        return ParametrizationVariables(
            alpha=sqrt_exact(z / x),
            beta=sqrt_exact(x * z) / n,
            gamma_condition=yw / ((x - z) * (n ** 2 - x * z)),
            eta=eta,
            family=family,
        )
    if family == "third":
        return ParametrizationVariables(
            alpha=sqrt_exact(x * z) / n,
            beta=sqrt_exact(z / x),
            gamma_condition=yw / (x * z * n),
            eta=eta,
            family=family,
        )
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class CuboidSource:
    """Provenance of a constructed cuboid: curve and pair abscissae."""

    N: int
    X: Fraction
    Z: Fraction
    parametrization: str


@dataclass(frozen=True)
class Cuboid:
    """Sides a, b, c, rational diagonals d_bc, d_ac, d_s, and the exact
    square of the conditional a-b face diagonal.

    Positivity is enforced on construction; the four defining relations are
    checked by verify_npc so that perturbed records remain representable.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d_bc: Fraction
    d_ac: Fraction
    d_s: Fraction
    d_ab_sq: Fraction
    source: CuboidSource | None = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("a", "b", "c", "d_bc", "d_ac", "d_s", "d_ab_sq"):
            if getattr(self, name) <= 0:
                raise ValueError(f"cuboid entry {name} must be positive")

    def rational_entries(self) -> tuple[Fraction, ...]:
        return (self.a, self.b, self.c, self.d_bc, self.d_ac, self.d_s)


def verify_npc(cuboid: Cuboid) -> list[str]:
    """Names of the violated defining relations; empty means a valid NPC."""
    a, b, c = cuboid.a, cuboid.b, cuboid.c
    violations = []
    if a * a + b * b != cuboid.d_ab_sq:
        violations.append("ab_diagonal")
    if b * b + c * c != cuboid.d_bc ** 2:
        violations.append("bc_diagonal")
    if a * a + c * c != cuboid.d_ac ** 2:
        violations.append("ac_diagonal")
    if a * a + b * b + c * c != cuboid.d_s ** 2:
        violations.append("space_diagonal")
    return violations


def pc_condition(cuboid: Cuboid) -> bool:
    """True iff the conditional diagonal is rational, i.e. the box is a
    perfect cuboid."""
    return is_square(cuboid.d_ab_sq)


def _ratios_invariant(n, x, z, yw, root):
    half = 2 * root
    return (
        Fraction(1),
        yw / (2 * x * z * n),
        (x - z) / half,
        (n * n - x * z) / (n * half),
        (x + z) / half,
        (n * n + x * z) / (n * half),
    )


def _ratios_first(n, x, z, yw, root):
    s = x * z + n * n
    t = x + z
    return (
        2 * n * root / s,
        (x - z) / t,
        2 * yw / (s * t),
        (x * z - n * n) / s,
        2 * root / t,
        Fraction(1),
    )


def _ratios_first_reflected(n, x, z, yw, root):
    s = x * z + n * n
    u = x * z - n * n
    return (
        yw / (s * root),
        n * (z - x) / u,
        2 * n * yw / (u * s),
        n * (x + z) / s,
        yw / (u * root),
        Fraction(1),
    )


def _ratios_second(n, x, z, yw, root):
    d = x - z
    u = n * n - x * z
    return (
        Fraction(1),
        2 * yw / (d * u),
        2 * n * root / u,
        2 * root / d,
        (n * n + x * z) / u,
        (x + z) / d,
    )


def _ratios_second_reflected(n, x, z, yw, root):
    t = x + z
    u = x * z - n * n
    return (
        Fraction(1),
        2 * yw / (n * (z * z - x * x)),
        yw / (n * t * root),
        yw / (n * (z - x) * root),
        (x * z + n * n) / (n * t),
        u / (n * (z - x)),
    )


_RATIO_BUILDERS = {
    "invariant": _ratios_invariant,
    "first": _ratios_first,
    "first_reflected": _ratios_first_reflected,
    "second": _ratios_second,
    "second_reflected": _ratios_second_reflected,
}

# Denominators that can vanish only on pairs that bypass the square-product
# invariant; checked before any square root is taken.
_NEEDS_NONZERO_SUM = ("first", "second_reflected")
_NEEDS_XZ_NOT_N_SQUARED = ("first_reflected", "second", "second_reflected")

_SIDE_SLOTS = ("a", "b", "c")
_SLOT_NAMES = ("a", "b", "c", "d_bc", "d_ac", "d_s")


def _check_denominators(parametrization: str, n: int, x: Fraction, z: Fraction) -> None:
    if parametrization in _NEEDS_NONZERO_SUM and x + z == 0:
        raise DegeneratePair(f"X = -Z degenerates the {parametrization} parametrization")
    if parametrization in _NEEDS_XZ_NOT_N_SQUARED and x * z == n * n:
        raise DegeneratePair(f"XZ = N^2 degenerates the {parametrization} parametrization")


def build_npc(pair: SolutionPair, parametrization: str) -> Cuboid:
    """Construct the canonical integer NPC of one parametrization.

    The signed ratio tuple (a, b, c, d_bc, d_ac, d_s) is taken in absolute
    value, scaled to coprime positive integers, and d_ab_sq is recomputed as
    a^2 + b^2 for the scaled values.
    """
    if parametrization not in _RATIO_BUILDERS:
        raise ValueError(f"unknown parametrization {parametrization!r}")
    n = pair.curve.N
    x, z = pair.P.x, pair.Q.x
    yw = pair.P.y * pair.Q.y
    _check_denominators(parametrization, n, x, z)
    root = sqrt_exact(x * z)
    ratios = _RATIO_BUILDERS[parametrization](n, x, z, yw, root)
    magnitudes = [abs(r) for r in ratios]
    for slot, value in zip(_SLOT_NAMES, magnitudes):
        if value == 0:
            if slot in _SIDE_SLOTS:
                raise ZeroSide(f"side {slot} collapsed to zero")
            raise DegeneratePair(f"diagonal {slot} collapsed to zero")
    a, b, c, d_bc, d_ac, d_s = map(Fraction, primitive_integer_scaling(magnitudes))
    return Cuboid(
        a, b, c, d_bc, d_ac, d_s,
        d_ab_sq=a * a + b * b,
        source=CuboidSource(N=n, X=x, Z=z, parametrization=parametrization),
    )


def _entry_to_json(value: Fraction):
    return int(value) if value.denominator == 1 else format_rational(value)


def cuboid_to_json(cuboid: Cuboid) -> dict:
    record = {
        "a": _entry_to_json(cuboid.a),
        "b": _entry_to_json(cuboid.b),
        "c": _entry_to_json(cuboid.c),
        "d_ac": _entry_to_json(cuboid.d_ac),
        "d_bc": _entry_to_json(cuboid.d_bc),
        "d_s": _entry_to_json(cuboid.d_s),
        "d_ab_sq": _entry_to_json(cuboid.d_ab_sq),
        "pc": pc_condition(cuboid),
    }
    if cuboid.source is not None:
        record["source"] = {
            "N": cuboid.source.N,
            "X": format_rational(cuboid.source.X),
            "Z": format_rational(cuboid.source.Z),
            "parametrization": cuboid.source.parametrization,
        }
    return record


def _entry_from_json(value) -> Fraction:
    return Fraction(value) if isinstance(value, int) else parse_rational(str(value))


def cuboid_from_json(record: dict) -> Cuboid:
    """Read a cuboid record; d_ab_sq defaults to a^2 + b^2 when absent."""
    a = _entry_from_json(record["a"])
    b = _entry_from_json(record["b"])
    source = None
    if record.get("source"):
        src = record["source"]
        source = CuboidSource(
            N=int(src["N"]),
            X=parse_rational(str(src["X"])),
            Z=parse_rational(str(src["Z"])),
            parametrization=str(src["parametrization"]),
        )
    return Cuboid(
        a=a,
        b=b,
        c=_entry_from_json(record["c"]),
        d_bc=_entry_from_json(record["d_bc"]),
        d_ac=_entry_from_json(record["d_ac"]),
        d_s=_entry_from_json(record["d_s"]),
        d_ab_sq=_entry_from_json(record["d_ab_sq"]) if "d_ab_sq" in record else a * a + b * b,
        source=source,
    )
