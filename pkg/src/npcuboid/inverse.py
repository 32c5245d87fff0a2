"""Recover congruent numbers and solution pairs from a given NPC.

Inverting the pair-to-cuboid construction works on diagonal-sum ratios:
X/Z and XZ/N^2 are squares of such ratios, so each candidate abscissa ratio
X/N is a product of two of them with a common sign. Candidates surviving the
curve inequality (-1 < X/N < 0 or X/N > 1) determine N as the squarefree
kernel of (X/N)((X/N)^2 - 1), and the abscissae follow by scaling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .curve import CongruentCurve, CurvePoint, SolutionPair
from .cuboids import Cuboid, pc_condition, verify_npc
from .errors import InconsistentKernel, NotASquare, NotAnNPC
from .factoring import DEFAULT_RHO_BUDGET, DEFAULT_TRIAL_BOUND, squarefree_kernel
from .rationals import format_rational, sqrt_exact

PAIR_LABELS = ("I", "II", "III", "IV")


@dataclass(frozen=True)
class RecoveredPair:
    which: str
    pair: SolutionPair


@dataclass(frozen=True)
class RecoveredSolutions:
    """All four solution pairs reproducing one NPC, with their squarefree N.

    Pairs I/II and III/IV are images of each other under the first reflected
    transformation; I/III and II/IV under the second. pc_input flags inputs
    that are themselves perfect cuboids (accepted, but remarkable).
    """

    N: int
    pairs: tuple[RecoveredPair, ...]
    family: str
    pc_input: bool

    def pair(self, which: str) -> SolutionPair:
        for entry in self.pairs:
            if entry.which == which:
                return entry.pair
        raise KeyError(which)


@dataclass(frozen=True)
class FamilyRecovery:
    """One recovered pair and its first-reflected image for a non-invariant
    parametrization family."""

    N: int
    pair: SolutionPair
    reflected: SolutionPair
    family: str


def _satisfies_curve_inequality(ratio: Fraction) -> bool:
    # x(x^2 - N^2) > 0, i.e. a nontrivial point can sit above this abscissa.
    return -1 < ratio < 0 or ratio > 1


def _require_npc(cuboid: Cuboid) -> None:
    violations = verify_npc(cuboid)
    if violations:
        raise NotAnNPC(f"violated relations: {', '.join(violations)}")


def _point_from_ratio(curve: CongruentCurve, ratio: Fraction) -> CurvePoint:
    x = curve.N * ratio
    try:
        y = sqrt_exact(curve.rhs(x))
    except NotASquare as exc:
        raise InconsistentKernel(
            f"recovered abscissa {format_rational(x)} is not a curve point of N={curve.N}"
        ) from exc
    return curve.point(x, y)


def _pair_from_ratios(
    curve: CongruentCurve, x_ratio: Fraction, z_ratio: Fraction
) -> SolutionPair:
    return SolutionPair(_point_from_ratio(curve, x_ratio), _point_from_ratio(curve, z_ratio))


def _kernel_of_ratio(ratio: Fraction, trial_bound: int, rho_budget: int) -> int:
    return squarefree_kernel(ratio * (ratio * ratio - 1), trial_bound, rho_budget)


def recover_invariant(
    cuboid: Cuboid,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_budget: int = DEFAULT_RHO_BUDGET,
) -> RecoveredSolutions:
    """Invert the invariant parametrization: N plus the four pairs I-IV.

    Feeding pair I or II back through the invariant construction reproduces
    the input exactly; pairs III and IV reproduce it with sides a and b
    interchanged.
    """
    _require_npc(cuboid)
    a, b, c = cuboid.a, cuboid.b, cuboid.c
    d_bc, d_ac, d_s = cuboid.d_bc, cuboid.d_ac, cuboid.d_s

    survivors = []
    for ac_sign in (1, -1):
        for bc_sign in (1, -1):
            ac_sum = d_ac + ac_sign * c
            bc_sum = d_s + bc_sign * d_bc
            for outer in (1, -1):
                x_ratio = outer * ac_sum * bc_sum / (a * a)
                z_ratio = outer * bc_sum / ac_sum
                if _satisfies_curve_inequality(x_ratio) and _satisfies_curve_inequality(z_ratio):
                    survivors.append((x_ratio, z_ratio))
    if len(survivors) != 4:
        raise InconsistentKernel(
            f"{len(survivors)} of 8 sign candidates passed the curve inequality, expected 4"
        )

    kernels = {_kernel_of_ratio(xr, trial_bound, rho_budget) for xr, _ in survivors}
    if len(kernels) != 1:
        raise InconsistentKernel(f"surviving candidates disagree on N: {sorted(kernels)}")
    n = kernels.pop()
    curve = CongruentCurve(n)

    ratio_pairs = {
        "I": ((d_ac + c) * (d_s + d_bc) / (a * a), (d_s + d_bc) / (d_ac + c)),
        "II": (-(d_ac - c) * (d_s - d_bc) / (a * a), -(d_s - d_bc) / (d_ac - c)),
        "III": ((d_s + d_ac) / (d_bc + c), (d_bc + c) * (d_s + d_ac) / (b * b)),
        "IV": (-(d_s - d_ac) / (d_bc - c), -(d_bc - c) * (d_s - d_ac) / (b * b)),
    }
    pairs = []
    for which in PAIR_LABELS:
        x_ratio, z_ratio = ratio_pairs[which]
        for ratio in (x_ratio, z_ratio):
            if not _satisfies_curve_inequality(ratio):
                raise InconsistentKernel(
                    f"pair {which} ratio {format_rational(ratio)} fails the curve inequality"
                )
        if _kernel_of_ratio(x_ratio, trial_bound, rho_budget) != n:
            raise InconsistentKernel(f"pair {which} disagrees on the congruent number")
        pairs.append(RecoveredPair(which, _pair_from_ratios(curve, x_ratio, z_ratio)))

    return RecoveredSolutions(
        N=n, pairs=tuple(pairs), family="invariant", pc_input=pc_condition(cuboid)
    )


def _recover_family(
    cuboid: Cuboid,
    x_ratio: Fraction,
    z_ratio: Fraction,
    family: str,
    trial_bound: int,
    rho_budget: int,
) -> FamilyRecovery:
    for ratio in (x_ratio, z_ratio):
        if not _satisfies_curve_inequality(ratio):
            raise InconsistentKernel(
                f"{family} recovery ratio {format_rational(ratio)} fails the curve inequality"
            )
    n = _kernel_of_ratio(x_ratio, trial_bound, rho_budget)
    if _kernel_of_ratio(z_ratio, trial_bound, rho_budget) != n:
        raise InconsistentKernel(f"{family} recovery ratios disagree on the congruent number")
    curve = CongruentCurve(n)
    pair = _pair_from_ratios(curve, x_ratio, z_ratio)
    reflected = SolutionPair(
        _abs_y(pair.P.reflect_first()), _abs_y(pair.Q.reflect_first())
    )
    return FamilyRecovery(N=n, pair=pair, reflected=reflected, family=family)


def _abs_y(point: CurvePoint) -> CurvePoint:
    return point if point.y >= 0 else point.neg()


def recover_first(
    cuboid: Cuboid,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_budget: int = DEFAULT_RHO_BUDGET,
) -> FamilyRecovery:
    """Invert the first parametrization.

    Its circle parameters are diagonal-sum ratios of the cuboid:
    alpha = (d_s + d_bc)/a and beta = (d_s + b)/d_ac, giving
    X/N = alpha*beta and Z/N = alpha/beta.
    """
    _require_npc(cuboid)
    alpha = (cuboid.d_s + cuboid.d_bc) / cuboid.a
    beta = (cuboid.d_s + cuboid.b) / cuboid.d_ac
    return _recover_family(
        cuboid, alpha * beta, alpha / beta, "first", trial_bound, rho_budget
    )


def recover_second(
    cuboid: Cuboid,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_budget: int = DEFAULT_RHO_BUDGET,
) -> FamilyRecovery:
    """Invert the second parametrization.

    Its hyperbola parameters are alpha = d_bc/(d_s + a) and
    beta = (d_ac + a)/c, giving X/N = beta/alpha and Z/N = beta*alpha.
    """
    _require_npc(cuboid)
    alpha = cuboid.d_bc / (cuboid.d_s + cuboid.a)
    beta = (cuboid.d_ac + cuboid.a) / cuboid.c
    return _recover_family(
        cuboid, beta / alpha, beta * alpha, "second", trial_bound, rho_budget
    )


def classify_labeling(
    s1: Fraction, s2: Fraction, s3: Fraction, d1: Fraction, d2: Fraction, d_s: Fraction
) -> Cuboid:
    """Relabel loose cuboid data so the missing diagonal spans sides a and b.

    Tries every assignment of the three sides and the two known face
    diagonals and returns the first labeling whose exact relations all hold.
    """
    for a, b, c in permutations((s1, s2, s3)):
        for d_bc, d_ac in ((d1, d2), (d2, d1)):
            try:
                candidate = Cuboid(a, b, c, d_bc, d_ac, d_s, d_ab_sq=a * a + b * b)
            except ValueError:
                continue
            if not verify_npc(candidate):
                return candidate
    raise NotAnNPC("no labeling of the given values satisfies the cuboid relations")


def recovery_to_json(result: RecoveredSolutions | FamilyRecovery) -> dict:
    if isinstance(result, RecoveredSolutions):
        pairs = [
            {
                "X": format_rational(entry.pair.P.x),
                "Z": format_rational(entry.pair.Q.x),
                "which": entry.which,
            }
            for entry in result.pairs
        ]
        return {"N": result.N, "pairs": pairs, "family": result.family}
    return {
        "N": result.N,
        "pairs": [
            {
                "X": format_rational(result.pair.P.x),
                "Z": format_rational(result.pair.Q.x),
                "which": "I",
            },
            {
                "X": format_rational(result.reflected.P.x),
                "Z": format_rational(result.reflected.Q.x),
                "which": "II",
            },
        ],
        "family": result.family,
    }
