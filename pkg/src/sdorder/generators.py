"""Ready-made (F, G, weight) instances for golden tests and demos.

Each constructor builds a small family with known verdicts: an
equal-means pair ordered pointwise but not by any constant fraction, a
rational-ratio square pair separating the pointwise from the constant
order, a single-crossing pair with a binding margin, and a utility
family whose exclusion from the matched class is detectable.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction

from .distributions import DiscretePMF, Distribution, dirac
from .gamma import GammaFn, validate_gamma
from .piecewise import PiecewiseFn
from .utility import UtilityPWL, combine

__all__ = [
    "ParameterViolation",
    "NoValidRational",
    "ThetaVariant",
    "example_identical_means",
    "example_local_interpolation",
    "example_squares",
    "example_strict_inclusion",
    "example_theta_family",
]


class ParameterViolation(ValueError):
    """A constructor precondition does not hold."""


class NoValidRational(ValueError):
    """No admissible ratio exists in the requested open interval."""


class ThetaVariant(str, Enum):
    MF = "MF"
    FF = "FF"


def _step_cdf(atoms: list[tuple[float, float]]) -> Distribution:
    return DiscretePMF(tuple(atoms)).to_distribution()


def example_identical_means(
    mu: float, eps: float
) -> tuple[Distribution, Distribution, GammaFn]:
    """Two-atom spread at mu +- eps against the point mass at mu.

    The weight ramps linearly from 0 at mu to 1 at mu + eps (extended by
    0 to the left), which makes the pointwise condition hold with a
    binding margin while every constant weight below 1 fails at the top
    of the ramp.
    """
    if not (mu > eps > 0.0):
        raise ParameterViolation("need mu > eps > 0")
    F = _step_cdf([(mu - eps, 0.5), (mu + eps, 0.5)])
    G = dirac(mu)
    carrier = PiecewiseFn(
        breaks=(mu, mu + eps),
        left=0.0,
        coeffs=((0.0, 1.0 / eps, 0.0), (1.0, 0.0, 0.0)),
    )
    return F, G, validate_gamma(carrier)


def example_local_interpolation(t1: float, t2: float, gamma_mid: float) -> GammaFn:
    """Three-plateau step weight: 0 below t1, gamma_mid up to t2, then 1."""
    if not t1 < t2:
        raise ParameterViolation("need t1 < t2")
    if not 0.0 < gamma_mid < 1.0:
        raise ParameterViolation("mid plateau must lie strictly inside (0, 1)")
    return validate_gamma(PiecewiseFn.step((t1, t2), (0.0, gamma_mid, 1.0)))


def _simplest_rational(lo: Fraction, hi: Fraction) -> tuple[int, int]:
    """Minimal-denominator fraction strictly inside (lo, hi).

    Binary mediant walk from the full ray; the first mediant falling
    strictly inside the interval is the simplest such fraction.
    """
    if not lo < hi:
        raise NoValidRational(f"empty interval ({float(lo)}, {float(hi)})")
    la, lb, ra, rb = 0, 1, 1, 0
    for _ in range(20000):
        ma, mb = la + ra, lb + rb
        m = Fraction(ma, mb)
        if m <= lo:
            la, lb = ma, mb
        elif m >= hi:
            ra, rb = ma, mb
        else:
            return ma, mb
    raise NoValidRational(f"no simple fraction found in ({float(lo)}, {float(hi)})")


def _flat_reach(g: GammaFn, t0: float) -> tuple[float, float]:
    """(width of constancy left of t0, width right of t0), capped at 1."""
    carrier = g.carrier
    i = carrier.segment_index(t0)
    if i < 0:
        start, stop = -math.inf, carrier.breaks[0] if carrier.breaks else math.inf
        flat = True
    else:
        start = carrier.breaks[i]
        stop = carrier.breaks[i + 1] if i + 1 < len(carrier.breaks) else math.inf
        c = carrier.coeffs[i]
        flat = c[1] == 0.0 and c[2] == 0.0
    if not flat:
        return 0.0, 0.0
    left = min(t0 - start, 1.0)
    right = min(stop - t0, 1.0)
    return left, right


def _square_pair(
    t_start: float, M: int, N: int, width: float
) -> tuple[Distribution, Distribution]:
    """Step pair supported on [t_start, t_start + 2*width/(M*N)] with
    deficit-to-surplus area ratio exactly M/N.

    K-scaling shrinks the cell until the taller CDF jump stays below 1.
    """
    K = 1
    ratio = Fraction(width)
    while (M + N) * ratio >= K * M * N:
        K += 1
    cell = width / (K * M * N)
    a, b, c = t_start, t_start + cell, t_start + 2.0 * cell
    F = _step_cdf([(a, N * cell), (c, 1.0 - N * cell)])
    G = _step_cdf([(b, (M + N) * cell), (c, 1.0 - (M + N) * cell)])
    return F, G


def example_squares(
    gamma_target: float, g: GammaFn, t0: float
) -> tuple[Distribution, Distribution]:
    """Pair whose deficit-to-surplus ratio is a rational wedged between
    the constant target and the weight's value at t0.

    With gamma(t0) above the target the squares sit on the flat stretch
    left of t0: the pointwise check passes everywhere while the constant
    target fails on total areas.  With gamma(t0) below the target the
    mirrored placement just right of t0 flips both verdicts.
    """
    if not 0.0 <= gamma_target <= 1.0:
        raise ParameterViolation("target must lie in [0, 1]")
    v = g.value(t0)
    if v == gamma_target:
        raise NoValidRational("weight equals the target at t0")
    left, right = _flat_reach(g, t0)
    mid = Fraction(gamma_target) + (Fraction(v) - Fraction(gamma_target)) / 2
    if v > gamma_target:
        # ratio in the lower half-interval, strictly away from gamma(t0)
        if left <= 0.0:
            raise ParameterViolation("weight must be flat on a left neighbourhood of t0")
        M, N = _simplest_rational(Fraction(gamma_target), mid)
        return _square_pair(t0 - left, M, N, left)
    if right <= 0.0:
        raise ParameterViolation("weight must be flat on a right neighbourhood of t0")
    M, N = _simplest_rational(mid, Fraction(gamma_target))
    return _square_pair(t0, M, N, right / 2.0)


def example_strict_inclusion(
    t: float, g: GammaFn, c: float
) -> tuple[Distribution, Distribution]:
    """Single-crossing pair with surplus area c and deficit area gamma(t)*c.

    Surplus sits on a square of side sqrt(c) ending at the crossing t;
    the deficit block has the same width and height scaled by gamma(t).
    """
    if c <= 0.0:
        raise ParameterViolation("surplus area must be positive")
    s = math.sqrt(c)
    v = g.value(t)
    if not s + s * v < 1.0:
        raise ParameterViolation("areas too large: need sqrt(c)*(1 + gamma(t)) < 1")
    F = _step_cdf([(t - s, s), (t + s, 1.0 - s)])
    drop = s * (1.0 + v)
    G = _step_cdf([(t, drop), (t + s, 1.0 - drop)])
    return F, G


def example_theta_family(
    theta: float, variant: ThetaVariant | str, grid: int = 8
) -> tuple[UtilityPWL, GammaFn]:
    """Parametrized utility families probing class membership.

    MF (theta > 1): the sum of a linear part and a kinked part, paired
    with a step discretization of 1 - e^(1-x) on [1, theta].  The sum is
    admissible by construction.

    FF (0 < theta < 1): a staircase whose slope ramps from theta up to
    sqrt(theta) against the weight clamp(x, 0, 1); the final stair
    touches the admissibility cap exactly, so the exclusion scan fires.
    """
    var = ThetaVariant(variant.upper() if isinstance(variant, str) else variant)
    if grid < 2:
        raise ParameterViolation("grid must have at least 2 cells")
    if var is ThetaVariant.MF:
        if not theta > 1.0:
            raise ParameterViolation("MF variant needs theta > 1")
        gt = 1.0 - math.exp(1.0 - theta)
        v = UtilityPWL((), (gt,))
        w = UtilityPWL((gt, theta), (gt, 1.0, 0.0))
        u = combine([(1.0, v), (1.0, w)])
        xs = [1.0 + k * (theta - 1.0) / grid for k in range(grid)]
        vals = [0.0] + [
            1.0 - math.exp(1.0 - (1.0 + (k + 1) * (theta - 1.0) / grid))
            for k in range(grid)
        ]
        vals[-1] = gt
        gamma = validate_gamma(PiecewiseFn.step(tuple(xs), tuple(vals)))
        return u, gamma
    if not 0.0 < theta < 1.0:
        raise ParameterViolation("FF variant needs theta in (0, 1)")
    root = math.sqrt(theta)
    h = (root - theta) / grid
    breaks = [theta + k * h for k in range(grid)] + [root]
    slopes = [root] + [theta + k * h for k in range(grid - 1)] + [root, theta]
    u = UtilityPWL(tuple(breaks), tuple(slopes))
    gamma = validate_gamma(
        PiecewiseFn(
            breaks=(0.0, 1.0),
            left=0.0,
            coeffs=((0.0, 1.0, 0.0), (1.0, 0.0, 0.0)),
        )
    )
    return u, gamma
