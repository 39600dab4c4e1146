"""Finitely-represented probability distributions on the real line.

A distribution is carried by its CDF: a right-continuous piecewise
function that starts at 0, never decreases, and reaches exactly 1 at its
last breakpoint. Atoms appear as jumps and uniform-density stretches as
linear pieces, so every moment and area computation downstream stays in
closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import groupby

from .piecewise import PiecewiseFn


class EmptyInput(ValueError):
    """An empirical CDF needs at least one sample."""


class WeightMismatch(ValueError):
    """Mixture weights must pair up with components and sum to one."""


def _left_support(carrier: PiecewiseFn) -> float:
    for i, b in enumerate(carrier.breaks):
        c0, c1, _ = carrier.coeffs[i]
        if c0 > 0.0 or c1 > 0.0:
            return b
    return math.inf


def _mean_of(carrier: PiecewiseFn) -> float:
    # Stieltjes integral of x dF: atoms at breakpoints, uniform mass on
    # linear pieces. The validated final segment is flat, so the sum is
    # finite by construction.
    mu = 0.0
    for i, b in enumerate(carrier.breaks):
        jump = carrier.coeffs[i][0] - carrier.left_limit(b)
        if jump != 0.0:
            mu += b * jump
        if i + 1 < len(carrier.breaks):
            c1 = carrier.coeffs[i][1]
            if c1 != 0.0:
                hi = carrier.breaks[i + 1]
                mu += c1 * 0.5 * (hi * hi - b * b)
    return mu


@dataclass(frozen=True)
class Distribution:
    """Validated CDF with cached mean and left support endpoint."""

    carrier: PiecewiseFn
    mean: float
    left_support: float

    @staticmethod
    def from_cdf(carrier: PiecewiseFn, tol: float = 1e-9) -> "Distribution":
        """Validate a piecewise function as a CDF and wrap it.

        Raises ValueError when the function is not a distribution
        function: it must rise from 0 to 1, never decrease, use only
        flat or linear pieces, and stay flat at 1 after its last
        breakpoint.
        """
        if carrier.degree() > 1:
            raise ValueError("a CDF is flat or linear between breakpoints")
        if not carrier.breaks:
            raise ValueError("a CDF needs at least one breakpoint")
        if carrier.left != 0.0:
            raise ValueError("a CDF must be 0 before its first breakpoint")
        c0, c1, _ = carrier.coeffs[-1]
        if c1 != 0.0 or abs(c0 - 1.0) > tol:
            raise ValueError("a CDF must reach 1 at its last breakpoint and stay there")
        prev = carrier.left
        for i, b in enumerate(carrier.breaks):
            seg0, seg1, _ = carrier.coeffs[i]
            if seg0 - prev < -tol:
                raise ValueError("a CDF cannot jump downward")
            if seg1 < -tol:
                raise ValueError("a CDF cannot have negative density")
            prev = carrier.left_limit(carrier.breaks[i + 1]) if i + 1 < len(carrier.breaks) else seg0
        return Distribution(carrier, _mean_of(carrier), _left_support(carrier))

    def cdf(self, x: float) -> float:
        return self.carrier.value(x)


@dataclass(frozen=True)
class DiscretePMF:
    """Finite list of (location, mass) atoms; locations strictly increasing."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise EmptyInput("a pmf needs at least one atom")
        total = 0.0
        prev = -math.inf
        for x, m in self.atoms:
            if not x > prev:
                raise ValueError("atom locations must be strictly increasing")
            if m <= 0.0:
                raise ValueError("atom masses must be positive")
            prev = x
            total += m
        if abs(total - 1.0) > 1e-9:
            raise ValueError("atom masses must sum to 1")

    def to_distribution(self) -> Distribution:
        breaks = tuple(x for x, _ in self.atoms)
        values = [0.0]
        run = 0.0
        for _, m in self.atoms:
            run += m
            values.append(run)
        values[-1] = 1.0
        return Distribution.from_cdf(PiecewiseFn.step(breaks, tuple(values)))


def from_samples(xs: list[float]) -> Distribution:
    """Empirical CDF: jump 1/n at each order statistic, ties merged."""
    if not xs:
        raise EmptyInput("no samples given")
    vals = sorted(float(x) for x in xs)
    if not all(math.isfinite(x) for x in vals):
        raise ValueError("samples must be finite")
    n = len(vals)
    breaks: list[float] = []
    heights: list[float] = [0.0]
    seen = 0
    for x, run in groupby(vals):
        seen += sum(1 for _ in run)
        breaks.append(x)
        heights.append(seen / n)
    heights[-1] = 1.0
    return Distribution.from_cdf(PiecewiseFn.step(tuple(breaks), tuple(heights)))


def dirac(a: float) -> Distribution:
    """Unit point mass at a."""
    return Distribution.from_cdf(PiecewiseFn.step((float(a),), (0.0, 1.0)))


def shift(F: Distribution, c: float) -> Distribution:
    """Translate the underlying variable by c: CDF x -> F(x - c)."""
    if c == 0.0:
        return F
    return Distribution(F.carrier.shift(c), F.mean + c, F.left_support + c)


def mixture(components: list[Distribution], weights: list[float],
            tol: float = 1e-9) -> Distribution:
    """Convex combination of CDFs."""
    if not components or len(components) != len(weights):
        raise WeightMismatch("need one weight per component")
    if any(w < 0.0 for w in weights):
        raise WeightMismatch("weights must be non-negative")
    if abs(sum(weights) - 1.0) > tol:
        raise WeightMismatch("weights must sum to 1")
    carrier = components[0].carrier.scale(weights[0])
    for comp, w in zip(components[1:], weights[1:]):
        carrier = carrier.add(comp.carrier.scale(w))
    mu = sum(w * comp.mean for comp, w in zip(components, weights))
    return Distribution(carrier, mu, _left_support(carrier))


def convolve(F: DiscretePMF, Z: DiscretePMF) -> DiscretePMF:
    """Distribution of the sum of independent atomic variables.

    Atoms landing on exactly equal sums merge; nearby but distinct sums
    stay distinct, which keeps fixture output deterministic.
    """
    sums: dict[float, float] = {}
    for x, p in F.atoms:
        for y, q in Z.atoms:
            s = x + y
            sums[s] = sums.get(s, 0.0) + p * q
    return DiscretePMF(tuple(sorted(sums.items())))


def mean(F: Distribution) -> float:
    return F.mean


def left_support(F: Distribution) -> float:
    return F.left_support
