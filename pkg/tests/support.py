"""Shared random-instance builders for the test suite.

Everything draws from dyadic grids: breakpoints are multiples of 1/8 in
[-4, 4] and masses are multiples of 1/32 (or 1/64 after splits), so area
bookkeeping stays exact in binary floating point and verdicts never
wobble near tolerance boundaries.
"""

import random

import sdorder as sd
from sdorder.piecewise import signed_parts

GRID = [k / 8.0 for k in range(-32, 33)]


def dyadic_pmf(rng: random.Random, max_atoms: int = 6) -> sd.DiscretePMF:
    """Step distribution with dyadic locations and masses summing to 1."""
    n = rng.randint(2, max_atoms)
    xs = sorted(rng.sample(GRID, n))
    cuts = sorted(rng.sample(range(1, 32), n - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [32])]
    return sd.DiscretePMF(tuple((x, p / 32.0) for x, p in zip(xs, parts)))


def arb_pair(rng: random.Random, max_atoms: int = 6):
    F = dyadic_pmf(rng, max_atoms).to_distribution()
    G = dyadic_pmf(rng, max_atoms).to_distribution()
    return F, G


def _merge(atoms: list) -> list:
    acc: dict = {}
    for x, m in atoms:
        acc[x] = acc.get(x, 0.0) + m
    return sorted(acc.items())


def ssd_pmf_pair(rng: random.Random, max_atoms: int = 12):
    """(F, G) as PMFs with F dominated by G in the second order.

    F starts as a copy of G and is degraded by mean-preserving splits
    and an occasional uniform left shift; both operations only ever
    raise the running CDF-difference integral.
    """
    base = dyadic_pmf(rng, max_atoms=max(2, max_atoms // 2))
    atoms = list(base.atoms)
    for _ in range(rng.randint(1, 3)):
        i = rng.randrange(len(atoms))
        x, m = atoms[i]
        if m < 0.0625 or len(atoms) >= max_atoms:
            continue
        d = rng.choice([0.125, 0.25, 0.5, 1.0])
        half = m / 2.0
        atoms[i] = (x - d, half)
        atoms.append((x + d, half))
        atoms = _merge(atoms)
    if rng.random() < 0.3:
        c = rng.choice([0.125, 0.25, 0.5])
        atoms = [(x - c, m) for x, m in atoms]
    return sd.DiscretePMF(tuple(atoms)), base


def ssd_pair(rng: random.Random, max_atoms: int = 12):
    Fp, Gp = ssd_pmf_pair(rng, max_atoms)
    return Fp.to_distribution(), Gp.to_distribution()


def fsd_pair(rng: random.Random, max_atoms: int = 6):
    """F equal to G pushed left, so the first-order comparison holds."""
    base = dyadic_pmf(rng, max_atoms)
    c = rng.choice([0.125, 0.25, 0.5, 1.0])
    shifted = sd.DiscretePMF(tuple((x - c, m) for x, m in base.atoms))
    return shifted.to_distribution(), base.to_distribution()


def step_gamma(rng: random.Random, positive: bool = False) -> sd.GammaFn:
    """Random non-decreasing step weight with dyadic levels in [0, 1]."""
    k = rng.randint(1, 3)
    bs = sorted(rng.sample(GRID, k))
    lo = 1 if positive else 0
    levels = sorted(rng.randint(lo, 16) / 16.0 for _ in range(k + 1))
    return sd.validate_gamma(sd.PiecewiseFn.step(tuple(bs), tuple(levels)))


def step_epsilon(rng: random.Random) -> sd.EpsilonFn:
    """Random step weight with dyadic levels inside (0, 1/2)."""
    k = rng.randint(0, 3)
    if k == 0:
        return sd.EpsilonFn.const(rng.randint(1, 7) / 16.0)
    bs = sorted(rng.sample(GRID, k))
    vals = tuple(rng.randint(1, 7) / 16.0 for _ in range(k + 1))
    return sd.validate_epsilon(sd.PiecewiseFn.step(tuple(bs), vals))


def concave_utility(rng: random.Random) -> sd.UtilityPWL:
    k = rng.randint(1, 4)
    bs = sorted(rng.sample(GRID, k))
    slopes = sorted((rng.uniform(0.05, 3.0) for _ in range(k + 1)), reverse=True)
    return sd.UtilityPWL(tuple(bs), tuple(slopes))


def weighted_member_utility(rng: random.Random, g: sd.GammaFn) -> sd.UtilityPWL:
    """Utility admissible for g by a conservative prefix-minimum draw.

    Each new slope stays below (running min slope) / sup gamma, which is
    sufficient for the pointwise weighted condition yet still allows
    slope increases (greediness above 1) whenever sup gamma < 1.
    """
    k = rng.randint(1, 4)
    bs = sorted(rng.sample(GRID, k))
    cap = max(g.upper, 1e-6)
    slopes = [rng.uniform(0.2, 2.0)]
    pref = slopes[0]
    for _ in bs:
        s = rng.uniform(0.1, 1.0) * (pref / cap)
        slopes.append(s)
        pref = min(pref, s)
    return sd.UtilityPWL(tuple(bs), tuple(slopes))


def probe_grid(F: sd.Distribution, G: sd.Distribution,
               g: sd.GammaFn | None = None) -> tuple:
    pts = set(F.carrier.breaks) | set(G.carrier.breaks)
    if g is not None:
        pts |= set(g.carrier.breaks)
    return tuple(sorted(pts))


def gamma_max(g1: sd.GammaFn, g2: sd.GammaFn) -> sd.GammaFn:
    """Pointwise maximum of two weights (still non-decreasing)."""
    pos, _ = signed_parts(g2.carrier.sub(g1.carrier))
    return sd.validate_gamma(g1.carrier.add(pos))
