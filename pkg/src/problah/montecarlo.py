"""Monte Carlo cross-validation of expectations of iid sums.

Random numbers come from numpy's PCG64 bit generator.  Every (k, n) cell
gets its own substream derived from ``SeedSequence(seed, spawn_key=...)``,
so results do not depend on the order in which cells are evaluated.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .distributions import (
    Bernoulli,
    Constant,
    DistributionSpec,
    FiniteDiscrete,
    Poisson,
    SpecError,
    build_profile,
    spec_label,
    sum_moments,
)
from .exact_core import format_rational

MIN_SAMPLES = 1000
MAX_K = 20
MAX_N = 10
MAX_POISSON_RATE = 30
DEFAULT_BAND = 4.0

_SUM_STREAM = 0
_DOBINSKI_STREAM = 1


@dataclass(frozen=True)
class SimConfig:
    seed: int
    samples: int
    spec: DistributionSpec

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.samples < MIN_SAMPLES:
            raise ValueError(f"samples must be >= {MIN_SAMPLES}, got {self.samples}")
        if not isinstance(self.spec, (Constant, Bernoulli, Poisson, FiniteDiscrete)):
            raise SpecError(f"{type(self.spec).__name__} cannot be sampled")


def _rng(cfg: SimConfig, stream: int, k: int, n: int) -> np.random.Generator:
    ss = np.random.SeedSequence(cfg.seed, spawn_key=(stream, k, n))
    return np.random.Generator(np.random.PCG64(ss))


def _poisson_cdf(rate: float) -> np.ndarray:
    if rate > MAX_POISSON_RATE:
        raise SpecError(f"poisson sampling supports rates <= {MAX_POISSON_RATE}, got {rate}")
    pmf = math.exp(-rate)
    cdf = [pmf]
    j = 0
    while j <= rate or pmf > 1e-18:
        j += 1
        pmf *= rate / j
        cdf.append(cdf[-1] + pmf)
    out = np.array(cdf)
    out[-1] = 1.0
    return out


def _invert(cdf: np.ndarray, u: np.ndarray) -> np.ndarray:
    # smallest index i with u < cdf[i]
    return np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1)


def _draw(spec: DistributionSpec, rng: np.random.Generator, shape) -> np.ndarray:
    if isinstance(spec, Constant):
        return np.full(shape, float(spec.c))
    u = rng.random(shape)
    if isinstance(spec, Bernoulli):
        return (u < float(spec.p)).astype(float)
    if isinstance(spec, Poisson):
        return _invert(_poisson_cdf(float(spec.alpha)), u).astype(float)
    if isinstance(spec, FiniteDiscrete):
        values = np.array([float(v) for v, _ in spec.atoms])
        cdf = np.cumsum([float(p) for _, p in spec.atoms])
        cdf[-1] = 1.0
        return values[_invert(cdf, u)]
    raise SpecError(f"{type(spec).__name__} cannot be sampled")


def _rising(s: np.ndarray, n: int) -> np.ndarray:
    out = np.ones_like(s, dtype=float)
    for i in range(n):
        out *= s + i
    return out


def _summarize(values: np.ndarray) -> tuple[float, float]:
    if np.all(values == values[0]):
        return float(values[0]), 0.0
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(len(values)))


def estimate_sum_moment(cfg: SimConfig, k: int, n: int) -> tuple[float, float]:
    """Sample mean and standard error of <S_k>_n, S_k a sum of k iid draws."""
    if not 0 <= k <= MAX_K or not 0 <= n <= MAX_N:
        raise ValueError(f"need 0 <= k <= {MAX_K} and 0 <= n <= {MAX_N}")
    if k == 0:
        return (1.0 if n == 0 else 0.0), 0.0
    rng = _rng(cfg, _SUM_STREAM, k, n)
    s = _draw(cfg.spec, rng, (cfg.samples, k)).sum(axis=1)
    return _summarize(_rising(s, n))


def estimate_dobinski(cfg: SimConfig, n: int, x: float) -> tuple[float, float]:
    """Estimate B_n^{(L,Y)}(x) as E[<S_K>_n] with K ~ Poisson(x)."""
    if x < 0:
        raise ValueError("x must be >= 0")
    if not 0 <= n <= MAX_N:
        raise ValueError(f"need 0 <= n <= {MAX_N}")
    if n == 0:
        return 1.0, 0.0
    rng = _rng(cfg, _DOBINSKI_STREAM, 0, n)
    if x == 0:
        counts = np.zeros(cfg.samples, dtype=int)
    else:
        counts = _invert(_poisson_cdf(float(x)), rng.random(cfg.samples))
    width = int(counts.max()) if counts.size else 0
    draws = _draw(cfg.spec, rng, (cfg.samples, max(width, 1)))
    mask = np.arange(max(width, 1))[None, :] < counts[:, None]
    s = np.where(mask, draws, 0.0).sum(axis=1)
    return _summarize(_rising(s, n))


@dataclass(frozen=True)
class Comparison:
    spec: DistributionSpec
    k: int
    n: int
    exact: Fraction
    estimate: float
    stderr: float
    z: float
    within: bool

    @property
    def verdict(self) -> str:
        return "ok" if self.within else "out-of-band"


def compare(exact: Fraction, estimate: float, stderr: float, band: float = DEFAULT_BAND) -> tuple[float, bool]:
    """z-score and band verdict; zero stderr demands agreement to rounding."""
    diff = estimate - float(exact)
    if stderr == 0:
        ok = abs(diff) <= 1e-9 * max(1.0, abs(float(exact)))
        return (0.0 if ok else math.copysign(math.inf, diff)), ok
    z = diff / stderr
    return z, abs(z) <= band


def compare_sum_moments(
    cfg: SimConfig, k_max: int, n_max: int, band: float = DEFAULT_BAND
) -> list[Comparison]:
    """Every cell k <= k_max, n <= n_max against the exact E[<S_k>_n]."""
    profile = build_profile(cfg.spec, n_max)
    rows = []
    for k in range(k_max + 1):
        exact_row = sum_moments(profile, k)
        for n in range(n_max + 1):
            est, se = estimate_sum_moment(cfg, k, n)
            z, ok = compare(exact_row[n], est, se, band)
            rows.append(Comparison(cfg.spec, k, n, exact_row[n], est, se, z, ok))
    return rows


CSV_HEADER = ("spec", "k", "n", "exact", "estimate", "stderr", "z-score", "verdict")


def comparisons_to_csv(rows: Iterable[Comparison]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([
            spec_label(r.spec), r.k, r.n, format_rational(r.exact),
            repr(r.estimate), repr(r.stderr), repr(r.z), r.verdict,
        ])
    return buf.getvalue()


def all_within(rows: Sequence[Comparison]) -> bool:
    return all(r.within for r in rows)
