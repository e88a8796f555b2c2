"""Random variables described by exact rising-factorial moments.

Every distribution is reduced to its :class:`MomentProfile`, the prefix
``E[<Y>_0], E[<Y>_1], ..., E[<Y>_N]``.  All downstream formulas are formal
power-series identities in these moments; for :class:`RawRisingMoments`
no check is made that a random variable with those moments exists.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence, Union

from .combinatorics import lah_bell_poly
from .exact_core import as_rational, binomial_convolve, format_rational, poly_eval, rising_factorial


class SpecError(ValueError):
    """A distribution specification violates its invariants or cannot be parsed."""


@dataclass(frozen=True)
class Constant:
    c: Fraction

    kind = "constant"

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))

    def support(self):
        return ((self.c, Fraction(1)),)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "c": format_rational(self.c)}


@dataclass(frozen=True)
class Bernoulli:
    p: Fraction

    kind = "bernoulli"

    def __post_init__(self):
        p = as_rational(self.p)
        if not 0 <= p <= 1:
            raise SpecError(f"bernoulli requires 0 <= p <= 1, got p={p}")
        object.__setattr__(self, "p", p)

    def support(self):
        return ((Fraction(0), 1 - self.p), (Fraction(1), self.p))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "p": format_rational(self.p)}


@dataclass(frozen=True)
class Poisson:
    alpha: Fraction

    kind = "poisson"

    def __post_init__(self):
        alpha = as_rational(self.alpha)
        if alpha <= 0:
            raise SpecError(f"poisson requires alpha > 0, got alpha={alpha}")
        object.__setattr__(self, "alpha", alpha)

    def support(self):
        return None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "alpha": format_rational(self.alpha)}


@dataclass(frozen=True)
class FiniteDiscrete:
    """Law with finitely many atoms, given as ``(value, prob)`` pairs."""

    atoms: tuple[tuple[Fraction, Fraction], ...]

    kind = "finite"

    def __post_init__(self):
        atoms = tuple((as_rational(v), as_rational(p)) for v, p in self.atoms)
        if not atoms:
            raise SpecError("finite distribution needs at least one atom")
        values = [v for v, _ in atoms]
        if len(set(values)) != len(values):
            raise SpecError("finite distribution support values must be distinct")
        if any(p < 0 for _, p in atoms):
            raise SpecError("finite distribution probabilities must be >= 0")
        total = sum((p for _, p in atoms), Fraction(0))
        if total != 1:
            raise SpecError(f"finite distribution probabilities sum to {total}, not 1")
        object.__setattr__(self, "atoms", atoms)

    def support(self):
        return self.atoms

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "support": [{"value": format_rational(v), "prob": format_rational(p)} for v, p in self.atoms],
        }


@dataclass(frozen=True)
class RawRisingMoments:
    """User-supplied ``E[<Y>_1], E[<Y>_2], ...``; never extrapolated."""

    moments: tuple[Fraction, ...]

    kind = "raw_rising"

    def __post_init__(self):
        ms = tuple(as_rational(m) for m in self.moments)
        if not ms:
            raise SpecError("raw rising moments must be nonempty")
        object.__setattr__(self, "moments", ms)

    def support(self):
        return None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "moments": [format_rational(m) for m in self.moments]}


DistributionSpec = Union[Constant, Bernoulli, Poisson, FiniteDiscrete, RawRisingMoments]


def finite_support(spec: DistributionSpec):
    """Atoms ``((value, prob), ...)`` for finitely supported specs, else None."""
    return spec.support()


def bernoulli_parameter(spec: DistributionSpec) -> Fraction | None:
    """p if the law of ``spec`` is Bernoulli(p), else None.

    Point masses at 0 or 1 and finite laws supported on {0, 1} count.
    """
    if isinstance(spec, Bernoulli):
        return spec.p
    atoms = spec.support()
    if atoms is None:
        return None
    if any(v not in (0, 1) for v, _ in atoms):
        return None
    return sum((p for v, p in atoms if v == 1), Fraction(0))


def spec_label(spec: DistributionSpec) -> str:
    """Short human-readable name, e.g. ``Poisson(1/2)``."""
    if isinstance(spec, Constant):
        return f"Constant({spec.c})"
    if isinstance(spec, Bernoulli):
        return f"Bernoulli({spec.p})"
    if isinstance(spec, Poisson):
        return f"Poisson({spec.alpha})"
    if isinstance(spec, FiniteDiscrete):
        return "Finite{" + ", ".join(f"{v}:{p}" for v, p in spec.atoms) + "}"
    return f"RawRising[{len(spec.moments)}]"


# --- serialization ---------------------------------------------------------

def spec_to_json(spec: DistributionSpec) -> str:
    return json.dumps(spec.to_dict(), separators=(",", ":"))


def spec_from_dict(doc: Any) -> DistributionSpec:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SpecError("distribution spec must be a JSON object with a 'kind' field")
    kind = doc["kind"]
    try:
        if kind == "constant":
            return Constant(_rat_field(doc, "c"))
        if kind == "bernoulli":
            return Bernoulli(_rat_field(doc, "p"))
        if kind == "poisson":
            return Poisson(_rat_field(doc, "alpha"))
        if kind == "finite":
            atoms = []
            for atom in doc["support"]:
                if isinstance(atom, dict):
                    atoms.append((_rat(atom["value"]), _rat(atom["prob"])))
                else:
                    value, prob = atom
                    atoms.append((_rat(value), _rat(prob)))
            return FiniteDiscrete(tuple(atoms))
        if kind == "raw_rising":
            return RawRisingMoments(tuple(_rat(m) for m in doc["moments"]))
        if kind == "raw_power":
            # ingestion only: power moments E[Y^0], E[Y^1], ...
            power = [_rat(m) for m in doc["moments"]]
            return RawRisingMoments(tuple(power_to_rising(power)[1:]))
    except SpecError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"malformed {kind!r} spec: {exc}") from exc
    raise SpecError(f"unknown distribution kind {kind!r}")


def spec_from_json(text: str) -> DistributionSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec is not valid JSON: {exc}") from exc
    return spec_from_dict(doc)


def _rat(value) -> Fraction:
    if isinstance(value, float):
        raise SpecError(f"rationals must be given as 'num/den' strings or integers, not float {value!r}")
    return as_rational(value)


def _rat_field(doc: dict, name: str) -> Fraction:
    if name not in doc:
        raise SpecError(f"{doc['kind']!r} spec is missing field {name!r}")
    return _rat(doc[name])


# --- moments ---------------------------------------------------------------

@dataclass(frozen=True)
class MomentProfile:
    spec: DistributionSpec
    max_order: int
    rising: tuple[Fraction, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.rising) != self.max_order + 1:
            raise ValueError("rising moments must have max_order + 1 entries")
        if self.rising[0] != 1:
            raise ValueError("E[<Y>_0] must be 1")

    def __getitem__(self, n: int) -> Fraction:
        return self.rising[n]


def build_profile(spec: DistributionSpec, max_order: int) -> MomentProfile:
    """Exact rising-factorial moments ``E[<Y>_n]`` for ``n <= max_order``."""
    if max_order < 0:
        raise ValueError(f"max_order must be >= 0, got {max_order}")
    orders = range(1, max_order + 1)
    if isinstance(spec, Bernoulli):
        # <0>_n = 0 and <1>_n = n! for n >= 1
        ms = [math.factorial(n) * spec.p for n in orders]
    elif isinstance(spec, Poisson):
        # E[(Y)_k] = alpha^k, so E[<Y>_n] = sum_k L(n,k) alpha^k
        ms = [poly_eval(lah_bell_poly(n), spec.alpha) for n in orders]
    elif isinstance(spec, (Constant, FiniteDiscrete)):
        ms = [sum((p * rising_factorial(v, n) for v, p in spec.support()), Fraction(0)) for n in orders]
    elif isinstance(spec, RawRisingMoments):
        if max_order > len(spec.moments):
            raise SpecError(
                f"requested rising moments up to order {max_order} but only "
                f"{len(spec.moments)} were supplied"
            )
        ms = list(spec.moments[:max_order])
    else:
        raise TypeError(f"not a distribution spec: {spec!r}")
    return MomentProfile(spec, max_order, (Fraction(1), *ms))


def sum_moments(profile: MomentProfile, k: int) -> tuple[Fraction, ...]:
    """``E[<S_k>_n]`` for ``n <= max_order``, where S_k is a sum of k iid copies.

    Independence makes the generating series of ``S_k`` the k-th power of
    that of Y, so each extra summand is one binomial convolution.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    N = profile.max_order
    acc = [Fraction(1)] + [Fraction(0)] * N
    for _ in range(k):
        acc = binomial_convolve(acc, profile.rising, N + 1)
    return tuple(acc)


def iter_sum_moments(profile: MomentProfile):
    """Yield ``sum_moments(profile, k)`` for k = 0, 1, 2, ... incrementally."""
    N = profile.max_order
    acc = [Fraction(1)] + [Fraction(0)] * N
    while True:
        yield tuple(acc)
        acc = binomial_convolve(acc, profile.rising, N + 1)


@lru_cache(maxsize=None)
def _stirling1_unsigned_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling1_unsigned_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = prev[k - 1] + ((n - 1) * prev[k] if k < n else 0)
    return tuple(row)


def power_to_rising(power_moments: Sequence) -> list[Fraction]:
    """Convert ``E[Y^n]`` to ``E[<Y>_n]`` via <x>_n = sum_k c(n,k) x^k."""
    ms = [as_rational(m) for m in power_moments]
    if not ms or ms[0] != 1:
        raise SpecError("power moments must start with E[Y^0] = 1")
    return [
        sum((c * ms[k] for k, c in enumerate(_stirling1_unsigned_row(n))), Fraction(0))
        for n in range(len(ms))
    ]


BATTERY: tuple[DistributionSpec, ...] = (
    Constant(1),
    Constant(2),
    Bernoulli(Fraction(1, 2)),
    Bernoulli(Fraction(1, 3)),
    Poisson(1),
    Poisson(Fraction(1, 2)),
    FiniteDiscrete(((1, Fraction(1, 3)), (2, Fraction(1, 3)), (3, Fraction(1, 3)))),
)
