"""Exact probabilistic Lah numbers and Lah-Bell polynomials."""

from .combinatorics import (
    TriangleTable,
    bell_poly,
    complete_bell,
    lah,
    lah_bell_poly,
    partial_bell,
    partial_bell_oracle,
    stirling2,
)
from .distributions import (
    BATTERY,
    Bernoulli,
    Constant,
    FiniteDiscrete,
    MomentProfile,
    Poisson,
    RawRisingMoments,
    SpecError,
    build_profile,
    spec_from_json,
    spec_to_json,
    sum_moments,
)
from .exact_core import Rational, UniPoly
from .identities import CheckReport, check, check_all
from .probabilistic import ProbLahContext, dobinski_eval, prob_lah, prob_lah_bell_poly

__version__ = "0.1.0"
