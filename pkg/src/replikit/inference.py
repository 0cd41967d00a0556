"""Posterior probabilities for the true mean of a paired-difference study.

The belief about the true mean is the Gaussian centred on the observed mean
with scale SEM = sd / sqrt(n).  Under a uniform prior over possible true
means this posterior coincides with the sampling distribution used for P
values, so the one-sided P value against a null value equals the posterior
probability that the true mean lies on the null's side of it.
"""

import math
from dataclasses import dataclass

from ._checks import DomainError, finite, integer, open_unit, positive
from .gaussian import normal_cdf, normal_quantile

__all__ = [
    "MeanPosterior",
    "RangeOfInterest",
    "StudySummary",
    "confidence_limits",
    "fraction_of_individuals_beyond",
    "p_value_one_sided",
    "p_value_two_sided",
    "posterior_from",
    "prob_true_beyond",
    "prob_true_within",
    "proportion_probability",
    "sem_of",
]


@dataclass(frozen=True)
class StudySummary:
    """An observed crossover study: number of pairs, SD of the paired
    differences and the mean difference."""

    n: int
    sd: float
    mean_diff: float

    def __post_init__(self):
        object.__setattr__(self, "n", integer("n", self.n, 2))
        object.__setattr__(self, "sd", positive("sd", self.sd))
        object.__setattr__(self, "mean_diff", finite("mean_diff", self.mean_diff))


@dataclass(frozen=True)
class MeanPosterior:
    mean: float
    sem: float

    def __post_init__(self):
        object.__setattr__(self, "mean", finite("mean", self.mean))
        object.__setattr__(self, "sem", positive("sem", self.sem))


@dataclass(frozen=True)
class RangeOfInterest:
    """Interval of true values; either bound may be infinite."""

    lower: float = -math.inf
    upper: float = math.inf

    def __post_init__(self):
        for name in ("lower", "upper"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or math.isnan(value):
                raise DomainError(f"{name} must be a real number or +/-inf, got {value!r}")
            object.__setattr__(self, name, float(value))
        if not self.lower < self.upper:
            raise DomainError(f"range must satisfy lower < upper, got [{self.lower}, {self.upper}]")


def sem_of(s):
    return s.sd / math.sqrt(s.n)


def posterior_from(s):
    return MeanPosterior(mean=s.mean_diff, sem=sem_of(s))


def prob_true_beyond(p, threshold):
    """Probability that the true mean exceeds ``threshold``."""
    threshold = finite("threshold", threshold)
    return normal_cdf((p.mean - threshold) / p.sem)


def _cdf_at(p, x):
    if x == math.inf:
        return 1.0
    if x == -math.inf:
        return 0.0
    return normal_cdf((x - p.mean) / p.sem)


def prob_true_within(p, r):
    """Probability that the true mean lies in ``r``."""
    return max(0.0, _cdf_at(p, r.upper) - _cdf_at(p, r.lower))


def p_value_one_sided(p, null_value=0.0):
    """One-sided P value, taking the tail on the far side of ``null_value``
    from the observed mean."""
    null_value = finite("null_value", null_value)
    return normal_cdf(-abs(p.mean - null_value) / p.sem)


def p_value_two_sided(p, null_value=0.0):
    return min(1.0, 2.0 * p_value_one_sided(p, null_value))


def confidence_limits(p, level=0.95):
    level = open_unit("level", level)
    half = normal_quantile(0.5 * (1.0 + level)) * p.sem
    return RangeOfInterest(p.mean - half, p.mean + half)


def proportion_probability(count, n):
    """Directly observed proportion ``count / n`` used as a probability."""
    n = integer("n", n, 1)
    count = integer("count", count, 0)
    if count > n:
        raise DomainError(f"count ({count}) cannot exceed n ({n})")
    return count / n


def fraction_of_individuals_beyond(s, threshold):
    """Fraction of individual paired differences above ``threshold``.

    Uses the SD of individual differences, not the SEM.
    """
    threshold = finite("threshold", threshold)
    return normal_cdf((s.mean_diff - threshold) / s.sd)
