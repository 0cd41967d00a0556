"""Replication probability and sample size under k-fold variance inflation.

A future study's mean is predicted from the current estimate plus its own
sampling noise, so its predictive variance is ``k * sem**2``:

* ``k = 1`` is the classical power calculation,
* ``k = 2`` predicts one replication of an observed (or planned) result,
* ``k = 3`` predicts the second of two planned studies.

The replication probability is the chance that the future study reaches a
one-sided P value of at most ``alpha``::

    Phi(|effect| / (sem * sqrt(k)) + Phi^-1(alpha))

and :func:`required_sample_size` inverts it for ``n``.
"""

import math
from dataclasses import dataclass

from ._checks import DomainError, finite, integer, open_unit, positive
from .gaussian import normal_cdf, normal_quantile

__all__ = [
    "ReplicationQuery",
    "SampleSizePlan",
    "power_consistency_check",
    "predictive_probability",
    "replication_probability",
    "required_sample_size",
]


def _variance_multiplier(k):
    k = finite("k", k)
    if k < 1.0:
        raise DomainError(f"k must be >= 1, got {k!r}")
    return k


def _one_sided_alpha(alpha):
    alpha = finite("alpha", alpha)
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"alpha must be one-sided, in (0, 0.5), got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class ReplicationQuery:
    effect: float
    sd: float
    n: int
    k: float = 2.0
    alpha: float = 0.025

    def __post_init__(self):
        object.__setattr__(self, "effect", finite("effect", self.effect))
        object.__setattr__(self, "sd", positive("sd", self.sd))
        object.__setattr__(self, "n", integer("n", self.n, 2))
        object.__setattr__(self, "k", _variance_multiplier(self.k))
        object.__setattr__(self, "alpha", _one_sided_alpha(self.alpha))

    @property
    def sem(self):
        return self.sd / math.sqrt(self.n)


@dataclass(frozen=True)
class SampleSizePlan:
    """Result of :func:`required_sample_size`.

    ``raw_n`` is the unrounded solution; ``required_n`` is its ceiling
    (never below 2), so the achieved probability is at least ``power``.
    """

    raw_n: float
    required_n: int
    effect: float
    sd: float
    alpha: float
    power: float
    k: float


def predictive_probability(effect, sem, k, alpha):
    """Replication probability for a real-valued ``sem``.

    This is the kernel behind :func:`replication_probability`; it allows
    fractional sample sizes, e.g. ``sem = sd / sqrt(plan.raw_n)``.
    """
    effect = finite("effect", effect)
    sem = positive("sem", sem)
    k = _variance_multiplier(k)
    alpha = _one_sided_alpha(alpha)
    return normal_cdf(abs(effect) / (sem * math.sqrt(k)) + normal_quantile(alpha))


def replication_probability(q):
    """Probability that a study drawn from the k-inflated predictive
    distribution attains one-sided P <= ``q.alpha``.

    >>> q = ReplicationQuery(effect=1.96, sd=10, n=100, k=2, alpha=0.025)
    >>> round(replication_probability(q), 3)
    0.283
    """
    return predictive_probability(q.effect, q.sem, q.k, q.alpha)


def required_sample_size(effect, sd, alpha=0.025, power=0.8, k=1.0, allow_low_power=False):
    """Number of paired observations needed so that the k-inflated
    replication probability reaches ``power``.

    ``raw_n = k * (sd * (Phi^-1(power) - Phi^-1(alpha)) / |effect|)**2``.
    Targets of ``power <= 0.5`` are refused unless ``allow_low_power`` is
    set; they remain well defined as long as ``power > alpha``.
    """
    effect = finite("effect", effect)
    if effect == 0.0:
        raise DomainError("effect must be non-zero; no finite n detects a zero effect")
    sd = positive("sd", sd)
    alpha = _one_sided_alpha(alpha)
    power = open_unit("power", power)
    k = _variance_multiplier(k)
    if power <= alpha:
        raise DomainError(f"power ({power}) must exceed alpha ({alpha})")
    if power <= 0.5 and not allow_low_power:
        raise DomainError(f"power must be > 0.5 (got {power}); pass allow_low_power to override")

    base = (sd * (normal_quantile(power) - normal_quantile(alpha)) / abs(effect)) ** 2
    raw_n = k * base
    return SampleSizePlan(
        raw_n=raw_n,
        required_n=max(2, math.ceil(raw_n)),
        effect=effect,
        sd=sd,
        alpha=alpha,
        power=power,
        k=k,
    )


def power_consistency_check(plan):
    """Replication probability achieved at ``plan.required_n``."""
    q = ReplicationQuery(plan.effect, plan.sd, plan.required_n, plan.k, plan.alpha)
    return replication_probability(q)
