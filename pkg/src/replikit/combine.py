"""Prior / study / posterior combination reports.

Two pooling rules are available:

``"n-weighted"`` (default)
    n adds up, and both the mean difference and the SD are averaged with
    weights n.  Averaging SDs is not a standard pooling rule, but it is the
    one that produces the worked prior/study/posterior table this package
    reproduces.
``"precision"``
    Inverse-variance weighting of the two means (weights n / sd**2).  The
    pooled SEM is ``1 / sqrt(sum of weights)``.  The pooled SD is reported
    as ``sem * sqrt(n)`` so the column stays internally consistent.

Within one mode, pooling is associative: ``(n, sd)`` carries the pooled
weight (``n`` for the first rule, ``n / sd**2`` for the second), so any
bracketing of the same summaries gives the same result up to rounding.
Mixing modes across steps does not have this property.
"""

import math
from dataclasses import asdict, dataclass

from ._checks import DomainError, finite, open_unit
from .inference import (
    MeanPosterior,
    StudySummary,
    confidence_limits,
    p_value_one_sided,
    sem_of,
)
from .replication import predictive_probability

__all__ = ["COMBINE_MODES", "CombinationReport", "ReportColumn", "combination_report", "combine"]

COMBINE_MODES = ("n-weighted", "precision")

# z for 95% limits as typed into a spreadsheet; --paper-swap uses it verbatim
ROUNDED_Z95 = 1.96


def combine(prior, study, mode="n-weighted"):
    """Pool two study summaries into one."""
    n = prior.n + study.n
    if mode == "n-weighted":
        mean = (prior.n * prior.mean_diff + study.n * study.mean_diff) / n
        sd = (prior.n * prior.sd + study.n * study.sd) / n
    elif mode == "precision":
        w1 = prior.n / prior.sd**2
        w2 = study.n / study.sd**2
        mean = (w1 * prior.mean_diff + w2 * study.mean_diff) / (w1 + w2)
        sd = math.sqrt(n / (w1 + w2))
    else:
        raise DomainError(f"mode must be one of {COMBINE_MODES}, got {mode!r}")
    return StudySummary(n=n, sd=sd, mean_diff=mean)


@dataclass(frozen=True)
class ReportColumn:
    label: str
    n: int
    sd: float
    sem: float
    variance_of_mean: float
    mean_diff: float
    upper_cl: float
    lower_cl: float
    p_value: float
    replication_probability: float
    k: float


@dataclass(frozen=True)
class CombinationReport:
    prior: ReportColumn
    study: ReportColumn
    posterior: ReportColumn
    alpha: float
    level: float
    mode: str
    paper_swap: bool

    @property
    def columns(self):
        return (self.prior, self.study, self.posterior)

    def to_dict(self):
        return asdict(self)


def _column(label, s, alpha, k, level, paper_swap):
    sem = sem_of(s)
    var_mean = s.sd**2 / s.n
    post = MeanPosterior(s.mean_diff, sem)
    if paper_swap:
        # the SEM and variance rows trade places, and the limits are built
        # from whatever sits in the SEM row
        half = ROUNDED_Z95 * var_mean
        lower, upper = s.mean_diff - half, s.mean_diff + half
        sem_row, var_row = var_mean, sem
    else:
        cl = confidence_limits(post, level)
        lower, upper = cl.lower, cl.upper
        sem_row, var_row = sem, var_mean
    return ReportColumn(
        label=label,
        n=s.n,
        sd=s.sd,
        sem=sem_row,
        variance_of_mean=var_row,
        mean_diff=s.mean_diff,
        upper_cl=upper,
        lower_cl=lower,
        p_value=p_value_one_sided(post, 0.0),
        replication_probability=predictive_probability(s.mean_diff, sem, k, alpha),
        k=k,
    )


def combination_report(
    prior,
    study,
    alpha=0.025,
    k_prior=3.0,
    k_other=2.0,
    level=0.95,
    mode="n-weighted",
    paper_swap=False,
):
    """Three-column prior/study/posterior report.

    The prior column's replication probability uses ``k_prior`` (two future
    studies stand between a planning-stage prior and the replication); the
    study and posterior columns use ``k_other``.  P values are one-sided
    against a null of zero.

    With ``paper_swap`` the SEM and variance-of-mean rows are transposed and
    the confidence limits become ``mean +/- 1.96 * sd**2 / n``, i.e. they are
    built from whatever sits in the transposed SEM row.  P values and replication
    probabilities always use the true SEM.
    """
    alpha = finite("alpha", alpha)
    level = open_unit("level", level)
    for name, k in (("k_prior", k_prior), ("k_other", k_other)):
        if finite(name, k) < 1.0:
            raise DomainError(f"{name} must be >= 1, got {k!r}")
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"alpha must be one-sided, in (0, 0.5), got {alpha!r}")
    posterior = combine(prior, study, mode)
    return CombinationReport(
        prior=_column("prior", prior, alpha, float(k_prior), level, paper_swap),
        study=_column("study", study, alpha, float(k_other), level, paper_swap),
        posterior=_column("posterior", posterior, alpha, float(k_other), level, paper_swap),
        alpha=alpha,
        level=level,
        mode=mode,
        paper_swap=paper_swap,
    )
