"""Replication probabilities, k-variance sample sizes and Gaussian posterior
probabilities for paired-difference studies, with a seeded Monte Carlo
oracle."""

from ._checks import DomainError
from .combine import CombinationReport, combination_report, combine
from .gaussian import normal_cdf, normal_pdf, normal_quantile
from .inference import (
    MeanPosterior,
    RangeOfInterest,
    StudySummary,
    confidence_limits,
    fraction_of_individuals_beyond,
    p_value_one_sided,
    p_value_two_sided,
    posterior_from,
    prob_true_beyond,
    prob_true_within,
    proportion_probability,
    sem_of,
)
from .replication import (
    ReplicationQuery,
    SampleSizePlan,
    power_consistency_check,
    predictive_probability,
    replication_probability,
    required_sample_size,
)

__version__ = "0.1.0"
