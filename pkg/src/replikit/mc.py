"""Seeded Monte Carlo checks of the analytic probabilities.

Trials are split into fixed-size blocks.  Block ``i`` draws from its own
PCG64 stream, seeded by child ``i`` of ``SeedSequence(seed)``, so results do
not depend on how many workers process the blocks.  Uniforms are mapped to
normal variates with :func:`replikit.gaussian.normal_quantile_array`, the
same quantile the analytic code uses.

Models
------
individuals
    One paired difference ``x ~ N(effect, sd**2)``; success iff
    ``x > threshold``.
posterior-predictive (k = 2)
    True mean ``mu ~ N(effect, sem**2)``, replication mean
    ``m ~ N(mu, sem**2)``.
chain-predictive (k = 3)
    As above with a first-study mean in between:
    ``m1 ~ N(mu, sem**2)``, ``m ~ N(m1, sem**2)``.

For the two predictive models a trial succeeds when the replication mean,
measured in the direction of ``effect``, lies at least ``Phi^-1(1 - alpha)``
predictive SDs from zero, i.e. beyond ``-Phi^-1(alpha) * sem * sqrt(k)``.
This is the scale on which the closed-form replication probability judges
a replicate (1.96 * sqrt(2) = 2.77 for sem 1, k 2).  Note that drawing
further studies exchangeably around ``mu`` gives every one of them variance
``2 * sem**2``; only the chained construction reaches ``3 * sem**2``.
"""

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ._checks import DomainError, finite, integer, positive
from .gaussian import normal_quantile, normal_quantile_array
from .inference import StudySummary, fraction_of_individuals_beyond
from .replication import predictive_probability

__all__ = [
    "GENERATOR",
    "MODELS",
    "PortfolioReport",
    "SimConfig",
    "SimReport",
    "portfolio_csv",
    "simulate",
    "simulate_individuals",
    "simulate_osc_portfolio",
    "simulate_replication",
    "wilson_interval",
]

MODELS = {"individuals": None, "posterior-predictive": 2, "chain-predictive": 3}
GENERATOR = "numpy.PCG64/SeedSequence.spawn"
BLOCK_SIZE = 1 << 16
DEFAULT_TRIALS = 1_000_000
_U53 = 2.0**-53


@dataclass(frozen=True)
class SimConfig:
    seed: int
    model: str
    trials: int = DEFAULT_TRIALS
    effect: float = 0.0
    sd: float = 10.0
    n: int = 100
    alpha: float = 0.025
    threshold: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "seed", integer("seed", self.seed, 0))
        if self.seed >= 2**64:
            raise DomainError("seed must fit in 64 bits")
        if self.model not in MODELS:
            raise DomainError(f"model must be one of {sorted(MODELS)}, got {self.model!r}")
        object.__setattr__(self, "trials", integer("trials", self.trials, 1))
        object.__setattr__(self, "effect", finite("effect", self.effect))
        object.__setattr__(self, "sd", positive("sd", self.sd))
        object.__setattr__(self, "n", integer("n", self.n, 2))
        object.__setattr__(self, "alpha", finite("alpha", self.alpha))
        if not 0.0 < self.alpha < 0.5:
            raise DomainError(f"alpha must be one-sided, in (0, 0.5), got {self.alpha!r}")
        object.__setattr__(self, "threshold", finite("threshold", self.threshold))

    @property
    def k(self):
        return MODELS[self.model]

    @property
    def sem(self):
        return self.sd / math.sqrt(self.n)


@dataclass(frozen=True)
class SimReport:
    seed: int
    model: str
    trials: int
    successes: int
    empirical_rate: float
    binomial_se: float
    analytic_prediction: float
    z_discrepancy: float
    k: float | None = None
    # replication models only: variance of the simulated replication means
    predictive_variance: float | None = None
    expected_variance: float | None = None
    generator: str = GENERATOR
    config: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def _z_discrepancy(rate, analytic, se):
    if se > 0.0:
        return (rate - analytic) / se
    if rate == analytic:
        return 0.0
    return math.copysign(math.inf, rate - analytic)


def _normals(rng, rows, size):
    bits = rng.integers(0, 1 << 53, size=(rows, size), dtype=np.uint64)
    u = (bits.astype(np.float64) + 0.5) * _U53
    return normal_quantile_array(u)


def _block_sizes(trials):
    full, rest = divmod(trials, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def _run_blocks(seed, trials, kernel, workers):
    sizes = _block_sizes(trials)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(np.random.Generator(np.random.PCG64(c)), m) for c, m in zip(children, sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda job: kernel(*job), jobs))
    return [kernel(*job) for job in jobs]


def _critical_mean(cfg, k):
    return -normal_quantile(cfg.alpha) * cfg.sem * math.sqrt(k)


def _replication_means(cfg, rng, size):
    """Replication means and, for the chain model, first-study means."""
    sem = cfg.sem
    if cfg.model == "posterior-predictive":
        z = _normals(rng, 2, size)
        mu = cfg.effect + sem * z[0]
        return mu + sem * z[1], None
    z = _normals(rng, 3, size)
    mu = cfg.effect + sem * z[0]
    first = mu + sem * z[1]
    return first + sem * z[2], first


def simulate_individuals(cfg, workers=1):
    """Fraction of simulated individual differences above ``cfg.threshold``."""
    if cfg.model != "individuals":
        raise DomainError(f"simulate_individuals needs model 'individuals', got {cfg.model!r}")

    def kernel(rng, size):
        x = cfg.effect + cfg.sd * _normals(rng, 1, size)[0]
        return int(np.count_nonzero(x > cfg.threshold))

    successes = sum(_run_blocks(cfg.seed, cfg.trials, kernel, workers))
    analytic = fraction_of_individuals_beyond(StudySummary(cfg.n, cfg.sd, cfg.effect), cfg.threshold)
    return _report(cfg, successes, analytic)


def simulate_replication(cfg, workers=1, k=None):
    """Empirical replication rate under the posterior- or chain-predictive model.

    ``k``, when given, must agree with the model (2 or 3).
    """
    if cfg.k is None:
        raise DomainError("simulate_replication needs a predictive model")
    if k is not None and float(k) != cfg.k:
        raise DomainError(f"model {cfg.model!r} implies k={cfg.k}, got k={k}")
    crit = _critical_mean(cfg, cfg.k)
    sign = -1.0 if cfg.effect < 0 else 1.0

    def kernel(rng, size):
        m, _ = _replication_means(cfg, rng, size)
        dev = m - cfg.effect
        hits = int(np.count_nonzero(sign * m >= crit))
        return hits, float(dev.sum()), float((dev * dev).sum())

    blocks = _run_blocks(cfg.seed, cfg.trials, kernel, workers)
    successes = sum(b[0] for b in blocks)
    s1 = math.fsum(b[1] for b in blocks) / cfg.trials
    s2 = math.fsum(b[2] for b in blocks) / cfg.trials
    analytic = predictive_probability(cfg.effect, cfg.sem, cfg.k, cfg.alpha)
    return _report(
        cfg,
        successes,
        analytic,
        k=float(cfg.k),
        predictive_variance=s2 - s1 * s1,
        expected_variance=cfg.k * cfg.sem**2,
    )


def simulate(cfg, workers=1):
    if cfg.model == "individuals":
        return simulate_individuals(cfg, workers)
    return simulate_replication(cfg, workers)


def _report(cfg, successes, analytic, **extra):
    rate = successes / cfg.trials
    se = math.sqrt(rate * (1.0 - rate) / cfg.trials)
    return SimReport(
        seed=cfg.seed,
        model=cfg.model,
        trials=cfg.trials,
        successes=successes,
        empirical_rate=rate,
        binomial_se=se,
        analytic_prediction=analytic,
        z_discrepancy=_z_discrepancy(rate, analytic, se),
        config=asdict(cfg),
        **extra,
    )


def wilson_interval(successes, trials, level=0.95):
    """Wilson score interval for a binomial proportion."""
    z = normal_quantile(0.5 * (1.0 + level))
    p = successes / trials
    denom = 1.0 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4 * trials * trials)) / denom
    # the bounds touch 0 and 1 exactly at the extremes; pin them against rounding
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


@dataclass(frozen=True)
class PortfolioReport:
    seed: int
    studies: int
    successes: int
    rate: float
    ci_low: float
    ci_high: float
    analytic: float | None
    n: int
    effect: float
    sd: float
    alpha: float
    conditioned: bool = False
    model: str = "chain-predictive"
    k: float = 3.0
    generator: str = GENERATOR

    @property
    def z(self):
        if self.analytic is None:
            return None
        se = math.sqrt(self.analytic * (1.0 - self.analytic) / self.studies)
        return (self.rate - self.analytic) / se

    def to_dict(self):
        d = asdict(self)
        d["z"] = self.z
        return d


def simulate_osc_portfolio(
    seed,
    studies=97,
    effect=2.2,
    sd=10.0,
    n=163,
    alpha=0.025,
    condition_on_original=False,
):
    """Replicate a portfolio of ``studies`` independent chain-predictive studies.

    Each study is one chain-predictive trial; the report gives the fraction
    that replicated with a 95% Wilson interval.  With
    ``condition_on_original`` only studies whose first (original) result was
    itself significant are kept; no closed-form prediction is reported then.
    """
    studies = integer("studies", studies, 1)
    cfg = SimConfig(seed=seed, model="chain-predictive", trials=studies, effect=effect, sd=sd, n=n, alpha=alpha)
    crit = _critical_mean(cfg, 3)
    # the original study sits one step down the chain, so its scale is k = 2
    crit_first = _critical_mean(cfg, 2)
    sign = -1.0 if cfg.effect < 0 else 1.0

    if condition_on_original:
        # rejection sampling over successive blocks of one seeded stream
        hits = []
        root = np.random.SeedSequence(cfg.seed)
        while len(hits) < studies:
            # spawn(1) hands out children 0, 1, 2, ... in order
            rng = np.random.Generator(np.random.PCG64(root.spawn(1)[0]))
            m, first = _replication_means(cfg, rng, BLOCK_SIZE)
            keep = sign * first >= crit_first
            hits.extend((sign * m[keep] >= crit).tolist())
        successes = int(sum(hits[:studies]))
        analytic = None
    else:
        successes = simulate_replication(cfg).successes
        analytic = predictive_probability(cfg.effect, cfg.sem, 3.0, cfg.alpha)

    lo, hi = wilson_interval(successes, studies)
    return PortfolioReport(
        seed=cfg.seed,
        studies=studies,
        successes=successes,
        rate=successes / studies,
        ci_low=lo,
        ci_high=hi,
        analytic=analytic,
        n=cfg.n,
        effect=cfg.effect,
        sd=cfg.sd,
        alpha=cfg.alpha,
        conditioned=condition_on_original,
    )


PORTFOLIO_COLUMNS = ("seed", "model", "n", "effect", "sd", "alpha", "k", "trials", "empirical", "analytic", "z")


def portfolio_csv(reports, fmt=lambda x: x):
    """CSV text for a sweep of portfolio reports, one row per seed."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PORTFOLIO_COLUMNS)
    for r in reports:
        z = r.z
        writer.writerow(
            [
                r.seed,
                r.model,
                r.n,
                fmt(r.effect),
                fmt(r.sd),
                fmt(r.alpha),
                fmt(r.k),
                r.studies,
                fmt(r.rate),
                "" if r.analytic is None else fmt(r.analytic),
                "" if z is None else fmt(z),
            ]
        )
    return buf.getvalue()
