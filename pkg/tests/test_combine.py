import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from replikit import DomainError
from replikit.combine import combination_report, combine
from replikit.inference import StudySummary

PRIOR = StudySummary(204, 10, 1.96)
STUDY = StudySummary(613, 11, 1.76)


def test_n_weighted_rule():
    post = combine(PRIOR, STUDY)
    assert post.n == 817
    assert post.sd == pytest.approx(8783 / 817, abs=1e-12)
    assert post.sd == pytest.approx(10.750306, abs=1e-6)
    assert post.mean_diff == pytest.approx(1478.72 / 817, abs=1e-12)
    assert post.mean_diff == pytest.approx(1.8099388, abs=1e-7)


def test_self_combination_and_commutation():
    twice = combine(PRIOR, PRIOR)
    assert (twice.n, twice.sd, twice.mean_diff) == (408, PRIOR.sd, PRIOR.mean_diff)
    assert combine(PRIOR, STUDY) == combine(STUDY, PRIOR)


def test_precision_mode():
    post = combine(PRIOR, STUDY, mode="precision")
    # inverse-variance weights 204/100 and 613/121
    w1, w2 = 204 / 100, 613 / 121
    assert post.mean_diff == pytest.approx((w1 * 1.96 + w2 * 1.76) / (w1 + w2), abs=1e-12)
    assert post.mean_diff == pytest.approx(1.817415333, abs=1e-9)
    assert post.sd / post.n**0.5 == pytest.approx((w1 + w2) ** -0.5, rel=1e-12)


def test_unknown_mode():
    with pytest.raises(DomainError):
        combine(PRIOR, STUDY, mode="pooled")


def test_report_reproduces_table():
    r = combination_report(PRIOR, STUDY)
    assert [c.k for c in r.columns] == [3, 2, 2]
    expected_p = (0.0025596, 3.7254e-5, 7.460e-7)
    for col, p in zip(r.columns, expected_p):
        assert col.p_value == pytest.approx(p, rel=1e-3)
    expected_rep = (0.365533481, 0.799876067, 0.925469612)
    for col, rp in zip(r.columns, expected_rep):
        assert col.replication_probability == pytest.approx(rp, abs=1e-6)


def test_standard_limits_use_sem():
    r = combination_report(PRIOR, STUDY)
    half = 1.959963984540054 * r.prior.sem
    assert r.prior.lower_cl == pytest.approx(1.96 - half, abs=1e-12)
    assert r.prior.sem == pytest.approx(10 / 204**0.5, rel=1e-15)
    assert r.prior.variance_of_mean == pytest.approx(100 / 204, rel=1e-15)


def test_paper_swap_limits():
    r = combination_report(PRIOR, STUDY, paper_swap=True)
    printed = {
        "upper_cl": (2.920784314, 2.146884176, 2.087191426),
        "lower_cl": (0.999215686, 1.373115824, 1.532686175),
        "variance_of_mean": (0.700140042, 0.444285815, 0.376105598),
        "sem": (0.490196078, 0.197389886, 0.141455421),
    }
    for field, values in printed.items():
        for col, v in zip(r.columns, values):
            assert getattr(col, field) == pytest.approx(v, abs=1e-6)
    # P values and replication are unaffected by the layout flag
    std = combination_report(PRIOR, STUDY)
    assert [c.p_value for c in r.columns] == [c.p_value for c in std.columns]


def test_identical_summaries():
    r = combination_report(PRIOR, PRIOR, k_prior=2, k_other=2)
    assert r.posterior.n == 2 * PRIOR.n
    assert r.posterior.mean_diff == r.prior.mean_diff
    assert r.posterior.sd == r.prior.sd
    assert r.posterior.p_value < r.prior.p_value
    assert r.study.p_value == r.prior.p_value
    assert r.study.replication_probability == r.prior.replication_probability


@pytest.mark.parametrize("kwargs", [dict(alpha=0.6), dict(k_prior=0.5), dict(k_other=0), dict(level=1.0)])
def test_report_rejects_bad_arguments(kwargs):
    with pytest.raises(DomainError):
        combination_report(PRIOR, STUDY, **kwargs)


summaries = st.builds(
    StudySummary,
    st.integers(min_value=2, max_value=5000),
    st.floats(min_value=0.1, max_value=50),
    st.floats(min_value=-20, max_value=20),
)


@settings(max_examples=300, deadline=None)
@given(summaries, summaries)
def test_convex_combination(a, b):
    post = combine(a, b)
    assert post.n == a.n + b.n
    eps = 1e-12
    assert min(a.mean_diff, b.mean_diff) - eps <= post.mean_diff <= max(a.mean_diff, b.mean_diff) + eps
    assert min(a.sd, b.sd) - eps <= post.sd <= max(a.sd, b.sd) + eps


@settings(max_examples=200, deadline=None)
@given(summaries, summaries, summaries, st.sampled_from(["n-weighted", "precision"]))
def test_bracketing_within_a_mode(a, b, c, mode):
    left = combine(combine(a, b, mode), c, mode)
    right = combine(a, combine(b, c, mode), mode)
    assert left.n == right.n
    assert left.sd == pytest.approx(right.sd, rel=1e-9)
    assert left.mean_diff == pytest.approx(right.mean_diff, rel=1e-9, abs=1e-9)


def test_mixing_modes_changes_the_result():
    a, b, c = StudySummary(10, 1, 0), StudySummary(20, 5, 1), StudySummary(30, 9, 2)
    mixed = combine(combine(a, b, "precision"), c, "n-weighted")
    assert mixed.mean_diff != pytest.approx(combine(combine(a, b), c).mean_diff, rel=1e-3)
