"""Extremal distribution tests: pmf oracles, tightness, Poisson limit."""

from __future__ import annotations

import math

import numpy as np
import pytest
from oracle_utils import enum_binomial_pmf, enum_binomial_tail_at_most_one
from scipy import stats

from lefttail.bounds import binomial_branch, limit_bound, shifted_branch
from lefttail.extremal import (
    BinomialSpec,
    binomial_pmf,
    extremal_for_branch,
    poisson_limit_gap,
    poisson_tail_at_most_one,
    tail_at_most_one,
    verify_tightness,
)


class TestBinomialPmf:
    def test_matches_enumeration(self):
        # 4 * (0.5)^4 = 0.25
        oracle = enum_binomial_pmf(0.5, 4, 1)
        assert oracle == pytest.approx(0.25, abs=1e-15)
        assert binomial_pmf(BinomialSpec(0.5, 4), 1) == pytest.approx(oracle, abs=1e-14)

    def test_outside_support(self):
        assert binomial_pmf(BinomialSpec(0.37, 4), 5) == 0.0
        assert binomial_pmf(BinomialSpec(0.37, 4, shift=1), 0) == 0.0
        assert binomial_pmf(BinomialSpec(0.37, 4), -1) == 0.0

    def test_degenerate_point_masses(self):
        assert binomial_pmf(BinomialSpec(0.0, 3, shift=1), 1) == 1.0
        assert binomial_pmf(BinomialSpec(0.0, 3, shift=1), 2) == 0.0
        assert binomial_pmf(BinomialSpec(1.0, 3), 3) == 1.0
        assert binomial_pmf(BinomialSpec(1.0, 3), 2) == 0.0

    def test_random_specs_match_enumeration(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            trials = int(rng.integers(1, 9))
            p = float(rng.uniform())
            k = int(rng.integers(0, trials + 1))
            spec = BinomialSpec(p, trials)
            assert binomial_pmf(spec, k) == pytest.approx(
                enum_binomial_pmf(p, trials, k), abs=1e-13
            )

    def test_matches_scipy_large_trials(self):
        # exercises the log-gamma path (trials > 60)
        rng = np.random.default_rng(5)
        for _ in range(20):
            trials = int(rng.integers(61, 400))
            p = float(rng.uniform(0.01, 0.99))
            k = int(rng.integers(0, trials + 1))
            ours = binomial_pmf(BinomialSpec(p, trials), k)
            ref = float(stats.binom.pmf(k, trials, p))
            assert ours == pytest.approx(ref, rel=1e-10, abs=1e-300)

    def test_pmf_sums_to_one(self):
        for p in [0.0, 0.05, 0.3, 0.5, 0.77, 1.0]:
            for trials in [0, 1, 5, 17, 60, 75, 123]:
                for shift in (0, 1):
                    spec = BinomialSpec(p, trials, shift)
                    total = sum(binomial_pmf(spec, k) for k in range(shift, shift + trials + 1))
                    assert total == pytest.approx(1.0, abs=1e-12)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            BinomialSpec(1.2, 4)
        with pytest.raises(ValueError):
            BinomialSpec(0.5, -1)
        with pytest.raises(ValueError):
            BinomialSpec(0.5, 4, shift=2)


class TestTailAtMostOne:
    def test_plain_family(self):
        assert tail_at_most_one(BinomialSpec(0.5, 4)) == pytest.approx(0.3125, abs=1e-14)

    def test_shifted_family(self):
        oracle = enum_binomial_tail_at_most_one(1.0 / 3.0, 3, shift=1)
        assert tail_at_most_one(BinomialSpec(1.0 / 3.0, 3, shift=1)) == pytest.approx(oracle, abs=1e-14)
        assert oracle == pytest.approx(8.0 / 27.0, abs=1e-14)

    def test_zero_probability_mass_at_zero(self):
        assert tail_at_most_one(BinomialSpec(0.0, 9)) == 1.0


class TestExtremalForBranch:
    def test_first_branch_spec(self):
        spec = extremal_for_branch(2.0, 4, "first-max-term")
        assert spec == BinomialSpec(0.5, 4, 0)

    def test_second_branch_spec(self):
        spec = extremal_for_branch(2.0, 4, "second-max-term")
        assert spec.trials == 3 and spec.shift == 1
        assert spec.p == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_degenerate_shift_case(self):
        spec = extremal_for_branch(1.0, 5, "second-max-term")
        assert spec == BinomialSpec(0.0, 4, 1)
        assert tail_at_most_one(spec) == 1.0

    def test_mean_matches_exactly(self):
        for lam, n in [(1.3, 3), (2.7, 5), (4.0, 9), (1.0, 2)]:
            for branch in ("first-max-term", "second-max-term"):
                assert extremal_for_branch(lam, n, branch).mean() == pytest.approx(lam, abs=1e-12)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            extremal_for_branch(5.0, 4, "first-max-term")
        with pytest.raises(ValueError):
            extremal_for_branch(0.5, 4, "second-max-term")
        with pytest.raises(ValueError):
            extremal_for_branch(1.5, 1, "second-max-term")
        with pytest.raises(ValueError):
            extremal_for_branch(1.5, 4, "no-such-branch")


class TestTightness:
    def test_gap_zero_at_reference_point(self):
        reports = verify_tightness(2.0, 4)
        assert len(reports) == 2
        for rep in reports:
            assert rep.gap <= 1e-12
        assert reports[0].bound_value == pytest.approx(0.3125, abs=1e-12)
        assert reports[1].bound_value == pytest.approx(8.0 / 27.0, abs=1e-12)

    def test_degenerate_full_mean(self):
        for rep in verify_tightness(4.0, 4):
            assert rep.bound_value == 0.0
            assert rep.extremal_tail == 0.0
            assert rep.gap == 0.0

    def test_branch_tails_match_on_grid(self):
        for n in range(2, 16):
            for tenth in range(10, 10 * n + 1, 3):
                lam = tenth / 10.0
                first = extremal_for_branch(lam, n, "first-max-term")
                second = extremal_for_branch(lam, n, "second-max-term")
                assert tail_at_most_one(first) == pytest.approx(binomial_branch(lam, n), abs=1e-12)
                assert tail_at_most_one(second) == pytest.approx(shifted_branch(lam, n), abs=1e-12)


class TestPoisson:
    def test_tail_values(self):
        assert poisson_tail_at_most_one(0.0) == 1.0
        assert poisson_tail_at_most_one(2.0) == pytest.approx(3.0 * math.exp(-2.0), rel=1e-15)

    def test_matches_limit_crossover(self):
        lam = math.e - 1.0
        assert poisson_tail_at_most_one(lam) == pytest.approx(limit_bound(lam).value, rel=1e-14)
        assert poisson_tail_at_most_one(lam) == pytest.approx(math.exp(2.0 - math.e), rel=1e-12)

    def test_negative_mean_rejected(self):
        with pytest.raises(ValueError):
            poisson_tail_at_most_one(-0.2)

    def test_gap_decreases(self):
        gaps = [poisson_limit_gap(2.0, n) for n in (10, 100, 1000)]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 1e-3

    def test_gap_zero_at_zero_mean(self):
        assert poisson_limit_gap(0.0, 50) == 0.0

    def test_gap_scales_like_one_over_n(self):
        for lam in (0.5, 1.0, 2.0, 5.0):
            scaled = [poisson_limit_gap(lam, n) * n for n in (100, 1000, 10000, 100000)]
            # n * gap converges; it should never blow past its small-n level
            assert max(scaled) <= scaled[0] * 1.05 + 1e-12
