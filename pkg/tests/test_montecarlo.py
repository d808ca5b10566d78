import numpy as np
import pytest

from wordmeasure.montecarlo import estimate, sample_haar
from wordmeasure.trace import trace_exact
from wordmeasure.words import parse_tuple


class TestSampling:
    def test_unitarity(self):
        rng = np.random.default_rng(1)
        for n in (1, 3, 6):
            u = sample_haar(n, rng)
            assert np.max(np.abs(u.conj().T @ u - np.eye(n))) < 1e-10

    def test_dimension_one_is_phase(self):
        rng = np.random.default_rng(2)
        u = sample_haar(1, rng)
        assert abs(abs(u[0, 0]) - 1.0) < 1e-12

    def test_fixed_seed_reproducible(self):
        a = sample_haar(4, np.random.default_rng(42))
        b = sample_haar(4, np.random.default_rng(42))
        assert np.array_equal(a, b)

    def test_estimate_reproducible(self):
        t = parse_tuple(["[x,y]"], 2)
        first = estimate(t, 3, samples=2000, seed=9)
        second = estimate(t, 3, samples=2000, seed=9)
        assert first == second

    def test_parallel_estimate(self):
        # reproducible at fixed job count, statistically consistent across
        t = parse_tuple(["[x,y]"], 2)
        serial = estimate(t, 3, samples=20_000, seed=9)
        par = estimate(t, 3, samples=20_000, seed=9, jobs=2)
        par_again = estimate(t, 3, samples=20_000, seed=9, jobs=2)
        assert par == par_again
        assert abs(par.mean - serial.mean) <= 4 * (par.stderr + serial.stderr)

    def test_rejects_bad_dimension(self):
        with pytest.raises(ValueError):
            estimate(parse_tuple(["x"], 1), 0, samples=10)


class TestAgainstExact:
    def test_commutator_square_at_n4(self):
        t = parse_tuple(["[x,y]^2"], 2)
        exact = trace_exact(t).evaluate(4)  # -4/60 = -1/15
        mc = estimate(t, 4, samples=60_000, seed=5)
        assert abs(mc.mean.real - float(exact)) <= 4 * mc.stderr
        assert abs(mc.mean.imag) <= 4 * mc.stderr

    def test_unbalanced_word_near_zero(self):
        mc = estimate(parse_tuple(["x"], 1), 3, samples=30_000, seed=3)
        assert abs(mc.mean) <= 4 * mc.stderr + 1e-12

    def test_annulus_pair_is_one(self):
        t = parse_tuple(["x", "X"], 1)
        mc = estimate(t, 3, samples=30_000, seed=11)
        assert abs(mc.mean.real - 1.0) <= 4 * mc.stderr

    def test_empty_word_factor(self):
        t = parse_tuple(["[x,y]", ""], 2)
        mc = estimate(t, 3, samples=30_000, seed=13)
        # trace(tuple with empty word) = n * (1/n) = 1
        assert abs(mc.mean.real - 1.0) <= 4 * mc.stderr

    def test_uncurated_word(self):
        # a balanced word outside the regression set
        t = parse_tuple(["x y y X Y Y x Y X y"], 2)
        result = trace_exact(t)
        n = result.validity_threshold
        mc = estimate(t, n, samples=60_000, seed=17)
        assert abs(mc.mean.real - float(result.evaluate(n))) <= 4 * mc.stderr
