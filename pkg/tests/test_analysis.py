import json
import math
import random
from fractions import Fraction

import pytest

from localcorrect.analysis import (
    INFLUENCE_THRESHOLD,
    fraction_low_influence,
    influence_estimate,
    influence_exact,
    min_influence_report,
    sample_random_junta,
)
from localcorrect.boolfn import JuntaSpec, Point, TruthTable


class TestInfluenceExact:
    def test_parity_is_one(self):
        tt = TruthTable.parity(6)
        for i in range(1, 7):
            assert influence_exact(tt, i) == 1

    def test_constant_is_zero(self):
        for value in (0, 1):
            tt = TruthTable.constant(5, value)
            for i in range(1, 6):
                assert influence_exact(tt, i) == 0

    def test_and_k_closed_form(self):
        for k in range(1, 11):
            tt = TruthTable.and_all(k)
            for i in range(1, k + 1):
                assert influence_exact(tt, i) == Fraction(1, 1 << (k - 1))

    def test_matches_brute_force(self):
        rng = random.Random(4)
        for _ in range(50):
            k = rng.randint(1, 6)
            tt = TruthTable(k, rng.getrandbits(1 << k))
            i = rng.randint(1, k)
            e = 1 << (i - 1)
            count = sum(tt.value(j) != tt.value(j ^ e) for j in range(tt.size))
            assert influence_exact(tt, i) == Fraction(count, tt.size)

    def test_numerator_even_over_table_size(self):
        # Disagreeing points come in pairs {x, x + e_i}.
        rng = random.Random(9)
        for _ in range(100):
            k = rng.randint(1, 8)
            tt = TruthTable(k, rng.getrandbits(1 << k))
            for i in range(1, k + 1):
                f = influence_exact(tt, i)
                assert (f.numerator * (1 << k) // f.denominator) % 2 == 0

    def test_rejects_bad_index(self):
        tt = TruthTable.parity(3)
        with pytest.raises(IndexError):
            influence_exact(tt, 0)
        with pytest.raises(IndexError):
            influence_exact(tt, 4)


class TestInfluenceEstimate:
    def test_parity_exactly_one(self):
        spec = JuntaSpec(8, TruthTable.parity(8), tuple(range(1, 9)))
        assert influence_estimate(spec.evaluate, 8, 3, 10000, 1) == 1.0

    def test_constant_exactly_zero(self):
        assert influence_estimate(lambda x: 0, 8, 1, 10000, 1) == 0.0

    def test_and4_concentrates_on_exact_value(self):
        spec = JuntaSpec(12, TruthTable.and_all(4), (2, 5, 9, 11))
        p = 1 / 8
        est = influence_estimate(spec.evaluate, 12, 5, 100000, 77)
        assert abs(est - p) <= 3 * math.sqrt(p * (1 - p) / 100000)

    def test_deterministic_given_seed(self):
        spec = JuntaSpec(10, TruthTable.majority(3), (1, 5, 9))
        a = influence_estimate(spec.evaluate, 10, 5, 2000, 123)
        b = influence_estimate(spec.evaluate, 10, 5, 2000, 123)
        assert a == b

    def test_converges_to_exact(self):
        # 4-sigma band around the exact value, at most 2 outliers in 50.
        rng = random.Random(101)
        trials = 100000
        outliers = 0
        for _ in range(50):
            k = rng.randint(1, 8)
            core = TruthTable(k, rng.getrandbits(1 << k))
            i = rng.randint(1, k)
            exact = float(influence_exact(core, i))
            spec = JuntaSpec(k, core, tuple(range(1, k + 1)))
            est = influence_estimate(spec.evaluate, k, i, trials, rng.getrandbits(32))
            tol = 4 * math.sqrt(exact * (1 - exact) / trials) + 4 / trials
            if abs(est - exact) > tol:
                outliers += 1
        assert outliers <= 2


class TestSampleRandomJunta:
    def test_k1_core_distribution(self):
        counts = [0] * 4
        for s in range(10000):
            counts[sample_random_junta(1, 5, s).core.bits] += 1
        for c in counts:
            assert abs(c / 10000 - 0.25) < 0.02

    def test_embedding_marginal(self):
        used = sum(
            1 in sample_random_junta(3, 12, s).embedding for s in range(10000)
        )
        assert abs(used / 10000 - 3 / 12) < 0.02

    def test_deterministic(self):
        assert sample_random_junta(4, 20, 99) == sample_random_junta(4, 20, 99)

    def test_rejects_k_above_n(self):
        with pytest.raises(ValueError):
            sample_random_junta(5, 4, 0)


class TestMinInfluenceReport:
    def test_parity5_passes(self):
        rep = min_influence_report(TruthTable.parity(5))
        assert rep.min_influence == 1
        assert rep.passes_threshold

    def test_and7_fails_rational_comparison(self):
        rep = min_influence_report(TruthTable.and_all(7))
        assert rep.min_influence == Fraction(1, 64)
        assert Fraction(1, 64) < INFLUENCE_THRESHOLD
        assert not rep.passes_threshold

    def test_maj3_passes(self):
        rep = min_influence_report(TruthTable.majority(3))
        assert rep.min_influence == Fraction(1, 2)
        assert rep.passes_threshold

    def test_json_shape(self):
        rep = min_influence_report(TruthTable.and_all(2))
        data = json.loads(rep.to_json())
        assert data == {
            "k": 2,
            "influences": ["1/2", "1/2"],
            "min": "1/2",
            "passes": True,
        }

    def test_recomputation_deterministic(self):
        tt = TruthTable(6, random.Random(8).getrandbits(64))
        assert min_influence_report(tt) == min_influence_report(tt)


class TestFractionLowInfluence:
    def test_k10_never_low(self):
        assert fraction_low_influence(10, 200, 1) == 0.0

    def test_k1_half(self):
        # Exactly 2 of the 4 one-variable tables are constant.
        assert abs(fraction_low_influence(1, 10000, 2) - 0.5) < 0.02

    def test_k2_matches_exhaustive(self):
        low = sum(
            min(
                influence_exact(TruthTable(2, bits), i) for i in (1, 2)
            ) < INFLUENCE_THRESHOLD
            for bits in range(16)
        )
        expected = low / 16
        assert abs(fraction_low_influence(2, 10000, 3) - expected) < 0.02

    def test_rejects_large_k(self):
        with pytest.raises(ValueError):
            fraction_low_influence(17, 10, 0)
