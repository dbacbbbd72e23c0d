import numpy as np
import pytest

from grnnlab.errors import DimensionError
from grnnlab.grnn import GrnnModel, Pattern, predict, train
from grnnlab.growth import (GrowthPolicy, insert_bounded, nearest_squared_distance,
                            should_insert)


def policy(delta=0.01, eps=0.05, cap=100):
    return GrowthPolicy(delta, eps, cap)


class TestPolicy:
    def test_validation(self):
        with pytest.raises(ValueError):
            GrowthPolicy(-1.0, 0.0, 10)
        with pytest.raises(ValueError):
            GrowthPolicy(0.0, -1.0, 10)
        with pytest.raises(ValueError):
            GrowthPolicy(0.0, 0.0, 0)


class TestShouldInsert:
    def test_empty_model_always_admits(self):
        m = GrnnModel.empty(1, 1, 0.5)
        ok, reason = should_insert(m, Pattern([0.0], [0.0]), policy())
        assert ok and reason == "empty"

    def test_exact_duplicate_rejected(self):
        # tiny sigma makes the stored pattern dominate, so error is ~0 too
        m = train([Pattern([0.0], [0.0]), Pattern([2.0], [1.0])], 1e-3)
        ok, reason = should_insert(m, Pattern([0.0], [0.0]), policy())
        assert not ok and reason == "covered"

    def test_distance_novelty_admits(self):
        m = train([Pattern([0.0], [0.0])], 1.0)
        ok, reason = should_insert(m, Pattern([5.0], [0.0]), policy(delta=0.01))
        assert ok and reason == "novel"

    def test_error_gate_admits_near_duplicate(self):
        m = train([Pattern([0.0], [0.0])], 1.0)
        candidate = Pattern([1e-4], [5.0])   # within delta, badly predicted
        ok, reason = should_insert(m, candidate, policy(delta=0.01, eps=0.1))
        assert ok and reason == "error"

    def test_near_duplicate_with_small_error_rejected(self):
        m = train([Pattern([0.0], [1.0])], 0.5)
        candidate = Pattern([1e-4], [1.0])
        ok, reason = should_insert(m, candidate, policy(delta=0.01, eps=0.1))
        assert not ok and reason == "covered"

    def test_dimension_mismatch(self):
        m = train([Pattern([0.0], [0.0])], 1.0)
        with pytest.raises(DimensionError):
            should_insert(m, Pattern([0.0, 1.0], [0.0]), policy())


class TestInsertBounded:
    def test_capacity_forces_eviction(self):
        m = train([Pattern([0.0], [0.0])], 1.0)
        m2, inserted = insert_bounded(m, Pattern([9.0], [1.0]), policy(cap=1))
        assert inserted
        assert m2.n_patterns == 1
        assert m2.x_store[0, 0] == 9.0

    def test_duplicate_unchanged(self):
        m = train([Pattern([0.0], [0.0]), Pattern([2.0], [1.0])], 1e-3)
        m2, inserted = insert_bounded(m, Pattern([0.0], [0.0]), policy())
        assert not inserted and m2 is m

    def test_idempotent_for_duplicates(self):
        m = train([Pattern([0.0], [0.0])], 1e-3)
        far = Pattern([7.0], [1.0])
        m, first = insert_bounded(m, far, policy())
        m, second = insert_bounded(m, far, policy())
        assert first and not second
        assert m.n_patterns == 2

    def test_stream_respects_capacity(self):
        rng = np.random.default_rng(0)
        m = GrnnModel.empty(2, 1, 0.1)
        pol = policy(delta=1e-4, eps=0.0, cap=100)
        for _ in range(1000):
            cand = Pattern(rng.uniform(-1, 1, 2), rng.standard_normal(1))
            m, _ = insert_bounded(m, cand, pol)
            assert m.n_patterns <= 100
        assert m.n_patterns == 100

    def test_eviction_picks_most_redundant_lowest_index(self):
        # 0.0 and 0.1 are mutual nearest neighbours; tie breaks to index 0
        pats = [Pattern([0.0], [0.0]), Pattern([0.1], [0.0]), Pattern([5.0], [0.0])]
        m = train(pats, 1e-3)
        m2, inserted = insert_bounded(m, Pattern([10.0], [0.0]), policy(cap=3))
        assert inserted
        assert m2.x_store[:, 0].tolist() == [0.1, 5.0, 10.0]

    def test_admitted_error_pattern_corrects_prediction(self):
        pol = policy(delta=0.5, eps=0.2)
        m = train([Pattern([0.0], [0.0])], 0.05)
        cand = Pattern([0.3], [2.0])   # inside delta, error 2.0 > eps
        ok, reason = should_insert(m, cand, pol)
        assert ok and reason == "error"
        m2, _ = insert_bounded(m, cand, pol)
        assert abs(predict(m2, cand.x)[0] - 2.0) <= 0.2

    def test_normalized_model_insert_consistent(self):
        from grnnlab.datasets import NormStats

        stats = NormStats(np.array([10.0]), np.array([2.0]))
        m = train([Pattern([8.0], [0.0])], 0.05, norm_stats=stats)
        # candidate at raw 12.0 -> normalized 1.0, squared distance 4 > delta
        ok, reason = should_insert(m, Pattern([12.0], [1.0]), policy(delta=0.01))
        assert ok and reason == "novel"
        m2, _ = insert_bounded(m, Pattern([12.0], [1.0]), policy(delta=0.01))
        assert m2.n_patterns == 2
        assert predict(m2, [12.0])[0] == pytest.approx(1.0, abs=1e-9)

    def test_nearest_squared_distance(self):
        m = train([Pattern([0.0], [0.0]), Pattern([2.0], [1.0])], 1.0)
        assert nearest_squared_distance(m, [0.5]) == 0.25
