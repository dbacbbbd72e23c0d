import numpy as np
import pytest

from grnnlab.control import QuadAltitudeState, quad_altitude_step
from grnnlab.errors import BlowupError, DimensionError
from grnnlab.grnn import Pattern, train
from grnnlab.sysid import (LagConfig, PlantSpec, build_sysid_dataset,
                           evaluate_identifier, random_excitation, simulate_plant,
                           train_identifier, write_trajectory_csv)

LINEAR = PlantSpec("linear_first_order", {"a": 0.5, "b": 1.0})
NONLINEAR = PlantSpec("nonlinear_benchmark")


class TestSimulatePlant:
    def test_linear_zero_input(self):
        y = simulate_plant(LINEAR, np.zeros(10), y0=0.0)
        assert np.array_equal(y, np.zeros(10))

    def test_linear_hand_iteration(self):
        y = simulate_plant(LINEAR, [1.0, 0.0, 0.0], y0=0.0)
        assert y.tolist() == [0.0, 1.0, 0.5]

    def test_nonlinear_fixed_point(self):
        y = simulate_plant(NONLINEAR, np.zeros(20), y0=0.0)
        assert np.array_equal(y, np.zeros(20))

    def test_nonlinear_hand_step(self):
        y = simulate_plant(NONLINEAR, [0.5, 0.0], y0=1.0)
        assert y[1] == 1.0 / 2.0 + 0.125

    def test_quad_delegates_to_altitude_plant(self):
        spec = PlantSpec("quad_altitude", dt=0.02)
        u = np.full(50, 11.0)
        y = simulate_plant(spec, u, y0=0.0)
        state = QuadAltitudeState(0.0, 0.0)
        for k in range(49):
            state = quad_altitude_step(state, u[k], 0.02)
            assert y[k + 1] == state.z
        assert y[0] == 0.0

    def test_blowup_names_step(self):
        spec = PlantSpec("linear_first_order", {"a": 10.0, "b": 1.0})
        with pytest.raises(BlowupError) as err:
            simulate_plant(spec, np.ones(500), y0=1e300)
        assert err.value.step >= 1

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            PlantSpec("magic")


class TestBuildSysidDataset:
    def test_row_count(self):
        ds = build_sysid_dataset(np.arange(5.0), np.arange(5.0), LagConfig(1, 1))
        assert ds.n_rows == 4
        assert ds.d_in == 2 and ds.d_out == 1

    def test_row_count_formula_sweep(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            n_y = int(rng.integers(0, 4))
            n_u = int(rng.integers(1, 4))
            depth = max(n_y, n_u)
            length = int(rng.integers(depth + 1, depth + 30))
            u = rng.standard_normal(length)
            y = rng.standard_normal(length)
            ds = build_sysid_dataset(u, y, LagConfig(n_y, n_u))
            assert ds.n_rows == length - depth
            assert ds.d_in == n_y + n_u

    def test_constant_sequences_give_identical_rows(self):
        ds = build_sysid_dataset(np.full(6, 2.0), np.full(6, 3.0), LagConfig(2, 1))
        assert (ds.inputs == ds.inputs[0]).all()
        assert (ds.targets == 3.0).all()

    def test_linear_plant_rows_satisfy_plant_equation(self):
        u = random_excitation(200, seed=1)
        y = simulate_plant(LINEAR, u)
        ds = build_sysid_dataset(u, y, LagConfig(1, 1))
        # target y(k) = a*y(k-1) + b*u(k-1), columns are (y lag, u lag)
        recon = 0.5 * ds.inputs[:, 0] + 1.0 * ds.inputs[:, 1]
        assert np.abs(recon - ds.targets[:, 0]).max() == 0.0

    def test_lag_ordering(self):
        u = np.arange(10.0)
        y = 100.0 + np.arange(10.0)
        ds = build_sysid_dataset(u, y, LagConfig(2, 2))
        # row for k=2: (y1, y0, u1, u0)
        assert ds.inputs[0].tolist() == [101.0, 100.0, 1.0, 0.0]
        assert ds.targets[0, 0] == 102.0

    def test_too_short_rejected(self):
        with pytest.raises(ValueError):
            build_sysid_dataset(np.zeros(2), np.zeros(2), LagConfig(2, 2))

    def test_lag_validation(self):
        with pytest.raises(ValueError):
            LagConfig(1, 0)
        with pytest.raises(ValueError):
            LagConfig(-1, 1)


class TestEvaluateIdentifier:
    def test_linear_plant_fidelity(self):
        model, _ = train_identifier(LINEAR, LagConfig(1, 1), 4000, sigma=0.05, seed=0)
        test_u = 0.5 * np.sin(np.arange(500) / 10.0)
        result = evaluate_identifier(model, LINEAR, LagConfig(1, 1), test_u)
        assert result.mse < 1e-3

    def test_memorized_trajectory(self):
        u = random_excitation(300, seed=3)
        y = simulate_plant(LINEAR, u)
        ds = build_sysid_dataset(u, y, LagConfig(1, 1))
        model = train([Pattern(ds.inputs[i], ds.targets[i])
                       for i in range(ds.n_rows)], 1e-6)
        result = evaluate_identifier(model, LINEAR, LagConfig(1, 1), u)
        assert result.mse < 1e-8

    def test_zero_input_zero_state(self):
        # training data covers the zero fixed point (quiet stretch up front)
        u = np.concatenate([np.zeros(20), random_excitation(480, seed=1)])
        y = simulate_plant(LINEAR, u)
        ds = build_sysid_dataset(u, y, LagConfig(1, 1))
        model = train([Pattern(ds.inputs[i], ds.targets[i])
                       for i in range(ds.n_rows)], 0.05)
        result = evaluate_identifier(model, LINEAR, LagConfig(1, 1), np.zeros(100))
        assert result.mse < 1e-6

    def test_lag_mismatch_rejected(self):
        model, _ = train_identifier(LINEAR, LagConfig(1, 1), 100, sigma=0.05, seed=0)
        with pytest.raises(DimensionError):
            evaluate_identifier(model, LINEAR, LagConfig(2, 2), np.zeros(50))

    def test_series_parallel_regressors_use_true_outputs_only(self):
        # every prediction must be reproducible from (u, y) alone, in any order
        model, _ = train_identifier(LINEAR, LagConfig(1, 1), 500, sigma=0.05, seed=2)
        test_u = random_excitation(80, seed=4)
        result = evaluate_identifier(model, LINEAR, LagConfig(1, 1), test_u)
        y = simulate_plant(LINEAR, test_u)
        rng = np.random.default_rng(5)
        for j in rng.permutation(len(result.y_hat)):
            k = result.k_start + j
            standalone = model.predict([y[k - 1], test_u[k - 1]])[0]
            assert standalone == result.y_hat[j]

    def test_corrupting_predictions_does_not_change_later_ones(self):
        model, _ = train_identifier(LINEAR, LagConfig(1, 1), 500, sigma=0.05, seed=2)
        test_u = random_excitation(60, seed=6)
        clean = evaluate_identifier(model, LINEAR, LagConfig(1, 1), test_u)
        corrupted = evaluate_identifier(model, LINEAR, LagConfig(1, 1), test_u)
        corrupted.y_hat[:10] = 1e9
        assert np.array_equal(clean.y_hat[10:], corrupted.y_hat[10:])

    def test_trajectory_csv(self, tmp_path):
        model, _ = train_identifier(LINEAR, LagConfig(1, 1), 200, sigma=0.05, seed=0)
        result = evaluate_identifier(model, LINEAR, LagConfig(1, 1), np.ones(20) * 0.3)
        path = tmp_path / "traj.csv"
        write_trajectory_csv(result, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "k,u,y,y_hat"
        assert len(lines) == 1 + (20 - 1)
        first = lines[1].split(",")
        assert int(first[0]) == 1
        assert float(first[2]) == result.y[1]
