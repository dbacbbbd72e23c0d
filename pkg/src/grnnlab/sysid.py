"""Series-parallel identification of simulated plants.

The identifier predicts the next plant output from lagged true outputs and
inputs; its own predictions are never fed back into the regressor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .control import QuadAltitudeState, quad_altitude_step
from .datasets import Dataset
from .errors import BlowupError, DimensionError
from .grnn import GrnnModel, Pattern, train

PLANT_KINDS = ("linear_first_order", "nonlinear_benchmark", "quad_altitude")


@dataclass
class PlantSpec:
    kind: str
    parameters: dict = field(default_factory=dict)
    dt: float = 0.02

    def __post_init__(self):
        if self.kind not in PLANT_KINDS:
            raise ValueError(f"unknown plant kind {self.kind!r}")
        if not self.dt > 0:
            raise ValueError("dt must be positive")


@dataclass(frozen=True)
class LagConfig:
    n_y: int = 1   # past-output taps
    n_u: int = 1   # past-input taps

    def __post_init__(self):
        if self.n_y < 0 or self.n_u < 1:
            raise ValueError("need n_y >= 0 and n_u >= 1")

    @property
    def depth(self) -> int:
        return max(self.n_y, self.n_u)

    @property
    def d_in(self) -> int:
        return self.n_y + self.n_u


def simulate_plant(spec: PlantSpec, u_sequence, y0: float = 0.0) -> np.ndarray:
    """Deterministic trajectory y[0..L-1] with y[0] = y0 and y[k+1] driven
    by u[k].  Raises BlowupError with the step index on non-finite state."""
    u = np.asarray(u_sequence, dtype=float)
    y = np.empty(len(u))
    if len(u) == 0:
        return y
    y[0] = y0
    with np.errstate(over="ignore", invalid="ignore"):
        if spec.kind == "linear_first_order":
            a = spec.parameters.get("a", 0.5)
            b = spec.parameters.get("b", 1.0)
            for k in range(len(u) - 1):
                y[k + 1] = a * y[k] + b * u[k]
                if not np.isfinite(y[k + 1]):
                    raise BlowupError(f"plant state non-finite at step {k + 1}", k + 1)
        elif spec.kind == "nonlinear_benchmark":
            for k in range(len(u) - 1):
                y[k + 1] = y[k] / (1.0 + y[k] * y[k]) + u[k] ** 3
                if not np.isfinite(y[k + 1]):
                    raise BlowupError(f"plant state non-finite at step {k + 1}", k + 1)
        else:  # quad_altitude
            m = spec.parameters.get("m", 1.0)
            g = spec.parameters.get("g", 9.81)
            c = spec.parameters.get("c", 0.3)
            state = QuadAltitudeState(y0, 0.0)
            for k in range(len(u) - 1):
                state = quad_altitude_step(state, u[k], spec.dt, m, g, c, step=k + 1)
                y[k + 1] = state.z
    return y


def random_excitation(n: int, u_min: float = -1.0, u_max: float = 1.0,
                      seed: int = 0) -> np.ndarray:
    """Seeded uniform training input covering [u_min, u_max]."""
    return np.random.default_rng(seed).uniform(u_min, u_max, n)


def build_sysid_dataset(u_sequence, y_sequence, lags: LagConfig,
                        name: str = "sysid") -> Dataset:
    """Regression rows: inputs (y(k-1)..y(k-n_y), u(k-1)..u(k-n_u)),
    target y(k), for k from max(n_y, n_u) to the end."""
    u = np.asarray(u_sequence, dtype=float)
    y = np.asarray(y_sequence, dtype=float)
    if len(u) != len(y):
        raise DimensionError("u and y sequences must have equal length")
    k0 = lags.depth
    if len(y) <= k0:
        raise ValueError(f"sequences of length {len(y)} too short for lag depth {k0}")
    rows = len(y) - k0
    inputs = np.empty((rows, lags.d_in))
    for j in range(1, lags.n_y + 1):
        inputs[:, j - 1] = y[k0 - j:len(y) - j]
    for j in range(1, lags.n_u + 1):
        inputs[:, lags.n_y + j - 1] = u[k0 - j:len(u) - j]
    targets = y[k0:][:, None]
    names = [f"y_lag{j}" for j in range(1, lags.n_y + 1)] + \
            [f"u_lag{j}" for j in range(1, lags.n_u + 1)]
    return Dataset(name, "fitting", inputs, targets, names, ["y"])


def train_identifier(spec: PlantSpec, lags: LagConfig, n_steps: int,
                     sigma: float, u_range: tuple[float, float] = (-1.0, 1.0),
                     y0: float = 0.0, seed: int = 0) -> tuple[GrnnModel, Dataset]:
    """Excite the plant with seeded uniform input and memorize the rows."""
    u = random_excitation(n_steps, u_range[0], u_range[1], seed)
    y = simulate_plant(spec, u, y0)
    data = build_sysid_dataset(u, y, lags, name=f"{spec.kind}_train")
    patterns = [Pattern(data.inputs[i], data.targets[i]) for i in range(data.n_rows)]
    return train(patterns, sigma), data


@dataclass
class SysidEval:
    mse: float
    k_start: int
    u: np.ndarray
    y: np.ndarray
    y_hat: np.ndarray   # y_hat[j] predicts y[k_start + j]


def evaluate_identifier(model: GrnnModel, spec: PlantSpec, lags: LagConfig,
                        test_u_sequence, y0: float = 0.0) -> SysidEval:
    """Series-parallel evaluation on a fresh trajectory: every regressor is
    built from the true plant outputs, never from earlier predictions."""
    if model.d_in != lags.d_in:
        raise DimensionError(
            f"model d_in={model.d_in} does not match lag width {lags.d_in}")
    u = np.asarray(test_u_sequence, dtype=float)
    y = simulate_plant(spec, u, y0)
    data = build_sysid_dataset(u, y, lags, name=f"{spec.kind}_test")
    y_hat = model.predict_batch(data.inputs)[:, 0]
    mse = float(np.mean((y_hat - data.targets[:, 0]) ** 2))
    return SysidEval(mse, lags.depth, u, y, y_hat)


def write_trajectory_csv(result: SysidEval, path) -> None:
    """Rows k,u,y,y_hat for the evaluated range k >= k_start."""
    lines = ["k,u,y,y_hat"]
    for j, k in enumerate(range(result.k_start, len(result.y))):
        lines.append(f"{k},{repr(float(result.u[k]))},{repr(float(result.y[k]))},"
                     f"{repr(float(result.y_hat[j]))}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
