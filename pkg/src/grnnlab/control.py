"""Online altitude control with an inverse-dynamics pattern memory.

The plant is a damped double integrator (thrust against gravity and linear
drag) stepped by semi-implicit Euler.  The controller learns the inverse map
(current altitude, next altitude) -> residual thrust from its own closed-loop
experience, under a growth policy, and falls back to PD control with gravity
feedforward wherever the memory has no coverage.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BlowupError
from .grnn import GrnnModel, Pattern, predict
from .growth import GrowthPolicy, insert_bounded, nearest_squared_distance

STATE_BOUND = 1e6


@dataclass
class QuadAltitudeState:
    z: float = 0.0    # altitude, m
    vz: float = 0.0   # vertical velocity, m/s


def quad_altitude_step(state: QuadAltitudeState, u: float, dt: float = 0.02,
                       m: float = 1.0, g: float = 9.81, c: float = 0.3,
                       step: int = 0) -> QuadAltitudeState:
    """One semi-implicit Euler step of m*z'' = u - m*g - c*vz."""
    if not 0.0 <= dt <= 0.1:
        raise ValueError(f"dt must be in [0, 0.1], got {dt}")
    vz = state.vz + dt * (u - m * g - c * state.vz) / m
    z = state.z + dt * vz
    if not (np.isfinite(z) and np.isfinite(vz)) or abs(z) > STATE_BOUND or abs(vz) > STATE_BOUND:
        raise BlowupError(f"altitude state blew up at step {step}", step)
    return QuadAltitudeState(z, vz)


class OnlineController:
    """Inverse-model controller with PD fallback.

    The memory maps (y_k, y_{k+1}) to the residual thrust u - m*g that
    produced the transition.  A query (y_k, r_next) uses the memory only when
    it lies within the policy's novelty radius of some stored pattern;
    otherwise the PD fallback acts.  Gravity feedforward is always added and
    the output is always saturated.
    """

    def __init__(self, sigma: float = 0.05, policy: GrowthPolicy | None = None,
                 k_p: float = 6.0, k_d: float = 4.0,
                 u_min: float = 0.0, u_max: float = 30.0,
                 m: float = 1.0, g: float = 9.81, dt: float = 0.02):
        if u_max <= u_min:
            raise ValueError("u_max must exceed u_min")
        self.inverse_model = GrnnModel.empty(2, 1, sigma)
        self.policy = policy if policy is not None else GrowthPolicy()
        self.k_p = k_p
        self.k_d = k_d
        self.u_min = u_min
        self.u_max = u_max
        self.m = m
        self.g = g
        self.dt = dt
        self._prev_y = None

    @property
    def feedforward(self) -> float:
        return self.m * self.g

    @property
    def n_patterns(self) -> int:
        return self.inverse_model.n_patterns

    def reset_episode(self):
        """Forget the velocity estimate; the learned memory is kept."""
        self._prev_y = None


def controller_step(controller: OnlineController, y_k: float, r_next: float) -> float:
    """Compute the thrust command for the current altitude and the reference."""
    error = r_next - y_k
    model = controller.inverse_model
    covered = (model.n_patterns > 0 and
               nearest_squared_distance(model, (y_k, r_next))
               <= controller.policy.novelty_radius)
    if covered:
        u = controller.feedforward + float(predict(model, (y_k, r_next))[0]) \
            + controller.k_p * error
    else:
        if controller._prev_y is None:
            vz_est = 0.0
        else:
            vz_est = (y_k - controller._prev_y) / controller.dt
        u = controller.feedforward + controller.k_p * error - controller.k_d * vz_est
    controller._prev_y = y_k
    return float(min(max(u, controller.u_min), controller.u_max))


def adapt(controller: OnlineController, observed: tuple[float, float, float]) -> OnlineController:
    """Offer the observed transition (y_k, y_{k+1}, u_applied) to the memory
    as an inverse-dynamics pattern; growth policy decides admission."""
    y_k, y_next, u_applied = observed
    candidate = Pattern((y_k, y_next), (u_applied - controller.feedforward,))
    controller.inverse_model, _ = insert_bounded(
        controller.inverse_model, candidate, controller.policy)
    return controller


@dataclass
class TrackingReport:
    k: np.ndarray
    t: np.ndarray
    r: np.ndarray
    z: np.ndarray
    u: np.ndarray
    n_patterns: np.ndarray
    settling_step: int | None
    settling_time_s: float | None
    steady_state_error: float
    cum_abs_error: float = field(default=0.0)


def _settling(z: np.ndarray, r: np.ndarray) -> int | None:
    """First step after which z stays inside a +/-5% band of the reference
    step (band width relative to the step size; absolute 0.05 when the
    reference never moves)."""
    r_final = r[-1]
    span = abs(r_final - r[0])
    band = 0.05 * span if span > 0 else 0.05
    outside = np.abs(z - r_final) > band
    if outside.any():
        last_out = int(np.nonzero(outside)[0][-1])
        if last_out == len(z) - 1:
            return None
        return last_out + 1
    return 0


def run_tracking(controller: OnlineController, reference_fn, horizon_steps: int,
                 dt: float | None = None, state0: tuple[float, float] = (0.0, 0.0),
                 drag: float = 0.3, adapt_enabled: bool = True,
                 process_noise_std: float = 0.0, seed: int = 0) -> TrackingReport:
    """Closed loop: read state -> controller_step -> plant step -> adapt.

    ``seed`` only matters when ``process_noise_std`` is nonzero (velocity
    disturbance); the default loop is fully deterministic.
    """
    if horizon_steps < 1:
        raise ValueError("horizon_steps must be >= 1")
    if dt is None:
        dt = controller.dt
    rng = np.random.default_rng(seed)
    state = QuadAltitudeState(*state0)
    rows = np.empty((horizon_steps, 5))
    for k in range(horizon_steps):
        r_k = float(reference_fn(k))
        r_next = float(reference_fn(k + 1))
        y_k = state.z
        u = controller_step(controller, y_k, r_next)
        state = quad_altitude_step(state, u, dt, controller.m, controller.g,
                                   c=drag, step=k)
        if process_noise_std > 0.0:
            state = QuadAltitudeState(state.z,
                                      state.vz + process_noise_std * rng.standard_normal())
        if adapt_enabled:
            adapt(controller, (y_k, state.z, u))
        rows[k] = (r_k, y_k, u, controller.n_patterns, k * dt)
    r, z, u_arr, n_pat, t = rows.T
    settle_step = _settling(z, r)
    report = TrackingReport(
        k=np.arange(horizon_steps), t=t, r=r, z=z, u=u_arr,
        n_patterns=n_pat.astype(int),
        settling_step=settle_step,
        settling_time_s=None if settle_step is None else settle_step * dt,
        steady_state_error=float(abs(r[-1] - z[-1])),
        cum_abs_error=float(np.abs(r - z).sum()),
    )
    return report


def step_reference(height: float = 1.0, start: int = 0):
    """Reference function for a step change at a given step index."""
    return lambda k: height if k >= start else 0.0


def square_reference(height: float = 1.0, period: int = 1000):
    return lambda k: height if (k // period) % 2 == 0 else 0.0


def write_tracking_csv(report: TrackingReport, path) -> None:
    lines = ["k,t,r,z,u,n_patterns"]
    for i in range(len(report.k)):
        lines.append(f"{report.k[i]},{repr(float(report.t[i]))},{repr(float(report.r[i]))},"
                     f"{repr(float(report.z[i]))},{repr(float(report.u[i]))},"
                     f"{report.n_patterns[i]}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
