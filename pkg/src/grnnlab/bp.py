"""Single-hidden-layer feedforward baseline trained by full-batch
gradient descent: tanh hidden units, identity outputs, fixed learning rate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError, DimensionError, DivergenceError


class BpNetwork:
    """Weights and biases; immutable once trained (train returns a copy)."""

    def __init__(self, w1, b1, w2, b2):
        self.w1 = np.asarray(w1, dtype=float)   # (hidden, d_in)
        self.b1 = np.asarray(b1, dtype=float)   # (hidden,)
        self.w2 = np.asarray(w2, dtype=float)   # (d_out, hidden)
        self.b2 = np.asarray(b2, dtype=float)   # (d_out,)
        if self.w1.shape[0] != self.b1.shape[0] or self.w2.shape[1] != self.w1.shape[0] \
                or self.w2.shape[0] != self.b2.shape[0]:
            raise DimensionError("inconsistent parameter shapes")

    @property
    def d_in(self):
        return self.w1.shape[1]

    @property
    def hidden(self):
        return self.w1.shape[0]

    @property
    def d_out(self):
        return self.w2.shape[0]

    @property
    def n_params(self):
        return self.w1.size + self.b1.size + self.w2.size + self.b2.size

    def copy(self):
        return BpNetwork(self.w1.copy(), self.b1.copy(), self.w2.copy(), self.b2.copy())


@dataclass
class Gradients:
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray


@dataclass
class TrainReport:
    final_mse: float
    epochs_run: int
    wall_time_s: float
    mse_history: list[float] = field(default_factory=list)


def init_network(d_in: int, hidden: int, d_out: int, seed: int = 0) -> BpNetwork:
    """Uniform init in [-1/sqrt(fan_in), +1/sqrt(fan_in)] per layer,
    deterministic for a given seed."""
    if d_in < 1 or hidden < 1 or d_out < 1:
        raise ValueError("layer sizes must be positive")
    rng = np.random.default_rng(seed)
    lim1 = 1.0 / np.sqrt(d_in)
    lim2 = 1.0 / np.sqrt(hidden)
    return BpNetwork(
        rng.uniform(-lim1, lim1, (hidden, d_in)),
        rng.uniform(-lim1, lim1, hidden),
        rng.uniform(-lim2, lim2, (d_out, hidden)),
        rng.uniform(-lim2, lim2, d_out),
    )


def forward(net: BpNetwork, x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape[0] != net.d_in:
        raise DimensionError(f"input length {x.shape[0]} does not match d_in={net.d_in}")
    h = np.tanh(net.w1 @ x + net.b1)
    return net.w2 @ h + net.b2


def forward_batch(net: BpNetwork, inputs: np.ndarray) -> np.ndarray:
    inputs = np.asarray(inputs, dtype=float)
    if inputs.shape[1] != net.d_in:
        raise DimensionError(f"input width {inputs.shape[1]} does not match d_in={net.d_in}")
    h = np.tanh(inputs @ net.w1.T + net.b1)
    return h @ net.w2.T + net.b2


def gradients(net: BpNetwork, x, t) -> Gradients:
    """Exact gradient of the per-sample squared error sum_j (y_j - t_j)^2."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if t.shape[0] != net.d_out:
        raise DimensionError(f"target length {t.shape[0]} does not match d_out={net.d_out}")
    h = np.tanh(net.w1 @ x + net.b1)
    y = net.w2 @ h + net.b2
    dy = 2.0 * (y - t)
    dh = (net.w2.T @ dy) * (1.0 - h * h)
    return Gradients(np.outer(dh, x), dh, np.outer(dy, h), dy)


def _batch_gradients(net: BpNetwork, inputs, targets) -> tuple[Gradients, float]:
    """Gradient of the batch MSE (mean over rows and output components)."""
    h = np.tanh(inputs @ net.w1.T + net.b1)        # (R, hidden)
    y = h @ net.w2.T + net.b2                      # (R, d_out)
    err = y - targets
    scale = 2.0 / err.size
    dy = scale * err
    dh = (dy @ net.w2) * (1.0 - h * h)
    g = Gradients(dh.T @ inputs, dh.sum(axis=0), dy.T @ h, dy.sum(axis=0))
    return g, float(np.mean(err ** 2))


def mse(net: BpNetwork, inputs, targets) -> float:
    err = forward_batch(net, inputs) - np.asarray(targets, dtype=float)
    return float(np.mean(err ** 2))


def train(net: BpNetwork, inputs, targets, epochs: int, learning_rate: float,
          clock=time.perf_counter) -> tuple[BpNetwork, TrainReport]:
    """Full-batch gradient descent on the batch MSE.  The reported wall time
    covers the update loop only.  Raises DivergenceError (with the epoch) as
    soon as the MSE stops being finite."""
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    if not learning_rate > 0:
        raise ValueError(f"learning_rate must be positive, got {learning_rate}")
    inputs = np.asarray(inputs, dtype=float)
    targets = np.asarray(targets, dtype=float)
    if targets.ndim == 1:
        targets = targets[:, None]
    net = net.copy()
    history = []
    t0 = clock()
    with np.errstate(over="ignore", invalid="ignore"):
        for epoch in range(1, epochs + 1):
            g, _ = _batch_gradients(net, inputs, targets)
            net.w1 -= learning_rate * g.w1
            net.b1 -= learning_rate * g.b1
            net.w2 -= learning_rate * g.w2
            net.b2 -= learning_rate * g.b2
            current = mse(net, inputs, targets)
            if not np.isfinite(current):
                raise DivergenceError(f"training diverged at epoch {epoch}", epoch)
            history.append(current)
    wall = clock() - t0
    return net, TrainReport(history[-1], epochs, wall, history)


# ---------------------------------------------------------------------------
# Serialization: same plain-text style as the kernel regressor.
#     bpnn v1 d_in=<n> hidden=<h> d_out=<m>
# then w1 rows, one b1 row, w2 rows, one b2 row (CSV, shortest round-trip).

def save_network(net: BpNetwork, path) -> None:
    lines = [f"bpnn v1 d_in={net.d_in} hidden={net.hidden} d_out={net.d_out}"]
    for row in net.w1:
        lines.append(",".join(repr(float(v)) for v in row))
    lines.append(",".join(repr(float(v)) for v in net.b1))
    for row in net.w2:
        lines.append(",".join(repr(float(v)) for v in row))
    lines.append(",".join(repr(float(v)) for v in net.b2))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_network(path) -> BpNetwork:
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("bpnn v1 "):
        raise DataFormatError(f"{path}: not a bpnn v1 file")
    fields = dict(tok.split("=", 1) for tok in lines[0].split()[2:])
    hidden = int(fields["hidden"])
    d_out = int(fields["d_out"])
    vals = [np.array([float(v) for v in ln.split(",")]) for ln in lines[1:]]
    w1 = np.array(vals[:hidden])
    b1 = vals[hidden]
    w2 = np.array(vals[hidden + 1:hidden + 1 + d_out])
    b2 = vals[hidden + 1 + d_out]
    return BpNetwork(w1, b1, w2, b2)
