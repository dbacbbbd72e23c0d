"""Memory-based regressor with normalized Gaussian weighting.

Training is a single pass that stores every pattern.  A prediction at x is
the convex combination of stored outputs weighted by

    w_i = exp(-D_i / (2 sigma^2)) / sum_k exp(-D_k / (2 sigma^2))

where D_i is the squared Euclidean distance from x to stored input i.  The
weights are computed in shifted form (subtract min_i D_i before
exponentiating), which is algebraically identical but keeps at least one raw
weight at 1.0, so the normalization never divides by an underflowed zero.
If every non-minimal weight underflows, the result degenerates to an equal
split over the minimal-distance pattern(s).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .datasets import NormStats, apply_norm
from .errors import DataFormatError, DimensionError, EmptyModelError


@dataclass
class Pattern:
    """One stored exemplar: input vector x, output vector y."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        self.x = np.atleast_1d(np.asarray(self.x, dtype=float))
        self.y = np.atleast_1d(np.asarray(self.y, dtype=float))
        if self.x.ndim != 1 or self.y.ndim != 1:
            raise DimensionError("pattern x and y must be vectors")
        if not np.isfinite(self.x).all() or not np.isfinite(self.y).all():
            raise ValueError("pattern entries must be finite")


class GrnnModel:
    """Immutable pattern store plus smoothing parameter.

    ``norm_stats``, when present, is applied to every query; the stored
    inputs are expected to be already transformed.  Growth operations return
    new models instead of mutating.
    """

    def __init__(self, x_store, y_store, sigma, norm_stats: NormStats | None = None):
        # own copies, frozen below: models are immutable and share-safe
        x_store = np.array(x_store, dtype=float)
        y_store = np.array(y_store, dtype=float)
        if x_store.ndim == 1:
            x_store = x_store[:, None]
        if y_store.ndim == 1:
            y_store = y_store[:, None]
        if len(x_store) != len(y_store):
            raise DimensionError("x and y stores must have equal row counts")
        if not (np.isfinite(x_store).all() and np.isfinite(y_store).all()):
            raise ValueError("stored patterns must be finite")
        if not sigma > 0:
            raise ValueError(f"sigma must be positive, got {sigma}")
        self._x = x_store
        self._x.setflags(write=False)
        self._y = y_store
        self._y.setflags(write=False)
        self.sigma = float(sigma)
        self.norm_stats = norm_stats
        if len(y_store):
            self._y_lo = y_store.min(axis=0)
            self._y_hi = y_store.max(axis=0)

    @classmethod
    def empty(cls, d_in: int, d_out: int, sigma: float) -> "GrnnModel":
        return cls(np.empty((0, d_in)), np.empty((0, d_out)), sigma)

    @property
    def n_patterns(self) -> int:
        return self._x.shape[0]

    @property
    def d_in(self) -> int:
        return self._x.shape[1]

    @property
    def d_out(self) -> int:
        return self._y.shape[1]

    @property
    def x_store(self) -> np.ndarray:
        return self._x

    @property
    def y_store(self) -> np.ndarray:
        return self._y

    @property
    def patterns(self) -> list[Pattern]:
        return [Pattern(self._x[i].copy(), self._y[i].copy())
                for i in range(self.n_patterns)]

    def with_pattern(self, pattern: Pattern) -> "GrnnModel":
        """New model with one more stored pattern (input taken as already
        being in the model's input space)."""
        if pattern.x.shape[0] != self.d_in or pattern.y.shape[0] != self.d_out:
            raise DimensionError(
                f"pattern shape ({pattern.x.shape[0]}, {pattern.y.shape[0]}) does not "
                f"match model ({self.d_in}, {self.d_out})")
        return GrnnModel(np.vstack([self._x, pattern.x]),
                         np.vstack([self._y, pattern.y]),
                         self.sigma, self.norm_stats)

    def without_pattern(self, index: int) -> "GrnnModel":
        """New model with stored pattern ``index`` removed."""
        keep = np.arange(self.n_patterns) != index
        return GrnnModel(self._x[keep], self._y[keep], self.sigma, self.norm_stats)

    def predict(self, x) -> np.ndarray:
        return predict(self, x)

    def predict_batch(self, queries) -> np.ndarray:
        """Row-wise prediction; identical to calling predict per row."""
        queries = np.asarray(queries, dtype=float)
        return np.array([predict(self, q) for q in queries])


def squared_distance(x, xi) -> float:
    """Sum of squared coordinate differences."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if x.shape != xi.shape:
        raise DimensionError(f"length mismatch: {x.shape} vs {xi.shape}")
    d = x - xi
    return float(np.dot(d, d))


def _query_vector(model: GrnnModel, x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1 or x.shape[0] != model.d_in:
        raise DimensionError(f"query length {x.shape} does not match d_in={model.d_in}")
    if model.norm_stats is not None:
        x = apply_norm(model.norm_stats, x)
    return x


def _weights_from_d2(d2: np.ndarray, sigma: float) -> np.ndarray:
    shifted = d2 - d2.min()
    denom = 2.0 * sigma * sigma
    if denom == 0.0:
        # sigma so small its square underflows: pure nearest-pattern recall
        raw = (shifted == 0.0).astype(float)
    else:
        with np.errstate(over="ignore"):
            raw = np.exp(-shifted / denom)
    return raw / raw.sum()


def kernel_weights(model: GrnnModel, x) -> np.ndarray:
    """Normalized Gaussian weights over the stored patterns for query x."""
    if model.n_patterns == 0:
        raise EmptyModelError("model has no stored patterns")
    q = _query_vector(model, x)
    diff = model.x_store - q
    d2 = np.einsum("ij,ij->i", diff, diff)
    return _weights_from_d2(d2, model.sigma)


def predict(model: GrnnModel, x) -> np.ndarray:
    """Weighted average of stored outputs; clipped to the per-dimension
    min/max of the stored outputs so rounding cannot leave the convex hull."""
    w = kernel_weights(model, x)
    return np.clip(w @ model.y_store, model._y_lo, model._y_hi)


def train(patterns: list[Pattern], sigma: float,
          norm_stats: NormStats | None = None) -> GrnnModel:
    """Single-pass training: store every pattern once, in order.  If
    ``norm_stats`` is given the inputs are transformed before storage and all
    later queries go through the same transform."""
    if not patterns:
        raise ValueError("cannot train on an empty pattern list")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    d_in = patterns[0].x.shape[0]
    d_out = patterns[0].y.shape[0]
    for i, p in enumerate(patterns):
        if p.x.shape[0] != d_in or p.y.shape[0] != d_out:
            raise DimensionError(f"pattern {i} has inconsistent dimensions")
    x = np.array([p.x for p in patterns])
    y = np.array([p.y for p in patterns])
    if norm_stats is not None:
        x = apply_norm(norm_stats, x)
    return GrnnModel(x, y, sigma, norm_stats)


def training_mse(model: GrnnModel, patterns: list[Pattern]) -> float:
    """Mean over rows and output components of squared prediction error."""
    if not patterns:
        raise ValueError("empty pattern list")
    x = np.array([p.x for p in patterns])
    t = np.array([p.y for p in patterns])
    return mse_on(model, x, t)


def mse_on(model: GrnnModel, inputs: np.ndarray, targets: np.ndarray) -> float:
    """Array form of training_mse."""
    preds = model.predict_batch(inputs)
    targets = np.asarray(targets, dtype=float).reshape(preds.shape)
    return float(np.mean((preds - targets) ** 2))


# ---------------------------------------------------------------------------
# Smoothing parameter selection

def sigma_grid(n: int = 25) -> np.ndarray:
    return np.logspace(-3.0, 1.0, n)


def select_sigma(inputs, targets, grid=None, holdout: float = 0.2,
                 seed: int = 0) -> tuple[float, list[tuple[float, float]]]:
    """Pick sigma from a log-spaced grid by minimizing MSE on a seeded
    holdout split.  Returns the winner and the full (sigma, mse) table.

    The squared-distance matrix between holdout and training rows is built
    once and reused for every grid point.
    """
    inputs = np.asarray(inputs, dtype=float)
    targets = np.asarray(targets, dtype=float)
    if grid is None:
        grid = sigma_grid()
    n = len(inputs)
    if n < 2:
        raise ValueError("need at least 2 rows to select sigma")
    perm = np.random.default_rng(seed).permutation(n)
    n_train = min(max(int(n * (1.0 - holdout)), 1), n - 1)
    tr, te = perm[:n_train], perm[n_train:]
    x_tr, y_tr = inputs[tr], targets[tr]
    x_te, y_te = inputs[te], targets[te]

    d2 = np.empty((len(x_te), len(x_tr)))
    chunk = max(1, int(4e6 // max(len(x_tr) * x_tr.shape[1], 1)))
    for lo in range(0, len(x_te), chunk):
        hi = lo + chunk
        diff = x_te[lo:hi, None, :] - x_tr[None, :, :]
        d2[lo:hi] = np.einsum("qij,qij->qi", diff, diff)
    shifted = d2 - d2.min(axis=1, keepdims=True)

    table = []
    for s in grid:
        raw = np.exp(-shifted / (2.0 * s * s))
        w = raw / raw.sum(axis=1, keepdims=True)
        err = w @ y_tr - y_te
        table.append((float(s), float(np.mean(err ** 2))))
    best = min(range(len(table)), key=lambda i: table[i][1])
    return table[best][0], table


# ---------------------------------------------------------------------------
# Serialization
#
# Plain text: a header line
#     grnn v1 d_in=<n> d_out=<m> sigma=<f> n=<N> [key=value ...]
# then one CSV row per pattern (inputs then outputs), then an optional
# norm-stats block of two lines, "norm_mean,<...>" and "norm_std,<...>".
# Floats are written in shortest round-trip form, so reload is value-exact.

def save_model(model: GrnnModel, path, extra: dict | None = None) -> None:
    fields = {"d_in": model.d_in, "d_out": model.d_out,
              "sigma": repr(model.sigma), "n": model.n_patterns}
    if extra:
        fields.update(extra)
    header = "grnn v1 " + " ".join(f"{k}={v}" for k, v in fields.items())
    lines = [header]
    for i in range(model.n_patterns):
        row = list(model.x_store[i]) + list(model.y_store[i])
        lines.append(",".join(repr(float(v)) for v in row))
    if model.norm_stats is not None:
        lines.append("norm_mean," + ",".join(repr(float(v)) for v in model.norm_stats.mean))
        lines.append("norm_std," + ",".join(repr(float(v)) for v in model.norm_stats.std))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model(path) -> tuple[GrnnModel, dict]:
    """Inverse of save_model; the dict carries any extra header fields."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("grnn v1 "):
        raise DataFormatError(f"{path}: not a grnn v1 model file")
    fields = dict(tok.split("=", 1) for tok in lines[0].split()[2:])
    d_in = int(fields.pop("d_in"))
    d_out = int(fields.pop("d_out"))
    sigma = float(fields.pop("sigma"))
    n = int(fields.pop("n"))
    rows = [np.array([float(v) for v in lines[1 + i].split(",")]) for i in range(n)]
    x = np.array([r[:d_in] for r in rows]).reshape(n, d_in)
    y = np.array([r[d_in:] for r in rows]).reshape(n, d_out)
    norm = None
    rest = lines[1 + n:]
    if rest:
        mean = np.array([float(v) for v in rest[0].split(",")[1:]])
        std = np.array([float(v) for v in rest[1].split(",")[1:]])
        norm = NormStats(mean, std)
    return GrnnModel(x, y, sigma, norm), fields
