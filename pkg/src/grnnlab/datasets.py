"""Benchmark dataset handling: CSV ingestion, z-score normalization,
seeded splits, and deterministic synthetic generators.

CSV format: comma separated, ``.`` decimal, UTF-8, optional single header
line.  A sidecar file with the same basename and a ``.spec`` extension
declares how to read it (``key=value`` lines: ``n_inputs``, ``task``,
``has_header``; ``#`` lines are comments).  Classification files may carry
either one-hot target columns or a single trailing integer label column.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError

TASKS = ("fitting", "classification")


@dataclass
class Dataset:
    """Named collection of input/target rows."""

    name: str
    task: str
    inputs: np.ndarray
    targets: np.ndarray
    input_names: list[str] = field(default_factory=list)
    target_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.inputs = np.atleast_2d(np.asarray(self.inputs, dtype=float))
        self.targets = np.atleast_2d(np.asarray(self.targets, dtype=float))
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}")
        if self.inputs.shape[0] != self.targets.shape[0]:
            raise ValueError("inputs and targets must have equal row counts")
        if not np.isfinite(self.inputs).all() or not np.isfinite(self.targets).all():
            raise ValueError("dataset entries must be finite")
        if self.task == "classification":
            one = (self.targets == 1.0).sum(axis=1)
            zero = (self.targets == 0.0).sum(axis=1)
            if not ((one == 1) & (zero == self.d_out - 1)).all():
                raise ValueError("classification targets must be one-hot rows")
        if not self.input_names:
            self.input_names = [f"x{j + 1}" for j in range(self.d_in)]
        if not self.target_names:
            self.target_names = [f"y{j + 1}" for j in range(self.d_out)]

    @property
    def n_rows(self):
        return self.inputs.shape[0]

    @property
    def d_in(self):
        return self.inputs.shape[1]

    @property
    def d_out(self):
        return self.targets.shape[1]

    def take(self, idx):
        """Row subset as a new dataset."""
        return Dataset(self.name, self.task, self.inputs[idx], self.targets[idx],
                       list(self.input_names), list(self.target_names))


@dataclass
class NormStats:
    """Per-input-dimension shift/scale.  Constant columns are left untouched
    (shift 0, scale 1) and flagged in ``constant_mask``."""

    mean: np.ndarray
    std: np.ndarray
    constant_mask: np.ndarray | None = None

    def __post_init__(self):
        self.mean = np.asarray(self.mean, dtype=float)
        self.std = np.asarray(self.std, dtype=float)
        if self.constant_mask is None:
            self.constant_mask = np.zeros(self.mean.shape, dtype=bool)
        if (self.std <= 0).any():
            raise ValueError("std entries must be positive")


def normalize(dataset: Dataset) -> tuple[Dataset, NormStats]:
    """Z-score every input column (population stddev); targets untouched."""
    mean = dataset.inputs.mean(axis=0)
    std = dataset.inputs.std(axis=0)
    constant = std == 0.0
    mean = np.where(constant, 0.0, mean)
    std = np.where(constant, 1.0, std)
    stats = NormStats(mean, std, constant)
    out = Dataset(dataset.name, dataset.task, apply_norm(stats, dataset.inputs),
                  dataset.targets, list(dataset.input_names), list(dataset.target_names))
    return out, stats


def apply_norm(stats: NormStats, x: np.ndarray) -> np.ndarray:
    """Reproduce the training-time transform on a query row or matrix."""
    return (np.asarray(x, dtype=float) - stats.mean) / stats.std


def split(dataset: Dataset, train_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Disjoint, exhaustive, seeded shuffle split."""
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    n = dataset.n_rows
    if n < 2:
        raise ValueError("need at least 2 rows to split")
    perm = np.random.default_rng(seed).permutation(n)
    n_train = min(max(int(n * train_fraction), 1), n - 1)
    return dataset.take(perm[:n_train]), dataset.take(perm[n_train:])


# ---------------------------------------------------------------------------
# CSV ingestion

def load_csv(path, n_inputs: int, task: str = "fitting", has_header: bool = False,
             name: str | None = None) -> Dataset:
    """Load a numeric CSV.  Output width is inferred from the column count;
    a classification file whose non-input remainder is a single column is
    treated as an integer class label and expanded to one-hot."""
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}")
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    header = None
    start = 0
    if has_header:
        if not lines:
            raise DataFormatError(f"{path}: empty file")
        header = [c.strip() for c in lines[0].split(",")]
        start = 1
    rows = []
    n_cols = None
    for i in range(start, len(lines)):
        line = lines[i].strip()
        if not line:
            continue
        fields = line.split(",")
        if n_cols is None:
            n_cols = len(fields)
            if n_cols <= n_inputs:
                raise DataFormatError(
                    f"{path}: line {i + 1}: {n_cols} fields but n_inputs={n_inputs}")
        elif len(fields) != n_cols:
            raise DataFormatError(
                f"{path}: line {i + 1}: expected {n_cols} fields, got {len(fields)}")
        try:
            rows.append([float(f) for f in fields])
        except ValueError:
            raise DataFormatError(f"{path}: line {i + 1}: non-numeric field") from None
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    data = np.array(rows, dtype=float)
    inputs = data[:, :n_inputs]
    rest = data[:, n_inputs:]
    if name is None:
        name = os.path.splitext(os.path.basename(path))[0]
    in_names = header[:n_inputs] if header else []
    out_names = header[n_inputs:] if header else []
    if task == "classification" and rest.shape[1] == 1:
        labels = rest[:, 0]
        if (labels < 0).any() or (labels != np.round(labels)).any():
            raise DataFormatError(f"{path}: class labels must be nonnegative integers")
        labels = labels.astype(int)
        k = int(labels.max()) + 1
        targets = np.zeros((len(labels), k))
        targets[np.arange(len(labels)), labels] = 1.0
        out_names = [f"class{j}" for j in range(k)]
    else:
        targets = rest
    return Dataset(name, task, inputs, targets, in_names, out_names)


def read_sidecar(spec_path) -> dict:
    """Parse a ``key=value`` sidecar file; ``#`` lines are comments."""
    spec = {}
    with open(spec_path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DataFormatError(f"{spec_path}: bad sidecar line {line!r}")
            key, value = line.split("=", 1)
            spec[key.strip()] = value.strip()
    for key in ("n_inputs", "task", "has_header"):
        if key not in spec:
            raise DataFormatError(f"{spec_path}: missing key {key!r}")
    return spec


def load_with_sidecar(csv_path) -> Dataset:
    """Load a CSV driven by its ``.spec`` sidecar."""
    spec_path = os.path.splitext(str(csv_path))[0] + ".spec"
    spec = read_sidecar(spec_path)
    has_header = spec["has_header"].lower() in ("true", "1", "yes")
    return load_csv(csv_path, n_inputs=int(spec["n_inputs"]), task=spec["task"],
                    has_header=has_header)


def write_csv(dataset: Dataset, path, note: str = "") -> None:
    """Write a dataset plus its sidecar.  Floats are written in shortest
    round-trip form; classification targets become one label column."""
    lines = []
    classification = dataset.task == "classification"
    if classification:
        labels = dataset.targets.argmax(axis=1)
        header = dataset.input_names + ["label"]
    else:
        header = dataset.input_names + dataset.target_names
    lines.append(",".join(header))
    for i in range(dataset.n_rows):
        cells = [repr(float(v)) for v in dataset.inputs[i]]
        if classification:
            cells.append(str(int(labels[i])))
        else:
            cells.extend(repr(float(v)) for v in dataset.targets[i])
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    spec_path = os.path.splitext(str(path))[0] + ".spec"
    with open(spec_path, "w", encoding="utf-8") as fh:
        if note:
            for part in note.splitlines():
                fh.write(f"# {part}\n")
        fh.write(f"n_inputs={dataset.d_in}\n")
        fh.write(f"task={dataset.task}\n")
        fh.write("has_header=true\n")


# ---------------------------------------------------------------------------
# Synthetic generators
#
# The benchmark mixes two public datasets shipped with scikit-learn (iris,
# breast cancer) with deterministic synthetic stand-ins that only promise to
# match the row/column shape of the originals they replace.  Every stand-in
# documents itself in the sidecar note written by make_benchmark_suite.

def synthetic_simplefit(n: int = 94) -> Dataset:
    """1-input/1-output smooth fitting data: y = sin(x) + 0.5 sin(3x) on [0, 10]."""
    if n < 2:
        raise ValueError("need n >= 2")
    x = np.linspace(0.0, 10.0, n)
    y = np.sin(x) + 0.5 * np.sin(3.0 * x)
    return Dataset("simplefit", "fitting", x[:, None], y[:, None])


def abalone_standin(n: int = 4177, seed: int = 7) -> Dataset:
    """8-input/1-output fitting stand-in shaped like the abalone data:
    correlated size/weight style features driven by one latent scale."""
    rng = np.random.default_rng(seed)
    s = rng.uniform(0.15, 1.0, n)
    cols = [
        s + 0.02 * rng.standard_normal(n),            # length
        0.80 * s + 0.02 * rng.standard_normal(n),     # diameter
        0.35 * s + 0.015 * rng.standard_normal(n),    # height
        s ** 3 + 0.03 * rng.standard_normal(n),       # whole weight
        0.45 * s ** 3 + 0.02 * rng.standard_normal(n),
        0.25 * s ** 3 + 0.015 * rng.standard_normal(n),
        0.30 * s ** 3 + 0.015 * rng.standard_normal(n),
        rng.uniform(0.0, 1.0, n),                     # nuisance column
    ]
    y = 1.0 + 2.5 * s + 0.6 * np.sin(4.0 * s) + 0.05 * rng.standard_normal(n)
    return Dataset("abalone", "fitting", np.column_stack(cols), y[:, None])


def building_standin(n: int = 4208, seed: int = 11) -> Dataset:
    """14-input/3-output fitting stand-in shaped like the building energy data."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1.0, 1.0, (n, 14))
    w = rng.standard_normal((14, 3)) / np.sqrt(14)
    z = x @ w
    y = np.column_stack([
        np.sin(2.0 * z[:, 0]) + 0.3 * z[:, 1],
        z[:, 1] ** 2 + 0.5 * np.cos(z[:, 2]),
        np.tanh(2.0 * z[:, 2]) + 0.2 * z[:, 0],
    ])
    y += 0.01 * rng.standard_normal(y.shape)
    return Dataset("building", "fitting", x, y)


def cholesterol_standin(n: int = 264, seed: int = 13) -> Dataset:
    """21-input/3-output fitting stand-in shaped like the cholesterol data:
    spectra-style collinear inputs from a few latent factors driving
    nonlinear output levels."""
    rng = np.random.default_rng(seed)
    latent = rng.standard_normal((n, 4))
    loadings = rng.standard_normal((4, 21))
    x = latent @ loadings + 0.05 * rng.standard_normal((n, 21))
    y = np.column_stack([
        np.sin(2.0 * latent[:, 0]) * latent[:, 1],
        np.cos(latent[:, 2]) + latent[:, 3] ** 2,
        np.tanh(latent[:, 0] * latent[:, 2]) + 0.3 * latent[:, 1],
    ]) + 0.02 * rng.standard_normal((n, 3))
    return Dataset("cholesterol", "fitting", x, y)


def engine_standin(n: int = 1199, seed: int = 17) -> Dataset:
    """2-input/2-output fitting stand-in shaped like the engine data:
    smooth noiseless torque/emission style surfaces over (speed, fueling)."""
    rng = np.random.default_rng(seed)
    speed = rng.uniform(0.0, 1.0, n)
    fuel = rng.uniform(0.0, 1.0, n)
    torque = 2.0 * fuel * (1.0 - 0.4 * (speed - 0.5) ** 2) + 0.2 * speed
    nox = fuel ** 2 * np.exp(speed) * 0.8
    return Dataset("engine", "fitting",
                   np.column_stack([speed, fuel]), np.column_stack([torque, nox]))


def thyroid_standin(n: int = 7200, seed: int = 19) -> Dataset:
    """21-input/3-class classification stand-in shaped like the thyroid data:
    one dominant class plus two small clusters, a few nuisance columns."""
    rng = np.random.default_rng(seed)
    labels = rng.choice(3, size=n, p=(0.92, 0.05, 0.03))
    centers = rng.standard_normal((3, 15)) * 2.0
    x_inf = centers[labels] + 0.5 * rng.standard_normal((n, 15))
    x_noise = rng.uniform(0.0, 1.0, (n, 6))
    targets = np.zeros((n, 3))
    targets[np.arange(n), labels] = 1.0
    return Dataset("thyroid", "classification",
                   np.column_stack([x_inf, x_noise]), targets)


def iris_dataset() -> Dataset:
    """The classic iris data (public, bundled with scikit-learn), one-hot."""
    from sklearn.datasets import load_iris

    raw = load_iris()
    targets = np.zeros((len(raw.target), 3))
    targets[np.arange(len(raw.target)), raw.target] = 1.0
    return Dataset("iris", "classification", raw.data.astype(float), targets)


def cancer_dataset() -> Dataset:
    """The Wisconsin breast cancer data (public, bundled with scikit-learn),
    one-hot over the two classes."""
    from sklearn.datasets import load_breast_cancer

    raw = load_breast_cancer()
    targets = np.zeros((len(raw.target), 2))
    targets[np.arange(len(raw.target)), raw.target] = 1.0
    return Dataset("cancer", "classification", raw.data.astype(float), targets)


SUITE_NOTES = {
    "simplefit": "synthetic 94-row 1-in/1-out fit: y = sin(x) + 0.5*sin(3x) on [0, 10]",
    "abalone": "synthetic stand-in, original shape 4177 x 8 -> 1 (public original not bundled)",
    "building": "synthetic stand-in, shape 4208 x 14 -> 3",
    "cholesterol": "synthetic stand-in, 264 rows, 21 -> 3 (conventional output width, "
                   "the 264-output description elsewhere is inconsistent)",
    "engine": "synthetic stand-in, shape 1199 x 2 -> 2, noiseless surfaces",
    "cancer": "Wisconsin breast cancer via scikit-learn (569 x 30, 2 classes; differs "
              "in shape from the 9-input variant some toolboxes bundle)",
    "iris": "iris via scikit-learn (150 x 4, 3 classes)",
    "thyroid": "synthetic stand-in, shape 7200 x 21, 3 classes with a dominant class",
}


def make_benchmark_suite(out_dir, seed: int = 0) -> list[str]:
    """Write the eight benchmark datasets as CSV + sidecar pairs; returns paths."""
    os.makedirs(out_dir, exist_ok=True)
    generators = {
        "simplefit": lambda: synthetic_simplefit(),
        "abalone": lambda: abalone_standin(seed=seed + 7),
        "building": lambda: building_standin(seed=seed + 11),
        "cholesterol": lambda: cholesterol_standin(seed=seed + 13),
        "engine": lambda: engine_standin(seed=seed + 17),
        "cancer": cancer_dataset,
        "iris": iris_dataset,
        "thyroid": lambda: thyroid_standin(seed=seed + 19),
    }
    paths = []
    for dataset_name, gen in sorted(generators.items()):
        ds = gen()
        path = os.path.join(out_dir, f"{dataset_name}.csv")
        write_csv(ds, path, note=SUITE_NOTES[dataset_name])
        paths.append(path)
    return paths


def load_suite(data_dir) -> list[Dataset]:
    """Load every CSV with a sidecar in a directory, sorted by name."""
    names = sorted(f for f in os.listdir(data_dir) if f.endswith(".csv"))
    return [load_with_sidecar(os.path.join(data_dir, f)) for f in names]
