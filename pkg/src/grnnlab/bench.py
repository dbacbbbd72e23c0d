"""Benchmark harness: train the kernel regressor and the backprop baseline
on each dataset, record training MSE and wall time, emit result and
prediction CSVs.

Timing covers the training loops only; loading, normalization, and smoothing
parameter selection happen outside the timed windows.  Per-dataset failures
are isolated into NA rows so the remaining datasets still run.  The
``BENCH_THREADS`` environment variable caps concurrent dataset runs
(default 1, which keeps the reported times most comparable).
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bp
from .datasets import Dataset, load_with_sidecar, normalize
from .grnn import GrnnModel, Pattern, mse_on, select_sigma, train

TABLE_HEADER = "dataset,grnn_mse,grnn_time_s,bp_mse,bp_time_s,sigma,seed"


@dataclass
class BenchConfig:
    data_paths: list = field(default_factory=list)
    sigma: float | str = "auto"      # fixed value or "auto" grid search
    bp_hidden: int = 10
    bp_epochs: int = 500
    bp_lr: float = 0.1
    seed: int = 0
    normalize_inputs: bool = True
    threads: int | None = None       # None -> BENCH_THREADS env var or 1


@dataclass
class BenchResult:
    dataset: str
    grnn_mse: float | None = None
    grnn_time_s: float | None = None
    bp_mse: float | None = None
    bp_time_s: float | None = None
    sigma: float | None = None
    seed: int = 0
    bp_hidden: int = 10
    bp_epochs: int = 500
    bp_lr: float = 0.1
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass
class BenchArtifacts:
    dataset: Dataset          # normalized view actually used for training
    grnn_model: GrnnModel
    bp_net: bp.BpNetwork


def _run_one(path, config: BenchConfig, clock) -> tuple[BenchResult, BenchArtifacts | None]:
    data = load_with_sidecar(path)
    if config.normalize_inputs:
        data, _ = normalize(data)
    if config.sigma == "auto":
        sigma, _ = select_sigma(data.inputs, data.targets, seed=config.seed)
    else:
        sigma = float(config.sigma)

    patterns = [Pattern(data.inputs[i], data.targets[i]) for i in range(data.n_rows)]
    t0 = clock()
    model = train(patterns, sigma)
    grnn_time = clock() - t0
    grnn_mse = mse_on(model, data.inputs, data.targets)

    net0 = bp.init_network(data.d_in, config.bp_hidden, data.d_out, config.seed)
    net, report = bp.train(net0, data.inputs, data.targets,
                           config.bp_epochs, config.bp_lr, clock=clock)

    result = BenchResult(data.name, grnn_mse, grnn_time, report.final_mse,
                         report.wall_time_s, sigma, config.seed,
                         config.bp_hidden, config.bp_epochs, config.bp_lr)
    return result, BenchArtifacts(data, model, net)


def run_benchmark(config: BenchConfig, clock=time.perf_counter,
                  keep_artifacts: bool = False):
    """Run every dataset; returns a list of BenchResult in input order, plus
    a name -> BenchArtifacts dict when keep_artifacts is set."""
    threads = config.threads
    if threads is None:
        threads = int(os.environ.get("BENCH_THREADS", "1"))

    def worker(path):
        try:
            return _run_one(path, config, clock)
        except Exception as exc:  # isolate per-dataset failures
            name = os.path.splitext(os.path.basename(str(path)))[0]
            return BenchResult(name, seed=config.seed, bp_hidden=config.bp_hidden,
                               bp_epochs=config.bp_epochs, bp_lr=config.bp_lr,
                               error=f"{type(exc).__name__}: {exc}"), None

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pairs = list(pool.map(worker, config.data_paths))
    else:
        pairs = [worker(p) for p in config.data_paths]

    results = [r for r, _ in pairs]
    if keep_artifacts:
        artifacts = {r.dataset: a for r, a in pairs if a is not None}
        return results, artifacts
    return results


def _sci(value) -> str:
    return "NA" if value is None else f"{value:.3E}"


def emit_table(results: list[BenchResult], path) -> None:
    """Result CSV, scientific notation with 4 significant digits, NA for
    failed columns, rows in input order."""
    if not results:
        raise ValueError("no results to emit")
    lines = [TABLE_HEADER]
    for r in results:
        lines.append(f"{r.dataset},{_sci(r.grnn_mse)},{_sci(r.grnn_time_s)},"
                     f"{_sci(r.bp_mse)},{_sci(r.bp_time_s)},{_sci(r.sigma)},{r.seed}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_predictions(grnn_model: GrnnModel, bp_net: bp.BpNetwork,
                     dataset: Dataset, path) -> None:
    """Prediction-vs-target CSV: row,target_1..m,grnn_1..m,bp_1..m."""
    m = dataset.d_out
    grnn_pred = grnn_model.predict_batch(dataset.inputs)
    bp_pred = bp.forward_batch(bp_net, dataset.inputs)
    header = ["row"] + [f"target_{j + 1}" for j in range(m)] + \
        [f"grnn_{j + 1}" for j in range(m)] + [f"bp_{j + 1}" for j in range(m)]
    lines = [",".join(header)]
    for i in range(dataset.n_rows):
        cells = [str(i)]
        for block in (dataset.targets[i], grnn_pred[i], bp_pred[i]):
            cells.extend(repr(float(v)) for v in block)
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
