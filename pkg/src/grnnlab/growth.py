"""Bounded pattern-store growth.

A candidate is admitted when it is distance-novel (nearest stored squared
distance above the novelty radius) or, failing that, when the model's
prediction at the candidate is off by more than the error gate.  At capacity
the most redundant stored pattern (smallest distance to its own nearest
neighbor, ties broken by lowest index) is evicted first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .datasets import apply_norm
from .errors import DimensionError
from .grnn import GrnnModel, Pattern, predict


@dataclass(frozen=True)
class GrowthPolicy:
    novelty_radius: float = 1e-3     # squared distance for unconditional admission
    error_gate: float = 0.5          # max-abs prediction error that forces admission
    max_patterns: int = 500

    def __post_init__(self):
        if self.novelty_radius < 0 or self.error_gate < 0:
            raise ValueError("novelty_radius and error_gate must be nonnegative")
        if self.max_patterns < 1:
            raise ValueError("max_patterns must be at least 1")


def nearest_squared_distance(model: GrnnModel, x) -> float:
    """Smallest squared distance from x to any stored input (model space)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape[0] != model.d_in:
        raise DimensionError(f"query length {x.shape[0]} does not match d_in={model.d_in}")
    if model.norm_stats is not None:
        x = apply_norm(model.norm_stats, x)
    diff = model.x_store - x
    return float(np.einsum("ij,ij->i", diff, diff).min())


def should_insert(model: GrnnModel, candidate: Pattern,
                  policy: GrowthPolicy) -> tuple[bool, str]:
    """Admission decision plus the reason tag that fired:
    "empty", "novel", "error", or "covered" (rejected)."""
    if model.n_patterns == 0:
        return True, "empty"
    if candidate.x.shape[0] != model.d_in or candidate.y.shape[0] != model.d_out:
        raise DimensionError("candidate does not match model dimensions")
    if nearest_squared_distance(model, candidate.x) > policy.novelty_radius:
        return True, "novel"
    err = float(np.abs(predict(model, candidate.x) - candidate.y).max())
    if err > policy.error_gate:
        return True, "error"
    return False, "covered"


def _most_redundant(model: GrnnModel) -> int:
    """Index of the stored pattern closest to its own nearest neighbor."""
    if model.n_patterns == 1:
        return 0
    x = model.x_store
    d2 = ((x[:, None, :] - x[None, :, :]) ** 2).sum(axis=2)
    np.fill_diagonal(d2, np.inf)
    return int(d2.min(axis=1).argmin())


def insert_bounded(model: GrnnModel, candidate: Pattern,
                   policy: GrowthPolicy) -> tuple[GrnnModel, bool]:
    """Admit the candidate if the gates allow, evicting first when at
    capacity.  Returns (possibly new) model and whether insertion happened."""
    ok, _ = should_insert(model, candidate, policy)
    if not ok:
        return model, False
    if model.n_patterns >= policy.max_patterns:
        model = model.without_pattern(_most_redundant(model))
    if model.norm_stats is not None:
        candidate = Pattern(apply_norm(model.norm_stats, candidate.x), candidate.y)
    return model.with_pattern(candidate), True
