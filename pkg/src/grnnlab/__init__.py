"""grnnlab: memory-based Gaussian kernel regression with bounded growth,
a backprop baseline, benchmarking, system identification, and online
altitude control."""

from .bp import BpNetwork, TrainReport, forward, forward_batch, gradients, init_network
from .bp import train as train_bp
from .control import (OnlineController, QuadAltitudeState, adapt, controller_step,
                      quad_altitude_step, run_tracking)
from .datasets import (Dataset, NormStats, apply_norm, load_csv, load_with_sidecar,
                       make_benchmark_suite, normalize, split, synthetic_simplefit)
from .grnn import (GrnnModel, Pattern, kernel_weights, load_model, mse_on, predict,
                   save_model, select_sigma, squared_distance, train, training_mse)
from .growth import GrowthPolicy, insert_bounded, nearest_squared_distance, should_insert
from .sysid import (LagConfig, PlantSpec, build_sysid_dataset, evaluate_identifier,
                    simulate_plant, train_identifier)

__all__ = [
    "BpNetwork", "Dataset", "GrnnModel", "GrowthPolicy", "LagConfig", "NormStats",
    "OnlineController", "Pattern", "PlantSpec", "QuadAltitudeState", "TrainReport",
    "adapt", "apply_norm", "build_sysid_dataset", "controller_step",
    "evaluate_identifier", "forward", "forward_batch", "gradients", "init_network",
    "insert_bounded", "kernel_weights", "load_csv", "load_model", "load_with_sidecar",
    "make_benchmark_suite", "mse_on", "nearest_squared_distance", "normalize",
    "predict", "quad_altitude_step", "run_tracking", "save_model", "select_sigma",
    "should_insert", "simulate_plant", "split", "squared_distance",
    "synthetic_simplefit", "train", "train_bp", "train_identifier", "training_mse",
]
