"""Command line front end.

    bench datagen --out DIR [--seed N]
    bench run --data DIR [--sigma F|auto] [--bp-hidden N] [--bp-epochs N]
              [--bp-lr F] [--seed N] --out DIR
    bench sysid --plant KIND [--sigma F] [--train-steps N] [--test-steps N]
                [--ny N] [--nu N] [--seed N] [--out DIR]
    bench control --scenario step|square [--steps N] [--episodes N]
                  [--kp F] [--kd F] [--sigma F] [--delta F] [--epsilon F]
                  [--max-patterns N] [--out DIR]

Exit code for ``run`` is 0 only when every dataset succeeded.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import bench, control, datasets, sysid
from .growth import GrowthPolicy


def _cmd_datagen(args) -> int:
    paths = datasets.make_benchmark_suite(args.out, seed=args.seed)
    for p in paths:
        print(f"wrote {p}")
    return 0


def _cmd_run(args) -> int:
    names = sorted(f for f in os.listdir(args.data) if f.endswith(".csv"))
    paths = [os.path.join(args.data, f) for f in names]
    if not paths:
        print("warning: no datasets found", file=sys.stderr)
        return 0
    sigma = args.sigma if args.sigma == "auto" else float(args.sigma)
    config = bench.BenchConfig(paths, sigma=sigma, bp_hidden=args.bp_hidden,
                               bp_epochs=args.bp_epochs, bp_lr=args.bp_lr,
                               seed=args.seed)
    results, artifacts = bench.run_benchmark(config, keep_artifacts=True)
    os.makedirs(args.out, exist_ok=True)
    table_path = os.path.join(args.out, "results.csv")
    bench.emit_table(results, table_path)
    for r in results:
        if r.failed:
            print(f"{r.dataset}: FAILED ({r.error})")
            continue
        art = artifacts[r.dataset]
        pred_path = os.path.join(args.out, f"predictions_{r.dataset}.csv")
        bench.emit_predictions(art.grnn_model, art.bp_net, art.dataset, pred_path)
        print(f"{r.dataset}: grnn_mse={r.grnn_mse:.3E} bp_mse={r.bp_mse:.3E} "
              f"grnn_time={r.grnn_time_s:.3E}s bp_time={r.bp_time_s:.3E}s "
              f"sigma={r.sigma:.3E}")
    print(f"wrote {table_path}")
    return 0 if not any(r.failed for r in results) else 1


def _cmd_sysid(args) -> int:
    spec = sysid.PlantSpec(args.plant, {"a": args.a, "b": args.b})
    lags = sysid.LagConfig(args.ny, args.nu)
    model, _ = sysid.train_identifier(spec, lags, args.train_steps, args.sigma,
                                      (args.u_min, args.u_max), seed=args.seed)
    k = np.arange(args.test_steps)
    test_u = 0.5 * np.sin(k / 10.0)
    result = sysid.evaluate_identifier(model, spec, lags, test_u)
    print(f"plant={args.plant} patterns={model.n_patterns} test_mse={result.mse:.3E}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, f"sysid_{args.plant}.csv")
        sysid.write_trajectory_csv(result, path)
        print(f"wrote {path}")
    return 0


def _cmd_control(args) -> int:
    policy = GrowthPolicy(args.delta, args.epsilon, args.max_patterns)
    ctrl = control.OnlineController(sigma=args.sigma, policy=policy,
                                    k_p=args.kp, k_d=args.kd,
                                    u_min=args.u_min, u_max=args.u_max)
    if args.scenario == "step":
        ref = control.step_reference(args.height)
    else:
        ref = control.square_reference(args.height, args.period)
    out_dir = args.out
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    for episode in range(1, args.episodes + 1):
        ctrl.reset_episode()
        report = control.run_tracking(ctrl, ref, args.steps)
        settle = ("not settled" if report.settling_time_s is None
                  else f"settled at {report.settling_time_s:.2f}s")
        print(f"episode {episode}: {settle}, steady-state error "
              f"{report.steady_state_error:.2E} m, cumulative |error| "
              f"{report.cum_abs_error:.4f}, patterns {ctrl.n_patterns}")
        if out_dir:
            path = os.path.join(out_dir, f"tracking_ep{episode}.csv")
            control.write_tracking_csv(report, path)
            print(f"wrote {path}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="bench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("datagen", help="write the benchmark dataset suite")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_datagen)

    p = sub.add_parser("run", help="benchmark both models on every dataset")
    p.add_argument("--data", required=True)
    p.add_argument("--sigma", default="auto")
    p.add_argument("--bp-hidden", type=int, default=10)
    p.add_argument("--bp-epochs", type=int, default=500)
    p.add_argument("--bp-lr", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sysid", help="identify a simulated plant")
    p.add_argument("--plant", choices=sysid.PLANT_KINDS, default="linear_first_order")
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=0.05)
    p.add_argument("--train-steps", type=int, default=4000)
    p.add_argument("--test-steps", type=int, default=500)
    p.add_argument("--u-min", type=float, default=-1.0)
    p.add_argument("--u-max", type=float, default=1.0)
    p.add_argument("--ny", type=int, default=1)
    p.add_argument("--nu", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="")
    p.set_defaults(func=_cmd_sysid)

    p = sub.add_parser("control", help="online altitude tracking")
    p.add_argument("--scenario", choices=("step", "square"), default="step")
    p.add_argument("--steps", type=int, default=3000)
    p.add_argument("--episodes", type=int, default=2)
    p.add_argument("--height", type=float, default=1.0)
    p.add_argument("--period", type=int, default=1000)
    p.add_argument("--kp", type=float, default=6.0)
    p.add_argument("--kd", type=float, default=4.0)
    p.add_argument("--sigma", type=float, default=0.05)
    p.add_argument("--delta", type=float, default=1e-3)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--max-patterns", type=int, default=500)
    p.add_argument("--u-min", type=float, default=0.0)
    p.add_argument("--u-max", type=float, default=30.0)
    p.add_argument("--out", default="")
    p.set_defaults(func=_cmd_control)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
