#!/usr/bin/env python3
"""Online learning in the altitude loop.

The controller starts with an empty inverse-dynamics memory and a PD
fallback.  While tracking a 1 m step it stores (altitude, next altitude) ->
residual-thrust transitions; repeating the same maneuver with the learned
memory should cost less cumulative error than the first attempt.
"""

import numpy as np

from grnnlab.control import (OnlineController, run_tracking, step_reference,
                             write_tracking_csv)

ctrl = OnlineController()   # sigma 0.05, PD fallback kp=6 kd=4, thrust 0..30 N
ref = step_reference(1.0)

reports = []
for episode in (1, 2):
    ctrl.reset_episode()     # fresh plant state, memory kept
    rep = run_tracking(ctrl, ref, horizon_steps=3000)
    reports.append(rep)
    print(f"episode {episode}: settles at {rep.settling_time_s:.2f}s, "
          f"steady-state error {rep.steady_state_error:.2e} m, "
          f"cumulative |error| {rep.cum_abs_error:.3f}, "
          f"memory {ctrl.n_patterns} patterns")
    write_tracking_csv(rep, f"demo05_episode{episode}.csv")

improvement = reports[0].cum_abs_error - reports[1].cum_abs_error
print(f"\nsecond pass saves {improvement:.3f} in cumulative |error| "
      f"({100 * improvement / reports[0].cum_abs_error:.1f}%)")
assert reports[1].cum_abs_error <= reports[0].cum_abs_error

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(9, 6), sharex=True)
    for rep, label in zip(reports, ("episode 1 (learning)", "episode 2 (learned)")):
        top.plot(rep.t, rep.z, label=label)
    top.plot(reports[0].t, reports[0].r, "k:", label="reference")
    top.set_ylabel("altitude (m)")
    top.legend()
    bottom.plot(reports[0].t, np.abs(reports[0].r - reports[0].z), label="episode 1 |error|")
    bottom.plot(reports[1].t, np.abs(reports[1].r - reports[1].z), label="episode 2 |error|")
    bottom.set_xlabel("time (s)")
    bottom.set_ylabel("|error| (m)")
    bottom.set_yscale("log")
    bottom.legend()
    fig.tight_layout()
    fig.savefig("demo05_altitude_tracking.png", dpi=120)
    print("wrote demo05_altitude_tracking.png")
except ImportError:
    print("matplotlib not installed; skipping plot")
