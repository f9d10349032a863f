"""Benchmark the compiled RK4 stepper against the NumPy reference kernels.

Usage:
    python benchmarks/bench_kernels.py [--steps N] [--control]
"""

import argparse
import time

import numpy as np

from frontstab import ModelParams, solve_front
from frontstab.basis import enumerate_basis
from frontstab.design import design_single_actuator
from frontstab.kernels import compiled, reference
from frontstab.simulate import _prepare_control, default_dt, make_front_init


def _kernel_inputs(params, init, controller):
    nz, nr = init.y.shape
    if controller is None:
        ctl = {
            "kgain": 0.0,
            "psi": np.zeros((0, nz, nr)),
            "mix": np.zeros((0, 0)),
            "siz": np.zeros(0, dtype=np.int64),
            "sir": np.zeros(0, dtype=np.int64),
            "sw": np.zeros((0, 4)),
            "setp": np.zeros(0),
        }
    else:
        ctl = _prepare_control(controller, params, init)
    return (
        1.0 / init.dz**2,
        1.0 / init.dr**2,
        params.gamma,
        params.epsilon,
        ctl["kgain"],
        ctl["psi"],
        ctl["mix"],
        ctl["siz"],
        ctl["sir"],
        ctl["sw"],
        ctl["setp"],
    )


def time_backend(module, init, args, n_steps, dt):
    y = init.y.copy()
    th = init.theta.copy()
    scratch = [np.empty_like(y) for _ in range(6)]
    module.run_steps(y, th, 5, dt, *args, *scratch)  # warm up
    start = time.perf_counter()
    module.run_steps(y, th, n_steps, dt, *args, *scratch)
    elapsed = time.perf_counter() - start
    return elapsed / n_steps


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=400, help="steps per timing run")
    parser.add_argument(
        "--control", action="store_true", help="include the feedback path"
    )
    opts = parser.parse_args()

    params = ModelParams(L=20.0, R=4.0, gamma=0.45, epsilon=0.1)
    profile = solve_front(params)
    controller = None
    if opts.control:
        basis = enumerate_basis(params, 23)
        outcome = design_single_actuator(params, profile, basis, params.R / 2)
        controller = outcome.spec

    print(f"{'grid':>10} {'numpy us/step':>14} {'cython us/step':>15} {'speedup':>8}")
    for nz, nr in [(101, 21), (201, 41), (201, 81), (401, 161)]:
        init = make_front_init(profile, params, nz, nr, mode=(1, 1), amplitude=0.05)
        args = _kernel_inputs(params, init, controller)
        dt = default_dt(init.dz, init.dr)
        t_ref = time_backend(reference, init, args, max(20, opts.steps // 10), dt)
        if compiled is None:
            print(f"{nz}x{nr:>5} {t_ref * 1e6:14.1f} {'unavailable':>15} {'-':>8}")
            continue
        t_core = time_backend(compiled, init, args, opts.steps, dt)
        print(
            f"{nz}x{nr:>5} {t_ref * 1e6:14.1f} {t_core * 1e6:15.1f} "
            f"{t_ref / t_core:8.1f}"
        )


if __name__ == "__main__":
    main()
