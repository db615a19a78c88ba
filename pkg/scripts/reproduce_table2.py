"""Excess noise of the Fourier-transform MBQC: transcribed network vs ES optimum,
with the grid search as a cross-check."""

import argparse

from clusternet import (
    OptimizerConfig,
    SqueezingProfile,
    eliminate_and_project,
    exhaustive_baseline,
    extra_noise_variances,
    fitness_f2,
    fourier_plan,
    linear_cluster,
    multistart,
)
from clusternet.mbqc import compose_with_cluster, fitness_f2_batch, load_fixtures, mbqc_outcome


def row(name, ex):
    print(f"{name:<28}{ex.var_x:>10.4f}{ex.var_p:>10.4f}{ex.f2:>10.4f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--grid", type=float, default=0.05, help="grid resolution in radians (0 to skip)")
    args = ap.parse_args()

    fx = load_fixtures()
    g, plan = linear_cluster(3), fourier_plan()
    prof = SqueezingProfile((-7.0, -6.0, -4.0))

    print(f"{'':<28}{'var_x':>10}{'var_p':>10}{'f2':>10}")
    vac = extra_noise_variances(eliminate_and_project(fx["fourier_computation"], plan), SqueezingProfile.vacuum(3))
    row("transcribed, vacuum", vac)
    u = compose_with_cluster(fx["fourier_cluster"], plan)
    row("transcribed", extra_noise_variances(eliminate_and_project(u, plan), prof))
    u = compose_with_cluster(fx["optimized_cluster"], plan)
    row("transcribed optimum (2 dig.)", extra_noise_variances(eliminate_and_project(u, plan, tol=1e-2), prof))

    res = multistart(lambda th: fitness_f2(g, th, plan, prof), 3, OptimizerConfig(seed=args.seed))
    row("ES optimum", extra_noise_variances(mbqc_outcome(g, res.theta, plan), prof))
    if args.grid > 0:
        _, best = exhaustive_baseline(lambda ts: fitness_f2_batch(g, ts, plan, prof), 3, args.grid, batch=True)
        print(f"{'grid optimum':<28}{'':>20}{best:>10.4f}")


if __name__ == "__main__":
    main()
