"""Coverage of k support intervals under fixed n and under optional stopping.

Prints one row per (prior, k, regime) with the empirical coverage, the
fraction of runs where BF01 at the true value fell below k, and whether both
stay within three Monte Carlo standard errors of the bound.
"""

import argparse
import time

from supcal import FixedN, LocalNormalPrior, NonlocalMomentPrior, OptionalStopping, SimConfig, SupportInterval
from supcal.coverage import geometric_schedule, run_many


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-n", type=int, default=50)
    parser.add_argument("--true-theta", type=float, default=0.3)
    parser.add_argument("--geometric", action="store_true", help="look at geometric sample sizes only")
    args = parser.parse_args()

    looks = geometric_schedule(args.max_n) if args.geometric else None
    regimes = [("fixed", FixedN(args.max_n)), ("sequential", OptionalStopping(args.max_n, looks))]
    priors = [("local-normal sd=1", LocalNormalPrior(1.0)), ("nonlocal s=0.5", NonlocalMomentPrior(0.5))]
    configs, labels = [], []
    for pname, prior in priors:
        for k in (1 / 3, 1 / 10, 1 / 20):
            for rname, regime in regimes:
                configs.append(SimConfig(args.true_theta, 1.0, SupportInterval(k, prior), regime,
                                         args.reps, args.seed))
                labels.append((pname, k, rname))

    start = time.perf_counter()
    results = run_many(configs)
    print(f"{'prior':<20}{'k':>7}  {'regime':<11}{'coverage':>9}{'stop':>8}  ok")
    for (pname, k, rname), res in zip(labels, results):
        ok = res.coverage_ok() and res.bound_ok()
        print(f"{pname:<20}{k:>7.3f}  {rname:<11}{res.coverage_estimate:>9.4f}{res.stop_fraction:>8.4f}  "
              f"{'yes' if ok else 'NO'}")
    print(f"{len(configs)} runs in {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
