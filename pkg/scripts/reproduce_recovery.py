"""Recompute the RECOVERY dexamethasone intervals for every interval type.

Rate ratio 0.83 (95% CI 0.75 to 0.93), analysed on the log scale.
"""

import argparse
import math

from supcal import (
    ConfidenceInterval,
    MinFamily,
    MinSupportInterval,
    NonlocalMomentPrior,
    NormalPrior,
    SummaryData,
    SupportInterval,
    nm_scale_from_mass,
    summary_from_ci,
    support_interval,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ratio-scale", action="store_true", help="report exp(interval) instead of log scale")
    args = parser.parse_args()

    se = summary_from_ci(math.log(0.75), math.log(0.93)).se
    data = SummaryData(math.log(0.83), se)
    scale = round(nm_scale_from_mass(math.log(2), 0.9), 2)
    rows = [("95% CI", ConfidenceInterval(0.95))]
    for k in (10, 1 / 10):
        rows.append((f"SI k={k:g} normal", SupportInterval(k, NormalPrior(math.log(0.8), 2))))
        rows.append((f"SI k={k:g} nonlocal s={scale}", SupportInterval(k, NonlocalMomentPrior(scale))))
    for family in MinFamily:
        rows.append((f"minSI k=1/10 {family.value}", MinSupportInterval(0.1, family)))

    print(f"estimate {data.estimate:.4f}, se {data.se:.4f}")
    for name, method in rows:
        si = support_interval(data, method)
        if args.ratio_scale and not si.is_empty:
            text = f"[{math.exp(si.lower):.2f},{math.exp(si.upper):.2f}]"
        else:
            text = si.format(2)
        print(f"{name:<34}{text}")


if __name__ == "__main__":
    main()
