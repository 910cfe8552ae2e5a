"""Synthetic stand-ins for the three survey variables.

The generators mimic the published shape of each variable (size, bounds,
skew). Their moments are approximate targets, not guarantees.

Run ``python -m dprisk.synthetic OUTDIR`` to write one CSV per variable.
"""

import argparse
import csv
from pathlib import Path

import numpy as np

# label -> (n, min, max, mean, median, std) of the real variable
TARGETS = {
    "work-hours": (25238, 0, 18, 5.35, 7, 4.38),
    "distance-work": (14734, 1, 675, 15.07, 10, 19.90),
    "monthly-incomeGross": (16594, 0, 2_700_000, 3432.0, 2500, 21669.0),
}


def work_hours(seed=0, n=25238):
    """Average daily hours of paid work: a block of zeros plus a bell around 8h."""
    rng = np.random.default_rng(seed)
    working = rng.random(n) >= 0.30
    hours = np.clip(np.rint(rng.normal(7.7, 2.0, n)), 1, 18)
    values = np.where(working, hours, 0.0)
    values[rng.integers(n)] = 18.0
    return values


def distance_work(seed=0, n=14734):
    """Commuting distance in km: bottom-heavy log-normal with a sparse far tail."""
    rng = np.random.default_rng(seed)
    values = np.clip(np.rint(rng.lognormal(np.log(10), 0.906, n)), 1, 675)
    tail = rng.choice(n, size=12, replace=False)
    values[tail] = rng.integers(200, 675, size=12)
    values[tail[:2]] = 675.0
    return values


def monthly_income(seed=0, n=16594):
    """Gross monthly income: some zeros, log-normal body, a few very large outliers."""
    rng = np.random.default_rng(seed)
    values = np.rint(rng.lognormal(np.log(2600), 0.75, n))
    values[rng.random(n) < 0.03] = 0.0
    outliers = rng.choice(n, size=6, replace=False)
    values[outliers[:5]] = rng.integers(60_000, 400_000, size=5)
    values[outliers[5]] = 2_700_000.0
    return values


GENERATORS = {
    "work-hours": work_hours,
    "distance-work": distance_work,
    "monthly-incomeGross": monthly_income,
}


def write_csv(path, values, column="value"):
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([column])
        for v in values:
            writer.writerow([int(v) if float(v).is_integer() else repr(float(v))])
    return path


def main(argv=None):
    parser = argparse.ArgumentParser(prog="python -m dprisk.synthetic", description=__doc__.splitlines()[0])
    parser.add_argument("outdir", type=Path)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)
    for label, gen in GENERATORS.items():
        print(write_csv(args.outdir / f"{label}.csv", gen(args.seed), column=label))


if __name__ == "__main__":
    main()
