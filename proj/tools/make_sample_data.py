"""Writes the illustrative sample price files in data/.

The series are synthetic correlated geometric Brownian motions on weekdays.
They do not represent any real instrument.
"""

import datetime as dt
import math
import pathlib
import random

DAYS = 1500
BETA = 1.2


def weekdays(start, count):
    day = start
    out = []
    while len(out) < count:
        if day.weekday() < 5:
            out.append(day)
        day += dt.timedelta(days=1)
    return out


def main():
    rng = random.Random(20090720)
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "data"
    dates = weekdays(dt.date(2004, 1, 5), DAYS)
    market, asset = [1000.0], [50.0]
    for _ in range(DAYS - 1):
        m = 0.0003 + 0.010 * rng.gauss(0.0, 1.0)
        a = 0.0001 + BETA * m + 0.008 * rng.gauss(0.0, 1.0)
        market.append(market[-1] * math.exp(m))
        asset.append(asset[-1] * math.exp(a))
    for name, prices in (("market", market), ("asset", asset)):
        with open(out_dir / f"{name}.csv", "w", newline="\n") as f:
            f.write("date,close\n")
            for d, p in zip(dates, prices):
                f.write(f"{d.isoformat()},{p:.4f}\n")


if __name__ == "__main__":
    main()
