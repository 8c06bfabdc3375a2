"""Writes the bundled synthetic price CSVs under data/pairs/.

Two cointegrated pairs over the 2022-2023 business days:
  BBB = 0.5 * AAA + 20 + AR(1) noise
  DDD = 0.8 * CCC + 15 + AR(1) noise
AAA and CCC are geometric random walks. Output is deterministic.
"""

import argparse
import pathlib

import numpy as np
import pandas as pd


def ar1(rng, n, phi, sd):
    x = np.zeros(n)
    eps = rng.normal(0.0, sd, n)
    for t in range(1, n):
        x[t] = phi * x[t - 1] + eps[t]
    return x


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "pairs"))
    ap.add_argument("--seed", type=int, default=2022)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    dates = pd.bdate_range("2022-01-03", "2023-12-29")
    n = len(dates)

    aaa = 100.0 * np.exp(np.cumsum(rng.normal(0.0003, 0.012, n)))
    bbb = 0.5 * aaa + 20.0 + ar1(rng, n, 0.9, 0.6)
    ccc = 60.0 * np.exp(np.cumsum(rng.normal(0.0, 0.015, n)))
    ddd = 0.8 * ccc + 15.0 + ar1(rng, n, 0.85, 0.5)

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, values in {"AAA": aaa, "BBB": bbb, "CCC": ccc, "DDD": ddd}.items():
        with open(out / f"{name}.csv", "w", newline="\n") as f:
            f.write("date,close\n")
            for d, v in zip(dates, values):
                f.write(f"{d.date().isoformat()},{v:.4f}\n")


if __name__ == "__main__":
    main()
