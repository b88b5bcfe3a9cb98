"""Sweep Krall measures over a small parameter grid and check exact orthogonality.

Prints each configuration with its Gram verdict and positivity verdict.
"""

import argparse
import itertools
from fractions import Fraction as F

from krall.measures import (
    PositivityNotGuaranteed,
    gram_orthogonality_report,
    make_paper_measure,
    paper_family,
    positivity_check,
)

GRID = {
    "lagk": {"kappa": [1, 2, 3], "u": [F(1, 2), F(1), F(3)]},
    "mk": {"a": [F(1, 3), F(1, 2)], "c": [4, 6], "kappa": [1, 2]},
    "jack": {"alpha": [0, 1, 2], "kappa": [1, 2], "u": [F(1, 2), F(1)]},
    "hk": {"a": [F(1, 2), F(2)], "b": [3, 5], "N": [10], "kappa": [1]},
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=6)
    args = ap.parse_args()

    for mid, axes in GRID.items():
        for values in itertools.product(*axes.values()):
            params = dict(zip(axes, values))
            label = ", ".join(f"{k}={v}" for k, v in params.items())
            try:
                m = make_paper_measure(mid, params)
            except PositivityNotGuaranteed as exc:
                print(f"{mid:<5} {label:<36} skipped ({exc})")
                continue
            rep = gram_orthogonality_report(m, paper_family(mid, params), args.n_max)
            pos, _ = positivity_check(m)
            print(f"{mid:<5} {label:<36} gram={'ok' if rep.passed else 'FAIL'} positive={pos}")


if __name__ == "__main__":
    main()
