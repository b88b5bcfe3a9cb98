"""Run every limit case for a few degrees and print a one-line summary per run.

    python3 scripts/run_limit_catalog.py --n-max 3 --jobs 4
"""

import argparse

from krall.limits import catalog, run_many


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--t-max", type=int, default=20)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    jobs = []
    for case in catalog():
        lo = case.default_t_range().start
        for n in range(case.n_min, args.n_max + 1):
            jobs.append((case.id, n, range(lo, args.t_max + 1), None))

    reports = run_many(jobs, workers=args.jobs)
    failed = 0
    for (cid, n, _, _), rep in zip(jobs, reports):
        failed += not rep.passed
        status = "ok  " if rep.passed else "FAIL"
        print(f"{status} {cid:<20} n={n}  t<={rep.ts[-1]:<3} err={float(rep.errors[-1]):.3e}  {'; '.join(rep.flags)}")
    print(f"{len(reports) - failed}/{len(reports)} runs pass")


if __name__ == "__main__":
    main()
