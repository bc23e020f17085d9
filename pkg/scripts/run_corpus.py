"""Run every verification check over a generated corpus and tally verdicts.

    python3 scripts/run_corpus.py --kind static --count 1000 --seed 0
    python3 scripts/run_corpus.py --kind sweep
"""
import argparse
import collections
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from olp.corpus import corpus, exhaustive_sweep
from olp.verify import ALL_CHECKS, run_checks


def check(item):
    label, p = item
    return [(r.check, r.verdict, r.notes, r.to_json()) for r in run_checks(p, ALL_CHECKS, seed=label)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kind", choices=("static", "dynamic", "plain", "sweep"), default="static")
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    items = list(exhaustive_sweep() if args.kind == "sweep" else corpus(args.seed, args.count, args.kind))
    start = time.perf_counter()
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(check, items, chunksize=32))
    else:
        results = list(map(check, items))
    verdicts = collections.Counter()
    notes = collections.Counter()
    failures = []
    for reports in results:
        for name, verdict, ns, line in reports:
            verdicts[name, verdict] += 1
            notes.update(n.split(":")[0] for n in ns)
            if verdict == "fail":
                failures.append(line)
    print(f"{len(items)} programs ({args.kind}) in {time.perf_counter() - start:.1f}s")
    for name in ALL_CHECKS:
        row = "  ".join(f"{v}={verdicts[name, v]}" for v in ("pass", "fail", "skip"))
        print(f"  {name:<20} {row}")
    for note, n in sorted(notes.items()):
        print(f"  note {note}: {n}")
    for line in failures:
        print(line)
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
