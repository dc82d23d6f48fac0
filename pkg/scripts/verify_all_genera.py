"""Run every verification suite for genus 1..3 and print a timing table."""

import argparse
import json
import time

from hyperderiv.cli import SUITES, RunConfig, run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-genus", type=int, default=3)
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=0x1DE)
    ap.add_argument("--json", action="store_true", help="dump the raw suite results")
    args = ap.parse_args()

    print(f"{'genus':>5} {'suite':<15} {'pass':<5} {'seconds':>8}")
    for g in range(1, args.max_genus + 1):
        cfg = RunConfig(command="verify", genus=g, seed=args.seed, numeric=(g == 1),
                        timings=True)
        t0 = time.perf_counter()
        data, code = run(cfg)
        doc = json.loads(data)
        for name in SUITES:
            if name in doc["suites"]:
                s = doc["suites"][name]
                print(f"{g:>5} {name:<15} {str(s['pass']):<5} {s['seconds']:>8.3f}")
        print(f"{g:>5} {'total':<15} {str(code == 0):<5} {time.perf_counter() - t0:>8.3f}")
        if args.json:
            print(json.dumps(doc["suites"], indent=1)[:2000])


if __name__ == "__main__":
    main()
