"""Run the unvalidated genus-4 pipeline and summarize what it produced.

Takes a few minutes. The report is marked "validated": false.
"""

import argparse
import json
import time
from pathlib import Path

from hyperderiv.cli import RunConfig, run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("derive_g4.json"))
    ap.add_argument("--parallel", action="store_true")
    args = ap.parse_args()

    t0 = time.perf_counter()
    data, code = run(RunConfig(command="derive", genus=4, experimental=True,
                               parallel=args.parallel))
    args.out.write_bytes(data)
    doc = json.loads(data)
    print(f"exit {code}, {time.perf_counter() - t0:.1f} s, validated={doc['validated']}")
    print(f"counts: {doc['counts']}")
    print(f"elimination order: {' '.join(doc['pmap']['order'])}")
    print(f"p*lambda degrees: {doc['pmap']['degrees']}")


if __name__ == "__main__":
    main()
