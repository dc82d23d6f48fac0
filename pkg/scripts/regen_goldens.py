"""Rewrite the derive goldens for genus 1 and 2 from the current build.

Only run this after a change that is meant to alter the derive output; the
diff of the golden files is the review artifact.
"""

import argparse
from pathlib import Path

from hyperderiv.cli import RunConfig, run

GOLDEN = Path(__file__).resolve().parents[1] / "src" / "hyperderiv" / "golden"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--genera", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--dest", type=Path, default=GOLDEN)
    args = ap.parse_args()
    args.dest.mkdir(parents=True, exist_ok=True)
    for g in args.genera:
        data, code = run(RunConfig(command="derive", genus=g))
        if code:
            raise SystemExit(f"derive --genus {g} exited with {code}")
        path = args.dest / f"derive_g{g}.json"
        changed = not path.exists() or path.read_bytes() != data
        path.write_bytes(data)
        print(f"{path}: {'updated' if changed else 'unchanged'} ({len(data)} bytes)")


if __name__ == "__main__":
    main()
