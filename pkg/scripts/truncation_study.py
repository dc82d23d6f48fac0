"""Genus-1 numerics: curve-equation defect and generator error versus the
series truncation order N, at the default sample points."""

import argparse

from hyperderiv import ellnum
from hyperderiv.liegen import build_fieldset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=[6, 8, 10, 12, 14, 18])
    ap.add_argument("--skip-generators", action="store_true",
                    help="only report the differential-equation defect (fast)")
    args = ap.parse_args()

    fs = None if args.skip_generators else build_fieldset(1)
    samples = ellnum.default_samples()
    print(f"{'N':>3} {'max defect':>12} {'max gen error':>14}")
    for N in args.orders:
        defect = max(ellnum.curve_defect(ellnum.wp_coeffs(*lam, N=N), z) for z, lam in samples)
        gen = ""
        if fs is not None:
            rep = ellnum.verify_genus1_generators(fs, samples=samples, N=N)
            gen = f"{max(r.get('abs_error', 0) for r in rep.rows):14.3e}"
        print(f"{N:>3} {defect:12.3e} {gen}")


if __name__ == "__main__":
    main()
