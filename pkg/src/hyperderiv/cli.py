"""Command-line front end: derive, verify, kdv, pmap, tangency.

Exit codes: 0 when every executed check passes, 1 on a construction error,
2 on bad usage, and 10 + i when suite ``SUITES[i]`` is the first to fail.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from . import ellnum
from .curvegeom import DEFAULT_SEED, divisibility_tangency, lambda_fields, sample_singular_tangency
from .exactalg import bracket, lam, x
from .freekdv import DEFAULT_DEPTH, HierarchyTable, NotExact, embed_to_x, free_derive, kdv_step
from .liegen import (ConstructionError, FieldSet, NotInModule, build_fieldset, check_projectable,
                     com1_residuals, flow_density, independence_matrix, jacobi_residual,
                     jacobi_triples, structure_table, tamper)
from .pmap import (EliminationStalled, PMapResult, back_substitute, eliminate_pmap,
                   invariance_check, pmap_degree_report)
from .report import FORMATS, artifact_version, emit_report, golden_path

MAX_VALIDATED_GENUS = 3
JACOBI_SAMPLE = 30
SUITES = ("relations", "pmap", "kdv", "com1", "projectability", "closure", "jacobi",
          "tangency", "independence", "numeric")
EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_SUITE_BASE = 0, 1, 2, 10


@dataclass
class RunConfig:
    command: str
    genus: int = 1
    seed: int = DEFAULT_SEED
    depth: int = DEFAULT_DEPTH
    trunc: int = ellnum.DEFAULT_TRUNC
    tol: float | None = None
    fmt: str = "json"
    out: str | None = None
    parallel: bool = False
    full_discriminant: bool = False
    numeric: bool = False
    trials: int = 10
    method: str | None = None
    embed: bool = False
    tamper: str | None = None
    experimental: bool = False
    timings: bool = False
    index: int | None = None
    check_golden: bool = False

    # fields that change results; output paths and scheduling do not
    ECHO = ("command", "genus", "seed", "depth", "trunc", "tol", "numeric", "trials",
            "method", "embed", "tamper", "full_discriminant", "index")

    def echo(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in self.ECHO}

    @property
    def validated(self) -> bool:
        return self.genus <= MAX_VALIDATED_GENUS


def _label(s: int) -> str:
    return f"L{s}"


def _header(cfg: RunConfig) -> dict:
    return {"command": cfg.command, "genus": cfg.genus, "validated": cfg.validated,
            "version": artifact_version(), "config": cfg.echo()}


def _pmap(cfg: RunConfig) -> PMapResult:
    return eliminate_pmap(cfg.genus, allow_higher_genus=cfg.experimental)


# -- derive -------------------------------------------------------------------

def fieldset_payload(fs: FieldSet) -> dict:
    fields = {}
    for s in fs.labels:
        D = fs[s]
        push = fs.pushforward(s)
        fields[_label(s)] = {
            "weight": D.weight,
            "images": {str(v): p for v, p in D.images.items()},
            "pushforward": None if push is None else {str(v): p for v, p in push.images.items()},
        }
    return fields


def pmap_payload(pm: PMapResult) -> dict:
    return {"lambda": {f"l[{s}]": p for s, p in sorted(pm.lambda_polys.items())},
            "w": {f"w[{a},{b}]": p for (a, b), p in sorted(pm.w_polys.items())},
            "degrees": {f"l[{s}]": d for s, d in pmap_degree_report(pm).items()},
            "order": [u for u, _ in pm.trace]}


def table_payload(table) -> dict:
    return {f"[{_label(a)},{_label(b)}]": {_label(m): c for m, c in coeffs.items()}
            for (a, b), coeffs in table.entries.items()}


def cmd_derive(cfg: RunConfig) -> tuple[dict, int]:
    t0 = time.perf_counter()
    fs = build_fieldset(cfg.genus, _pmap(cfg))
    table = structure_table(fs, parallel=cfg.parallel)
    report = _header(cfg)
    report.update({
        "fields": fieldset_payload(fs),
        "pmap": pmap_payload(fs.pmap),
        "structure": table_payload(table),
        "counts": {"fields": len(fs.labels), "brackets": len(table.entries)},
    })
    if cfg.timings:
        report["timings"] = {"total_seconds": round(time.perf_counter() - t0, 3)}
    return report, EXIT_OK


# -- verify -------------------------------------------------------------------

def _zero_rows(items, key: str) -> tuple[bool, list]:
    rows = [{key: str(k), "residual": r, "pass": r.is_zero()} for k, r in items]
    return all(r["pass"] for r in rows), rows


def suite_relations(fs: FieldSet, cfg: RunConfig):
    return _zero_rows(back_substitute(fs.pmap).items(), "relation")


def suite_pmap(fs: FieldSet, cfg: RunConfig):
    rows = []
    try:
        degrees = pmap_degree_report(fs.pmap)
        rows.append({"check": "degree<=3", "degrees": {f"l[{s}]": d for s, d in degrees.items()},
                     "pass": True})
    except AssertionError as exc:
        rows.append({"check": "degree<=3", "error": str(exc), "pass": False})
    odds = [fs[s] for s in fs.odd_labels]
    for (lab, s), r in sorted(invariance_check(fs.pmap, odds).items()):
        rows.append({"check": f"{lab}(p*l[{s}])", "residual": r, "pass": r.is_zero()})
    return all(r["pass"] for r in rows), rows


def suite_kdv(fs: FieldSet, cfg: RunConfig):
    g = fs.genus
    rows = []
    table = HierarchyTable(cfg.depth)
    for k in range(1, cfg.depth):
        try:
            res = free_derive(table[k + 1]) - kdv_step(free_derive(table[k]))
            rows.append({"check": f"D(Phi_{2 * k + 2}) - R D(Phi_{2 * k})", "residual": res,
                         "pass": res.is_zero()})
        except NotExact as exc:
            rows.append({"check": f"R D(Phi_{2 * k})", "error": str(exc), "pass": False})
    if g >= 2:
        res = embed_to_x(table[2], g) - fs.pmap.pullback(lam(4, g)) * Fraction(1, 2) - x(1, 3, g)
        rows.append({"check": "embed(Phi_4) - 1/2 p*l[4] - x[1,3]", "residual": res,
                     "pass": res.is_zero()})
    for m in range(3, 2 * g, 2):
        dens = flow_density(m, g, fs.pmap)
        res = fs.pmap.pullback(embed_to_x(dens, g)) - x(1, m, g)
        rows.append({"check": f"embed(X_{m}) - x[1,{m}]", "density": dens, "residual": res,
                     "pass": res.is_zero()})
    return all(r["pass"] for r in rows), rows


def suite_com1(fs: FieldSet, cfg: RunConfig):
    rows = []
    for k, D in sorted(com1_residuals(fs).items()):
        rows.append({"check": f"[L1,L{2 * k}]", "nonzero_images": D.n_terms(),
                     "pass": D.is_zero()})
    for a, b in itertools.combinations(fs.odd_labels, 2):
        D = bracket(fs[a], fs[b])
        rows.append({"check": f"[L{a},L{b}] = 0", "nonzero_images": D.n_terms(),
                     "pass": D.is_zero()})
    return all(r["pass"] for r in rows), rows


def suite_projectability(fs: FieldSet, cfg: RunConfig):
    rows = []
    for s in fs.labels:
        for idx, r in sorted(check_projectable(fs[s], fs.pmap, fs.pushforward(s)).items()):
            rows.append({"check": f"L{s}(p*l[{idx}])", "residual": r, "pass": r.is_zero()})
    return all(r["pass"] for r in rows), rows


def suite_closure(fs: FieldSet, cfg: RunConfig, cache: dict):
    g = fs.genus
    try:
        table = structure_table(fs, parallel=cfg.parallel)
    except NotInModule as exc:
        return False, [{"check": "expressible", "error": str(exc), "pass": False}]
    cache["table"] = table
    rows = []
    expected = 3 * g * (3 * g - 1) // 2
    rows.append({"check": "bracket count", "count": len(table.entries), "expected": expected,
                 "pass": len(table.entries) == expected})
    for (a, b), coeffs in sorted(table.entries.items()):
        ok = all(c.is_zero() or c.weight() == a + b - m for m, c in coeffs.items())
        rows.append({"check": f"[L{a},L{b}]", "coefficients": {_label(m): c for m, c in coeffs.items()},
                     "pass": ok})
    return all(r["pass"] for r in rows), rows


def suite_jacobi(fs: FieldSet, cfg: RunConfig):
    n = JACOBI_SAMPLE if fs.genus >= 3 else None
    rows = []
    for a, b, c in sorted(jacobi_triples(fs, n, cfg.seed)):
        D = jacobi_residual(fs, a, b, c)
        rows.append({"check": f"(L{a},L{b},L{c})", "nonzero_images": D.n_terms(),
                     "pass": D.is_zero()})
    return all(r["pass"] for r in rows), rows


def tangency_rows(cfg: RunConfig) -> tuple[bool, list]:
    g = cfg.genus
    method = cfg.method or ("divisibility" if g <= 2 or cfg.full_discriminant else "sample")
    rows = []
    for L in lambda_fields(g):
        if method == "divisibility":
            try:
                h = divisibility_tangency(L, g, full=cfg.full_discriminant)
                rows.append({"field": f"L{L.index}", "method": method, "quotient": h,
                             "pass": True})
            except ArithmeticError as exc:
                rows.append({"field": f"L{L.index}", "method": method, "error": str(exc),
                             "pass": False})
        else:
            res = sample_singular_tangency(L, g, trials=cfg.trials, seed=cfg.seed)
            rows.append({"field": res["field"], "method": method, "trials": res["trials"],
                         "passed": res["passed"], "resampled": res["resampled"],
                         "points": res["rows"], "pass": res["passed"] == res["trials"]})
    return all(r["pass"] for r in rows), rows


def suite_tangency(fs: FieldSet, cfg: RunConfig):
    return tangency_rows(cfg)


def suite_independence(fs: FieldSet, cfg: RunConfig):
    point, _, r = independence_matrix(fs, cfg.seed)
    n = len(fs.labels)
    return r == n, [{"check": "rank", "rank": r, "expected": n,
                     "point": {str(v): str(c) for v, c in point.items()}, "pass": r == n}]


def suite_numeric(fs: FieldSet, cfg: RunConfig, cache: dict):
    gen_tol = cfg.tol if cfg.tol is not None else 1e-6
    br_tol = cfg.tol if cfg.tol is not None else 1e-5
    gen = ellnum.verify_genus1_generators(fs, fs.pmap, tol=gen_tol, N=cfg.trunc)
    br = ellnum.verify_genus1_brackets(fs, tol=br_tol, N=cfg.trunc)
    rows = gen.rows + br.rows
    return gen.passed and br.passed, rows


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    fs = build_fieldset(cfg.genus, _pmap(cfg))
    if cfg.tamper:
        fs = tamper(fs, int(cfg.tamper.lstrip("Ll")))
    cache: dict = {}
    runners = {
        "relations": suite_relations, "pmap": suite_pmap, "kdv": suite_kdv,
        "com1": suite_com1, "projectability": suite_projectability,
        "closure": lambda f, c: suite_closure(f, c, cache), "jacobi": suite_jacobi,
        "tangency": suite_tangency, "independence": suite_independence,
        "numeric": lambda f, c: suite_numeric(f, c, cache),
    }
    suites, first_fail = {}, None
    for i, name in enumerate(SUITES):
        if name == "numeric" and not (cfg.numeric and cfg.genus == 1):
            continue
        t0 = time.perf_counter()
        passed, rows = runners[name](fs, cfg)
        suites[name] = {"pass": passed, "checks": rows}
        if cfg.timings:
            suites[name]["seconds"] = round(time.perf_counter() - t0, 3)
        if not passed and first_fail is None:
            first_fail = i
    report = _header(cfg)
    report["suites"] = suites
    report["pass"] = first_fail is None
    code = EXIT_OK if first_fail is None else EXIT_SUITE_BASE + first_fail
    return report, code


# -- kdv, pmap, tangency ----------------------------------------------------------

def cmd_kdv(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.index is not None and not 1 <= cfg.index <= cfg.depth:
        raise ValueError(f"k = {cfg.index} must lie in 1..{cfg.depth}")
    table = HierarchyTable(cfg.depth)
    ks = [cfg.index] if cfg.index is not None else list(range(1, cfg.depth + 1))
    out = {}
    for k in ks:
        entry = {"free": table[k]}
        if cfg.embed:
            entry["embedded"] = embed_to_x(table[k], cfg.genus)
        out[f"Phi_{2 * k}"] = entry
    report = _header(cfg)
    report["phi"] = out
    return report, EXIT_OK


def cmd_pmap(cfg: RunConfig) -> tuple[dict, int]:
    pm = _pmap(cfg)
    report = _header(cfg)
    report["pmap"] = pmap_payload(pm)
    residual_ok = all(r.is_zero() for r in back_substitute(pm).values())
    report["relations_vanish"] = residual_ok
    return report, EXIT_OK if residual_ok else EXIT_SUITE_BASE + SUITES.index("relations")


def cmd_tangency(cfg: RunConfig) -> tuple[dict, int]:
    passed, rows = tangency_rows(cfg)
    report = _header(cfg)
    report["tangency"] = rows
    report["pass"] = passed
    return report, EXIT_OK if passed else EXIT_SUITE_BASE + SUITES.index("tangency")


COMMANDS = {"derive": cmd_derive, "verify": cmd_verify, "kdv": cmd_kdv, "pmap": cmd_pmap,
            "tangency": cmd_tangency}


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", type=int, default=1)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                        help="RNG seed (decimal or 0x-prefixed hex)")
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="KdV hierarchy depth K")
    common.add_argument("--trunc", type=int, default=ellnum.DEFAULT_TRUNC,
                        help="series truncation order N (genus-1 numerics)")
    common.add_argument("--tol", type=float, default=None, help="numeric tolerance override")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--parallel", action="store_true")
    common.add_argument("--full-discriminant", action="store_true",
                        help="expand the discriminant symbolically even at genus >= 3")
    common.add_argument("--experimental", action="store_true",
                        help="allow genus > 3; the report is marked unvalidated")
    common.add_argument("--timings", action="store_true",
                        help="include wall-clock timings (breaks byte-stability)")

    p = argparse.ArgumentParser(prog="hyperderiv",
                                description="Polynomial Lie algebras of vector fields "
                                            "for hyperelliptic sigma functions.")
    sub = p.add_subparsers(dest="command", required=True)
    d = sub.add_parser("derive", parents=[common], help="build the fields and structure table")
    d.add_argument("--check-golden", action="store_true",
                   help="compare the JSON output with the stored golden file")
    v = sub.add_parser("verify", parents=[common], help="run every invariant suite")
    v.add_argument("--numeric", action="store_true", help="genus-1 numeric checks")
    v.add_argument("--tamper", default=None, metavar="LABEL",
                   help="perturb one field, e.g. L2 (negative control)")
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--method", choices=("divisibility", "sample"), default=None)
    k = sub.add_parser("kdv", parents=[common], help="print KdV densities Phi_2k")
    k.add_argument("-k", "--index", type=int, default=None)
    k.add_argument("--embed", action="store_true", help="also print the x-space embedding")
    sub.add_parser("pmap", parents=[common], help="eliminate lambda and w from the relations")
    t = sub.add_parser("tangency", parents=[common], help="discriminant tangency of L_2k")
    t.add_argument("--method", choices=("divisibility", "sample"), default=None)
    t.add_argument("--trials", type=int, default=10)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = set(RunConfig.__dataclass_fields__)
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})


def run(cfg: RunConfig) -> tuple[bytes, int]:
    report, code = COMMANDS[cfg.command](cfg)
    data = emit_report(report, cfg.fmt)
    if cfg.check_golden:
        golden = golden_path(f"derive_g{cfg.genus}.json")
        if cfg.fmt != "json" or not golden.exists() or golden.read_bytes() != data:
            print(f"golden mismatch: {golden}", file=sys.stderr)
            code = code or EXIT_ERROR
    return data, code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = config_from_args(ns)
    if cfg.genus < 1:
        parser.error("genus must be positive")
    if cfg.genus > MAX_VALIDATED_GENUS and not cfg.experimental:
        parser.error(f"genus > {MAX_VALIDATED_GENUS} needs --experimental")
    if cfg.method == "divisibility" and cfg.genus >= 3 and not cfg.full_discriminant:
        parser.error("divisibility at genus >= 3 needs --full-discriminant")
    try:
        data, code = run(cfg)
    except (ConstructionError, NotInModule, EliminationStalled, NotExact, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if cfg.out:
        Path(cfg.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
