"""Command-line front end.

Every command writes one report ``{command, params, results, violations,
elapsed_ms}`` (JSON, or CSV rows of ``results``) to ``--output`` or stdout.
Exit status: 0 when every check passes, 1 on a verification failure, 2 on a
configuration error.  Apart from ``elapsed_ms`` the report is a pure function
of the arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from pathlib import Path
from typing import Callable, Optional

from .canon import are_isomorphic, canonical_form
from .enumerator import generate_all_bicyclic, partition_by_parity, verify_extremal
from .errors import BicoeffError, StuckNoApplicableTransform
from .families import (
    CLOSED_FORM_MIN_N,
    DIFFERENCE_PAIRS,
    FAMILIES,
    build_family,
    closed_form_poly,
    difference_identity,
    extremal_graph,
    hub_spec,
)
from .graph import Graph, ParityClass, classify_bicyclic, format_edgelist, is_connected, read_edgelist
from .oracle import both_coeffs_oracle
from .poly import Relation, identity_check_join, identity_check_pendants, laplacian_coeffs, signless_charpoly, signless_coeffs
from .spectral import IE_MARGIN, cubic_root_bounds_detail, ie_compare, ie_threshold_scan
from .transforms import final_graph, reduce_to_extremal, seeded_applications

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def _vec(v) -> list[str]:
    return [str(x) for x in v]


# ---------------------------------------------------------------------------
# commands: each returns (results, violations)

def cmd_coeffs(args) -> tuple[list, list]:
    try:
        g = read_edgelist(args.input)
    except OSError as exc:
        raise ConfigError(f"cannot read {args.input}: {exc}") from exc
    results, violations = [], []
    row: dict = {"n": g.n, "m": g.m}
    if args.method in ("charpoly", "both"):
        row["signless_charpoly"] = _vec(signless_coeffs(g))
        row["laplacian_charpoly"] = _vec(laplacian_coeffs(g))
    if args.method in ("oracle", "both"):
        q, lap = both_coeffs_oracle(g)
        row["signless_oracle"] = _vec(q)
        row["laplacian_oracle"] = _vec(lap)
    if args.method == "both":
        for kind in ("signless", "laplacian"):
            if row[f"{kind}_charpoly"] != row[f"{kind}_oracle"]:
                violations.append({"kind": kind, "reason": "oracle and characteristic polynomial disagree"})
    results.append(row)
    return results, violations


def _classes(arg: Optional[str]) -> list[ParityClass]:
    return [ParityClass(arg)] if arg else [ParityClass.ODD, ParityClass.EVEN]


def cmd_enumerate(args) -> tuple[list, list]:
    _need_n(args)
    gs = generate_all_bicyclic(args.n, allow_large=args.allow_large, seed=args.seed)
    odd, even = partition_by_parity(gs)
    keep = {ParityClass.ODD: odd, ParityClass.EVEN: even}
    results = []
    for cls in _classes(args.cls):
        for g in keep[cls]:
            info = classify_bicyclic(g)
            results.append({
                "code": canonical_form(g).hex(),
                "class": cls.value,
                "base": repr(info.kind),
                "g1": info.g1,
                "g2": info.g2,
                "edges": format_edgelist(g).strip().replace("\n", "; "),
            })
    return results, []


def cmd_verify_extremal(args) -> tuple[list, list]:
    _need_n(args)
    results, violations = [], []
    for cls in _classes(args.cls):
        if cls is ParityClass.EVEN and args.n < 5:
            continue
        rep = verify_extremal(args.n, cls, allow_large=args.allow_large)
        body = rep.to_json()
        body.pop("elapsed_ms")
        body["minimizer_name"] = ("B_n^1" if cls is ParityClass.ODD else "B_n^2") if rep.unique_minimizer else None
        results.append(body)
        violations.extend({"class": cls.value, **v} for v in rep.violations)
        if not rep.unique_minimizer:
            violations.append({"class": cls.value, "reason": "minimiser is not unique", "minima": rep.minimizer_codes})
    return results, violations


def cmd_verify_closed_forms(args) -> tuple[list, list]:
    results, violations = [], []
    for fam in FAMILIES:
        for n in range(CLOSED_FORM_MIN_N[fam], args.max_n + 1):
            ok = closed_form_poly(fam, n) == signless_charpoly(build_family(hub_spec(fam, n)))
            results.append({"family": fam, "n": n, "equal": ok})
            if not ok:
                violations.append({"family": fam, "n": n})
    return results, violations


def _random_connected(rng: random.Random, n: int) -> Graph:
    while True:
        es = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.45]
        g = Graph(n, tuple(es))
        if is_connected(g):
            return g


def cmd_verify_identities(args) -> tuple[list, list]:
    results, violations = [], []
    for eq, (a, b) in DIFFERENCE_PAIRS.items():
        lo = max(CLOSED_FORM_MIN_N[a], CLOSED_FORM_MIN_N[b])
        for n in range(lo, args.max_n + 1):
            ok = difference_identity(eq, n).holds
            results.append({"identity": f"difference-{eq}", "n": n, "holds": ok})
            if not ok:
                violations.append({"identity": f"difference-{eq}", "n": n})
    rng = random.Random(args.seed)
    for i in range(args.samples):
        n1, n2 = rng.randint(1, 4), rng.randint(1, 4)
        g1, g2 = _random_connected(rng, n1), _random_connected(rng, n2)
        u, v = rng.randrange(n1), rng.randrange(n2)
        ok = identity_check_join(g1, u, g2, v)
        results.append({"identity": "join", "sample": i, "holds": ok})
        h = _random_connected(rng, rng.randint(2, 5))
        w, k = rng.randrange(h.n), rng.randint(1, 3)
        ok2 = identity_check_pendants(h, w, k)
        results.append({"identity": "pendants", "sample": i, "holds": ok2})
        if not ok:
            violations.append({"identity": "join", "sample": i})
        if not ok2:
            violations.append({"identity": "pendants", "sample": i})
    return results, violations


def _transform_row(n: int, code: str, source: str, step: int, rec) -> tuple[dict, list]:
    ie = ie_compare(rec.input, rec.output)
    row = {
        "n": n,
        "code": code,
        "source": source,
        "step": step,
        "transform": rec.name.value,
        "relation": rec.dominance.relation.value,
        "equal_indices": sorted(rec.dominance.equal_indices),
        "ie_input": round(ie.ie_first, 10),
        "ie_output": round(ie.ie_second, 10),
        "ie_conforms": ie.conforms,
    }
    bad = []
    where = {"n": n, "code": code, "source": source, "step": step}
    if rec.dominance.relation is not Relation.DOMINATES:
        bad.append({**where, "reason": "coefficients did not decrease"})
    if not ie.conforms:
        bad.append({**where, "reason": "incidence energy increased"})
    return row, bad


def cmd_verify_transforms(args) -> tuple[list, list]:
    ns = [args.n] if args.n is not None else list(range(4, args.max_n + 1))
    results, violations = [], []
    pool = []
    for n in ns:
        gs = generate_all_bicyclic(n, allow_large=args.allow_large)
        pool.extend(gs)
        for g in gs:
            code = canonical_form(g).hex()
            cls = classify_bicyclic(g).parity_class
            try:
                records = reduce_to_extremal(g)
            except StuckNoApplicableTransform as exc:
                violations.append({"n": n, "code": code, "source": "reduction", "reason": str(exc)})
                continue
            if not are_isomorphic(final_graph(g, records), extremal_graph(n, cls)):
                violations.append({"n": n, "code": code, "source": "reduction", "reason": "did not reach the minimiser"})
            for step, rec in enumerate(records):
                row, bad = _transform_row(n, code, "reduction", step, rec)
                results.append(row)
                violations.extend(bad)
    for i, rec in enumerate(seeded_applications(pool, args.samples, args.seed)):
        row, bad = _transform_row(rec.input.n, canonical_form(rec.input).hex(), "sample", i, rec)
        results.append(row)
        violations.extend(bad)
    return results, violations


def cmd_ie_scan(args) -> tuple[list, list]:
    lo, hi = args.n_from, args.n_to
    rep = ie_threshold_scan(lo, hi)
    results = [
        {"n": r.n, "IE1": round(r.ie1, 12), "IE2": round(r.ie2, 12), "diff": round(r.diff, 12), "winner": r.winner}
        for r in rep.rows
    ]
    violations = []
    if not rep.paths_agree:
        violations.append({"reason": "closed form and spectrum disagree", "max_gap": rep.max_path_gap})
    for r in rep.rows:
        expected = "B2" if r.n <= 30 else "B1"
        if r.winner != expected:
            violations.append({"n": r.n, "reason": f"expected {expected} to have the smaller energy"})
    return results, violations


def cmd_ie_bounds(args) -> tuple[list, list]:
    results, violations = [], []
    for n in range(args.n_from, args.n_to + 1):
        for b in cubic_root_bounds_detail(n):
            results.append({"n": n, "bound": b.name, "value": round(b.value, 12), "lo": b.lo, "hi": b.hi, "ok": b.ok})
            if not b.ok:
                violations.append({"n": n, "bound": b.name, "value": b.value, "lo": b.lo, "hi": b.hi})
    return results, violations


def _need_n(args) -> None:
    if args.n is None:
        raise ConfigError("--n is required")


# ---------------------------------------------------------------------------
# argument parsing and report writing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", type=Path, default=None, help="report path (default: stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--class", dest="cls", choices=("odd", "even"), default=None)
    common.add_argument("--allow-large", action="store_true", help="permit n=9 enumeration")

    p = argparse.ArgumentParser(prog="bicoeff", description="Signless Laplacian coefficient verification tools")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", parents=[common], help="coefficient vectors of one graph")
    c.add_argument("--input", type=Path, required=True)
    c.add_argument("--method", choices=("oracle", "charpoly", "both"), default="both")
    c.set_defaults(func=cmd_coeffs, name="coeffs")

    e = sub.add_parser("enumerate", parents=[common], help="list connected bicyclic graphs")
    e.set_defaults(func=cmd_enumerate, name="enumerate")

    v = sub.add_parser("verify", help="verification suites")
    vs = v.add_subparsers(dest="suite", required=True)
    ve = vs.add_parser("extremal", parents=[common])
    ve.set_defaults(func=cmd_verify_extremal, name="verify extremal")
    vc = vs.add_parser("closed-forms", parents=[common])
    vc.add_argument("--max-n", type=int, default=16)
    vc.set_defaults(func=cmd_verify_closed_forms, name="verify closed-forms")
    vi = vs.add_parser("identities", parents=[common])
    vi.add_argument("--max-n", type=int, default=16)
    vi.add_argument("--samples", type=int, default=200)
    vi.set_defaults(func=cmd_verify_identities, name="verify identities")
    vt = vs.add_parser("transforms", parents=[common])
    vt.add_argument("--max-n", type=int, default=8)
    vt.add_argument("--samples", type=int, default=500)
    vt.set_defaults(func=cmd_verify_transforms, name="verify transforms", ie_margin=IE_MARGIN)

    ie = sub.add_parser("ie", help="incidence energy")
    ies = ie.add_subparsers(dest="suite", required=True)
    sc = ies.add_parser("scan", parents=[common])
    sc.add_argument("--from", dest="n_from", type=int, default=5)
    sc.add_argument("--to", dest="n_to", type=int, default=60)
    sc.set_defaults(func=cmd_ie_scan, name="ie scan", path_tolerance=1e-6)
    bd = ies.add_parser("bounds", parents=[common])
    bd.add_argument("--from", dest="n_from", type=int, default=31)
    bd.add_argument("--to", dest="n_to", type=int, default=200)
    bd.set_defaults(func=cmd_ie_bounds, name="ie bounds")
    return p


def _params(args) -> dict:
    skip = {"func", "name", "command", "suite", "format", "output"}
    out = {}
    for k, val in sorted(vars(args).items()):
        if k in skip:
            continue
        out[k] = str(val) if isinstance(val, Path) else val
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    rows = report["results"]
    keys: list[str] = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in r.items()})
    return buf.getvalue()


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func: Callable = args.func
    t0 = time.perf_counter()
    report = {"command": args.name, "params": _params(args), "results": [], "violations": [], "elapsed_ms": 0.0}
    status = EXIT_OK
    try:
        results, violations = func(args)
        report["results"], report["violations"] = results, violations
        status = EXIT_FAIL if violations else EXIT_OK
    except (ConfigError, BicoeffError, ValueError) as exc:
        report["violations"] = [{"reason": "configuration error", "detail": str(exc)}]
        print(f"bicoeff: error: {exc}", file=sys.stderr)
        status = EXIT_CONFIG
    report["elapsed_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
    _emit(render(report, args.format), args.output)
    return status


if __name__ == "__main__":
    sys.exit(main())
