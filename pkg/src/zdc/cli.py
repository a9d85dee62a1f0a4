"""Command-line front end: ``zdc constants|table|verify|optimize|compare``.

Exit codes: 0 success, 1 tolerance failure, 2 domain or precondition error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from contextlib import contextmanager

from . import compare as cmp
from .arith import D3Mode
from .detector import JMode
from .foundations import LOG_RIEMANN_HEIGHT, DomainError
from .optimizer import Objective, SearchConfig, objective_value, optimize_row
from .params import ParamVector, RangeSpec
from .pipeline import assemble_row, default_schedule, display_B, display_C
from .published import parse_height
from .tables import TABLES, reproduce_schedule
from . import verify as ver

EXIT_OK, EXIT_TOLERANCE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3

TABLE_TITLES = {
    "CB": "Values of constants C, B",
    "b": "Values of constants b1, b2",
    "params": "Choice of parameters u, x, v, w",
    "d": "Values of constants d1, ..., d5",
    "c": "Values of constants c1, ..., c5",
}

# Options that may come from the json config file; flags win over the file.
DEFAULTS = {
    "format": "markdown", "out": None, "d3_mode": None, "j_mode": "certified",
    "strict_residue": False, "alpha0_check": 0.985, "seed": 0, "iters": 1000,
    "objective": Objective.MIN_BOUND_AT_ALPHA0_T1.value, "kln_file": None, "weight_cases": 8,
}


# --- formatting --------------------------------------------------------------

def format_height(log_t: float) -> str:
    if math.isclose(log_t, LOG_RIEMANN_HEIGHT, rel_tol=1e-15):
        return "3e12"
    return f"exp({log_t:.10g})"


def display_value(key: str, value) -> str:
    """Table rounding used in csv and markdown output."""
    if isinstance(value, str) or value is None:
        return "" if value is None else value
    if isinstance(value, bool):
        return str(value).lower()
    if key in ("t0_log", "t1_log"):
        return format_height(value)
    if key in ("C", "C1_part", "C2_part"):
        return display_C(value)
    if key == "B":
        return display_B(value)
    if key in ("u", "v", "w", "x"):
        return f"{value:.7f}"
    if key == "alpha0":
        return f"{value:.4f}"
    if key.endswith("_diff"):
        return f"{value:+.3e}"
    if isinstance(value, int):
        return str(value)
    if abs(value) >= 1e7 or (value != 0 and abs(value) < 1e-3):
        return f"{value:.4g}"
    return f"{value:.3f}"


def json_text(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {json_text(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(json_text(v) for v in obj) + "]"
    if isinstance(obj, float):
        if math.isnan(obj):
            return "NaN"
        if math.isinf(obj):
            return "Infinity" if obj > 0 else "-Infinity"
        text = f"{obj:.17g}"
        return text if any(ch in text for ch in ".en") else text + ".0"
    return json.dumps(obj)


def render(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json_text(records) + "\n"
    if not records:
        return ""
    headers = list(records[0])
    rows = [[display_value(h, r.get(h)) for h in headers] for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


@contextmanager
def output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


# --- commands ---------------------------------------------------------------

def _modes(args) -> dict:
    return {
        "d3_mode": D3Mode(args.d3_mode) if args.d3_mode else None,
        "j_mode": JMode(args.j_mode),
    }


def _row_inputs(args) -> tuple[RangeSpec, ParamVector]:
    if args.row is not None:
        schedule = default_schedule()
        if not 0 <= args.row < len(schedule):
            raise DomainError(f"--row must lie in 0..{len(schedule) - 1}")
        r = schedule[args.row]
        return r.spec, r.params
    explicit = (args.t0, args.t1, args.alpha0, args.u, args.v, args.w, args.x)
    if any(v is None for v in explicit):
        raise DomainError("give --row N or all of --t0 --t1 --alpha0 --u --v --w --x")
    spec = RangeSpec(parse_height(args.t0), parse_height(args.t1), float(args.alpha0))
    return spec, ParamVector(float(args.u), float(args.v), float(args.w), float(args.x))


def cmd_constants(args) -> int:
    spec, p = _row_inputs(args)
    res = assemble_row(spec, p, strict_residue=args.strict_residue, **_modes(args))
    with output(args.out) as fh:
        fh.write(render([res.record()], args.format))
    return EXIT_OK


def _table_records(rows, which: str) -> tuple[list[dict], bool]:
    records, ok = [], True
    for r in rows:
        rec = {"row": r.index, "t0_log": r.row.spec.log_t0, "t1_log": r.row.spec.log_t1,
               "alpha0": r.row.spec.alpha0}
        for cell in r.cells(TABLES[which]):
            rec[cell.column] = cell.value
            rec[f"{cell.column}_pub"] = cell.published
            rec[f"{cell.column}_diff"] = cell.diff
            ok &= cell.ok is not False
        records.append(rec)
    return records, ok


def cmd_table(args) -> int:
    rows = reproduce_schedule(**_modes(args))
    names = list(TABLES) if args.which == "all" else [args.which]
    ok = True
    chunks = {}
    for name in names:
        records, good = _table_records(rows, name)
        ok &= good
        chunks[name] = records
    with output(args.out) as fh:
        if args.format == "json":
            fh.write(json_text(chunks if args.which == "all" else chunks[args.which]) + "\n")
        else:
            for i, name in enumerate(names):
                if i:
                    fh.write("\n")
                if args.format == "markdown" and len(names) > 1:
                    fh.write(f"### {TABLE_TITLES[name]}\n\n")
                fh.write(render(chunks[name], args.format))
    if not ok:
        print("tolerance exceeded in at least one column", file=sys.stderr)
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_verify(args) -> int:
    checks = ver.run_all(args.only, args.alpha0_check, args.weight_cases, args.seed)
    records = [{"item": c.name, "value": c.value, "cap": c.cap,
                "status": "PASS" if c.passed else "FAIL"} for c in checks]
    with output(args.out) as fh:
        fh.write(render(records, args.format))
    return EXIT_OK if ver.all_passed(checks) else EXIT_TOLERANCE


def cmd_optimize(args) -> int:
    schedule = default_schedule()
    if not 0 <= args.row < len(schedule):
        raise DomainError(f"--row must lie in 0..{len(schedule) - 1}")
    r = schedule[args.row]
    objective = Objective(args.objective)
    cfg = SearchConfig(seed=args.seed, iterations=args.iters,
                       initial=None if args.random_start else r.params,
                       objective=objective, **_modes(args))
    p, est = optimize_row(r.spec, cfg)
    rec = {"row": args.row, "seed": args.seed, "iters": args.iters, "objective": objective.value,
           "u": p.u, "v": p.v, "w": p.w, "x": p.x, "C": est.C, "B": est.B,
           "objective_value": objective_value(est, r.spec, objective)}
    with output(args.out) as fh:
        fh.write(render([rec], args.format))
    return EXIT_OK


def cmd_compare(args) -> int:
    kln = cmp.load_kln(args.kln_file)
    rows = reproduce_schedule(**_modes(args), rows=default_schedule()[:-1])
    dominance = []
    ok = True
    for r in rows:
        rep = cmp.check_dominance(r.row.spec, r.result.estimate, kln)
        ok &= rep.passed
        dominance.append({"row": r.index, "t0_log": r.row.spec.log_t0, "t1_log": r.row.spec.log_t1,
                          "alpha0": r.row.spec.alpha0, "regime": rep.regime,
                          "margin": rep.worst_margin, "status": "PASS" if rep.passed else "FAIL"})
    specs = [r.row.spec for r in rows]
    points = []
    for sigma, log_t, printed in cmp.TABLE1_POINTS:
        i = cmp.row_index_for(specs, sigma, log_t)
        imp = cmp.improvement_percent(sigma, log_t, rows[i].result.estimate, kln)
        good = abs(imp - printed) <= 1.0
        ok &= good
        points.append({"sigma": sigma, "t1_log": log_t, "row": i, "improvement": imp,
                       "printed": printed, "status": "PASS" if good else "FAIL"})
    with output(args.out) as fh:
        if args.format == "json":
            fh.write(json_text({"dominance": dominance, "improvement": points}) + "\n")
        else:
            fh.write(render(dominance, args.format) + "\n" + render(points, args.format))
    return EXIT_OK if ok else EXIT_TOLERANCE


# --- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "markdown", "json"), default=None)
    common.add_argument("--out", default=None, help="write to this file instead of stdout")
    common.add_argument("--config", default=None, help="json file with option defaults")
    common.add_argument("--d3-mode", choices=[m.value for m in D3Mode], default=None)
    common.add_argument("--j-mode", choices=[m.value for m in JMode], default=None)

    parser = argparse.ArgumentParser(prog="zdc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="all constants for one row")
    p.add_argument("--row", type=int, default=None)
    for name in ("t0", "t1"):
        p.add_argument(f"--{name}", default=None, help="height: 3e12 or exp(N)")
    for name in ("alpha0", "u", "v", "w", "x"):
        p.add_argument(f"--{name}", default=None)
    p.add_argument("--strict-residue", action="store_true", default=None)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("table", parents=[common], help="reproduce the appendix tables")
    p.add_argument("--which", choices=(*TABLES, "all"), default="all")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="integral caps and lemma oracles")
    p.add_argument("--only", choices=("weights", "integrals"), default=None)
    p.add_argument("--alpha0", dest="alpha0_check", type=float, default=None)
    p.add_argument("--weight-cases", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("optimize", parents=[common], help="annealing search for one row")
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--objective", choices=[o.value for o in Objective], default=None)
    p.add_argument("--random-start", action="store_true")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("compare", parents=[common], help="dominance over the earlier bound")
    p.add_argument("--kln-file", default=None, help=f"CSV sigma,C1,C2 (or ${cmp.KLN_ENV})")
    p.set_defaults(func=cmd_compare)
    return parser


def _apply_config(args) -> None:
    config = {}
    if args.config:
        with open(args.config) as fh:
            config = json.load(fh)
        if not isinstance(config, dict):
            raise DomainError("config file must hold a json object")
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, config.get(key, default))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:  # DomainError, bad numbers, malformed json
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
