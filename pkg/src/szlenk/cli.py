"""Command-line front end.

    python -m szlenk norm --quartic A=1,B=1 --vec "[[1,1]]"
    python -m szlenk radius --triple power:2 --c1 1 --c2 1 --eps-grid 0.5:1.5:3
    python -m szlenk index --lp p=2 --eps 1

Exit codes: 0 when every verdict passes, 1 on a failed verdict, 2 on usage or
domain errors.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .bounds import (
    EquivalenceConstants,
    ModulusTriple,
    lower_radius,
    radius_profile,
    upper_radius,
)
from .equations import (
    PASS_TOL,
    ResidualReport,
    associativity_residual,
    homogeneity_residual,
    normalization_residual,
    power_law_fit,
    star_suite,
)
from .errors import BudgetExceededError, DomainError, InvariantError
from .iteration import (
    DEFAULT_MAX_N,
    exact_radius_function,
    iterate_radii,
    lp_radius_function,
    lp_szlenk_index,
)
from .orlicz import (
    OrliczFunction,
    SparseVector,
    luxemburg_norm,
    lp_norm,
    mab_constants,
    quartic_norm_closed_form,
    validate_orlicz,
)
from .witness import (
    SpaceModel,
    inequality_probe,
    sample_thm1_probe,
    thm1_tail_bound_check,
    thm2_horizon,
    thm2_witness_check,
)

NUM_FMT = ".12g"


class UsageError(Exception):
    pass


class Report:
    """Tabular rows plus a JSON document; ``ok`` drives the exit code."""

    def __init__(self, headers, rows, doc, ok=True):
        self.headers = headers
        self.rows = rows
        self.doc = doc
        self.ok = ok


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, NUM_FMT)
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report.doc, indent=2) + "\n"
    cells = [[_cell(v) for v in row] for row in report.rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.headers)
        w.writerows(cells)
        return buf.getvalue()
    widths = [len(h) for h in report.headers]
    for row in cells:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(report.headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


# ---- argument parsing helpers -------------------------------------------------


def _load_json(text, what):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}")


def _kv(text, what):
    out = {}
    for part in text.split(","):
        key, sep, val = part.partition("=")
        if not sep:
            raise UsageError(f"{what}: expected key=value pairs, got {text!r}")
        try:
            out[key.strip()] = float(val)
        except ValueError:
            raise UsageError(f"{what}: {val!r} is not a number") from None
    return out


def _scalar(text, key, what):
    if "=" in text:
        kv = _kv(text, what)
        if key not in kv:
            raise UsageError(f"{what}: expected {key}=<number>, got {text!r}")
        return kv[key]
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"{what}: {text!r} is not a number") from None


def _floats(text, what):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated numbers, got {text!r}") from None


def _grid(text, what):
    """``start:stop:count`` (inclusive linspace) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"{what}: expected start:stop:count, got {text!r}")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"{what}: bad grid {text!r}") from None
        if count < 1:
            raise UsageError(f"{what}: count must be >= 1")
        return [float(v) for v in np.linspace(start, stop, count)]
    return _floats(text, what)


def _function(args):
    given = [n for n in ("quartic", "power", "terms", "function") if getattr(args, n, None)]
    if len(given) != 1:
        raise UsageError("give exactly one of --quartic A=..,B=.., --power q=.., --terms JSON, --function JSON")
    kind = given[0]
    if kind == "quartic":
        kv = _kv(args.quartic, "--quartic")
        if set(kv) != {"A", "B"}:
            raise UsageError("--quartic needs A=..,B=..")
        return OrliczFunction.quartic(kv["A"], kv["B"]), ("quartic", kv["A"], kv["B"])
    if kind == "power":
        q = _scalar(args.power, "q", "--power")
        return OrliczFunction.power(q), ("power", q)
    if kind == "terms":
        return OrliczFunction.from_json({"terms": _load_json(args.terms, "--terms")}), None
    spec = _load_json(args.function, "--function")
    fn = OrliczFunction.from_json(spec)
    if isinstance(spec, dict) and "quartic" in spec:
        return fn, ("quartic", float(spec["quartic"]["A"]), float(spec["quartic"]["B"]))
    if isinstance(spec, dict) and "power" in spec:
        return fn, ("power", float(spec["power"]))
    return fn, None


def _vector(text, what="--vec"):
    return SparseVector.from_json(_load_json(text, what))


def _triple(text):
    if text.startswith("power:"):
        return ModulusTriple.from_json(text)
    return ModulusTriple.from_json(_load_json(text, "--triple"))


def _radius_fn(args):
    if args.lp and args.triple:
        raise UsageError("give only one of --lp and --triple")
    if args.lp:
        p = _scalar(args.lp, "p", "--lp")
        return lp_radius_function(p), p
    if args.triple:
        return exact_radius_function(_triple(args.triple)), None
    raise UsageError("give --lp p=.. or --triple")


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


# ---- subcommands ---------------------------------------------------------------


def run_norm(args):
    _need(args, "vec")
    M, closed = _function(args)
    x = _vector(args.vec)
    value = luxemburg_norm(M, x)
    rows = [["norm", value]]
    doc = {"norm": value}
    ok = True
    ref = None
    if closed and closed[0] == "quartic":
        ref = quartic_norm_closed_form(closed[1], closed[2], x)
    elif closed and closed[0] == "power":
        ref = lp_norm(closed[1], x)
    if ref is not None:
        delta = abs(value - ref)
        ok = delta <= 1e-9 * max(1.0, value)
        rows += [["closed_form", ref], ["abs_diff", delta]]
        doc.update(closed_form=ref, abs_diff=delta)
    return Report(["quantity", "value"], rows, doc, ok)


def run_radius(args):
    _need(args, "triple")
    triple = _triple(args.triple)
    consts = EquivalenceConstants(args.c1, args.c2)
    if args.eps_grid is None and args.eps is None:
        raise UsageError("give --eps-grid start:stop:count or --eps")
    grid = _grid(args.eps_grid, "--eps-grid") if args.eps_grid else _floats(args.eps, "--eps")
    prof = radius_profile(triple, consts, grid)
    rows = [[e, lo, up, lo is not None] for e, lo, up in prof.rows()]
    return Report(["eps", "lower", "upper", "valid_lower"], rows, prof.to_json())


def run_iterate(args):
    _need(args, "eps")
    r, _ = _radius_fn(args)
    trace = iterate_radii(r, _scalar(args.eps, "eps", "--eps"), args.max_n)
    rows = [[n, rn] for n, rn in enumerate(trace.radii, start=1)]
    doc = dict(trace.summary(), radii=list(trace.radii))
    return Report(["n", "r_n"], rows, doc, trace.terminated)


def run_index(args):
    _need(args, "eps")
    r, p = _radius_fn(args)
    eps = _scalar(args.eps, "eps", "--eps")
    trace = iterate_radii(r, eps, args.max_n)
    if not trace.terminated:
        raise BudgetExceededError(f"no termination within {args.max_n} steps")
    doc = {"eps": eps, "szlenk_index": trace.szlenk_index}
    headers, row, ok = ["eps", "szlenk_index"], [eps, trace.szlenk_index], True
    if p is not None:
        closed = lp_szlenk_index(p, eps)
        doc["closed_form"] = closed
        headers.append("closed_form")
        row.append(closed)
        ok = closed == trace.szlenk_index
    return Report(headers, [row], doc, ok)


PROBES = ("homogeneity", "normalization", "star", "associativity", "power-law")


def run_check_eq(args):
    M, _ = _function(args)
    probes = PROBES if args.probe == "all" else (args.probe,)
    rng = np.random.default_rng(args.seed)
    n = args.samples
    tol = args.tol
    reports = {}
    for probe in probes:
        if probe == "homogeneity":
            pts = [(1.0, 1.0)] + [tuple(p) for p in rng.uniform(0.0, 3.0, (n - 1, 2)).tolist()]
            reports[probe] = homogeneity_residual(M, pts, args.k, tol)
        elif probe == "normalization":
            pts = [(1.0, 1.0)] + [tuple(p) for p in rng.uniform(0.01, 3.0, (n - 1, 2)).tolist()]
            reports[probe] = normalization_residual(M, pts, tol)
        elif probe == "star":
            reports[probe] = star_suite(M, rng, n, tol)
        elif probe == "associativity":
            pts = [tuple(p) for p in rng.uniform(0.0, 3.0, (n, 3)).tolist()]
            reports[probe] = associativity_residual(M, pts, tol)
        else:
            q, dev = power_law_fit(M, np.geomspace(0.01, 100.0, 41))
            reports[probe] = ResidualReport(dev, (q,), 41, tol)
    rows = [[k, r.max_residual, r.argmax_point, r.samples, r.tolerance, r.verdict]
            for k, r in reports.items()]
    doc = {k: r.to_json() for k, r in reports.items()}
    return Report(["probe", "residual", "argmax", "samples", "tolerance", "verdict"], rows, doc,
                  all(r.passed for r in reports.values()))


def _model(args):
    given = [n for n in ("model", "lq", "model_quartic") if getattr(args, n)]
    if len(given) != 1:
        raise UsageError("give exactly one of --model JSON, --lq q, --model-quartic A=..,B=..")
    if args.model:
        spec = _load_json(args.model, "--model")
        if args.dim is not None:
            spec = dict(spec, dim=args.dim)
        return SpaceModel.from_json(spec)
    dim = args.dim or 64
    if args.lq:
        return SpaceModel.lq(_scalar(args.lq, "q", "--lq"), dim)
    kv = _kv(args.model_quartic, "--model-quartic")
    return SpaceModel.quartic(kv["A"], kv["B"], dim)


def run_witness(args):
    model = _model(args)
    rng = np.random.default_rng(args.seed)
    if args.check == "thm2":
        _need(args, "eps", "eps1", "eps2")
        x0 = _vector(args.x0, "--x0") if args.x0 else SparseVector()
        eps = float(args.eps)
        if args.n is not None:
            res = thm2_witness_check(model, x0, eps, args.eps1, args.eps2, args.n)
            p = res.pair
            rows = [[p.n, p.separation, p.max_norm, res.separated, res.bounded]]
            return Report(["n", "separation", "max_norm", "separated", "bounded"], rows,
                          res.to_json(), res.passed)
        n0 = thm2_horizon(model, x0, eps, args.eps1, args.eps2)
        return Report(["n0", "basis_dim"], [[n0, model.basis_dim]],
                      {"n0": n0, "basis_dim": model.basis_dim}, n0 is not None)
    if args.check == "thm1":
        if args.x:
            _need(args, "x0", "N", "delta")
            res = thm1_tail_bound_check(model, _vector(args.x, "--x"), _vector(args.x0, "--x0"),
                                        args.N, args.delta, args.eps1)
            return Report(["tail_norm", "bound", "passed"],
                          [[res.tail_norm, res.bound, res.passed]], res.to_json(), res.passed)
        failures, worst = 0, -math.inf
        for _ in range(args.samples):
            x, x0, N, delta, eps1 = sample_thm1_probe(model, rng)
            res = thm1_tail_bound_check(model, x, x0, N, delta, eps1)
            failures += not res.passed
            worst = max(worst, res.tail_norm - res.bound)
        doc = {"samples": args.samples, "failures": failures, "worst_margin": worst}
        return Report(["samples", "failures", "worst_margin"], [[args.samples, failures, worst]],
                      doc, failures == 0)
    lo, hi = (1, model.basis_dim)
    if args.n_range:
        try:
            lo, hi = (int(v) for v in args.n_range.split(":"))
        except ValueError:
            raise UsageError(f"--n-range: expected lo:hi, got {args.n_range!r}") from None
    directions = ("forward", "reverse") if args.direction == "both" else (args.direction,)
    reports = [inequality_probe(model, d, args.samples, (lo, hi), rng) for d in directions]
    rows = [[r.direction, r.worst_slack, r.horizon, r.violations, r.verdict] for r in reports]
    return Report(["direction", "worst_slack", "horizon", "violations", "verdict"], rows,
                  {r.direction: r.to_json() for r in reports}, all(r.passed for r in reports))


def run_sweep(args):
    A_values = _floats(args.A, "--A")
    eps_values = _floats(args.eps or "0.5,1.0", "--eps")
    triple = ModulusTriple.power(2.0)
    rows, doc = [], []
    for eps in eps_values:
        limit = math.sqrt(1.0 - eps * eps / 4.0)
        for A in A_values:
            c1, c2 = mab_constants(A, args.B)
            consts = EquivalenceConstants(c1, c2)
            upper = upper_radius(triple, consts, eps)
            try:
                lower = lower_radius(triple, consts, eps)
                status = "ok"
            except DomainError:
                lower, status = None, "out_of_domain"
            gap = None if lower is None else upper - lower
            rows.append([A, eps, lower, upper, limit, gap, status])
            doc.append({"A": A, "eps": eps, "lower": lower, "upper": upper, "limit": limit,
                        "gap": gap, "status": status})
    return Report(["A", "eps", "lower", "upper", "limit", "gap", "status"], rows, doc)


def run_validate(args):
    M, _ = _function(args)
    grid = _grid(args.grid, "--grid") if args.grid else list(np.linspace(0.0, 10.0, 100))
    rep = validate_orlicz(M, grid, args.growth_threshold)
    rows = [[k, "pass" if v else "fail"] for k, v in rep.checks.items()]
    return Report(["property", "verdict"], rows, rep.to_json(), rep.passed)


COMMANDS = {
    "norm": run_norm,
    "radius": run_radius,
    "iterate": run_iterate,
    "index": run_index,
    "check-eq": run_check_eq,
    "witness": run_witness,
    "sweep": run_sweep,
    "validate": run_validate,
}


def _add_common(p):
    p.add_argument("--format", choices=("csv", "json", "table"), default="table")
    p.add_argument("--out", help="write output here instead of standard output")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized probes (PCG64)")
    p.add_argument("--config", help="JSON file of flag values; overrides command-line flags")


def _add_function(p):
    p.add_argument("--quartic", help="A=..,B=.. for A t^4 + B t^2")
    p.add_argument("--power", help="q=.. for t^q")
    p.add_argument("--terms", help="JSON [[a, p], ...]")
    p.add_argument("--function", help="JSON function spec, or @file")


def build_parser():
    parser = argparse.ArgumentParser(prog="szlenk", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="Luxemburg norm of a finite-support vector")
    _add_function(p)
    p.add_argument("--vec", help='JSON [[index, value], ...] or @file')
    _add_common(p)

    p = sub.add_parser("radius", help="upper/lower derivation radius bounds over an eps grid")
    p.add_argument("--triple", help="power:q, or JSON list of three function specs")
    p.add_argument("--c1", type=float, default=1.0)
    p.add_argument("--c2", type=float, default=1.0)
    p.add_argument("--eps-grid", help="start:stop:count or comma list")
    p.add_argument("--eps", help="comma list of eps values")
    _add_common(p)

    for name, text in (("iterate", "iterated derivation radii"), ("index", "epsilon-Szlenk index")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--lp", help="p=.. for an l_p-sum")
        p.add_argument("--triple", help="power:q or JSON triple (exact radius function)")
        p.add_argument("--eps")
        p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
        _add_common(p)

    p = sub.add_parser("check-eq", help="functional-equation residuals")
    _add_function(p)
    p.add_argument("--probe", choices=PROBES + ("all",), default="all")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--k", type=float, default=2.0)
    p.add_argument("--tol", type=float, default=PASS_TOL)
    _add_common(p)

    p = sub.add_parser("witness", help="finite-truncation checks of the bound constructions")
    p.add_argument("--model", help="JSON model spec or @file")
    p.add_argument("--lq", help="q=.. for the l_q model")
    p.add_argument("--model-quartic", help="A=..,B=.. for the quartic Orlicz model")
    p.add_argument("--dim", type=int)
    p.add_argument("--check", choices=("thm1", "thm2", "probe"), default="probe")
    p.add_argument("--x0")
    p.add_argument("--x")
    p.add_argument("--eps", type=float)
    p.add_argument("--eps1", type=float)
    p.add_argument("--eps2", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--delta", type=float)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--direction", choices=("forward", "reverse", "both"), default="both")
    p.add_argument("--n-range", help="lo:hi")
    _add_common(p)

    p = sub.add_parser("sweep", help="quartic stability sweep over A")
    p.add_argument("--A", default="1,0.1,0.01,0.001,0")
    p.add_argument("--B", type=float, default=1.0)
    p.add_argument("--eps", help="comma list, default 0.5,1.0")
    _add_common(p)

    p = sub.add_parser("validate", help="grid check of Orlicz function properties")
    _add_function(p)
    p.add_argument("--grid", help="start:stop:count or comma list (default 0:10:100)")
    p.add_argument("--growth-threshold", type=float, default=1.0)
    _add_common(p)
    return parser


def _apply_config(parser, argv, args):
    with open(args.config, encoding="utf-8") as fh:
        try:
            config = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--config: JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}")
    if not isinstance(config, dict):
        raise UsageError("--config must hold a JSON object")
    extra = []
    for key, val in config.items():
        extra.append("--" + key.replace("_", "-"))
        extra.append(json.dumps(val) if isinstance(val, (dict, list)) else str(val))
    return parser.parse_args(list(argv) + extra)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            args = _apply_config(parser, argv, args)
        report = COMMANDS[args.command](args)
    except (UsageError, DomainError, InvariantError, BudgetExceededError, OSError) as exc:
        print(f"szlenk {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
