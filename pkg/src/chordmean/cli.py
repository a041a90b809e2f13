"""Command-line front end: solve, measure, hermite, brownian, selftest.

Every output starts with a metadata block (tool version, effective config,
seed) so a run can be reproduced byte for byte.  Floats print with 17
significant digits.  Exit codes: 0 success, 2 config error, 3 numerical
error, 4 selftest failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .errors import ChordMeanError, ConfigError
from .geometry import BallDomain, Ellipse2D, StarDomain2D, build_direction_quadrature
from .boundary import (
    BoundaryData,
    CapSpec,
    HarmonicPolynomial,
    almansi_assemble,
    arc_cap,
    cap_indicator,
    constant_data,
)
from .poisson import build_boundary_quadrature, cap_measure_poisson
from .averaging import cross_section_solve, solve_harmonic, solve_on_domain
from .biharmonic import hermite_monomial_at_zero, solve_biharmonic
from .measure import (
    cap_measure_ratio,
    center_of_mass_check,
    cone_identity_check,
    star_angle_measure_check,
    subtended_moment,
)
from .brownian import compare_exit_distributions
from . import selftest as selftest_mod

NONBALL_THRESHOLD = 1e-3
INDICATOR_N_2D = 2 ** 16
INDICATOR_N_3D = 256

# options whose values may start with '-' (argparse needs the '=' form)
_VALUE_OPTS = ("--point", "--arc", "--axis", "--w", "--a", "--b", "--m",
               "--cap", "--half-angle", "--domain", "--data")


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    if x is None:
        return ""
    return str(x)


def _floats(text: str, name: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(t) for t in str(text).split(",") if t != ""]
    except ValueError as exc:
        raise ConfigError(f"could not parse {name}={text!r} as numbers") from exc
    if count is not None and len(vals) != count:
        raise ConfigError(f"{name} needs {count} comma-separated numbers")
    return vals


# ---------------------------------------------------------------------------
# Spec grammars (shared between flags and the JSON config)
# ---------------------------------------------------------------------------

def parse_poly(dim: int, spec: str) -> HarmonicPolynomial:
    """Mini grammar: '0' | term('+'term)*, term = alias | 'm,k[,coeff]'.

    Aliases: 1, x, y, z (z in 3-D only).
    """
    spec = spec.strip()
    if spec == "0":
        return HarmonicPolynomial.zero(dim)
    alias = {"1": (0, "re" if dim == 2 else 0),
             "x": (1, "re" if dim == 2 else 1),
             "y": (1, "im" if dim == 2 else -1)}
    if dim == 3:
        alias["z"] = (1, 0)
    terms = []
    for part in spec.split("+"):
        part = part.strip()
        if part in alias:
            m, k = alias[part]
            terms.append((m, k, 1.0))
            continue
        fields = part.split(",")
        if len(fields) not in (2, 3):
            raise ConfigError(f"bad polynomial term {part!r}")
        m = int(fields[0])
        k = fields[1].strip() if dim == 2 else int(fields[1])
        coeff = float(fields[2]) if len(fields) == 3 else 1.0
        terms.append((m, k, coeff))
    return HarmonicPolynomial(dim, terms)


def parse_cap(dim: int, spec: str, vertex) -> CapSpec:
    """'axis=0,0,1,half=1.5708,nappe=plus' with the vertex supplied by context."""
    fields: dict[str, list[str]] = {}
    key = None
    for token in spec.split(","):
        if "=" in token:
            key, first = token.split("=", 1)
            key = key.strip()
            fields[key] = [first]
        elif key is not None:
            fields[key].append(token)
        else:
            raise ConfigError(f"bad cap spec {spec!r}")
    if "axis" not in fields or "half" not in fields:
        raise ConfigError("cap spec needs axis=... and half=...")
    axis = np.array([float(v) for v in fields["axis"]])
    if axis.size != dim:
        raise ConfigError(f"cap axis needs {dim} components")
    axis = axis / np.linalg.norm(axis)
    half = float(fields["half"][0])
    nappe = fields.get("nappe", ["plus"])[0].strip()
    return CapSpec(vertex=vertex, axis=axis, half_angle=half, nappe=nappe)


def parse_domain(dim: int, spec: str):
    spec = (spec or "ball").strip()
    if spec == "ball":
        return BallDomain(center=np.zeros(dim), radius=1.0)
    kind, _, rest = spec.partition(":")
    if kind == "ball":
        vals = _floats(rest, "domain")
        if len(vals) != dim + 1:
            raise ConfigError(f"ball spec needs {dim} center coords and a radius")
        return BallDomain(center=vals[:dim], radius=vals[dim])
    if kind == "ellipse":
        a, b = _floats(rest, "domain", 2)
        return Ellipse2D(center=(0.0, 0.0), semi_axes=(a, b))
    if kind == "conformal":
        (a,) = _floats(rest, "domain", 1)
        return StarDomain2D.conformal(a)
    raise ConfigError(f"unknown domain spec {spec!r}")


def parse_data(dim: int, spec, point) -> BoundaryData:
    if isinstance(spec, dict):
        # JSON-config schema: {"dim": 2, "terms": [[m, k, coeff], ...]}
        terms = [(m, k, c) for m, k, c in spec["terms"]]
        return HarmonicPolynomial(int(spec.get("dim", dim)), terms).boundary_data()
    kind, _, rest = spec.partition(":")
    if kind == "harm":
        return parse_poly(dim, rest).boundary_data()
    if kind == "almansi":
        h1_spec, _, h2_spec = rest.partition(";")
        if not h2_spec:
            raise ConfigError("almansi spec is 'almansi:<h1>;<h2>'")
        u = almansi_assemble(parse_poly(dim, h1_spec), parse_poly(dim, h2_spec))
        return u.boundary_data()
    if kind == "cap":
        cap = parse_cap(dim, rest, vertex=point)
        return cap_indicator(cap, BallDomain(center=np.zeros(dim), radius=1.0))
    if kind == "arc":
        t1, t2 = _floats(rest, "arc", 2)
        disk = BallDomain(center=np.zeros(2), radius=1.0)
        return cap_indicator(arc_cap(disk, point, t1, t2), disk)
    if kind == "const":
        return constant_data(float(rest))
    raise ConfigError(f"unknown data spec {spec!r}")


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _effective_config(args, keys) -> dict:
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def emit(args, meta: dict, columns: list[str], rows: list[list]) -> None:
    if args.format == "json":
        def cell(r):
            if r is None or isinstance(r, (str, bool, int)):
                return r
            if isinstance(r, (complex, np.complexfloating)) and not isinstance(r, float):
                return _fmt(r)
            return float(f"{float(r):.17g}")
        payload = {"tool": "chordmean", "version": __version__, **meta,
                   "columns": columns,
                   "rows": [[cell(r) for r in row] for row in rows]}
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        buf.write(f"# tool: chordmean {__version__}\n")
        buf.write(f"# config: {json.dumps(meta.get('config', {}), sort_keys=True)}\n")
        seed = meta.get("seed")
        buf.write(f"# seed: {'' if seed is None else seed}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

_SOLVE_KEYS = ("operator", "dim", "domain", "data", "point", "n", "scheme",
               "seed", "normal_scheme", "normal_n", "inner", "inner_solver",
               "format", "threads")


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise ConfigError(f"--{name.replace('_', '-')} is required")


def cmd_solve(args) -> int:
    _require(args, "data", "point")
    point = _floats(args.point, "--point")
    dim = args.dim or len(point)
    if len(point) != dim:
        raise ConfigError(f"--point needs {dim} coordinates")
    domain = parse_domain(dim, args.domain)
    if getattr(domain, "dim", dim) != dim:
        raise ConfigError("domain dimension does not match --dim")
    data = parse_data(dim, args.data, np.asarray(point))

    if args.scheme is None:
        scheme = "uniform_angle_2d" if dim == 2 else "gauss_product_3d"
    else:
        scheme = {"uniform": "uniform_angle_2d", "gauss": "gauss_product_3d",
                  "mc": "monte_carlo", "design": "monte_carlo_design"}.get(
                      args.scheme, args.scheme)
    n = args.n
    if n is None:
        if data.smoothness == "indicator":
            n = INDICATOR_N_2D if dim == 2 else INDICATOR_N_3D
        else:
            n = 4096 if dim == 2 else 64
    dq = build_direction_quadrature(dim, scheme, n, seed=args.seed)

    operator = args.operator or "harmonic"
    if operator == "harmonic":
        if isinstance(domain, BallDomain):
            result = solve_harmonic(domain, data, point, dq)
        else:
            result = solve_on_domain(domain, data, point, dq)
    elif operator == "biharmonic":
        if not isinstance(domain, BallDomain):
            raise ConfigError("the biharmonic solver runs on balls only")
        result = solve_biharmonic(domain, data, point, dq)
    elif operator == "cross-section":
        if not (isinstance(domain, BallDomain) and dim == 3):
            raise ConfigError("cross-section needs a 3-D ball domain")
        nscheme = {"gauss": "gauss_product_3d", "mc": "monte_carlo",
                   "design": "monte_carlo_design"}[args.normal_scheme or "gauss"]
        ndq = build_direction_quadrature(3, nscheme, args.normal_n or 16,
                                         seed=args.seed)
        result = cross_section_solve(domain, data, point, ndq,
                                     inner_resolution=args.inner or 512,
                                     inner_solver=args.inner_solver or "poisson")
    else:
        raise ConfigError(f"unknown operator {operator!r}")

    flag = ""
    if not isinstance(domain, BallDomain) and result.residual is not None \
            and result.residual > NONBALL_THRESHOLD:
        flag = "NONBALL"
    row = list(point) + [result.value, result.oracle_value, result.residual,
                         result.report.error_estimate, result.report.nodes_used, flag]
    columns = [f"p{i}" for i in range(dim)] + \
        ["value", "oracle", "residual", "error_estimate", "nodes", "flag"]
    emit(args, {"config": _effective_config(args, _SOLVE_KEYS), "seed": args.seed},
         columns, [row])
    return 0


_MEASURE_KEYS = ("check", "dim", "point", "axis", "half_angle", "nappe", "arc",
                 "backend", "w", "degree", "a", "n", "format", "threads")


def cmd_measure(args) -> int:
    rows = []
    check = args.check
    if check in ("cap", "cone", "com"):
        point = _floats(args.point, "--point")
        dim = args.dim or len(point)
        ball = BallDomain(center=np.zeros(dim), radius=1.0)
        p = np.asarray(point)
        dq = bq = None
        if args.n is not None:
            scheme = "uniform_angle_2d" if dim == 2 else "gauss_product_3d"
            dq = build_direction_quadrature(dim, scheme, args.n)
            bq = build_boundary_quadrature(ball, resolution=args.n)
        if check == "cap":
            if args.arc is not None:
                if dim != 2:
                    raise ConfigError("--arc is 2-D only")
                t1, t2 = _floats(args.arc, "--arc", 2)
                cap = arc_cap(ball, p, t1, t2)
            elif args.cap is not None:
                cap = parse_cap(dim, args.cap, vertex=p)
            else:
                axis = np.asarray(_floats(args.axis or "1," + "0," * (dim - 1),
                                          "--axis", dim))
                cap = CapSpec(vertex=p, axis=axis / np.linalg.norm(axis),
                              half_angle=args.half_angle, nappe=args.nappe or "plus")
            w_ratio = cap_measure_ratio(ball, p, cap, dq=dq)
            w_poisson = cap_measure_poisson(ball, p, cap, bq=bq).value
            rows.append(["cap", json.dumps({"point": point}),
                         w_ratio, w_poisson, abs(w_ratio - w_poisson)])
        else:
            axis = np.asarray(_floats(args.axis or "1," + "0," * (dim - 1),
                                      "--axis", dim))
            axis = axis / np.linalg.norm(axis)
            if args.half_angle is None:
                raise ConfigError(f"--half-angle is required for {check}")
            if check == "cone":
                w_sum, target, defect = cone_identity_check(
                    ball, p, axis, args.half_angle,
                    backend=args.backend or "poisson", dq=dq, bq=bq)
                rows.append(["cone", json.dumps({"point": point,
                                                 "half_angle": args.half_angle}),
                             w_sum, target, defect])
            else:
                _, offset = center_of_mass_check(ball, p, axis, args.half_angle, bq=bq)
                rows.append(["com", json.dumps({"point": point,
                                                "half_angle": args.half_angle}),
                             offset, 0.0, offset])
    elif check == "moment":
        w_vals = _floats(args.w, "--w")
        w = complex(w_vals[0], w_vals[1] if len(w_vals) > 1 else 0.0)
        got = subtended_moment(w, args.degree)
        expected = 0.5 * ((0.0 if args.degree else 1.0) + w ** args.degree)
        rows.append(["moment", json.dumps({"w": args.w, "degree": args.degree}),
                     got, expected, abs(got - expected)])
    elif check in ("star-angle", "prop81"):
        t1, t2 = _floats(args.arc, "--arc", 2)
        lhs, rhs, defect = star_angle_measure_check(args.a, (t1, t2))
        rows.append([check, json.dumps({"a": args.a, "arc": [t1, t2]}),
                     lhs, rhs, defect])
    else:
        raise ConfigError(f"unknown check {check!r}")
    emit(args, {"config": _effective_config(args, _MEASURE_KEYS), "seed": None},
         ["check", "parameters", "lhs", "rhs", "defect"], rows)
    return 0


_HERMITE_KEYS = ("m", "a", "b", "format")


def cmd_hermite(args) -> int:
    _require(args, "m", "a", "b")
    ms = [int(v) for v in str(args.m).split(",")]
    a_vals = _floats(args.a, "--a")
    b_vals = _floats(args.b, "--b")
    rows = []
    for m in ms:
        for a in a_vals:
            for b in b_vals:
                c0, q = hermite_monomial_at_zero(m, a, b)
                rows.append([m, a, b, c0, q])
    emit(args, {"config": _effective_config(args, _HERMITE_KEYS), "seed": None},
         ["m", "a", "b", "c_at_zero", "q_value"], rows)
    return 0


_BROWNIAN_KEYS = ("dim", "point", "cap", "arc", "n", "seed", "format", "threads")


def cmd_brownian(args) -> int:
    _require(args, "point")
    point = _floats(args.point, "--point")
    dim = args.dim or len(point)
    ball = BallDomain(center=np.zeros(dim), radius=1.0)
    p = np.asarray(point)
    if args.arc is not None:
        if dim != 2:
            raise ConfigError("--arc is 2-D only")
        t1, t2 = _floats(args.arc, "--arc", 2)
        cap = arc_cap(ball, p, t1, t2)
    elif args.cap is not None:
        cap = parse_cap(dim, args.cap, vertex=p)
    else:
        raise ConfigError("brownian needs --cap or --arc")
    rho = float(np.linalg.norm(p)) / ball.radius
    full_method = "rejection"
    if rho > 0.8:
        if dim == 3:
            raise ConfigError(
                f"start point rho={rho:.3f} > 0.8: rejection sampling refused in 3-D")
        print(f"warning: rho={rho:.3f} > 0.8, switching the full traveler to the "
              f"exact disk sampler", file=sys.stderr)
        full_method = "exact2d"
    report = compare_exit_distributions(ball, p, cap, args.n, seed=args.seed,
                                        full_method=full_method)
    rows = [[t.name, t.hits, t.frequency, t.std_error, t.sigma_vs_oracle]
            for t in report.travelers]
    meta = {"config": _effective_config(args, _BROWNIAN_KEYS), "seed": args.seed,
            "oracle_measure": report.oracle_measure,
            "max_deviation_in_sigmas": report.max_deviation_in_sigmas}
    emit(args, meta, ["traveler", "hits", "frequency", "std_error",
                      "sigma_vs_oracle"], rows)
    return 0


def cmd_selftest(args) -> int:
    if args.criteria:
        ids = tuple(int(v) for v in args.criteria.split(","))
    elif args.full:
        ids = selftest_mod.FULL_IDS
    else:
        ids = selftest_mod.QUICK_IDS
    results = selftest_mod.run_checks(ids, verbose=True)
    if args.json:
        payload = {"tool": "chordmean", "version": __version__,
                   "checks": [{"criterion": r.criterion, "name": r.name,
                               "passed": bool(r.passed), "defect": float(r.defect),
                               "tolerance": float(r.tolerance),
                               "seconds": float(r.seconds),
                               "detail": r.detail} for r in results]}
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    return 0 if n_fail == 0 else 4


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

def _add_common(sub):
    sub.add_argument("--config", help="JSON config file; flags override its values")
    sub.add_argument("--output", help="output path (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default=None,
                     help="output format (default csv)")
    sub.add_argument("--seed", type=int, default=None, help="RNG seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordmean",
        description="Chord-averaging Dirichlet solvers and harmonic-measure checks "
                    "in disks and balls.")
    parser.add_argument("--version", action="version",
                        version=f"chordmean {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run a harmonic/biharmonic/cross-section solve")
    p.add_argument("--operator", choices=("harmonic", "biharmonic", "cross-section"),
                   default=None)
    p.add_argument("--dim", type=int, choices=(2, 3), default=None)
    p.add_argument("--domain", default=None,
                   help="ball | ball:cx,cy[,cz],R | ellipse:A,B | conformal:a")
    p.add_argument("--data", default=None,
                   help="harm:m,k[+...] | almansi:h1;h2 | cap:axis=..,half=..,"
                        "nappe=.. | arc:t1,t2 | const:v")
    p.add_argument("--point", default=None, help="interior point, comma separated")
    p.add_argument("--n", type=int, default=None,
                   help="direction count (2-D) or polar count (3-D)")
    p.add_argument("--scheme", choices=("uniform", "gauss", "mc", "design"),
                   default=None)
    p.add_argument("--normal-scheme", dest="normal_scheme",
                   choices=("gauss", "mc", "design"), default=None)
    p.add_argument("--normal-n", dest="normal_n", type=int, default=None)
    p.add_argument("--inner", type=int, default=None,
                   help="cross-section inner boundary nodes")
    p.add_argument("--inner-solver", dest="inner_solver",
                   choices=("poisson", "chords"), default=None)
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("measure", help="harmonic-measure identity checks")
    p.add_argument("--check",
                   choices=("cap", "cone", "com", "moment", "star-angle", "prop81"),
                   required=True,
                   help="star-angle checks the conformal star domain "
                        "(prop81 is an accepted alias)")
    p.add_argument("--dim", type=int, choices=(2, 3), default=None)
    p.add_argument("--point", default=None)
    p.add_argument("--axis", default=None)
    p.add_argument("--half-angle", dest="half_angle", type=float, default=None)
    p.add_argument("--nappe", choices=("plus", "minus", "both"), default=None)
    p.add_argument("--cap", default=None, help="axis=..,half=..,nappe=..")
    p.add_argument("--arc", default=None, help="t1,t2 (radians)")
    p.add_argument("--backend", choices=("ratio", "poisson"), default=None)
    p.add_argument("--w", default=None, help="moment base point re[,im]")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--a", type=float, default=None, help="conformal coefficient")
    p.add_argument("--n", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("hermite", help="C_m(0) table over (m, a, b) grids")
    p.add_argument("--m", default=None, help="degree or comma list, 4..12")
    p.add_argument("--a", default=None, help="left node(s) < 0")
    p.add_argument("--b", default=None, help="right node(s) > 0")
    _add_common(p)
    p.set_defaults(func=cmd_hermite)

    p = sub.add_parser("brownian", help="three-traveler exit-distribution experiment")
    p.add_argument("--dim", type=int, choices=(2, 3), default=None)
    p.add_argument("--point", default=None)
    p.add_argument("--cap", default=None, help="axis=..,half=..,nappe=..")
    p.add_argument("--arc", default=None, help="t1,t2 (2-D boundary arc)")
    p.add_argument("--n", type=int, default=100000, help="samples per traveler")
    _add_common(p)
    p.set_defaults(func=cmd_brownian)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--quick", action="store_true",
                       help="deterministic subset (criteria 1, 3, 4, 7, 11, 12)")
    group.add_argument("--full", action="store_true", help="all criteria 1-14")
    p.add_argument("--criteria", default=None, help="explicit comma list of criteria")
    p.add_argument("--json", default=None, help="write a JSON report here")
    p.set_defaults(func=cmd_selftest)
    return parser


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Join '--opt -1.5,...' into '--opt=-1.5,...' so argparse accepts it."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and any(c.isdigit() for c in argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _apply_config_file(args) -> None:
    if getattr(args, "config", None) is None:
        return
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {args.config!r}: {exc}") from exc
    for key, value in cfg.items():
        attr = key.replace("-", "_")
        if getattr(args, attr, None) in (None, False):
            setattr(args, attr, value)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_merge_negative_values(argv))
    threads = os.environ.get("CHORDMEAN_THREADS")
    if threads is not None:
        try:
            if int(threads) < 1:
                raise ValueError
        except ValueError:
            print(f"error: CHORDMEAN_THREADS={threads!r} is not a positive integer",
                  file=sys.stderr)
            return 2
    args.threads = int(threads) if threads else 1
    try:
        _apply_config_file(args)
        if getattr(args, "format", None) is None:
            args.format = "csv"
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ChordMeanError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
