"""Command-line front end: tables for root data, parabolics, orbits, weights and degrees, plus the verification sweep."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Any, Sequence

from . import center as ce
from . import moduli as mo
from . import parabolic as pa
from .errors import WpsError
from .rootsys import FAMILIES, RootDatum, SimpleType, build_root_system
from .verify import SweepConfig, explicit_config, q, run_verification

EXIT_OK, EXIT_CLAIM, EXIT_INPUT, EXIT_NO_SPECIAL = 0, 1, 2, 3


class InputError(Exception):
    """Invalid command-line input; reported with exit code 2."""


class NoSpecialRoot(Exception):
    """No c-special simple root exists for the selected data; exit code 3."""


def _jobs_default() -> int:
    raw = os.environ.get("WPS_MODULI_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _datum(args: argparse.Namespace) -> RootDatum:
    if args.type is None or args.rank is None:
        raise InputError("--type and --rank are required")
    try:
        t = SimpleType(args.type.upper(), args.rank)
    except WpsError as ex:
        raise InputError(str(ex)) from ex
    return build_root_system(t)


def _center(d: RootDatum, index: int) -> ce.CenterElement:
    z = ce.center_group(d)
    if not 0 <= index < z.order:
        raise InputError(f"--center must lie in 0..{z.order - 1} for {d.simple_type}, got {index}")
    return z.elements[index]


def _alpha(d: RootDatum, alpha: int | None) -> list[int]:
    if alpha is None:
        return list(range(1, d.rank + 1))
    if not 1 <= alpha <= d.rank:
        raise InputError(f"--alpha must lie in 1..{d.rank}, got {alpha}")
    return [alpha]


def _cell(x: Any) -> str:
    return str(x).lower() if isinstance(x, bool) else str(x)


def _joined(xs: Sequence[Any], sep: str = ",") -> str:
    return sep.join(_cell(x) for x in xs)


def _emit(args: argparse.Namespace, rows: list[dict[str, Any]]) -> str:
    """Render a list of flat records in the requested format."""
    if args.format == "json":
        body = rows[0] if len(rows) == 1 else rows
        return json.dumps(q(body), indent=1) + "\n"
    if args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(list(rows[0]))
        for r in rows:
            wr.writerow([_joined(v, ";") if isinstance(v, (list, tuple)) else _cell(v) for v in r.values()])
        return buf.getvalue()
    out = []
    for r in rows:
        out.append(", ".join(f"{k}={_joined(v) if isinstance(v, (list, tuple)) else _cell(v)}" for k, v in r.items()))
    return "\n".join(out) + "\n"


# -- subcommands -------------------------------------------------------------

def cmd_roots(args: argparse.Namespace) -> tuple[str, int]:
    d = _datum(args)
    row = {
        "type": str(d.simple_type),
        "|R|": len(d.roots),
        "h": d.coxeter,
        "g": d.dual_coxeter,
        "marks": list(d.marks),
        "comarks": list(d.comarks),
    }
    if args.format == "text":
        lines = [f"{d.simple_type}: |R|={len(d.roots)}, h={d.coxeter}, g={d.dual_coxeter}",
                 f"marks (node 0 first): {_joined(d.marks)}",
                 f"comarks (node 0 first): {_joined(d.comarks)}",
                 "I_0 Gram on simple coroots:"]
        lines += ["  " + " ".join(str(x) for x in r) for r in d.I0_gram]
        return "\n".join(lines) + "\n", EXIT_OK
    row["I0_gram"] = [list(r) for r in d.I0_gram] if args.format == "json" else [x for r in d.I0_gram for x in r]
    return _emit(args, [row]), EXIT_OK


def cmd_parabolic(args: argparse.Namespace) -> tuple[str, int]:
    d = _datum(args)
    rows = []
    for a in _alpha(d, args.alpha):
        p = pa.parabolic_profile(d, a)
        rows.append({
            "type": str(d.simple_type),
            "alpha": a,
            "special": pa.is_special(d, a),
            "levi": [str(t) for t, _ in p.levi_components],
            "h_alpha": p.h_alpha,
            "g_alpha": p.g_alpha,
            "m_alpha": p.m_alpha,
            "n_alpha": p.n_alpha,
            "zeta": list(p.zeta),
            "i": list(p.i_seq),
            "d": list(p.d_seq),
        })
    return _emit(args, rows), EXIT_OK


def cmd_orbits(args: argparse.Namespace) -> tuple[str, int]:
    d = _datum(args)
    c = _center(d, args.center)
    if args.format == "dot":
        return ce.quotient_dot(d, c).rstrip("\n") + "\n", EXIT_OK
    op = ce.orbit_data(d, c)
    row = {
        "type": str(d.simple_type),
        "center": c.index,
        "coweight": list(c.coweight(d.rank)),
        "order": c.order,
        "tau": list(ce.diagram_automorphism(d, c).perm),
        "orbits": [list(o) for o in op.orbits] if args.format == "json" else ["+".join(map(str, o)) for o in op.orbits],
        "g_bar": list(op.g_bar),
        "n0": op.n0,
        "r_c": op.r_c,
    }
    return _emit(args, [row]), EXIT_OK


def cmd_weights(args: argparse.Namespace) -> tuple[str, int]:
    d = _datum(args)
    c = _center(d, args.center)
    specials = ce.c_special_roots(d, c)
    if not specials:
        raise NoSpecialRoot(f"no c-special simple root for {d.simple_type} with center element {c.index}")
    chosen = [s.alpha for s in specials]
    if args.alpha is not None:
        if args.alpha not in chosen:
            raise InputError(f"simple root {args.alpha} is not c-special; c-special roots: {_joined(chosen)}")
        chosen = [args.alpha]
    op = ce.orbit_data(d, c)
    rows = []
    for a in chosen:
        w = mo.wps_profile(d, c, a)
        rows.append({
            "type": str(d.simple_type),
            "center": c.index,
            "coweight": list(c.coweight(d.rank)),
            "generates_center": w.generates_center,
            "alpha": a,
            "g_bar": list(op.g_bar),
            "n0": op.n0,
            "r_c": op.r_c,
            "moduli_weights": list(w.moduli_weights),
            "wps_weights": list(w.weights),
        })
    if args.format == "text":
        r = rows[0]
        lines = [f"{r['type']} center {c.index} (coweight {_joined(r['coweight'])}, order {c.order},"
                 f" generates center: {str(r['generates_center']).lower()})",
                 f"g_bar: {_joined(r['g_bar'])}", f"n0: {r['n0']}", f"r_c: {r['r_c']}",
                 f"moduli weights: {_joined(r['moduli_weights'])}"]
        for r in rows:
            lines.append(f"wps weights (alpha={r['alpha']}): {_joined(r['wps_weights'])}")
        return "\n".join(lines) + "\n", EXIT_OK
    return _emit(args, rows), EXIT_OK


def cmd_degree(args: argparse.Namespace) -> tuple[str, int]:
    d = _datum(args)
    c = _center(d, args.center)
    e = ce.pairing_degree(d, c)
    row: dict[str, Any] = {
        "type": str(d.simple_type),
        "center": c.index,
        "coweight": list(c.coweight(d.rank)),
        "degree": e,
        "degree_squared_geometric": ce.pairing_degree_squared_geometric(d, c),
    }
    if ce.c_special_roots(d, c):
        dc = mo.degree_consistency(d, c)
        row["self_intersection"] = mo.det_bundle_self_intersection(d, c)
        row["top_power_over_degree"] = dc.lhs
        row["consistent"] = dc.passed
    return _emit(args, [row]), EXIT_OK


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    fmt = args.format
    if fmt == "dot":
        raise InputError("verify supports text, json and csv")
    common = dict(fmt=fmt, jobs=args.jobs, fail_fast=args.fail_fast)
    if args.type is not None and not args.all:
        d = _datum(args)
        if args.center is None:
            report = run_verification(explicit_config(d.simple_type, None, **common))
        else:
            _center(d, args.center)
            report = run_verification(explicit_config(d.simple_type, args.center, **common))
    else:
        try:
            cfg = SweepConfig(families=FAMILIES, max_rank=args.max_rank, **common)
            cfg.validate()
        except ValueError as ex:
            raise InputError(str(ex)) from ex
        report = run_verification(cfg)
    return report.render(fmt), EXIT_OK if report.passed else EXIT_CLAIM


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wps-moduli", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str, formats=("text", "json", "csv")) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--type", help="Dynkin family letter A..G")
        p.add_argument("--rank", type=int)
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", help="write output to this path instead of stdout")
        return p

    add("roots", cmd_roots, "root counts, Coxeter numbers, marks and the normalized form")
    add("parabolic", cmd_parabolic, "maximal parabolic data per simple root").add_argument("--alpha", type=int)
    p = add("orbits", cmd_orbits, "orbits of a central element on the extended diagram", ("text", "json", "csv", "dot"))
    p.add_argument("--center", type=int, default=0)
    p = add("weights", cmd_weights, "moduli and weighted projective weights")
    p.add_argument("--center", type=int, default=0)
    p.add_argument("--alpha", type=int)
    p = add("degree", cmd_degree, "pairing degree and the two-route intersection numbers")
    p.add_argument("--center", type=int, default=0)
    p = add("verify", cmd_verify, "run the verification sweep")
    p.add_argument("--center", type=int)
    p.add_argument("--all", action="store_true", help="sweep every family up to --max-rank")
    p.add_argument("--max-rank", type=int, default=12)
    p.add_argument("--jobs", type=int, default=_jobs_default())
    p.add_argument("--fail-fast", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.fn(args)
    except InputError as ex:
        parser.print_usage(sys.stderr)
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT
    except NoSpecialRoot as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_NO_SPECIAL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
