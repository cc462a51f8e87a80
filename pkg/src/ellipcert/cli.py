"""Command-line front end: evaluate the function zoo, compute the sharp
constants, run sign certifications, verify the inequality corollaries,
and emit plot-ready tables.

Every run embeds a manifest (command, parameters, scan configuration,
output format, seed) in its output; replaying the same invocation
byte-reproduces the output.  Exit codes: 0 verified/pass, 1
counterexample found, 2 usage or domain error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from typing import Any

from . import family, inequalities, specfun
from .certify import (
    DEFAULT_SCAN,
    BracketNotFoundError,
    InconclusiveScanError,
    ScanConfig,
    certify_sign,
    find_a_c,
    find_x_p,
)
from .specfun import ConvergenceError, DomainError

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce a run byte-for-byte."""

    command: str
    parameters: dict[str, Any]
    scan: ScanConfig
    output_format: str
    seed: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "scan": asdict(self.scan),
            "output_format": self.output_format,
            "seed": self.seed,
        }


def fmt_full(v: Any) -> str:
    """Full-precision text: 17 significant digits round-trip a double."""
    if isinstance(v, float):
        return format(v, ".17g")
    return "" if v is None else str(v)


def fmt_human(v: Any) -> str:
    if isinstance(v, float):
        return format(v, ".12g")
    return "" if v is None else str(v)


def _render(rows: list[dict[str, Any]], manifest: RunManifest, fmt: str) -> str:
    mjson = json.dumps(manifest.to_dict(), separators=(",", ":"), sort_keys=True)
    if fmt == "json":
        return json.dumps({"manifest": manifest.to_dict(), "results": rows},
                          indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        cols = list(rows[0].keys()) if rows else []
        buf.write(f"# manifest: {mjson}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in rows:
            writer.writerow([fmt_full(row.get(c)) for c in cols])
        return buf.getvalue()
    # text
    lines = [f"manifest: {mjson}"]
    if rows:
        cols = list(rows[0].keys())
        table = [[fmt_human(row.get(c)) for c in cols] for row in rows]
        widths = [max(len(c), *(len(t[i]) for t in table)) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
        for t in table:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(t, widths)))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_number(text: str) -> float:
    """Plain float, or a rational like 7/32."""
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def _collect_params(pairs: list[str] | None) -> dict[str, float]:
    params: dict[str, float] = {}
    for item in pairs or []:
        if "=" not in item:
            raise DomainError(f"--param expects key=value; got {item!r}")
        key, val = item.split("=", 1)
        params[key.strip()] = _parse_number(val)
    return params


def _scan_from_args(args: argparse.Namespace) -> ScanConfig:
    return ScanConfig(lo=args.lo, hi=args.hi, n=args.grid_n,
                      endpoint_offset=args.offset, refine_depth=args.refine)


# fn name -> (required param names, factory(params) -> callable(x))
_EVAL_FNS: dict[str, tuple[tuple[str, ...], Any]] = {
    "K": ((), lambda ps: specfun.ellip_k),
    "E": ((), lambda ps: specfun.ellip_e),
    "2F1": (("a", "b", "c"),
            lambda ps: (lambda x: specfun.hyp2f1(ps["a"], ps["b"], ps["c"], x))),
    "f": (("a",), lambda ps: (lambda x: family.f(ps["a"], x))),
    "h": (("p",), lambda ps: (lambda x: family.h(ps["p"], x))),
    "u": ((), lambda ps: family.u_aux),
    "v": ((), lambda ps: family.v_aux),
    "delta": ((), lambda ps: family.delta_aux),
    "w_plus": ((), lambda ps: family.w_plus),
    "w_minus": ((), lambda ps: family.w_minus),
    "phi": ((), lambda ps: family.phi),
    "G": ((), lambda ps: family.g_aux),
    "J": (("p",), lambda ps: (lambda x: family.j_factor(ps["p"], x))),
    "L": (("p",), lambda ps: (lambda x: family.l_factor(ps["p"], x))),
}


def _resolve_fn(name: str, params: dict[str, float]):
    if name not in _EVAL_FNS:
        raise DomainError(
            f"unknown function {name!r}; choose from {', '.join(sorted(_EVAL_FNS))}")
    required, factory = _EVAL_FNS[name]
    missing = [k for k in required if k not in params]
    if missing:
        raise DomainError(f"function {name!r} needs --param {missing[0]}=<value>")
    return factory(params)


def _cmd_eval(args: argparse.Namespace) -> tuple[list[dict[str, Any]], RunManifest, int]:
    params = _collect_params(args.param)
    fn = _resolve_fn(args.fn, params)
    rows = []
    for x in args.x:
        try:
            rows.append({"x": x, "value": fn(x)})
        except (DomainError, ConvergenceError) as exc:
            raise DomainError(f"at x={x!r}: {exc}") from exc
    manifest = RunManifest("eval", {"fn": args.fn, **params, "x": list(args.x)},
                           _scan_from_args(args), args.format, args.seed)
    return rows, manifest, EXIT_OK


def _cmd_constants(args: argparse.Namespace) -> tuple[list[dict[str, Any]], RunManifest, int]:
    cfg = _scan_from_args(args)
    res = find_a_c(cfg)
    rows = [
        {"name": "a_c", "value": res.value, "provenance": "computed",
         "x_star": res.x_star, "tolerance": res.tolerance},
    ]
    algebraic = [
        ("p_logconcave", family.P_LOGCONCAVE),
        ("p_convex_hi", family.P_CONVEX_HI),
        ("p_concave_lo", family.P_CONCAVE_LO),
        ("p_monotone", family.P_MONOTONE),
        ("a_recip_convex", family.A_RECIP_CONVEX),
        ("a_recip_concave", family.A_RECIP_CONCAVE),
        ("alpha_lemma", family.ALPHA_LEMMA),
    ]
    for name, value in algebraic:
        rows.append({"name": name, "value": value, "provenance": "algebraic",
                     "x_star": None, "tolerance": None})
    rows.append({"name": "K_half", "value": specfun.ellip_k(0.5),
                 "provenance": "computed", "x_star": None, "tolerance": None})
    rows.append({"name": "gamma_quarter", "value": specfun.GAMMA_QUARTER,
                 "provenance": "embedded", "x_star": None, "tolerance": None})
    rows.append({"name": "gamma_three_quarter", "value": specfun.GAMMA_THREE_QUARTER,
                 "provenance": "embedded", "x_star": None, "tolerance": None})
    manifest = RunManifest("constants", {}, cfg, args.format, args.seed)
    return rows, manifest, EXIT_OK


# theorem id -> (param symbol, factor factory, claimed sign)
_CERTIFY_TABLE = {
    "thm1-convex": ("a", lambda v: (lambda x: family.g_factor(v, x)), "nonnegative"),
    "thm1-concave": ("a", lambda v: (lambda x: family.g_factor(v, x)), "nonpositive"),
    "thm2-convex": ("a", lambda v: (lambda x: family.recip_f_second_sign(v, x)), "nonnegative"),
    "thm2-concave": ("a", lambda v: (lambda x: family.recip_f_second_sign(v, x)), "nonpositive"),
    "thm3-logconcave": ("p", lambda v: (lambda x: family.log_h_second_factor(v, x)), "nonnegative"),
    "thm3-logconvex": ("p", lambda v: (lambda x: family.log_h_second_factor(v, x)), "nonpositive"),
    "cor14-convex": ("p", lambda v: (lambda x: family.j_factor(v, x)), "nonnegative"),
    "cor14-concave": ("p", lambda v: (lambda x: family.j_factor(v, x)), "nonpositive"),
    "cor15-monotone": ("p", lambda v: (lambda x: family.l_factor(v, x)), "nonpositive"),
}


def _cmd_certify(args: argparse.Namespace) -> tuple[list[dict[str, Any]], RunManifest, int]:
    if args.theorem not in _CERTIFY_TABLE:
        raise DomainError(
            f"unknown theorem id {args.theorem!r}; choose from "
            f"{', '.join(sorted(_CERTIFY_TABLE))}")
    symbol, factory, claimed = _CERTIFY_TABLE[args.theorem]
    value = _parse_number(args.value)
    cfg = _scan_from_args(args)
    cert = certify_sign(factory(value), claimed, cfg)
    rows = [{
        "theorem": args.theorem,
        symbol: value,
        "claimed": claimed,
        "verdict": cert.verdict,
        "min_abs_margin": cert.min_abs_margin,
        "witness_x": cert.witness_x,
        "witness_value": cert.witness_value,
    }]
    manifest = RunManifest("certify", {"theorem": args.theorem, symbol: value},
                           cfg, args.format, args.seed)
    code = EXIT_OK if cert.verdict == claimed else EXIT_COUNTEREXAMPLE
    return rows, manifest, code


_VERIFY_SELECTORS = ("sum-bounds", "weighted-sum", "product-pair",
                     "mean-chain", "k-envelope", "gamma-constants", "all")


def _report_rows(rep: inequalities.InequalityReport) -> list[dict[str, Any]]:
    rows = []
    if rep.x_p is not None:
        rows.append({"check": rep.name, "param": rep.param, "clause": "x_p",
                     "max_violation": None, "verdict": rep.verdict,
                     "witness_x": rep.x_p,
                     "equality_points": ""})
    for clause, margin in rep.clause_margins.items():
        rows.append({
            "check": rep.name,
            "param": rep.param,
            "clause": clause,
            "max_violation": margin,
            "verdict": rep.verdict,
            "witness_x": rep.witness_x if rep.witness_clause == clause else None,
            "equality_points": ";".join(fmt_full(x) for x in rep.equality_points),
        })
    return rows


def _cmd_verify(args: argparse.Namespace) -> tuple[list[dict[str, Any]], RunManifest, int]:
    if args.selector not in _VERIFY_SELECTORS:
        raise DomainError(
            f"unknown selector {args.selector!r}; choose from {', '.join(_VERIFY_SELECTORS)}")
    cfg = _scan_from_args(args)
    a = args.a if args.a is not None else 1.47
    p = args.p

    reports: list[inequalities.InequalityReport] = []
    sel = args.selector
    if sel in ("sum-bounds", "all"):
        reports.append(inequalities.check_sum_bounds(a, cfg))
    if sel in ("weighted-sum", "all"):
        if p is not None:
            reports.append(inequalities.check_weighted_sum(p, cfg))
        else:
            reports.append(inequalities.check_weighted_sum(family.P_CONVEX_HI, cfg))
            reports.append(inequalities.check_weighted_sum(0.5, cfg))
    if sel in ("product-pair", "all"):
        reports.append(inequalities.check_product_pair(p if p is not None else 0.5, cfg))
    if sel in ("mean-chain", "all"):
        reports.append(inequalities.check_mean_chain_pairs(
            p if p is not None else 0.5, n_pairs=1000, seed=args.seed, cfg=cfg))
    if sel in ("k-envelope", "all"):
        if p is not None:
            reports.append(inequalities.check_k_envelope(p, cfg))
        else:
            reports.append(inequalities.check_k_envelope(0.25, cfg))
            reports.append(inequalities.check_k_envelope(0.1, cfg))
    if sel in ("gamma-constants", "all"):
        reports.append(inequalities.check_gamma_constant_identities())

    rows: list[dict[str, Any]] = []
    for rep in reports:
        rows.extend(_report_rows(rep))
    manifest = RunManifest("verify", {"selector": sel, "a": a, "p": p},
                           cfg, args.format, args.seed)
    code = EXIT_OK if all(r.verdict == "pass" for r in reports) else EXIT_COUNTEREXAMPLE
    return rows, manifest, code


def _cmd_table(args: argparse.Namespace) -> tuple[list[dict[str, Any]], RunManifest, int]:
    params = _collect_params(args.param)
    fn = _resolve_fn(args.fn, params)
    cfg = _scan_from_args(args)
    lo = cfg.lo + cfg.endpoint_offset
    hi = cfg.hi - cfg.endpoint_offset
    if args.spacing == "uniform":
        step = (hi - lo) / (cfg.n - 1)
        xs = [lo + i * step for i in range(cfg.n)]
        xs[-1] = hi
    else:
        ratio = (hi / lo) ** (1.0 / (cfg.n - 1))
        xs = [lo * ratio ** i for i in range(cfg.n)]
        xs[-1] = hi
    rows = [{"x": x, "value": fn(x)} for x in xs]
    manifest = RunManifest("table", {"fn": args.fn, **params, "spacing": args.spacing},
                           cfg, args.format, args.seed)
    return rows, manifest, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellipcert",
        description="Elliptic-integral convexity toolkit: evaluation, "
                    "sharp constants, sign certification, inequality grids.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-n", type=int, default=DEFAULT_SCAN.n,
                        help="grid size (default %(default)s)")
    common.add_argument("--lo", type=float, default=0.0, help="scan interval start")
    common.add_argument("--hi", type=float, default=1.0, help="scan interval end")
    common.add_argument("--offset", type=float, default=DEFAULT_SCAN.endpoint_offset,
                        help="distance kept from the interval ends")
    common.add_argument("--refine", type=int, default=DEFAULT_SCAN.refine_depth,
                        help="local refinement depth around near-zero values")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text",
                        help="output format (default %(default)s)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for random-pair checks (default %(default)s)")
    common.add_argument("--out", default=None, help="write output to this path")

    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common],
                            help="evaluate a zoo function at given points")
    p_eval.add_argument("fn", help=f"one of: {', '.join(_EVAL_FNS)}")
    p_eval.add_argument("--param", action="append", metavar="k=v",
                        help="function parameter, e.g. a=1.47 or p=7/32")
    p_eval.add_argument("x", nargs="+", type=float, help="evaluation points")
    p_eval.set_defaults(handler=_cmd_eval)

    p_const = sub.add_parser("constants", parents=[common],
                             help="print the sharp constants with provenance")
    p_const.set_defaults(handler=_cmd_constants)

    p_cert = sub.add_parser("certify", parents=[common],
                            help="sign-certify one convexity statement")
    p_cert.add_argument("theorem", help=f"one of: {', '.join(_CERTIFY_TABLE)}")
    p_cert.add_argument("value", help="parameter value (float or fraction like 7/32)")
    p_cert.set_defaults(handler=_cmd_certify)

    p_ver = sub.add_parser("verify", parents=[common],
                           help="run inequality grid checks")
    p_ver.add_argument("selector", help=f"one of: {', '.join(_VERIFY_SELECTORS)}")
    p_ver.add_argument("--a", type=float, default=None, help="log-shift parameter")
    p_ver.add_argument("--p", type=float, default=None, help="power parameter")
    p_ver.set_defaults(handler=_cmd_verify)

    p_tab = sub.add_parser("table", parents=[common],
                           help="emit an x,value table for external plotting")
    p_tab.add_argument("fn", help=f"one of: {', '.join(_EVAL_FNS)}")
    p_tab.add_argument("--param", action="append", metavar="k=v",
                       help="function parameter, e.g. p=0.5")
    p_tab.add_argument("--spacing", choices=("uniform", "geometric"), default="uniform")
    p_tab.set_defaults(handler=_cmd_table)

    return parser


def run_from_manifest(manifest: dict[str, Any]) -> str:
    """Re-run a manifest dict and return the rendered output text."""
    scan = manifest["scan"]
    argv = [manifest["command"]]
    params = manifest["parameters"]
    if manifest["command"] == "eval":
        argv.append(params["fn"])
        for key, val in params.items():
            if key in ("fn", "x"):
                continue
            argv += ["--param", f"{key}={val!r}"]
        argv += [repr(x) for x in params["x"]]
    elif manifest["command"] == "table":
        argv.append(params["fn"])
        for key, val in params.items():
            if key in ("fn", "spacing"):
                continue
            argv += ["--param", f"{key}={val!r}"]
        argv += ["--spacing", params["spacing"]]
    elif manifest["command"] == "certify":
        theorem = params["theorem"]
        symbol = _CERTIFY_TABLE[theorem][0]
        argv += [theorem, repr(params[symbol])]
    elif manifest["command"] == "verify":
        argv.append(params["selector"])
        if params.get("a") is not None:
            argv += ["--a", repr(params["a"])]
        if params.get("p") is not None:
            argv += ["--p", repr(params["p"])]
    argv += ["--grid-n", str(scan["n"]), "--lo", repr(scan["lo"]),
             "--hi", repr(scan["hi"]), "--offset", repr(scan["endpoint_offset"]),
             "--refine", str(scan["refine_depth"]),
             "--format", manifest["output_format"],
             "--seed", str(manifest["seed"])]
    import contextlib

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        main(argv)
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, manifest, code = args.handler(args)
    except (DomainError, ConvergenceError, BracketNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconclusiveScanError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    _emit(_render(rows, manifest, args.format), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
