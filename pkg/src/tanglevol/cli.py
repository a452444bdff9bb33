"""Command-line front end.

Every command builds a JSON report (schema ``tanglevol-report/1``). The
text format is only a flattened view of the same document. Exit status is
0 when all cross-checks pass, 1 for bad input and 2 when an identity that
must hold was found violated.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from . import bounds as B
from .diagram import (
    DiagramError,
    LinkDiagram,
    TangleSign,
    component_count,
    conway_sum,
    emit_pd,
    is_alternating,
    is_connected,
    is_prime,
    is_strongly_alternating,
    parse_pd,
    parse_tangle,
    tangle_sign,
    tangle_sum,
)
from .generate import (
    AcceptanceStats,
    RejectionBudgetExceeded,
    alternating_rational,
    make_rng,
    rational_conway_sum,
    signed_pair_sum,
    strongly_alternating_tangle,
)
from .jones import (
    CAP_ENV_VAR,
    boundary_coeffs,
    bracket,
    bracket_statesum,
    bracket_transfer,
    jones_from_bracket,
    state_sum_cap,
)
from .states import losses, state_summary
from .twist import is_east_west_twist, twist_number_tangle, twist_partition

SCHEMA = "tanglevol-report/1"
DEFAULT_SEED = 0


class InputError(Exception):
    """Bad command-line input; reported with exit status 1."""


# ---------------------------------------------------------------------------
# report helpers


def _check(cid: str, status: str, **detail) -> dict:
    return {"id": cid, "status": status, **detail}


def _skip(cid: str, reason: str) -> dict:
    return _check(cid, "skipped", reason=reason)


def _verdict(cid: str, ok: bool, **detail) -> dict:
    return _check(cid, "pass" if ok else "fail", **detail)


def _document(command: str, args: argparse.Namespace, body: dict, checks: list[dict]) -> dict:
    doc: dict[str, Any] = {
        "schema": SCHEMA,
        "tool": {"name": "tanglevol", "version": __version__},
        "command": command,
    }
    if getattr(args, "seed_used", False):
        doc["seed"] = args.seed
    doc.update(body)
    doc["checks"] = checks
    doc["status"] = "check-failed" if any(c["status"] == "fail" for c in checks) else "ok"
    return doc


def _read_text(source: str) -> str:
    """A path to a readable file, ``-`` for stdin, or literal text."""
    if source == "-":
        return sys.stdin.read()
    path = Path(source)
    try:
        if path.is_file():
            return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    return source


def _cap(args: argparse.Namespace) -> int:
    if args.state_sum_cap is not None:
        if args.state_sum_cap < 0:
            raise InputError("--state-sum-cap must be nonnegative")
        return args.state_sum_cap
    try:
        return state_sum_cap()
    except DiagramError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# analyze


def _jones_section(d: LinkDiagram, br) -> tuple[dict, Any]:
    j = jones_from_bracket(br, d.writhe())
    section = {"polynomial": str(j), "terms": j.to_pairs(), "writhe": d.writhe()}
    coeffs = None
    if not j.is_zero():
        coeffs = boundary_coeffs(j)
        section["boundary"] = coeffs.as_dict()
    return section, coeffs


def _oracle_check(d: LinkDiagram, br, cap: int) -> dict:
    if d.n_crossings > cap:
        return _skip("bracket-state-sum-oracle", f"{d.n_crossings} crossings exceed the state-sum cap {cap}")
    return _verdict("bracket-state-sum-oracle", bracket_statesum(d, cap=cap) == br)


def analyze_diagram(d: LinkDiagram, cap: int) -> tuple[dict, list[dict]]:
    checks: list[dict] = []
    c = d.n_crossings
    info: dict[str, Any] = {
        "pd": emit_pd(d),
        "crossings": c,
        "components": component_count(d),
        "alternating": is_alternating(d),
    }
    connected = is_connected(d) and not (d.free_loops and c)
    prime = is_prime(d) if c and connected else None
    info["prime"] = prime
    part = twist_partition(d)
    body: dict[str, Any] = {
        "diagram": info,
        "twist": {
            "twist_number": part.twist_number,
            "classes": [list(x) for x in part.classes],
            "closure_used": part.closure_used,
        },
    }
    br = bracket(d)
    body["jones"], coeffs = _jones_section(d, br)
    checks.append(_oracle_check(d, br, cap))
    if c == 0:
        checks.append(_skip("stoimenow-identity", "diagram has no crossings"))
        return body, checks
    summary = state_summary(d)
    states = summary.as_dict()
    states["adequate"] = summary.adequate
    stoimenow = summary.e_prime_A + summary.e_prime_B - summary.v_A - summary.v_B + 2
    states["stoimenow_quantity"] = stoimenow
    body["states"] = states
    beta_sum = coeffs.beta_sum if coeffs else None
    if summary.adequate:
        checks.append(_verdict("stoimenow-identity", stoimenow == beta_sum, stoimenow=stoimenow, beta_sum=beta_sum))
    else:
        checks.append(_skip("stoimenow-identity", "diagram is not adequate"))
    tw = part.twist_number
    alt_prime = info["alternating"] and bool(prime)
    if alt_prime and tw >= 2:
        checks.append(_verdict("dasbach-lin-twist-number", tw == beta_sum, tw=tw, beta_sum=beta_sum))
        if connected:
            checks.append(_verdict("alternating-euler-states", summary.v_A + summary.v_B == c + 2))
        body["bounds"] = [
            B.BoundReport(
                "alternating-volume",
                {"lower": B.alternating_volume_lower(tw)},
                {"tw": tw},
                {"requires_hyperbolic": True},
            ).as_dict()
        ]
    else:
        checks.append(_skip("dasbach-lin-twist-number", "needs a prime alternating diagram with tw >= 2"))
    return body, checks


def cmd_analyze(args: argparse.Namespace) -> dict:
    cap = _cap(args)
    reports, all_checks = [], []
    for source in args.inputs:
        text = _read_text(source)
        try:
            d = parse_pd(text)
        except DiagramError as exc:
            raise InputError(f"{source}: {exc}") from exc
        body, checks = analyze_diagram(d, cap)
        reports.append({"input": source if source != text else "inline", **body, "checks": checks})
        all_checks += [dict(c, input=len(reports) - 1) for c in checks]
    if len(reports) == 1:
        single = dict(reports[0])
        checks = single.pop("checks")
        return _document("analyze", args, single, checks)
    return _document("analyze", args, {"reports": reports}, all_checks)


# ---------------------------------------------------------------------------
# sum


def _sign_name(s: TangleSign) -> str:
    return s.value


def analyze_sum(tangles, cap: int) -> tuple[dict, list[dict]]:
    checks: list[dict] = []
    n = len(tangles)
    d = conway_sum(tangles)
    per = []
    for i, t in enumerate(tangles):
        per.append(
            {
                "index": i,
                "crossings": t.n_crossings,
                "sign": _sign_name(tangle_sign(t)),
                "strongly_alternating": is_strongly_alternating(t),
                "twist_number": twist_number_tangle(t),
                "east_west_twist": is_east_west_twist(t),
            }
        )
    pos = [i for i, p in enumerate(per) if p["sign"] == "positive"]
    neg = [i for i, p in enumerate(per) if p["sign"] == "negative"]
    components = component_count(d)
    tw = twist_partition(d).twist_number
    body: dict[str, Any] = {
        "tangles": per,
        "sign_split": {"positive": pos, "negative": neg},
        "diagram": {
            "pd": emit_pd(d),
            "crossings": d.n_crossings,
            "components": components,
            "knot": components == 1,
            "alternating": is_alternating(d),
            "twist_number": tw,
        },
    }
    tw_sum = sum(p["twist_number"] for p in per)
    checks.append(_verdict("twist-merge-bound", tw <= tw_sum, tw=tw, tangle_sum=tw_sum))
    if all(p["strongly_alternating"] for p in per):
        checks.append(_verdict("twist-additivity", tw == tw_sum, tw=tw, tangle_sum=tw_sum))

    br = bracket_transfer(tangles)
    body["jones"], coeffs = _jones_section(d, br)
    checks.append(_verdict("transfer-sweep-agreement", br == bracket(d)))
    checks.append(_oracle_check(d, br, cap))
    beta_sum = coeffs.beta_sum if coeffs else None

    if d.n_crossings and not d.free_loops and is_connected(d):
        rep = losses(d)
        body["losses"] = rep.as_dict()
        summary = state_summary(d)
        checks.append(
            _verdict(
                "loss-bookkeeping",
                rep.total_loss == summary.reduction_loss,
                ell_in=rep.ell_in,
                ell_ext=rep.ell_ext,
            )
        )

    # the sandwich needs T+ and T- (the sums of each sign) strongly alternating
    def side(indices):
        return tangle_sum([tangles[i] for i in indices]) if indices else None

    reason = None
    if components != 1:
        reason = "the sum is not a knot"
    elif not pos or not neg:
        reason = "needs tangles of both signs"
    elif len(pos) + len(neg) != n:
        reason = "some tangle is not alternating"
    else:
        tp, tm = side(pos), side(neg)
        if not (is_strongly_alternating(tp) and is_strongly_alternating(tm)):
            reason = "T+ or T- is not strongly alternating"
    if reason:
        checks.append(_skip("tangle-sum-jones-sandwich", reason))
    else:
        ok = tw / 2 - 2 <= beta_sum <= 2 * tw
        checks.append(_verdict("tangle-sum-jones-sandwich", ok, tw=tw, beta_sum=beta_sum))
        if n >= 12:
            body.setdefault("bounds", []).append(B.jones_volume_bounds(n, beta_sum).as_dict())

    precondition = []
    if n < 12:
        precondition.append("fewer than 12 tangles")
    if any(p["east_west_twist"] for p in per):
        precondition.append("a tangle is an east-west twist")
    if any(not is_alternating(t) for t in tangles):
        precondition.append("a tangle is not alternating")
    if tw < 3:
        precondition.append("twist number below 3")
    if precondition:
        body["conway_sum_volume"] = {"applicable": False, "reasons": precondition}
    else:
        body.setdefault("bounds", []).append(B.conway_sum_bounds(n, tw).as_dict())
        body["conway_sum_volume"] = {"applicable": True, "reasons": []}
    return body, checks


def cmd_sum(args: argparse.Namespace) -> dict:
    cap = _cap(args)
    tangles = []
    for source in args.tangles:
        try:
            tangles.append(parse_tangle(_read_text(source)))
        except DiagramError as exc:
            raise InputError(f"{source}: {exc}") from exc
    body, checks = analyze_sum(tangles, cap)
    return _document("sum", args, body, checks)


# ---------------------------------------------------------------------------
# generate


def _size(value: int, name: str) -> int:
    if value < 1:
        raise InputError(f"{name} must be positive, got {value}")
    return value


def cmd_generate(args: argparse.Namespace) -> dict:
    args.seed_used = True
    rng = make_rng(args.seed)
    count = _size(args.count, "--count")
    if args.crossings is None:
        args.crossings = 9 if args.kind in ("strongly-alternating-tangle", "signed-pair") else 6
    stats = AcceptanceStats()
    instances = []
    try:
        for _ in range(count):
            if args.kind == "alternating-rational":
                d = alternating_rational(rng, _size(args.crossings, "--crossings"), args.budget, stats)
                instances.append({"pd": emit_pd(d), "crossings": d.n_crossings})
            elif args.kind == "strongly-alternating-tangle":
                size = _size(args.crossings, "--crossings")
                if size < 4:
                    raise InputError("strongly alternating tangles need --crossings >= 4")
                sign = 1 if args.sign == "positive" else -1
                t = strongly_alternating_tangle(rng, sign, size, args.budget, stats)
                instances.append({"tangle": emit_pd(t), "crossings": t.n_crossings, "sign": args.sign})
            elif args.kind == "conway-sum":
                n = _size(args.n, "--n")
                signs = [int(s) for s in rng.choice([-1, 1], size=n)]
                inst = rational_conway_sum(rng, n, (1, max(1, args.crossings)), signs)
                stats.attempts += 1
                stats.accepted += 1
                instances.append(_sum_record(inst))
            else:  # signed-pair
                size = _size(args.crossings, "--crossings")
                if size < 4:
                    raise InputError("signed-pair tangles need --crossings >= 4")
                inst = signed_pair_sum(rng, size, True, args.budget, stats)
                instances.append(_sum_record(inst))
    except RejectionBudgetExceeded as exc:
        raise InputError(str(exc)) from exc
    body = {
        "kind": args.kind,
        "parameters": {
            "count": count,
            "crossings": args.crossings,
            "n": args.n,
            "sign": args.sign,
            "budget": args.budget,
        },
        "acceptance": stats.as_dict(),
        "instances": instances,
    }
    return _document("generate", args, body, [])


def _sum_record(inst) -> dict:
    d = inst.diagram
    return {
        "pd": emit_pd(d),
        "crossings": d.n_crossings,
        "components": component_count(d),
        "tangles": [emit_pd(t) for t in inst.tangles],
        "tangle_of": list(d.tangle_of or ()),
    }


# ---------------------------------------------------------------------------
# bounds


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise InputError(f"not a complex number: {text!r}") from exc


def cmd_bounds(args: argparse.Namespace) -> dict:
    what = args.which
    checks: list[dict] = []
    if what == "psi":
        body = {"formula": "psi", "inputs": {"x": args.x}, "values": {"psi": B.psi(args.x)}}
    elif what == "filling":
        body = {
            "formula": "dehn-filling-factor",
            "inputs": {"l_min": args.l},
            "values": {"factor": B.dehn_filling_factor(args.l)},
        }
    elif what == "periodic":
        body = _bounds_periodic(args)
    elif what == "conway":
        body = B.conway_sum_bounds(args.n, args.tw).as_dict()
    elif what == "jones":
        body = B.jones_volume_bounds(args.n, args.beta_sum).as_dict()
    elif what == "slopes":
        body = _bounds_slopes(args)
    else:
        body = _bounds_census(args)
    return _document(f"bounds {what}", args, {"bounds": body}, checks)


def _bounds_periodic(args) -> dict:
    out = B.periodic_classify(args.p, args.lens, args.manifold, args.volume).as_dict()
    out["formula"] = "periodic-volume"
    if args.volume is not None:
        out["periodic_lower_bound"] = B.periodic_lower_bound(args.p, args.volume)
    return out


def _bounds_slopes(args) -> dict:
    if args.meridian is None and args.longitude is None:
        lattice = B.three_chain_lattice()
        name = "three-chain"
    elif args.meridian is None or args.longitude is None:
        raise InputError("give both --meridian and --longitude, or neither")
    else:
        lattice = B.CuspLattice(_parse_complex(args.meridian), _parse_complex(args.longitude))
        name = "custom"
    slopes = B.enumerate_short_slopes(lattice, args.cutoff)
    rows = []
    for p, q in slopes:
        row = {"slope": "1/0" if q == 0 else B.slope_text(p, q), "p": p, "q": q}
        row["length"] = lattice.length(p, q)
        if name == "three-chain":
            row["non_hyperbolic_filling"] = (p, q) in B.NON_HYPERBOLIC_SLOPES
        rows.append(row)
    return {
        "formula": "short-slopes",
        "inputs": {"lattice": name, "cutoff": args.cutoff},
        "count": len(rows),
        "slopes": rows,
    }


def _bounds_census(args) -> dict:
    entries = B.census_lookup(args.key) if args.key else list(B.census())
    return {"formula": "census", "inputs": {"key": args.key}, "rows": [e.as_dict() for e in entries]}


# ---------------------------------------------------------------------------
# output and entry point


def _flatten(value, prefix: str = ""):
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        for i, v in enumerate(value):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, value


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=False, allow_nan=False)
    lines = []
    for key, value in _flatten(doc):
        if isinstance(value, list):
            value = ", ".join(str(v) for v in value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for random generation")
    p.add_argument(
        "--state-sum-cap",
        type=int,
        default=None,
        help=f"largest crossing count for the explicit state sum (env {CAP_ENV_VAR})",
    )
    p.add_argument("--tolerance", type=float, default=B.TOLERANCE, help="float comparison tolerance")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _common(common)
    parser = argparse.ArgumentParser(prog="tanglevol", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"tanglevol {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", parents=[common], help="analyze PD codes (files or inline text)")
    pa.add_argument("inputs", nargs="+")
    pa.set_defaults(func=cmd_analyze)

    ps = sub.add_parser("sum", parents=[common], help="Conway sum of tangles, west to east")
    ps.add_argument("tangles", nargs="+")
    ps.set_defaults(func=cmd_sum)

    pg = sub.add_parser("generate", parents=[common], help="reproducible random instances")
    pg.add_argument(
        "kind",
        choices=("alternating-rational", "strongly-alternating-tangle", "conway-sum", "signed-pair"),
    )
    pg.add_argument(
        "--crossings", type=int, default=None, help="size cap (default 6 for rational kinds, 9 otherwise)"
    )
    pg.add_argument("--n", type=int, default=2, help="number of tangles for conway-sum")
    pg.add_argument("--count", type=int, default=1)
    pg.add_argument("--sign", choices=("positive", "negative"), default="positive")
    pg.add_argument("--budget", type=int, default=2000, help="rejection-sampling attempts")
    pg.set_defaults(func=cmd_generate)

    pb = sub.add_parser("bounds", help="evaluate volume bounds and census data")
    bsub = pb.add_subparsers(dest="which", required=True)
    x = bsub.add_parser("psi", parents=[common])
    x.add_argument("--x", type=float, required=True)
    x = bsub.add_parser("filling", parents=[common])
    x.add_argument("--l", type=float, required=True, help="shortest filling slope length")
    x = bsub.add_parser("periodic", parents=[common])
    x.add_argument("--p", type=int, required=True)
    x.add_argument("--lens")
    x.add_argument("--manifold")
    x.add_argument("--volume", type=float)
    x = bsub.add_parser("conway", parents=[common])
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--tw", type=int, required=True)
    x = bsub.add_parser("jones", parents=[common])
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--beta-sum", type=int, required=True)
    x = bsub.add_parser("slopes", parents=[common])
    x.add_argument("--cutoff", type=float, default=12.0)
    x.add_argument("--meridian", help="complex translation, e.g. 1.5+1.3229j")
    x.add_argument("--longitude")
    x = bsub.add_parser("census", parents=[common])
    x.add_argument("--key", help="manifold name or lens space, e.g. m016 or L(18,5)")
    pb.set_defaults(func=cmd_bounds)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    args.seed_used = False
    try:
        if not math.isfinite(args.tolerance) or args.tolerance < 0:
            raise InputError("--tolerance must be a nonnegative number")
        doc = args.func(args)
    except (InputError, DiagramError, ValueError) as exc:
        print(f"tanglevol: error: {exc}", file=sys.stderr)
        return 1
    print(render(doc, args.format))
    return 2 if doc["status"] == "check-failed" else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
