"""Command-line entry point: ``qhbounds <verb> ...``.

Exit codes: 0 on success, 1 when a bound's hypotheses are not all
satisfied (or no factorization exists), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import catalog
from .algebra import RingSpec, validate
from .bounds import (BoundReport, bound_chekanov, bound_fixed_points, bound_fqf, bound_lfqf,
                     cuplength)
from .errors import NoFactorization, QHError
from .factorization import FqfCertificate, find_best_fqf, verify_fqf
from .filtered import spectral_invariant
from .grid import ls_selector, parse_selector
from .io import dumps_ring, load_complex, load_grid, load_ring

EXIT_OK, EXIT_HYPOTHESIS, EXIT_INPUT = 0, 1, 2
DEFAULT_SEED = 0


class InputError(QHError):
    pass


def resolve_ring(ref: Sequence[str]) -> RingSpec:
    """A catalog key with integer parameters, or a path to a ring file."""
    if not ref:
        raise InputError("missing ring reference")
    head, args = ref[0], ref[1:]
    if head in catalog.CATALOG:
        try:
            params = [int(a) for a in args]
        except ValueError as exc:
            raise InputError(f"catalog parameters must be integers: {args}") from exc
        return catalog.build(head, *params)
    path = Path(head)
    if path.exists():
        if args:
            raise InputError("a ring file takes no parameters")
        return load_ring(path)
    raise InputError(f"{head!r} is neither a catalog key ({', '.join(catalog.CATALOG)}) nor a file")


def _emit(args, payload: dict) -> None:
    if getattr(args, "emit", None):
        Path(args.emit).write_text(json.dumps(payload, indent=2) + "\n")


def _output(args, text: str, data) -> None:
    if args.format == "structured":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _fmt_value(v) -> str:
    return str(v)


# -- verbs ----------------------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = [{"key": e.key, "parameters": e.params, "provenance": e.provenance}
                for e in catalog.CATALOG.values()]
        text = "\n".join(f"{r['key']:<14}{r['parameters']:<16}{r['provenance']}" for r in rows)
        _output(args, text, rows)
        return EXIT_OK
    if not args.ring:
        raise InputError("catalog export needs a catalog key")
    print(dumps_ring(resolve_ring(args.ring)))
    return EXIT_OK


def cmd_ring(args) -> int:
    ring = resolve_ring(args.ring)
    report = validate(ring)
    lines = [repr(ring), f"  context: {ring.context.to_dict()}",
             "  basis: " + ", ".join(f"{b.id}({b.degree})" for b in ring.basis),
             f"  validation: {'pass' if report.ok else 'FAIL'}"]
    lines += [f"    {f}" for f in report.failures]
    data = {"ring": ring.name, "kind": ring.kind.value, "rank": len(ring.basis),
            "valid": report.ok, "failures": report.failures}
    _output(args, "\n".join(lines), data)
    return EXIT_OK if report.ok else EXIT_HYPOTHESIS


def cmd_cuplength(args) -> int:
    rep = cuplength(resolve_ring(args.ring))
    _output(args, str(rep.value), rep.to_dict())
    return EXIT_OK


def _cert_payload(cert: FqfCertificate, ref: Sequence[str]) -> dict:
    d = cert.to_dict()
    d["ring_ref"] = list(ref)
    return d


def cmd_fqf(args) -> int:
    if args.action == "verify":
        data = json.loads(Path(args.target[0]).read_text())
        ring = resolve_ring(data["ring_ref"])
        cert = FqfCertificate.from_dict(data, ring)
        ok = verify_fqf(cert)
        _output(args, f"{'valid' if ok else 'INVALID'}: {cert}", {"valid": ok, **cert.to_dict()})
        return EXIT_OK if ok else EXIT_HYPOTHESIS
    ring = resolve_ring(args.target)
    if args.lagrangian and ring.kind.value != "LAGRANGIAN":
        raise InputError(f"--lagrangian given but {ring.name} is an ambient ring")
    cert = find_best_fqf(ring, args.max_length)
    if cert is None:
        _output(args, f"no factorization of the unit on {ring.name}", {"certificate": None})
        return EXIT_HYPOTHESIS
    _emit(args, _cert_payload(cert, args.target))
    _output(args, f"{cert}\nscore {cert.score}", cert.to_dict())
    return EXIT_OK


def run_bound(kind: str, ring: RingSpec, args) -> BoundReport:
    if kind == "fqf":
        return bound_fqf(ring, args.max_length, assert_nonnarrow=args.assert_nonnarrow,
                         assert_isolated=args.assert_isolated)
    if kind == "lfqf":
        return bound_lfqf(ring, args.max_length, assert_wide=args.assert_wide)
    if kind == "fixed":
        return bound_fixed_points(ring, args.max_length, assert_isolated=args.assert_isolated)
    if args.gamma is None:
        raise InputError("the chekanov bound needs --gamma")
    return bound_chekanov(ring, args.gamma, assert_wide=args.assert_wide)


def cmd_bound(args) -> int:
    ring = resolve_ring(args.ring)
    try:
        rep = run_bound(args.theorem, ring, args)
    except NoFactorization as exc:
        _output(args, str(exc), {"value": None, "error": str(exc)})
        return EXIT_HYPOTHESIS
    if isinstance(rep.certificate, FqfCertificate):
        _emit(args, _cert_payload(rep.certificate, args.ring))
    _output(args, rep.render(), rep.to_dict())
    return EXIT_OK if rep.conclusive else EXIT_HYPOTHESIS


def cmd_spectral(args) -> int:
    cx = load_complex(args.complex)
    value = spectral_invariant(cx, args.cls)
    _output(args, _fmt_value(value), {"class": args.cls, "value": _fmt_value(value)})
    return EXIT_OK


def cmd_ls_selector(args) -> int:
    f = load_grid(args.grid)
    value = ls_selector(f, parse_selector(f.complex, args.cls))
    _output(args, _fmt_value(value), {"class": args.cls, "value": _fmt_value(value)})
    return EXIT_OK


# -- the reproduction table -------------------------------------------------------


def reproduce_rows(n_max: int = 8) -> list[dict]:
    """One row per (family, n, theorem) with the computed bound and the published value."""
    rows = []

    def add(family, n, space, theorem, rep: BoundReport, expected: int):
        rows.append({"family": family, "n": n, "space": space, "theorem": theorem,
                     "bound": rep.value, "expected": expected})

    for n in range(1, n_max + 1):
        add("cp", n, f"CP^{n} (N_L={n + 1})", "FQF",
            bound_fqf(catalog.cp_n_ambient(n, n + 1), assert_nonnarrow=True, assert_isolated=True),
            -(-(n + 1) // 2))
        add("cpgamma", n, f"CP^{n}", "fixed points",
            bound_fixed_points(catalog.cp_n_gamma(n), assert_isolated=True), n + 1)
        add("quadric", n, f"Q^{2 * n} ({'odd' if n % 2 else 'even'} k={n})", "FQF",
            bound_fqf(catalog.quadric_ambient(n), assert_nonnarrow=True, assert_isolated=True), 2)
        add("clifford", n, f"Clifford T^{n}", "LFQF", bound_lfqf(catalog.clifford_lqh(n), assert_wide=True), 2)
        if n == 1:
            add("equator", n, "equator in S^2", "LFQF", bound_lfqf(catalog.equator(), assert_wide=True), 2)
        add("rp", n, f"RP^{n} (gamma=0)", "Chekanov",
            bound_chekanov(catalog.rp_n_lagrangian(n), 0, assert_wide=True), n + 1)
        add("clifford", n, f"Clifford T^{n} (gamma=0)", "Chekanov",
            bound_chekanov(catalog.clifford_lqh(n), 0, assert_wide=True), n + 1)
    return rows


def reproduce_paper_table(n_max: int = 8) -> str:
    rows = reproduce_rows(n_max)
    w = max(len(r["space"]) for r in rows)
    lines = [f"{'space':<{w}}  {'theorem':<13}{'bound':>6}{'expected':>10}  status"]
    for r in rows:
        ok = "ok" if r["bound"] == r["expected"] else "MISMATCH"
        lines.append(f"{r['space']:<{w}}  {r['theorem']:<13}{r['bound']!s:>6}{r['expected']:>10}  {ok}")
    return "\n".join(lines)


def cmd_reproduce(args) -> int:
    rows = reproduce_rows(args.n_max)
    _output(args, reproduce_paper_table(args.n_max), rows)
    return EXIT_OK if all(r["bound"] == r["expected"] for r in rows) else EXIT_HYPOTHESIS


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(parser, top: bool) -> None:
        # subcommands accept the same flags without overriding values given before the verb
        parser.add_argument("--seed", type=int, default=DEFAULT_SEED if top else argparse.SUPPRESS,
                            help="seed for any randomised step (default %d)" % DEFAULT_SEED)
        parser.add_argument("--format", choices=("text", "structured"),
                            default="text" if top else argparse.SUPPRESS)

    common = argparse.ArgumentParser(add_help=False)
    global_flags(common, top=False)
    p = argparse.ArgumentParser(prog="qhbounds",
                                description="Quantum homology bounds for Lagrangian intersections.")
    global_flags(p, top=True)
    sub = p.add_subparsers(dest="verb", required=True, metavar="verb")

    c = sub.add_parser("catalog", parents=[common], help="list or export built-in rings")
    c.add_argument("action", choices=("list", "export"))
    c.add_argument("ring", nargs="*")
    c.set_defaults(func=cmd_catalog)

    r = sub.add_parser("ring", parents=[common], help="show and validate a ring")
    r.add_argument("ring", nargs="+")
    r.set_defaults(func=cmd_ring)

    cl = sub.add_parser("cuplength", parents=[common], help="classical cup-length of a ring")
    cl.add_argument("ring", nargs="+")
    cl.set_defaults(func=cmd_cuplength)

    f = sub.add_parser("fqf", parents=[common], help="search or verify (L)FQF certificates")
    f.add_argument("action", choices=("search", "verify"))
    f.add_argument("target", nargs="+", help="ring reference, or certificate file for verify")
    f.add_argument("--max-length", type=int, default=None)
    f.add_argument("--lagrangian", action="store_true", help="require the LFQF variant")
    f.add_argument("--emit", metavar="FILE", help="write a replayable certificate")
    f.set_defaults(func=cmd_fqf)

    b = sub.add_parser("bound", parents=[common], help="evaluate an intersection lower bound")
    b.add_argument("theorem", choices=("fqf", "lfqf", "fixed", "chekanov"))
    b.add_argument("ring", nargs="+")
    b.add_argument("--gamma", type=Fraction, default=None, help="spectral norm value (exact rational)")
    b.add_argument("--assert-wide", action="store_true")
    b.add_argument("--assert-nonnarrow", action="store_true")
    b.add_argument("--assert-isolated", action="store_true")
    b.add_argument("--max-length", type=int, default=None)
    b.add_argument("--emit", metavar="FILE")
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("spectral", parents=[common], help="spectral invariant of a class")
    s.add_argument("complex")
    s.add_argument("--class", dest="cls", required=True)
    s.set_defaults(func=cmd_spectral)

    g = sub.add_parser("ls-selector", parents=[common], help="classical minimax value on a grid")
    g.add_argument("grid")
    g.add_argument("--class", dest="cls", required=True)
    g.set_defaults(func=cmd_ls_selector)

    rp = sub.add_parser("reproduce", parents=[common], help="print the bound table for n = 1..8")
    rp.add_argument("--n-max", type=int, default=8)
    rp.set_defaults(func=cmd_reproduce)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QHError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
