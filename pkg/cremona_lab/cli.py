#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
cremona-lab command line

Usage
  python -m cremona_lab verify table p4 [--fast]
  python -m cremona_lab verify entry J5_1 [--full]
  python -m cremona_lab catalog list [--table p3]
  python -m cremona_lab algebra info <id|file>
  python -m cremona_lab map check-involution <file>
  python -m cremona_lab map multidegree <file> [--seed N] [--trials K]
  python -m cremona_lab ideal hilbert <file>
  python -m cremona_lab construct falpha 0 0 0

Every file argument accepts "-" for standard input. The payload goes to
stdout as JSON; --pretty adds a short human summary on stderr.

Exit codes
  0  ok
  1  a verification failed (the mathematics says no)
  2  malformed input or any other tool error
"""

import argparse
import json
import logging
import pathlib
import sys
import time
from dataclasses import dataclass
from typing import Any, List, Optional

from . import constructions
from .catalog import TABLES, algebra_from_table, load_catalog, summarize, verify_entry, verify_table
from .cremona import RationalMap, check_involution, multidegree, scheme_type, verify_inverse
from .errors import InputError, LabError
from .exact_poly import DEGREVLEX, LEX, Polynomial, as_fraction, parse_polynomial
from .groebner import Ideal, ideal_intersection, is_groebner, normal_form, saturation
from .hilbert import hilbert
from .jordan import Algebra, adjoint_map, check_jordan, peirce, radical, rank_profile
from .settings import Settings, load_settings

log = logging.getLogger("cremona_lab.cli")

OK, FAIL, ERROR = "ok", "fail", "error"
EXIT_CODES = {OK: 0, FAIL: 1, ERROR: 2}
ORDERS = {"degrevlex": DEGREVLEX, "lex": LEX}


# ------------ input helpers ------------
def read_json(path: str, field: str):
    try:
        text = sys.stdin.read() if path == "-" else pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}", field=field)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON ({e.msg} at line {e.lineno})", field=field)


def read_map(path: str, field: str = "map") -> RationalMap:
    data = read_json(path, field)
    if isinstance(data, list):
        data = {"components": data}
    return RationalMap.from_json(data, field=field)


def read_ideal(path: str, field: str = "ideal") -> Ideal:
    return Ideal.from_json(read_json(path, field), field=field)


def read_algebra(ref: str, field: str = "algebra") -> Algebra:
    catalog = load_catalog()
    if ref in catalog:
        return catalog.algebra(ref)
    data = read_json(ref, field)
    if isinstance(data, dict) and "products" in data:
        try:
            return algebra_from_table(data, pathlib.Path(ref).stem, field)
        except LabError as e:
            raise InputError(str(e), field=field)
    return Algebra.from_json(data, field=field, name=pathlib.Path(ref).stem)


# ------------ output helpers ------------
def map_json(f: RationalMap) -> dict:
    return {"n": f.n, "degree": f.degree, "vars": list(f.vars), "components": f.render()}


def ideal_json(I: Ideal, order=DEGREVLEX) -> dict:
    return {"vars": list(I.vars), "gens": [g.render() for g in I.groebner_basis(order)]}


@dataclass
class CommandResult:
    """Only ``payload`` (and ``lines``) reach stdout, so fixed seeds give identical bytes."""

    payload: Any
    status: str = OK
    lines: Optional[List[dict]] = None
    summary: str = ""
    seed_echo: Optional[int] = None
    timing: float = 0.0  # ms

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


# ------------ verify / catalog ------------
def cmd_verify_table(args, s: Settings) -> CommandResult:
    depth = "fast" if args.fast else "full"
    reports = verify_table(args.table, depth, s, workers=args.workers)
    summary = summarize(args.table, reports)
    lines = [r.to_json(timing=args.timing) for r in reports]
    status = OK if summary["fail"] == 0 else FAIL
    text = f"table={args.table} rows={summary['entries']} pass={summary['pass']} fail={summary['fail']}"
    return CommandResult(summary, status, lines, text, seed_echo=s.seed)


def cmd_verify_entry(args, s: Settings) -> CommandResult:
    catalog = load_catalog()
    rep = verify_entry(catalog.get(args.id), "full" if args.full else "fast", s, catalog)
    failed = ", ".join(c.name for c in rep.failed())
    return CommandResult(rep.to_json(timing=args.timing), OK if rep.ok else FAIL,
                         summary=f"{args.id}: {'pass' if rep.ok else 'FAIL ' + failed}", seed_echo=s.seed)


def cmd_catalog_list(args, s: Settings) -> CommandResult:
    catalog = load_catalog()
    entries = catalog.table(args.table) if args.table else list(catalog)
    return CommandResult([e.summary() for e in entries], summary=f"{len(entries)} entries")


def cmd_catalog_show(args, s: Settings) -> CommandResult:
    return CommandResult(load_catalog().get(args.id).to_json())


# ------------ algebra ------------
def cmd_algebra_info(args, s: Settings) -> CommandResult:
    A = read_algebra(args.algebra)
    jc = check_jordan(A)
    out = {"name": A.name, "dim": A.dim, "basis": list(A.basis), "jordan": jc.to_json(), "unital": A.unit is not None}
    if jc.ok and A.unit is not None:
        prof = rank_profile(A)
        out["profile"] = prof.to_json()
        if prof.rank == 3:
            out["adjoint"] = map_json(adjoint_map(A))
        out["radical"] = radical(A).to_json()
    if args.idempotent:
        u = [as_fraction(a) for a in args.idempotent.split(",")]
        out["peirce"] = peirce(A, u).to_json()
    return CommandResult(out, OK if jc.ok else FAIL, summary=f"{A.name or 'algebra'} dim={A.dim} jordan={jc.ok}")


# ------------ maps ------------
def cmd_map_involution(args, s: Settings) -> CommandResult:
    res = check_involution(read_map(args.file))
    return CommandResult(res.to_json(), OK if res.ok else FAIL, summary=f"involution ok={res.ok}")


def cmd_map_inverse(args, s: Settings) -> CommandResult:
    res = verify_inverse(read_map(args.f, "f"), read_map(args.g, "g"))
    return CommandResult(res.to_json(), OK if res.ok else FAIL, summary=f"inverse ok={res.ok}")


def cmd_map_multidegree(args, s: Settings) -> CommandResult:
    f = read_map(args.file)
    md = multidegree(f, s.seed, s.trials, inverse_degree=args.inverse_degree,
                     coefficient_range=s.coefficient_range, workers=s.workers)
    return CommandResult(md.to_json(), summary=f"mdeg={list(md.entries)}", seed_echo=md.seed)


def cmd_map_type(args, s: Settings) -> CommandResult:
    st = scheme_type(read_map(args.file))
    return CommandResult(st.to_json(), summary=f"type {st.label}, hp = {st.hilbert_polynomial}")


# ------------ ideals ------------
def cmd_ideal_hilbert(args, s: Settings) -> CommandResult:
    data = hilbert(read_ideal(args.file))
    return CommandResult(data.to_json(), summary=f"dim={data.dimension} deg={data.degree}")


def cmd_ideal_saturate(args, s: Settings) -> CommandResult:
    I = read_ideal(args.ideal, "ideal")
    J = read_ideal(args.by, "by")
    return CommandResult(ideal_json(saturation(I, J, s.saturation_max_iter)))


def cmd_ideal_intersect(args, s: Settings) -> CommandResult:
    I = read_ideal(args.first, "first")
    J = read_ideal(args.second, "second")
    return CommandResult(ideal_json(ideal_intersection(I, J)))


def cmd_ideal_groebner(args, s: Settings) -> CommandResult:
    I = read_ideal(args.file)
    order = ORDERS[args.order]
    G = I.groebner_basis(order)
    out = ideal_json(I, order)
    out["order"] = args.order
    out["is_groebner"] = is_groebner(G, order)
    return CommandResult(out, summary=f"{len(G)} basis elements")


def cmd_ideal_normal_form(args, s: Settings) -> CommandResult:
    I = read_ideal(args.ideal, "ideal")
    raw = read_json(args.poly, "poly")
    p = parse_polynomial(raw, I.vars) if isinstance(raw, str) else Polynomial.from_json(raw, field="poly")
    if p.vars != I.vars:
        raise InputError("polynomial and ideal use different variables", field="poly.vars")
    r = normal_form(p, I)
    return CommandResult({"normal_form": r.render(), "member": r.is_zero()})


# ------------ constructions ------------
def _construct(f: RationalMap, extra: Optional[dict] = None) -> CommandResult:
    res = check_involution(f) if len(f.components) == len(f.vars) else None
    out = map_json(f)
    if res is not None:
        out["involution"] = res.to_json()
    if extra:
        out.update(extra)
    ok = res is None or res.ok
    return CommandResult(out, OK if ok else FAIL, summary=f"P^{f.n} degree {f.degree} involution={ok}")


def cmd_construct_falpha(args, s: Settings) -> CommandResult:
    return _construct(constructions.falpha(args.a1, args.a2, args.a3))


def cmd_construct_fn(args, s: Settings) -> CommandResult:
    return _construct(constructions.f_n(args.n))


def cmd_construct_flambda(args, s: Settings) -> CommandResult:
    return _construct(constructions.f_lambda(as_fraction(args.lam)))


def cmd_construct_standard(args, s: Settings) -> CommandResult:
    return _construct(constructions.standard_involution(args.n))


def cmd_construct_spampinato(args, s: Settings) -> CommandResult:
    f = read_map(args.file)
    N = parse_polynomial(args.norm, f.vars) if args.norm else None
    return _construct(constructions.spampinato_lift(f, N))


def cmd_construct_zorn(args, s: Settings) -> CommandResult:
    J = read_algebra(args.algebra)
    mode = "sampled" if args.sampled else ("symbolic" if args.symbolic else "auto")
    chk = constructions.verify_zorn(J, mode, seed=s.seed, points=s.zorn_sample_points,
                                    symbolic_max_dim=s.zorn_symbolic_max_dim)
    out = map_json(chk.map)
    out.update({k: v for k, v in chk.to_json().items() if k != "map"})
    if chk.mode == "sampled":
        out["seed"] = s.seed
    return CommandResult(out, OK if chk.ok else FAIL, summary=f"zorn {J.name} {chk.mode} ok={chk.ok}",
                         seed_echo=s.seed if chk.mode == "sampled" else None)


def cmd_construct_glue(args, s: Settings) -> CommandResult:
    spec = constructions.GluingSpec.from_json(read_json(args.file, "spec"))
    return _construct(constructions.glue(spec))


# ------------ parser ------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="Indent JSON and print a summary on stderr")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    common.add_argument("--seed", type=int, default=None, help="Seed for randomised checks (default: CREMONA_LAB_SEED)")
    common.add_argument("--trials", type=int, default=None, help="Independent multidegree trials")
    common.add_argument("--workers", type=int, default=None, help="Processes for table fan-out")
    common.add_argument("--conf", type=str, default=None, help="Alternate YAML settings file")
    common.add_argument("--timing", action="store_true", help="Include wall times in verification reports")

    ap = argparse.ArgumentParser(prog="cremona-lab", description="Jordan algebras and quadro-quadric Cremona maps.")
    sub = ap.add_subparsers(dest="group", required=True)

    def group(name, help):
        p = sub.add_parser(name, help=help)
        return p.add_subparsers(dest="command", required=True)

    def command(grp, name, fn, help):
        p = grp.add_parser(name, help=help, parents=[common])
        p.set_defaults(fn=fn)
        return p

    verify = group("verify", "Re-check catalog rows")
    p = command(verify, "table", cmd_verify_table, "Verify every row of a table (JSON lines + summary)")
    p.add_argument("table", choices=TABLES)
    p.add_argument("--fast", action="store_true", help="Skip multidegree and decomposition checks")
    p = command(verify, "entry", cmd_verify_entry, "Verify one row")
    p.add_argument("id")
    p.add_argument("--full", action="store_true", help="Include multidegree and decomposition checks")

    cat = group("catalog", "Browse the shipped tables")
    p = command(cat, "list", cmd_catalog_list, "List rows")
    p.add_argument("--table", choices=TABLES, default=None)
    p = command(cat, "show", cmd_catalog_show, "Print one row as stored")
    p.add_argument("id")

    alg = group("algebra", "Structure of a commutative algebra")
    p = command(alg, "info", cmd_algebra_info, "Jordan check, rank profile, adjoint, radical")
    p.add_argument("algebra", help="Catalog id or JSON file")
    p.add_argument("--idempotent", default=None, help="Comma-separated idempotent for a Peirce decomposition")

    mp = group("map", "Rational maps")
    p = command(mp, "check-involution", cmd_map_involution, "f∘f = c·id")
    p.add_argument("file")
    p = command(mp, "verify-inverse", cmd_map_inverse, "g∘f = c·id")
    p.add_argument("f")
    p.add_argument("g")
    p = command(mp, "multidegree", cmd_map_multidegree, "Multidegree by residual saturation")
    p.add_argument("file")
    p.add_argument("--inverse-degree", type=int, default=None, help="Degree of the inverse (default: that of f)")
    p = command(mp, "type", cmd_map_type, "Base-scheme type from the Hilbert polynomial")
    p.add_argument("file")

    idl = group("ideal", "Polynomial ideals")
    p = command(idl, "hilbert", cmd_ideal_hilbert, "Hilbert series and polynomial")
    p.add_argument("file")
    p = command(idl, "saturate", cmd_ideal_saturate, "I : J^inf")
    p.add_argument("ideal")
    p.add_argument("by")
    p = command(idl, "intersect", cmd_ideal_intersect, "I ∩ J")
    p.add_argument("first")
    p.add_argument("second")
    p = command(idl, "groebner", cmd_ideal_groebner, "Reduced Gröbner basis")
    p.add_argument("file")
    p.add_argument("--order", choices=sorted(ORDERS), default="degrevlex")
    p = command(idl, "normal-form", cmd_ideal_normal_form, "Remainder of a polynomial modulo an ideal")
    p.add_argument("poly")
    p.add_argument("ideal")

    con = group("construct", "Explicit involutions")
    p = command(con, "falpha", cmd_construct_falpha, "The P^(2+|a|) family")
    for name in ("a1", "a2", "a3"):
        p.add_argument(name, type=int)
    p = command(con, "fn", cmd_construct_fn, "The P^(2n) family")
    p.add_argument("n", type=int)
    p = command(con, "flambda", cmd_construct_flambda, "The one-parameter P^4 family")
    p.add_argument("lam", help="Rational parameter, e.g. 3/2")
    p = command(con, "standard", cmd_construct_standard, "Standard involution of P^(n-1)")
    p.add_argument("n", type=int)
    p = command(con, "spampinato", cmd_construct_spampinato, "Lift an involution one dimension up")
    p.add_argument("file")
    p.add_argument("--norm", default=None, help="Norm N as a polynomial in the map's variables")
    p = command(con, "zorn", cmd_construct_zorn, "Cubic involution from Zorn matrices")
    p.add_argument("algebra", help="Catalog id or JSON file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--sampled", action="store_true", help="Check at seeded random points")
    mode.add_argument("--symbolic", action="store_true", help="Compose symbolically")
    p = command(con, "glue", cmd_construct_glue, "Glue radical blocks onto a semi-simple involution")
    p.add_argument("file")
    return ap


def _emit(result: CommandResult, pretty: bool):
    indent = 2 if pretty else None
    if result.lines is not None:
        for line in result.lines:
            sys.stdout.write(json.dumps(line, sort_keys=True) + "\n")
    sys.stdout.write(json.dumps(result.payload, indent=indent, sort_keys=True, ensure_ascii=False) + "\n")
    sys.stdout.flush()


def run(argv: Optional[List[str]] = None) -> CommandResult:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(name)s:%(levelname)s:%(message)s",
        stream=sys.stderr,
    )
    t0 = time.perf_counter()
    try:
        s = load_settings(args.conf).with_overrides(seed=args.seed, trials=args.trials, workers=args.workers)
        result = args.fn(args, s)
    except LabError as e:
        print(f"❌ Failed: {e}", file=sys.stderr)
        return CommandResult(None, ERROR, summary=str(e), timing=(time.perf_counter() - t0) * 1000)
    result.timing = (time.perf_counter() - t0) * 1000
    _emit(result, args.pretty)
    if args.pretty:
        seed = "" if result.seed_echo is None else f" seed={result.seed_echo}"
        print(f"[{args.group} {args.command}] {result.status}: {result.summary}{seed} ({result.timing:.0f} ms)",
              file=sys.stderr)
    return result


def main():
    sys.exit(run().exit_code)


if __name__ == "__main__":
    main()
