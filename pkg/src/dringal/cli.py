"""Command-line interface: phi, order, torsion, frobenius, chebotarev,
verify, moore.

Exit codes: 0 success / verification passed, 1 verification failure,
2 usage or parse error.  The default seed is 0, overridden by the
DRINGAL_SEED environment variable, overridden in turn by --seed.
"""

from __future__ import annotations

import argparse
import os
import sys

from .apoly import APoly
from .chebotarev import ExperimentSpec, run_chebotarev
from .errors import DringalError
from .extfield import canonical_extension
from .fields import make_field
from .residue import ResidueRing, charpoly_str, g_order, gl_order
from .textpoly import ParseError, parse_apoly, parse_ext_elem, parse_spec_map
from .torsion import frobenius_matrix, reduce_at, torsion
from .twisted import carlitz, generic_module, moore_determinant, specialize_module, to_additive

USAGE_EXIT = 2
FAIL_EXIT = 1


def _split_prime_power(q: int) -> tuple:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    e = 0
    reduced = q
    while reduced % p == 0:
        reduced //= p
        e += 1
    if reduced != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def _field(q: int):
    p, e = _split_prime_power(q)
    return make_field(p, e)


def _default_seed() -> int:
    env = os.environ.get("DRINGAL_SEED")
    if env is None:
        return 0
    return int(env)


def _build_module(field, r: int, spec_text: str | None):
    if r == 1:
        if spec_text:
            raise ValueError("rank 1 takes no specialization")
        return carlitz(field)
    gen = generic_module(field, r)
    if spec_text is None:
        return gen
    values = parse_spec_map(spec_text, field)
    missing = [f"g{i}" for i in range(1, r) if f"g{i}" not in values]
    if missing:
        raise ValueError(f"specialization is missing {', '.join(missing)}")
    return specialize_module(gen, values)


def _specialized_module(field, r: int, spec_text: str | None):
    module = _build_module(field, r, spec_text)
    if r > 1 and spec_text is None:
        raise ValueError("this command needs --spec g1=...,g2=...")
    return module


def cmd_phi(args) -> int:
    field = _field(args.q)
    module = _build_module(field, args.r, args.spec)
    n_poly = parse_apoly(args.n, field)
    op = module.phi_of(n_poly, check=False)
    if args.form == "x":
        print(to_additive(op))
    else:
        print(op)
    return 0


def cmd_order(args) -> int:
    field = _field(args.q)
    n_poly = parse_apoly(args.n, field)
    ring = ResidueRing(field, n_poly)
    if args.rel is None:
        print(gl_order(args.r, ring))
        return 0
    m_poly = parse_apoly(args.rel, field).monic()
    quo, rem = divmod(n_poly, m_poly)
    if not rem.is_zero():
        raise ValueError(f"--rel {args.rel} does not divide N")
    print(g_order(args.r, m_poly, quo))
    return 0


def cmd_torsion(args) -> int:
    field = _field(args.q)
    module = _specialized_module(field, args.r, args.spec)
    n_poly = parse_apoly(args.n, field)
    p_poly = parse_apoly(args.prime, field)
    red = reduce_at(module, p_poly)
    t = torsion(red, n_poly, seed=args.seed)
    print(f"m = {t.m}")
    print(f"ambient = F_p^{t.m} (p = {p_poly.compact_str()}, dim_Fq = {t.dim})")
    print(f"cardinality = {t.cardinality()}")
    print("fq_basis:")
    for b in t.fq_basis:
        print(f"  {b}")
    print("a_basis:")
    for e in t.a_basis:
        print(f"  {e}")
    return 0


def cmd_frobenius(args) -> int:
    field = _field(args.q)
    module = _specialized_module(field, args.r, args.spec)
    n_poly = parse_apoly(args.n, field)
    p_poly = parse_apoly(args.prime, field)
    red = reduce_at(module, p_poly)
    t = torsion(red, n_poly, seed=args.seed)
    fe = frobenius_matrix(t)
    print(fe.matrix)
    print(f"charpoly: {fe.char_poly_str}")
    return 0


def cmd_chebotarev(args) -> int:
    field = _field(args.q)
    n_poly = parse_apoly(args.n, field)
    lo, _, hi = args.deg_range.partition("..")
    spec_map = None
    random_spec = None
    if args.spec is not None:
        spec_map = parse_spec_map(args.spec, field)
    elif args.random_spec is not None:
        s, _, d = args.random_spec.partition(",")
        random_spec = (int(s), int(d))
    spec = ExperimentSpec(
        q=args.q,
        r=args.r,
        n_poly=n_poly,
        specialization=spec_map,
        random_spec=random_spec,
        deg_range=(int(lo), int(hi)),
        seed=args.seed,
        max_primes=args.max_primes,
    )
    report = run_chebotarev(spec)
    agg = report.aggregate
    if args.json is not None:
        with open(args.json, "w") as fh:
            fh.write(report.to_json())
    if args.out is not None:
        from .figures import render_report

        for path in render_report(report, args.out):
            print(f"wrote {path}")
    print(
        f"n = {agg['n']}, split = {agg['k']}, predicted = {agg['predicted_density']}, "
        f"observed = {agg['observed']:.6f}, band = [{agg['band'][0]:.6f}, {agg['band'][1]:.6f}]"
    )
    if "subgroup_order" in agg:
        print(f"subgroup order = {agg['subgroup_order']} of {agg['group_order']} ({agg['subgroup_note']})")
    print(f"verdict: {agg['verdict']}")
    return 0 if agg["verdict"] == "PASS" else FAIL_EXIT


def cmd_verify(args) -> int:
    from .verify import verify_suite

    results = verify_suite([args.family] if args.family else None)
    ok = True
    for res in results:
        print(res.line())
        ok = ok and res.ok
    return 0 if ok else FAIL_EXIT


def cmd_moore(args) -> int:
    field = _field(args.q)
    if args.ext > 1:
        carrier = canonical_extension(field, args.ext, varname="u")
    else:
        carrier = canonical_extension(field, 1, varname="u")
    ws = [parse_ext_elem(text, carrier) for text in args.elems.split(",") if text.strip()]
    if not ws:
        raise ValueError("--elems needs at least one element")
    det = moore_determinant(ws)
    print(f"moore determinant = {det}")
    print(f"independent: {bool(det)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="dringal", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, spec=True, seed=False):
        p.add_argument("--q", type=int, required=True, help="constant field size (prime power)")
        p.add_argument("--r", type=int, required=True, help="rank")
        if spec:
            p.add_argument("--spec", help="coefficients, e.g. g1=T,g2=T^2+1")
        if seed:
            p.add_argument("--seed", type=int, default=_default_seed())

    p = sub.add_parser("phi", help="print phi_N for the generic or specialized module")
    common(p)
    p.add_argument("--n", required=True, help="level N as a polynomial in T")
    p.add_argument("--form", choices=("tau", "x"), default="tau")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("order", help="order of GL_r(A/NA) or a congruence kernel")
    common(p, spec=False)
    p.add_argument("--n", required=True)
    p.add_argument("--rel", help="M dividing N: count g = 1 mod M in GL_r(A/NA)")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("torsion", help="bases of phi[N] over the reduction at a prime")
    common(p, seed=True)
    p.add_argument("--n", required=True)
    p.add_argument("--prime", required=True)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("frobenius", help="Frobenius matrix on phi[N] at a prime")
    common(p, seed=True)
    p.add_argument("--n", required=True)
    p.add_argument("--prime", required=True)
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("chebotarev", help="sample Frobenius matrices over a prime range")
    common(p, seed=True)
    p.add_argument("--random-spec", dest="random_spec", help="SEED,DEGBOUND")
    p.add_argument("--n", required=True)
    p.add_argument("--deg-range", dest="deg_range", required=True, help="A..B")
    p.add_argument("--json", help="write the JSON report to this path")
    p.add_argument("--out", help="write report.json, primes.csv, and figures to this directory")
    p.add_argument("--max-primes", dest="max_primes", type=int, default=None)
    p.set_defaults(func=cmd_chebotarev)

    p = sub.add_parser("verify", help="run the named identity batteries")
    p.add_argument("--family", help="run a single family by name")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("moore", help="Moore determinant of field elements")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ext", type=int, default=1, help="extension degree of the carrier field")
    p.add_argument("--elems", required=True, help="comma-separated elements, e.g. u^2+1,u,1")
    p.set_defaults(func=cmd_moore)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return USAGE_EXIT if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except DringalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL_EXIT


if __name__ == "__main__":
    sys.exit(main())
