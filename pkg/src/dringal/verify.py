"""Named verification batteries with fixed seeds and pass/fail results.

Each battery checks one family of exact identities.  The command line runs
them at a quick default depth; the acceptance tests call the same functions
at full depth, so there is exactly one implementation of every check.
"""

from __future__ import annotations

import random
from itertools import product

from .apoly import APoly, irreducibles_of_degree, poly_gcd, random_apoly
from .extfield import canonical_extension
from .fields import make_field
from .residue import (
    ResidueRing,
    char_poly,
    enumerate_gl,
    g_order,
    gl_order,
    reduce_matrix,
    unit_count,
    verify_counting_identity,
)
from .torsion import (
    carlitz_reciprocity_check,
    frobenius_matrix,
    reduce_at,
    torsion,
)
from .twisted import (
    carlitz,
    generic_module,
    moore_determinant,
    specialize_module,
)


class FamilyResult:
    """Outcome of one battery: name, verdict, and counterexamples if any."""

    __slots__ = ("name", "ok", "checks", "failures")

    def __init__(self, name: str, ok: bool, checks: int, failures: list) -> None:
        self.name = name
        self.ok = ok
        self.checks = checks
        self.failures = failures

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        msg = f"{mark} {self.name} ({self.checks} checks)"
        if not self.ok:
            msg += f"; first counterexample: {self.failures[0]}"
        return msg


def _result(name: str, checks: int, failures: list) -> FamilyResult:
    return FamilyResult(name, not failures, checks, failures[:8])


def ring_hom_battery(pairs: int = 200, qs=(2, 3), rs=(2, 3), seed: int = 0) -> FamilyResult:
    """phi_(M+N) = phi_M + phi_N and phi_(MN) = phi_M phi_N = phi_N phi_M."""
    failures = []
    checks = 0
    for q, r in product(qs, rs):
        field = make_field(q)
        phi = generic_module(field, r)
        rng = random.Random(seed * 1000003 + 64 * q + r)
        for _ in range(pairs):
            m_poly = random_apoly(field, 3, rng)
            n_poly = random_apoly(field, 3, rng)
            pm = phi.phi_of(m_poly, check=False)
            pn = phi.phi_of(n_poly, check=False)
            checks += 1
            if phi.phi_of(m_poly + n_poly, check=False) != pm + pn:
                failures.append(f"q={q} r={r}: additivity at M={m_poly}, N={n_poly}")
                continue
            prod_lhs = phi.phi_of(m_poly * n_poly, check=False)
            if prod_lhs != pm * pn or prod_lhs != pn * pm:
                failures.append(f"q={q} r={r}: multiplicativity at M={m_poly}, N={n_poly}")
    return _result("phi-ring-hom", checks, failures)


def degree_law_battery(pairs: int = 200, qs=(2, 3), rs=(2, 3), seed: int = 0) -> FamilyResult:
    """Ordinary degree of phi_N is q^(r deg N)."""
    failures = []
    checks = 0
    for q, r in product(qs, rs):
        field = make_field(q)
        phi = generic_module(field, r)
        rng = random.Random(seed * 1000003 + 64 * q + r + 1)
        for _ in range(pairs):
            n_poly = random_apoly(field, 3, rng)
            if n_poly.is_zero():
                continue
            checks += 1
            expected = q ** (r * int(n_poly.degree))
            got = phi.additive_of(n_poly).degree
            if got != expected:
                failures.append(f"q={q} r={r} N={n_poly}: degree {got} != {expected}")
    return _result("degree-law", checks, failures)


def _spans(scalar_field, ambient, ws: list) -> set:
    """All scalar-field combinations of ws (ws short; brute force)."""
    out = set()
    scalars = list(scalar_field.elements())
    for coeffs in product(scalars, repeat=len(ws)):
        acc = ambient.zero
        for c, w in zip(coeffs, ws):
            acc = acc + w * c
        out.add(acc)
    return out


def moore_battery(seed: int = 0) -> FamilyResult:
    """Moore determinant: zero iff dependent; product formula on samples."""
    failures = []
    checks = 0
    f2 = make_field(2)
    e8 = canonical_extension(f2, 3, varname="u")
    elems = [e8.elem(i) for i in range(e8.order)]
    for w1 in elems:
        for w2 in elems:
            checks += 1
            dep = (not w1) or (not w2) or w1 == w2
            if (not moore_determinant([w1, w2])) != dep:
                failures.append(f"F_8 pair ({w1}, {w2})")
    for w1 in elems:
        span1 = _spans(f2, e8, [w1])
        for w2 in elems:
            span12 = _spans(f2, e8, [w1, w2])
            for w3 in elems:
                checks += 1
                dep = (not w1) or w2 in span1 or w3 in span12
                if (not moore_determinant([w1, w2, w3])) != dep:
                    failures.append(f"F_8 triple ({w1}, {w2}, {w3})")
    # product identity: det = prod over i of prod over span(w_1..w_(i-1)) of (w_i + c)
    f3 = make_field(3)
    e81 = canonical_extension(f3, 4, varname="u")
    rng = random.Random(seed * 1000003 + 3)
    for _ in range(20):
        ws = [e81.elem(rng.randrange(e81.order)) for _ in range(3)]
        det = moore_determinant(ws)
        prod_val = e81(1)
        for i in range(len(ws)):
            for c in _spans(f3, e81, ws[:i]):
                prod_val = prod_val * (ws[i] + c)
        checks += 1
        if det != prod_val:
            failures.append(f"product identity at {[str(w) for w in ws]}")
    return _result("moore", checks, failures)


def orders_battery(cap: int = 10**6) -> FamilyResult:
    """gl_order, unit_count, g_order against brute enumeration."""
    failures = []
    checks = 0
    for q in (2, 3):
        field = make_field(q)
        monics = []
        for d in (1, 2):
            for tail in product(range(q), repeat=d):
                monics.append(APoly(field, tuple(tail) + (1,)))
        for n_poly in monics:
            ring = ResidueRing(field, n_poly)
            checks += 1
            brute_units = sum(1 for x in ring.elements() if x.is_unit())
            if brute_units != unit_count(ring):
                failures.append(f"unit_count q={q} N={n_poly}")
            for r in (1, 2):
                if gl_order(r, ring) > cap:
                    continue
                checks += 1
                brute = sum(1 for _ in enumerate_gl(r, ring, cap=cap))
                if brute != gl_order(r, ring):
                    failures.append(f"gl_order r={r} q={q} N={n_poly}")
        # relative orders on products M*N of degree <= 2
        deg1 = [m for m in monics if m.degree == 1]
        for r in (1, 2):
            for m_poly in deg1:
                for n_poly in deg1 + [APoly(field, (1,))]:
                    full_ring = ResidueRing(field, m_poly * n_poly)
                    checks += 1
                    brute = sum(
                        1
                        for g in enumerate_gl(r, full_ring, cap=cap)
                        if reduce_matrix(g, m_poly).is_identity()
                    )
                    if brute != g_order(r, m_poly, n_poly):
                        failures.append(f"g_order r={r} q={q} M={m_poly} N={n_poly}")
    # pinned examples
    f2 = make_field(2)
    t2 = APoly.gen(f2)
    checks += 2
    if gl_order(2, ResidueRing(f2, t2)) != 6:
        failures.append("gl_order(2, A/T) != 6 over F_2")
    if g_order(2, t2, t2) * 6 != gl_order(2, ResidueRing(f2, t2 * t2)):
        failures.append("16 * 6 != gl_order(2, A/T^2) over F_2")
    return _result("orders", checks, failures)


def counting_identity_battery() -> FamilyResult:
    """#G(NT,T) * #GL_r(A/TA) = #GL_r(A/NTA) at small levels."""
    failures = []
    checks = 0
    for q in (2, 3):
        field = make_field(q)
        t_poly = APoly.gen(field)
        levels = [t_poly, t_poly + 1, t_poly * t_poly, t_poly * (t_poly + 1)]
        for r in (1, 2):
            for n_poly in levels:
                checks += 1
                rep = verify_counting_identity(r, n_poly)
                if not rep["ok"]:
                    failures.append(f"q={q} r={r} N={n_poly}: {rep}")
    return _result("counting-identity", checks, failures)


def reciprocity_battery(p_deg_max: int = 5, n_deg_max: int = 2, qs=(2, 3)) -> FamilyResult:
    """Carlitz reciprocity: Frobenius = p mod N for every good pair."""
    failures = []
    checks = 0
    for q in qs:
        field = make_field(q)
        levels = []
        for d in range(1, n_deg_max + 1):
            for tail in product(range(q), repeat=d):
                levels.append(APoly(field, tuple(tail) + (1,)))
        for deg in range(1, p_deg_max + 1):
            for p in irreducibles_of_degree(field, deg):
                for n_poly in levels:
                    if not poly_gcd(p, n_poly).is_constant():
                        continue
                    checks += 1
                    if not carlitz_reciprocity_check(p, n_poly):
                        failures.append(f"q={q} p={p} N={n_poly}")
    return _result("carlitz-reciprocity", checks, failures)


def _good_primes(field, n_poly, count: int) -> list:
    out = []
    deg = 1
    while len(out) < count:
        for p in irreducibles_of_degree(field, deg):
            if poly_gcd(p, n_poly).is_constant():
                out.append(p)
                if len(out) == count:
                    break
        deg += 1
    return out


def torsion_structure_battery(trials: int = 20, primes_per: int = 5, seed: int = 0) -> FamilyResult:
    """Kernel size q^(r deg N), freeness, and exact annihilators."""
    failures = []
    checks = 0
    for q in (2, 3):
        field = make_field(q)
        t_poly = APoly.gen(field)
        levels = [t_poly, t_poly * t_poly, t_poly * (t_poly + 1)]
        for r in (1, 2):
            rng = random.Random(seed * 1000003 + 16 * q + r)
            for n_poly in levels:
                for trial in range(trials):
                    if r == 1:
                        phi = carlitz(field)
                    else:
                        phi = specialize_module(
                            generic_module(field, r),
                            {"g1": random_apoly(field, rng.randrange(3), rng)},
                        )
                    for p in _good_primes(field, n_poly, primes_per):
                        checks += 1
                        red = reduce_at(phi, p)
                        t = torsion(red, n_poly, seed=trial)
                        if t.cardinality() != q ** (r * int(n_poly.degree)):
                            failures.append(f"q={q} r={r} N={n_poly} p={p}: size")
                            continue
                        if len(t.fq_basis) != t.dim or len(t.a_basis) != r:
                            failures.append(f"q={q} r={r} N={n_poly} p={p}: basis sizes")
                            continue
                        if not t.freeness_certificate():
                            failures.append(f"q={q} r={r} N={n_poly} p={p}: freeness")
                            continue
                        if any(t.apply_a(n_poly, e) for e in t.a_basis):
                            failures.append(f"q={q} r={r} N={n_poly} p={p}: annihilation")
                            continue
                        if n_poly == t_poly * t_poly:
                            # primary level: the annihilator must be exactly N
                            if any(not t.apply_a(t_poly, e) for e in t.a_basis):
                                failures.append(f"q={q} r={r} p={p}: annihilator too small")
    return _result("torsion-structure", checks, failures)


def tower_battery(primes_per: int = 6, seed: int = 0) -> FamilyResult:
    """Frobenius functoriality: reduce_matrix to level M matches direct phi[M]."""
    failures = []
    checks = 0
    for q in (2, 3):
        field = make_field(q)
        t_poly = APoly.gen(field)
        cases = [
            (t_poly * t_poly, [t_poly]),
            (t_poly * (t_poly + 1), [t_poly, t_poly + 1]),
        ]
        for r in (1, 2):
            if r == 1:
                phi = carlitz(field)
            else:
                phi = specialize_module(generic_module(field, r), {"g1": t_poly})
            for big_n, subs in cases:
                for p in _good_primes(field, big_n, primes_per):
                    red = reduce_at(phi, p)
                    fe_big = frobenius_matrix(torsion(red, big_n, seed=seed))
                    for m_poly in subs:
                        checks += 1
                        fe_small = frobenius_matrix(torsion(red, m_poly, seed=seed))
                        cp_red = char_poly(reduce_matrix(fe_big.matrix, m_poly))
                        cp_dir = char_poly(fe_small.matrix)
                        if [str(c) for c in cp_red] != [str(c) for c in cp_dir]:
                            failures.append(f"q={q} r={r} N={big_n} M={m_poly} p={p}")
    return _result("tower", checks, failures)


FAMILIES = (
    ("phi-ring-hom", ring_hom_battery),
    ("degree-law", degree_law_battery),
    ("moore", moore_battery),
    ("orders", orders_battery),
    ("counting-identity", counting_identity_battery),
    ("carlitz-reciprocity", reciprocity_battery),
    ("torsion-structure", torsion_structure_battery),
    ("tower", tower_battery),
)


def verify_suite(families: list | None = None) -> list:
    """Run the named batteries (all by default) and return their results."""
    wanted = None if families is None else set(families)
    if wanted is not None:
        known = {name for name, _ in FAMILIES}
        bad = wanted - known
        if bad:
            raise ValueError(f"unknown families: {', '.join(sorted(bad))}")
    out = []
    for name, func in FAMILIES:
        if wanted is None or name in wanted:
            out.append(func())
    return out
