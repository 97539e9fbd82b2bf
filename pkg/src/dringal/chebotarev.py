"""Chebotarev-style sampling of Frobenius matrices against GL_r(A/NA).

For a fixed module and level N, Frobenius conjugacy classes over the primes
equidistribute in the Galois image; if that image is all of GL_r(A/NA), the
complete-splitting density is 1/#GL and characteristic-polynomial classes
appear with their exact proportions.  The report records both, plus the
order of the subgroup generated by the collected matrices (a lower bound on
the image, up to the per-prime basis ambiguity).
"""

from __future__ import annotations

import csv
import json
import math
import random
from fractions import Fraction

from .apoly import APoly, irreducibles_of_degree, poly_gcd, random_apoly
from .errors import ConstantInput, NoGoodPrimes
from .fields import make_field
from .residue import (
    ENUM_CAP,
    ResidueRing,
    char_poly,
    charpoly_str,
    enumerate_gl,
    gl_order,
    subgroup_order,
)
from .torsion import M_CAP, frobenius_matrix, reduce_at, torsion
from .twisted import carlitz, generic_module, specialize_module

MIN_SAMPLE = 300
SUBGROUP_NOTE = "heuristic: conjugacy-representative generation"


def _fold_seed(seed: int, p: APoly) -> int:
    s = (seed * 1000003 + int(p.degree)) % (1 << 61)
    for c in p.coeffs:
        s = (s * 1000003 + int(c) + 1) % (1 << 61)
    return s


class ExperimentSpec:
    """One sampling experiment: module, level, prime range, seed, caps."""

    def __init__(
        self,
        q: int,
        r: int,
        n_poly: APoly,
        specialization: dict | None = None,
        random_spec: tuple | None = None,
        deg_range: tuple = (1, 12),
        seed: int = 0,
        enum_cap: int = ENUM_CAP,
        m_cap: int = M_CAP,
        max_primes: int | None = None,
    ) -> None:
        if n_poly.is_constant():
            raise ConstantInput("the level N must be nonconstant")
        if not n_poly.is_monic():
            raise ValueError("the level N must be monic")
        if r < 1:
            raise ValueError("rank must be positive")
        if deg_range[0] < 1 or deg_range[1] < deg_range[0]:
            raise ValueError("degree range must be 1 <= lo <= hi")
        self.q = q
        self.r = r
        self.n_poly = n_poly
        self.field = n_poly.field
        self.deg_range = (int(deg_range[0]), int(deg_range[1]))
        self.seed = seed
        self.enum_cap = enum_cap
        self.m_cap = m_cap
        self.max_primes = max_primes
        if r == 1:
            self.specialization = {}
        elif specialization is not None:
            missing = [f"g{i}" for i in range(1, r) if f"g{i}" not in specialization]
            if missing:
                raise ValueError(f"specialization is missing {', '.join(missing)}")
            self.specialization = {f"g{i}": specialization[f"g{i}"] for i in range(1, r)}
        elif random_spec is not None:
            rseed, dbound = random_spec
            rng = random.Random(int(rseed))
            self.specialization = {
                f"g{i}": random_apoly(self.field, int(dbound), rng) for i in range(1, r)
            }
        else:
            raise ValueError("rank >= 2 needs a specialization or a random_spec")

    def module(self):
        if self.r == 1:
            return carlitz(self.field)
        return specialize_module(generic_module(self.field, self.r), self.specialization)

    def describe(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "N": self.n_poly.compact_str(),
            "specialization": {k: v.compact_str() for k, v in sorted(self.specialization.items())},
            "seed": self.seed,
            "deg_range": [self.deg_range[0], self.deg_range[1]],
        }


class PrimeRecord:
    __slots__ = ("p", "deg", "m", "charpoly", "split", "matrix")

    def __init__(self, p, deg, m, charpoly, split, matrix) -> None:
        self.p = p
        self.deg = deg
        self.m = m
        self.charpoly = charpoly
        self.split = split
        self.matrix = matrix

    def as_dict(self) -> dict:
        return {
            "p": self.p.compact_str(),
            "deg": self.deg,
            "m": self.m,
            "charpoly": self.charpoly,
            "split": self.split,
        }


class ChebotarevReport:
    """Per-prime records plus aggregate verdicts; JSON and CSV renderers."""

    def __init__(self, spec: ExperimentSpec, records: list, aggregate: dict, ring) -> None:
        self.spec = spec
        self.records = records
        self.aggregate = aggregate
        self.ring = ring

    @property
    def verdict(self) -> str:
        return self.aggregate["verdict"]

    @property
    def matrices(self) -> list:
        return [rec.matrix for rec in self.records]

    def as_dict(self) -> dict:
        return {
            "schema": 1,
            "spec": self.spec.describe(),
            "primes": [rec.as_dict() for rec in self.records],
            "aggregate": self.aggregate,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["p", "deg", "m", "charpoly", "split"])
            for rec in self.records:
                w.writerow([rec.p.compact_str(), rec.deg, rec.m, rec.charpoly, rec.split])


def _band(p0: float, n: int) -> list:
    sigma = math.sqrt(p0 * (1.0 - p0) / n)
    return [max(0.0, p0 - 3.0 * sigma), min(1.0, p0 + 3.0 * sigma)]


def run_chebotarev(spec: ExperimentSpec) -> ChebotarevReport:
    """Sample Frobenius at every good prime in range and grade the statistics."""
    field = spec.field
    module = spec.module()
    n_poly = spec.n_poly
    records = []
    lo, hi = spec.deg_range
    done = False
    for deg in range(lo, hi + 1):
        if done:
            break
        for p in irreducibles_of_degree(field, deg):
            if not poly_gcd(p, n_poly).is_constant():
                continue
            red = reduce_at(module, p)
            t = torsion(red, n_poly, m_cap=spec.m_cap, seed=_fold_seed(spec.seed, p))
            fe = frobenius_matrix(t)
            split = t.m == 1
            # independent cross-check: scan degree vs matrix identity
            assert split == fe.matrix.is_identity(), (p, t.m)
            records.append(PrimeRecord(p, deg, t.m, fe.char_poly_str, split, fe.matrix))
            if spec.max_primes is not None and len(records) >= spec.max_primes:
                done = True
                break
    if not records:
        raise NoGoodPrimes(f"no good primes for N = {n_poly} in degrees {lo}..{hi}")
    records.sort(key=lambda rec: (rec.deg, rec.p.coeffs))

    ring = ResidueRing(field, n_poly)
    group_order = gl_order(spec.r, ring)
    n = len(records)
    k = sum(1 for rec in records if rec.split)
    pred = Fraction(1, group_order)
    p0 = float(pred)
    band = _band(p0, n)
    observed = k / n
    density_ok = band[0] <= observed <= band[1]

    aggregate = {
        "n": n,
        "k": k,
        "predicted_density": f"{pred.numerator}/{pred.denominator}",
        "observed": observed,
        "band": band,
    }

    if group_order <= spec.enum_cap:
        exact: dict = {}
        for g in enumerate_gl(spec.r, ring, cap=spec.enum_cap):
            key = charpoly_str(char_poly(g))
            exact[key] = exact.get(key, 0) + 1
        counts: dict = {}
        for rec in records:
            counts[rec.charpoly] = counts.get(rec.charpoly, 0) + 1
        table = []
        for key in sorted(exact):
            frac = Fraction(exact[key], group_order)
            cls_band = _band(float(frac), n)
            cnt = counts.get(key, 0)
            freq = cnt / n
            table.append(
                {
                    "charpoly": key,
                    "predicted": f"{frac.numerator}/{frac.denominator}",
                    "count": cnt,
                    "frequency": freq,
                    "band": cls_band,
                    "ok": cls_band[0] <= freq <= cls_band[1],
                }
            )
        stray = sorted(set(counts) - set(exact))
        if stray:
            raise AssertionError(f"charpoly classes outside GL tally: {stray}")
        aggregate["class_table"] = table

    subgroup_ok = True
    if group_order <= spec.enum_cap:
        sub = subgroup_order([rec.matrix for rec in records], cap=spec.enum_cap)
        aggregate["subgroup_order"] = sub
        aggregate["subgroup_note"] = SUBGROUP_NOTE
        subgroup_ok = sub == group_order

    aggregate["group_order"] = group_order
    if n < MIN_SAMPLE:
        aggregate["verdict"] = "INCONCLUSIVE"
    elif density_ok and subgroup_ok:
        aggregate["verdict"] = "PASS"
    else:
        aggregate["verdict"] = "FAIL"
    return ChebotarevReport(spec, records, aggregate, ring)
