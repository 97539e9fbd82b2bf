"""Univariate polynomials over F_q in the variable T, the ring A = F_q[T].

APoly is immutable.  Coefficients are stored as raw field indices, ascending
degree.  The degree of the zero polynomial is the sentinel NEG_INF (never an
integer), so degree comparisons behave uniformly.

Top-level operations: poly_divmod, poly_gcd, factor, irreducibles_of_degree,
crt.  Factorization is squarefree decomposition, then distinct-degree, then
seeded Cantor-Zassenhaus equal-degree splitting; the result order is
deterministic (degree, then coefficient vector).
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Iterator

from . import _polykernel as kp
from .errors import (
    BothZero,
    ConstantInput,
    DivisionByZero,
    DomainMismatch,
    ModuliNotCoprime,
    SizeExceeded,
)
from .fields import DEFAULT_SIZE_CAP, FqElem, FqField, _fmt_u_poly

NEG_INF = float("-inf")


def _coerce_coeff(field: FqField, c) -> int:
    if isinstance(c, FqElem):
        if c.field is not field:
            raise DomainMismatch("coefficient from a different field")
        return c.idx
    if isinstance(c, int):
        return field(c).idx
    raise TypeError(f"cannot use {c!r} as a field coefficient")


def coeff_str(field: FqField, idx: int, compact: bool = False) -> str:
    """Render one coefficient; non prime-field values use the u-generator."""
    if field.e == 1:
        return str(idx)
    return _fmt_u_poly(field._decode(idx), compact=compact)


def format_poly(
    field: FqField,
    coeffs: tuple[int, ...],
    var: str = "T",
    ascending: bool = False,
    compact: bool = False,
) -> str:
    """Canonical text form, e.g. 'T^2 + T + 1' or 'T^2*X + (T^2+T)*X^2 + X^4'.

    Coefficients with more than one term are parenthesized.  No minus signs
    appear; representatives are canonical mod p.
    """
    terms = []
    indices = range(len(coeffs)) if ascending else range(len(coeffs) - 1, -1, -1)
    for j in indices:
        c = coeffs[j]
        if not c:
            continue
        cs = coeff_str(field, c, compact=True)
        if j == 0:
            terms.append(cs)
            continue
        mono = var if j == 1 else f"{var}^{j}"
        if cs == "1":
            terms.append(mono)
        else:
            if "+" in cs:
                cs = f"({cs})"
            terms.append(f"{cs}*{mono}")
    if not terms:
        return "0"
    sep = "+" if compact else " + "
    return sep.join(terms)


class APoly:
    """An element of A = F_q[T]."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FqField, coeffs: Iterable = ()) -> None:
        self.field = field
        self.coeffs = kp.kp_trim([_coerce_coeff(field, c) for c in coeffs])

    @classmethod
    def _raw(cls, field: FqField, coeffs: tuple[int, ...]) -> "APoly":
        self = object.__new__(cls)
        self.field = field
        self.coeffs = coeffs
        return self

    @classmethod
    def gen(cls, field: FqField) -> "APoly":
        """The variable T."""
        return cls._raw(field, (0, 1))

    @classmethod
    def monomial(cls, field: FqField, k: int, c=1) -> "APoly":
        ci = _coerce_coeff(field, c)
        if not ci:
            return cls._raw(field, ())
        return cls._raw(field, (0,) * k + (ci,))

    # -- structure -----------------------------------------------------------

    @property
    def degree(self):
        """Integer degree, or the NEG_INF sentinel for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> FqElem:
        return FqElem(self.field, self.coeffs[0] if self.coeffs else 0)

    def lead(self) -> FqElem:
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return FqElem(self.field, self.coeffs[-1])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "APoly":
        return APoly._raw(self.field, kp.kp_monic(self.field, self.coeffs))

    def coeff(self, k: int) -> FqElem:
        idx = self.coeffs[k] if 0 <= k < len(self.coeffs) else 0
        return FqElem(self.field, idx)

    def sort_key(self) -> tuple:
        return (len(self.coeffs), self.coeffs)

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "APoly":
        if isinstance(other, APoly):
            if other.field is not self.field:
                raise DomainMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, FqElem)):
            return APoly(self.field, [other])
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return APoly._raw(self.field, kp.kp_add(self.field, self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return APoly._raw(self.field, kp.kp_sub(self.field, self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return APoly._raw(self.field, kp.kp_sub(self.field, o.coeffs, self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return APoly._raw(self.field, kp.kp_mul(self.field, self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __neg__(self):
        return APoly._raw(self.field, kp.kp_neg(self.field, self.coeffs))

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        q, r = kp.kp_divmod(self.field, self.coeffs, o.coeffs)
        return APoly._raw(self.field, q), APoly._raw(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "APoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = APoly._raw(self.field, (1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Evaluate at a field element (or anything with ring operations)."""
        if isinstance(x, FqElem):
            return FqElem(self.field, kp.kp_eval(self.field, self.coeffs, x.idx))
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + FqElem(self.field, c)
        return acc

    def derivative(self) -> "APoly":
        K = self.field
        out = [K.k_mul(c, K.k_int(j)) for j, c in enumerate(self.coeffs)][1:]
        return APoly._raw(K, kp.kp_trim(out))

    def frobenius(self, k: int = 1) -> "APoly":
        """The q^k-power map on A: coefficients are fixed, T -> T^(q^k)."""
        if not self.coeffs or k == 0:
            return self
        s = self.field.order**k
        out = [0] * ((len(self.coeffs) - 1) * s + 1)
        for j, c in enumerate(self.coeffs):
            if c:
                out[j * s] = c
        return APoly._raw(self.field, tuple(out))

    def is_irreducible(self) -> bool:
        if len(self.coeffs) < 2:
            return False
        return kp.kp_is_irreducible(
            self.field, kp.kp_monic(self.field, self.coeffs), self.field.order
        )

    # -- protocol ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, APoly):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, FqElem)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def compact_str(self) -> str:
        return format_poly(self.field, self.coeffs, "T", compact=True)

    def __str__(self) -> str:
        return format_poly(self.field, self.coeffs, "T")

    def __repr__(self) -> str:
        return f"APoly({self})"


# ---------------------------------------------------------------------------
# top-level ring operations
# ---------------------------------------------------------------------------


def poly_divmod(a: APoly, b: APoly) -> tuple[APoly, APoly]:
    """Quotient and remainder; raises DivisionByZero when b = 0."""
    return divmod(a, b)


def poly_gcd(a: APoly, b: APoly) -> APoly:
    """Monic gcd; raises BothZero when both arguments vanish."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    if a.field is not b.field:
        raise DomainMismatch("gcd of polynomials over different fields")
    return APoly._raw(a.field, kp.kp_gcd(a.field, a.coeffs, b.coeffs))


def poly_xgcd(a: APoly, b: APoly) -> tuple[APoly, APoly, APoly]:
    """(g, s, t) with s*a + t*b = g monic."""
    if a.field is not b.field:
        raise DomainMismatch("xgcd of polynomials over different fields")
    g, s, t = kp.kp_xgcd(a.field, a.coeffs, b.coeffs)
    raw = APoly._raw
    return raw(a.field, g), raw(a.field, s), raw(a.field, t)


def _stable_seed(seed: int, field: FqField, coeffs: tuple[int, ...]) -> int:
    key = (seed & 0x7FFFFFFF) * 0x9E3779B1 + field.order
    for c in coeffs:
        key = (key * 1000003 + c + 1) % (1 << 61)
    return key


def _pth_root(f: APoly) -> APoly:
    """For f = g(T^p), recover g (coefficientwise p-th root in F_q)."""
    K = f.field
    p = K.p
    root_exp = K.order // p  # c -> c^(q/p) inverts c -> c^p on F_q
    out = [K.k_pow(f.coeffs[j], root_exp) for j in range(0, len(f.coeffs), p)]
    return APoly._raw(K, kp.kp_trim(out))


def _squarefree_parts(f: APoly) -> dict[APoly, int]:
    """Monic squarefree decomposition in characteristic p (Gianni-Trager)."""
    K = f.field
    p = K.p
    out: dict[APoly, int] = {}
    if f.degree < 1:
        return out
    df = f.derivative()
    if df.is_zero():
        for h, m in _squarefree_parts(_pth_root(f)).items():
            out[h] = out.get(h, 0) + m * p
        return out
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out[z.monic()] = out.get(z.monic(), 0) + i
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        for h, m in _squarefree_parts(_pth_root(c)).items():
            out[h] = out.get(h, 0) + m * p
    return out


def _ddf(g: APoly) -> list[tuple[APoly, int]]:
    """Distinct-degree split of a monic squarefree g: [(product, degree)]."""
    K = g.field
    q = K.order
    out = []
    h = (0, 1)  # the image of T
    k = 0
    while g.degree >= 1:
        k += 1
        if 2 * k > g.degree:
            out.append((g, int(g.degree)))
            break
        h = kp.kp_powmod(K, h, q, g.coeffs)
        diff = kp.kp_sub(K, h, (0, 1))
        if not diff:
            out.append((g, k))
            break
        gk = APoly._raw(K, kp.kp_gcd(K, g.coeffs, diff))
        if gk.degree > 0:
            out.append((gk, k))
            g = g // gk
            h = kp.kp_mod(K, h, g.coeffs)
    return out


def _edf(g: APoly, k: int, rng) -> list[APoly]:
    """Equal-degree factorization: g monic squarefree, all factors degree k."""
    K = g.field
    q = K.order
    n = int(g.degree)
    if n == k:
        return [g]
    while True:
        t = tuple(rng.randrange(q) for _ in range(n))
        t = kp.kp_trim(list(t))
        if kp.kp_deg(t) < 1:
            continue
        if q % 2 == 1:
            w = kp.kp_powmod(K, t, (q**k - 1) // 2, g.coeffs)
            w1 = kp.kp_sub(K, w, (1,))
        else:
            # F_2-trace of t over F_{q^k} inside the algebra
            e2 = K.e * k
            acc = t
            w = t
            for _ in range(e2 - 1):
                acc = kp.kp_powmod(K, acc, 2, g.coeffs)
                w = kp.kp_add(K, w, acc)
            w1 = w
        if not w1:
            continue
        d = kp.kp_gcd(K, g.coeffs, w1)
        dd = kp.kp_deg(d)
        if 0 < dd < n:
            left = APoly._raw(K, d)
            right = g // left
            return _edf(left, k, rng) + _edf(right, k, rng)


def factor(f: APoly, seed: int = 0) -> list[tuple[APoly, int]]:
    """Monic irreducible factors with multiplicities.

    The leading unit is discarded.  Raises ConstantInput when deg f < 1.
    The output is sorted by (degree, coefficient vector) so it is stable
    across runs regardless of the seed.
    """
    if f.degree < 1:
        raise ConstantInput("factor requires a non-constant polynomial")
    rng = random.Random(_stable_seed(seed, f.field, f.coeffs))
    result: dict[APoly, int] = {}
    for part, mult in _squarefree_parts(f.monic()).items():
        for block, k in _ddf(part):
            for irr in _edf(block, k, rng):
                result[irr] = result.get(irr, 0) + mult
    return sorted(result.items(), key=lambda im: im[0].sort_key())


def irreducibles_of_degree(
    field: FqField, d: int, size_cap: int = DEFAULT_SIZE_CAP
) -> Iterator[APoly]:
    """Monic irreducibles of degree exactly d, ascending lex (constant first).

    Raises SizeExceeded when the q^d search space passes the cap, and
    ConstantInput for d < 1.
    """
    if d < 1:
        raise ConstantInput("irreducibles have degree at least 1")
    q = field.order
    if q**d > size_cap:
        raise SizeExceeded(f"enumerating q^{d} = {q**d} candidates exceeds the cap")

    def _iter():
        for vec in itertools.product(range(q), repeat=d):
            # vec is (c_0, ..., c_{d-1}) with c_0 most significant in lex order
            if d > 1 and vec[0] == 0:
                continue  # divisible by T
            cand = APoly._raw(field, kp.kp_trim(list(vec) + [1]))
            if cand.is_irreducible():
                yield cand

    return _iter()


def crt(pairs: list[tuple[APoly, APoly]]) -> APoly:
    """Chinese remainder combination over A from (value, modulus) pairs.

    Raises ModuliNotCoprime when two moduli share a factor, DomainMismatch on
    mixed fields, and ValueError on malformed input.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one (value, modulus) pair")
    residues = [v for v, _ in pairs]
    moduli = [m for _, m in pairs]
    field = moduli[0].field
    for x in itertools.chain(residues, moduli):
        if x.field is not field:
            raise DomainMismatch("crt inputs over different fields")
    for m in moduli:
        if m.degree < 1:
            raise ConstantInput("crt moduli must be non-constant")
    acc_r = residues[0] % moduli[0]
    acc_m = moduli[0].monic()
    for r, m in zip(residues[1:], moduli[1:]):
        g, s, t = poly_xgcd(acc_m, m)
        if g.degree > 0:
            raise ModuliNotCoprime(f"moduli share the factor {g}")
        # acc_r + acc_m * s * (r - acc_r) / g with g constant 1
        diff = (r - acc_r) * s
        acc_r = acc_r + acc_m * (diff % m)
        acc_m = (acc_m * m).monic()
        acc_r = acc_r % acc_m
    return acc_r


def random_apoly(field: FqField, degree: int, rng) -> APoly:
    """Uniform polynomial of degree at most the bound (used by tests)."""
    return APoly._raw(
        field, kp.kp_trim([rng.randrange(field.order) for _ in range(degree + 1)])
    )


def random_monic(field: FqField, degree: int, rng) -> APoly:
    coeffs = [rng.randrange(field.order) for _ in range(degree)] + [1]
    return APoly._raw(field, tuple(coeffs))
