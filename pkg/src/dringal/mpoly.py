"""Sparse multivariate polynomials over F_q, for generic module coefficients.

An MPoly lives in F_q[x_1, ..., x_n] for a fixed tuple of generator names
(for a rank-r module: ("T", "g1", ..., "g<r-1>")).  Terms map exponent
vectors to nonzero coefficient indices.  Printing and iteration use lex
order on exponent vectors, largest first, so output is deterministic.

The q-power map sends every coefficient to itself (coefficients lie in F_q)
and scales exponent vectors by q; that is exactly the twist needed when
these polynomials serve as coefficients of twisted polynomials.
"""

from __future__ import annotations

from .apoly import APoly
from .errors import DomainMismatch, MissingGenerator
from .fields import FqElem, FqField


class MPoly:
    __slots__ = ("field", "gens", "terms")

    def __init__(self, field: FqField, gens: tuple[str, ...], terms=None) -> None:
        self.field = field
        self.gens = gens
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            for expo, c in terms.items():
                ci = c.idx if isinstance(c, FqElem) else field(c).idx
                if ci:
                    clean[tuple(expo)] = ci
        self.terms = clean

    @classmethod
    def _raw(cls, field, gens, terms: dict) -> "MPoly":
        self = object.__new__(cls)
        self.field = field
        self.gens = gens
        self.terms = terms
        return self

    @classmethod
    def variable(cls, field: FqField, gens: tuple[str, ...], name: str) -> "MPoly":
        if name not in gens:
            raise MissingGenerator(f"{name} is not among {gens}")
        expo = tuple(1 if g == name else 0 for g in gens)
        return cls._raw(field, gens, {expo: 1})

    @classmethod
    def const(cls, field: FqField, gens: tuple[str, ...], c) -> "MPoly":
        ci = c.idx if isinstance(c, FqElem) else field(c).idx
        return cls._raw(field, gens, {(0,) * len(gens): ci} if ci else {})

    def _check(self, other: "MPoly") -> None:
        if self.field is not other.field or self.gens != other.gens:
            raise DomainMismatch("mpoly operands over different rings")

    def _coerce(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, (int, FqElem)):
            return MPoly.const(self.field, self.gens, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        K = self.field
        out = dict(self.terms)
        for expo, c in o.terms.items():
            s = K.k_add(out.get(expo, 0), c)
            if s:
                out[expo] = s
            else:
                out.pop(expo, None)
        return MPoly._raw(K, self.gens, out)

    __radd__ = __add__

    def __neg__(self):
        K = self.field
        return MPoly._raw(
            K, self.gens, {e: K.k_neg(c) for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        K = self.field
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = K.k_add(out.get(e, 0), K.k_mul(c1, c2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly._raw(K, self.gens, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        result = MPoly.const(self.field, self.gens, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self, k: int = 1) -> "MPoly":
        """The q^k-power map: coefficients are fixed, exponents scale."""
        s = self.field.order**k
        return MPoly._raw(
            self.field, self.gens, {tuple(e * s for e in expo): c for expo, c in self.terms.items()}
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return (
                self.field is other.field
                and self.gens == other.gens
                and self.terms == other.terms
            )
        if isinstance(other, (int, FqElem)):
            return self == MPoly.const(self.field, self.gens, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.gens, tuple(sorted(self.terms.items()))))

    def __str__(self) -> str:
        from .apoly import coeff_str

        if not self.terms:
            return "0"
        parts = []
        for expo in sorted(self.terms, reverse=True):
            c = self.terms[expo]
            factors = []
            for name, e in zip(self.gens, expo):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = coeff_str(self.field, c, compact=True)
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            else:
                if "+" in cs:
                    cs = f"({cs})"
                parts.append("*".join([cs] + factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


def mpoly_specialize(mp: MPoly, values: dict[str, APoly]) -> APoly:
    """Substitute an APoly for every generator appearing in mp.

    Raises MissingGenerator when a used generator has no value and
    DomainMismatch when a value lives over a different field.
    """
    field = mp.field
    for name, val in values.items():
        if not isinstance(val, APoly):
            raise TypeError(f"value for {name} must be an APoly")
        if val.field is not field:
            raise DomainMismatch(f"value for {name} is over a different field")
    used = [False] * len(mp.gens)
    for expo in mp.terms:
        for i, e in enumerate(expo):
            if e:
                used[i] = True
    for name, u in zip(mp.gens, used):
        if u and name not in values:
            raise MissingGenerator(f"no value given for generator {name}")
    # cache powers per generator
    pow_cache: dict[tuple[int, int], APoly] = {}

    def gen_power(i: int, e: int) -> APoly:
        hit = pow_cache.get((i, e))
        if hit is None:
            hit = values[mp.gens[i]] ** e
            pow_cache[(i, e)] = hit
        return hit

    acc = APoly(field, ())
    for expo, c in mp.terms.items():
        term = APoly(field, [FqElem(field, c)])
        for i, e in enumerate(expo):
            if e:
                term = term * gen_power(i, e)
        acc = acc + term
    return acc
