"""Twisted polynomial rings, additive polynomials, and Drinfeld modules.

A twisted polynomial sum(c_i tau^i) multiplies by the rule tau a = a^q tau,
so (a tau^i)(b tau^j) = a b^(q^i) tau^(i+j).  Coefficients live in one of
three domains sharing the q-power endomorphism:

* MPolyDomain: F_q[T, g1, ...] with gamma(T) = T, for generic modules;
* PolyDomain: A = F_q[T] itself, for specialized modules over A;
* FieldDomain: a finite field with a designated image of T, for reductions.

A Drinfeld module of rank r is determined by phi_T = gamma(T) + c_1 tau +
... + c_{r-1} tau^{r-1} + tau^r (monic by normalization); phi extends to all
of A by additivity and composition, computed here by Horner's rule with an
optional cross-check against the direct sum of compositions.
"""

from __future__ import annotations

from .apoly import APoly, format_poly
from .errors import DomainMismatch, NotAField
from .extfield import ExtElem, ExtField
from .fields import FqElem, FqField
from .mpoly import MPoly, mpoly_specialize

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# coefficient domains
# ---------------------------------------------------------------------------


class FrobeniusDomain:
    """A coefficient ring with the q-power twist endomorphism."""

    is_field = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def gamma_T(self):
        """The structure image of T in this domain."""
        raise NotImplementedError

    def scalar(self, c):
        """Embed an element of the constant field F_q."""
        raise NotImplementedError


class MPolyDomain(FrobeniusDomain):
    """F_q[T, g1, ..., g_{r-1}] with gamma(T) = T."""

    def __init__(self, field: FqField, gens: tuple[str, ...]) -> None:
        if "T" not in gens:
            raise ValueError("generic domain needs the generator T")
        self.field = field
        self.gens = gens
        self.q = field.order

    def zero(self) -> MPoly:
        return MPoly(self.field, self.gens)

    def one(self) -> MPoly:
        return MPoly.const(self.field, self.gens, 1)

    def gamma_T(self) -> MPoly:
        return MPoly.variable(self.field, self.gens, "T")

    def scalar(self, c) -> MPoly:
        return MPoly.const(self.field, self.gens, c)

    def __repr__(self) -> str:
        return f"F_{self.q}[{', '.join(self.gens)}]"


class PolyDomain(FrobeniusDomain):
    """The ring A = F_q[T] with gamma = identity."""

    def __init__(self, field: FqField) -> None:
        self.field = field
        self.q = field.order

    def zero(self) -> APoly:
        return APoly(self.field, ())

    def one(self) -> APoly:
        return APoly(self.field, (1,))

    def gamma_T(self) -> APoly:
        return APoly.gen(self.field)

    def scalar(self, c) -> APoly:
        return APoly(self.field, (c,))

    def __repr__(self) -> str:
        return f"F_{self.q}[T]"


class FieldDomain(FrobeniusDomain):
    """A finite field with a designated gamma(T), e.g. A/p with T mod p."""

    is_field = True

    def __init__(self, field, gamma_t=None) -> None:
        self.field = field
        self.q = field.constant_field.order
        self._gamma = gamma_t

    def zero(self):
        return self.field.zero

    def one(self):
        return self.field.one

    def gamma_T(self):
        if self._gamma is None:
            raise DomainMismatch("this field domain has no designated gamma(T)")
        return self._gamma

    def scalar(self, c):
        return self.field(c)

    def __repr__(self) -> str:
        return f"FieldDomain({self.field!r})"


def _compact_str(c) -> str:
    if isinstance(c, APoly):
        return format_poly(c.field, c.coeffs, "T", compact=True)
    return str(c).replace(" ", "")


def _coeff_term(c, mono: str) -> str:
    cs = _compact_str(c)
    if not mono:
        return cs
    if cs == "1":
        return mono
    if "+" in cs:
        cs = f"({cs})"
    return f"{cs}*{mono}"


# ---------------------------------------------------------------------------
# twisted polynomials
# ---------------------------------------------------------------------------


class TwistedPoly:
    """An element of the twisted ring Domain<tau>."""

    __slots__ = ("domain", "coeffs")

    def __init__(self, domain: FrobeniusDomain, coeffs=()) -> None:
        self.domain = domain
        cl = list(coeffs)
        while cl and not cl[-1]:
            cl.pop()
        self.coeffs = tuple(cl)

    @property
    def tau_degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.domain.zero()

    def _coerce(self, other):
        if isinstance(other, TwistedPoly):
            if other.domain is not self.domain:
                raise DomainMismatch("twisted polynomials over different domains")
            return other
        if isinstance(other, (int, FqElem)):
            return TwistedPoly(self.domain, (self.domain.scalar(other),))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return TwistedPoly(self.domain, out)

    __radd__ = __add__

    def __neg__(self):
        return TwistedPoly(self.domain, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return twisted_mul(self, o)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return twisted_mul(o, self)

    def __pow__(self, n: int) -> "TwistedPoly":
        result = TwistedPoly(self.domain, (self.domain.one(),))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, TwistedPoly):
            return self.domain is other.domain and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.domain), self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("tau" if i == 1 else f"tau^{i}")
            parts.append(_coeff_term(c, mono))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TwistedPoly({self})"


def twisted_mul(a: TwistedPoly, b: TwistedPoly) -> TwistedPoly:
    """Product under tau c = c^q tau: c_k = sum over i+j=k of a_i * b_j^(q^i)."""
    if a.domain is not b.domain:
        raise DomainMismatch("twisted polynomials over different domains")
    if not a.coeffs or not b.coeffs:
        return TwistedPoly(a.domain, ())
    zero = a.domain.zero()
    out = [zero] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j, bj in enumerate(b.coeffs):
            if not bj:
                continue
            out[i + j] = out[i + j] + ai * bj.frobenius(i)
    return TwistedPoly(a.domain, out)


class AdditivePoly:
    """The additive polynomial sum(c_i X^(q^i)) attached to a twisted one."""

    __slots__ = ("domain", "coeffs")

    def __init__(self, domain: FrobeniusDomain, coeffs=()) -> None:
        self.domain = domain
        cl = list(coeffs)
        while cl and not cl[-1]:
            cl.pop()
        self.coeffs = tuple(cl)

    @property
    def degree(self):
        """Ordinary degree q^(tau degree)."""
        if not self.coeffs:
            return NEG_INF
        return self.domain.q ** (len(self.coeffs) - 1)

    def expand(self) -> list[tuple[int, object]]:
        """Ordinary monomials as (exponent, coefficient), ascending."""
        q = self.domain.q
        return [(q**i, c) for i, c in enumerate(self.coeffs) if c]

    def __call__(self, x):
        """Evaluate by the Frobenius chain; x needs arithmetic and frobenius.

        Coefficients multiply on the right so that a point of an extension
        coerces the coefficient up rather than the reverse.
        """
        acc = None
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            term = x.frobenius(i) * c
            acc = term if acc is None else acc + term
        if acc is None:
            return x * 0
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, AdditivePoly):
            return self.domain is other.domain and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.domain), self.coeffs, "additive"))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        q = self.domain.q
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            e = q**i
            mono = "X" if e == 1 else f"X^{e}"
            parts.append(_coeff_term(c, mono))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AdditivePoly({self})"


def to_additive(tp: TwistedPoly) -> AdditivePoly:
    """View a twisted polynomial as the additive map sum(c_i X^(q^i))."""
    return AdditivePoly(tp.domain, tp.coeffs)


# ---------------------------------------------------------------------------
# Drinfeld modules
# ---------------------------------------------------------------------------


class DrinfeldModule:
    """A rank-r Drinfeld module given by its monic phi_T."""

    __slots__ = ("domain", "coeffs", "rank")

    def __init__(self, domain: FrobeniusDomain, coeffs) -> None:
        coeffs = tuple(coeffs)
        if len(coeffs) < 2:
            raise ValueError("phi_T needs tau-degree at least 1")
        if coeffs[-1] != domain.one():
            raise ValueError("phi_T must be monic in tau")
        if coeffs[0] != domain.gamma_T():
            raise ValueError("the constant coefficient of phi_T must be gamma(T)")
        self.domain = domain
        self.coeffs = coeffs
        self.rank = len(coeffs) - 1

    @property
    def phi_T(self) -> TwistedPoly:
        return TwistedPoly(self.domain, self.coeffs)

    def phi_of(self, N: APoly, check: bool | None = None) -> TwistedPoly:
        """phi_N by Horner's rule; cross-checked against the direct sum when
        check is true (defaults to the interpreter debug flag)."""
        if check is None:
            check = __debug__
        dom = self.domain
        if N.field is not _constant_field_of(dom):
            raise DomainMismatch("N must lie over the constant field of the module")
        if N.is_zero():
            return TwistedPoly(dom, ())
        d = int(N.degree)
        phi_t = self.phi_T
        result = TwistedPoly(dom, (dom.scalar(N.coeff(d)),))
        for s in range(d - 1, -1, -1):
            result = result * phi_t + TwistedPoly(dom, (dom.scalar(N.coeff(s)),))
        if check:
            direct = TwistedPoly(dom, ())
            power = TwistedPoly(dom, (dom.one(),))
            for s in range(d + 1):
                c = N.coeff(s)
                if c:
                    direct = direct + TwistedPoly(dom, (dom.scalar(c),)) * power
                power = power * phi_t
            assert direct == result, "Horner and direct composition disagree"
        return result

    def additive_of(self, N: APoly, check: bool | None = None) -> AdditivePoly:
        return to_additive(self.phi_of(N, check=check))

    def __eq__(self, other) -> bool:
        if isinstance(other, DrinfeldModule):
            return self.domain is other.domain and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.domain), self.coeffs))

    def __repr__(self) -> str:
        return f"DrinfeldModule(phi_T = {TwistedPoly(self.domain, self.coeffs)})"


def carlitz(field: FqField) -> DrinfeldModule:
    """The Carlitz module: rank 1, phi_T = T + tau, over A."""
    dom = PolyDomain(field)
    return DrinfeldModule(dom, (dom.gamma_T(), dom.one()))


def generic_module(field: FqField, r: int) -> DrinfeldModule:
    """Rank r with independent transcendental coefficients g1, ..., g_{r-1}."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    gens = ("T",) + tuple(f"g{i}" for i in range(1, r))
    dom = MPolyDomain(field, gens)
    coeffs = [dom.gamma_T()]
    for i in range(1, r):
        coeffs.append(MPoly.variable(field, gens, f"g{i}"))
    coeffs.append(dom.one())
    return DrinfeldModule(dom, coeffs)


def specialize_module(module: DrinfeldModule, values: dict[str, APoly]) -> DrinfeldModule:
    """Substitute A-values for the generic coefficients, landing over A."""
    if not isinstance(module.domain, MPolyDomain):
        raise DomainMismatch("only generic modules can be specialized")
    field = module.domain.field
    vals = dict(values)
    vals.setdefault("T", APoly.gen(field))
    new_dom = PolyDomain(field)
    new_coeffs = [mpoly_specialize(c, vals) for c in module.coeffs]
    return DrinfeldModule(new_dom, new_coeffs)


def _constant_field_of(dom: FrobeniusDomain) -> FqField:
    if isinstance(dom, (MPolyDomain, PolyDomain)):
        return dom.field
    if isinstance(dom, FieldDomain):
        return dom.field.constant_field
    raise TypeError("unknown domain")


# ---------------------------------------------------------------------------
# Moore determinant
# ---------------------------------------------------------------------------


def moore_determinant(ws: list):
    """det(w_i^(q^(j-1))) for field elements w_1, ..., w_n.

    Vanishes exactly when the w_i are F_q-linearly dependent.  Raises
    NotAField for coefficients outside a field and BothZero-free otherwise.
    """
    if not ws:
        raise ValueError("need at least one element")
    first = ws[0]
    if not isinstance(first, (FqElem, ExtElem)):
        raise NotAField("Moore determinants need field elements")
    field = first.field
    for w in ws:
        if not isinstance(w, (FqElem, ExtElem)) or w.field is not field:
            raise DomainMismatch("all elements must lie in one field")
    n = len(ws)
    mat = [[ws[i].frobenius(j) for j in range(n)] for i in range(n)]
    det = field.one
    sign_flip = False
    for col in range(n):
        piv = None
        for row in range(col, n):
            if mat[row][col]:
                piv = row
                break
        if piv is None:
            return field.zero
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            sign_flip = not sign_flip
        pivot = mat[col][col]
        det = det * pivot
        inv = pivot.inverse()
        for row in range(col + 1, n):
            c = mat[row][col]
            if c:
                f = c * inv
                for k in range(col, n):
                    mat[row][k] = mat[row][k] - f * mat[col][k]
    if sign_flip:
        det = -det
    return det
