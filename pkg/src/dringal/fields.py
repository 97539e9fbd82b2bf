"""Finite prime-power fields F_q with canonical defining moduli.

Elements are carried as integer indices: an element with F_p digit vector
(c_0, c_1, ..., c_{e-1}), constant digit first, has index sum(c_j * p^j).
Index 0 is zero and index 1 is one in every field.  Small fields build full
addition and multiplication tables; larger ones fall back to digit-vector
arithmetic on demand.

The defining modulus of F_{p^e} is canonical: the lexicographically smallest
monic irreducible of degree e over F_p, comparing coefficient vectors constant
term first.  Two calls to make_field with the same (p, e) return the identical
object.
"""

from __future__ import annotations

from .errors import DivisionByZero, NotPrime, SizeExceeded

DEFAULT_SIZE_CAP = 2**40

# full op tables only below this order; beyond it arithmetic decodes digits
_FQ_TABLE_CAP = 256


def is_prime_int(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10^24."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over the prime field F_p
# coefficient tuples, ascending degree, no trailing zeros
# ---------------------------------------------------------------------------


def _pp_trim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _pp_add(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _pp_trim(out)


def _pp_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return _pp_trim(out)


def _pp_divmod(
    a: tuple[int, ...], b: tuple[int, ...], p: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    rem = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i]
        if c:
            f = c * inv_lead % p
            quo[i - db] = f
            for j in range(db + 1):
                rem[i - db + j] = (rem[i - db + j] - f * b[j]) % p
    return _pp_trim(quo), _pp_trim(rem)


def _pp_gcd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    while b:
        a, b = b, _pp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple(c * inv % p for c in a)
    return a


def _pp_powmod(
    base: tuple[int, ...], exp: int, mod: tuple[int, ...], p: int
) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = _pp_divmod(base, mod, p)[1]
    while exp:
        if exp & 1:
            result = _pp_divmod(_pp_mul(result, base, p), mod, p)[1]
        base = _pp_divmod(_pp_mul(base, base, p), mod, p)[1]
        exp >>= 1
    return result


def _int_prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _pp_is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Rabin test for a monic polynomial over F_p."""
    e = len(f) - 1
    if e < 1:
        return False
    x = (0, 1)
    # x^(p^e) == x mod f
    if _pp_powmod(x, p**e, f, p) != _pp_divmod(x, f, p)[1]:
        return False
    for ell in _int_prime_factors(e):
        h = _pp_powmod(x, p ** (e // ell), f, p)
        diff = _pp_add(h, tuple((-c) % p for c in x), p)
        g = _pp_gcd(f, diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def _canonical_fp_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lex-smallest monic irreducible of degree e over F_p, constant term first."""
    # odometer over (c_0, ..., c_{e-1}) with c_0 most significant
    for idx in range(p**e):
        vec = []
        rest = idx
        for j in range(e - 1, -1, -1):
            vec.append(rest // p**j)
            rest %= p**j
        f = tuple(vec) + (1,)
        if _pp_is_irreducible(f, p):
            return f
    raise NotPrime(f"no irreducible of degree {e} over F_{p}")  # unreachable


# ---------------------------------------------------------------------------
# field and element classes
# ---------------------------------------------------------------------------

_FIELD_CACHE: dict[tuple[int, int], "FqField"] = {}


class FqField:
    """The finite field F_{p^e} with canonical modulus.  Use make_field()."""

    def __init__(self, p: int, e: int, _token: object = None) -> None:
        if _token is not _MAKE_TOKEN:
            raise TypeError("use make_field(p, e) to construct fields")
        self.p = p
        self.e = e
        self.order = p**e
        self.char = p
        self.modulus: tuple[int, ...] | None = (
            _canonical_fp_modulus(p, e) if e > 1 else None
        )
        self._mul_table: list[int] | None = None
        self._inv_table: list[int] | None = None
        if e > 1 and self.order <= _FQ_TABLE_CAP:
            self._build_tables()

    # -- kernel operations on raw integer indices ---------------------------

    @property
    def constant_field(self) -> "FqField":
        return self

    def _decode(self, idx: int) -> tuple[int, ...]:
        p = self.p
        return tuple((idx // p**j) % p for j in range(self.e))

    def _encode(self, vec: tuple[int, ...]) -> int:
        p = self.p
        return sum(c % p * p**j for j, c in enumerate(vec))

    def _build_tables(self) -> None:
        q, p, e = self.order, self.p, self.e
        mul = [0] * (q * q)
        mod = self.modulus
        assert mod is not None
        vecs = [self._decode(i) for i in range(q)]
        for a in range(q):
            va = vecs[a]
            for b in range(a, q):
                prod = _pp_mul(_pp_trim(list(va)), _pp_trim(list(vecs[b])), p)
                r = _pp_divmod(prod, mod, p)[1]
                idx = sum(c * p**j for j, c in enumerate(r))
                mul[a * q + b] = idx
                mul[b * q + a] = idx
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a * q + b] == 1:
                    inv[a] = b
                    break
        self._mul_table = mul
        self._inv_table = inv

    def k_add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        pj = 1
        while a or b:
            out += (a % p + b % p) % p * pj
            a //= p
            b //= p
            pj *= p
        return out

    def k_neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        pj = 1
        while a:
            out += (-(a % p)) % p * pj
            a //= p
            pj *= p
        return out

    def k_sub(self, a: int, b: int) -> int:
        return self.k_add(a, self.k_neg(b))

    def k_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if self._mul_table is not None:
            return self._mul_table[a * self.order + b]
        prod = _pp_mul(self._decode_t(a), self._decode_t(b), self.p)
        r = _pp_divmod(prod, self.modulus, self.p)[1]
        return self._encode(r + (0,) * (self.e - len(r)))

    def _decode_t(self, idx: int) -> tuple[int, ...]:
        return _pp_trim(list(self._decode(idx)))

    def k_inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.k_pow(a, self.order - 2)

    def k_pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.k_pow(self.k_inv(a), -n)
        result = 1
        while n:
            if n & 1:
                result = self.k_mul(result, a)
            a = self.k_mul(a, a)
            n >>= 1
        return result

    def k_frobq(self, a: int, k: int = 1) -> int:
        # x -> x^(q^k) is the identity on F_q
        return a

    def k_int(self, n: int) -> int:
        """Raw representative of the image of the integer n."""
        return n % self.p

    # -- public element interface -------------------------------------------

    def elem(self, idx: int) -> "FqElem":
        return FqElem(self, idx % self.order)

    def __call__(self, n: int) -> "FqElem":
        if isinstance(n, FqElem):
            if n.field is not self:
                raise _dm(self, n.field)
            return n
        return FqElem(self, n % self.p)

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, 1)

    @property
    def gen(self) -> "FqElem":
        """The class of the defining variable u (only for e > 1)."""
        if self.e == 1:
            raise ValueError(f"{self!r} is a prime field, no generator u")
        return FqElem(self, self.p)

    def elements(self):
        for i in range(self.order):
            yield FqElem(self, i)

    def __repr__(self) -> str:
        if self.e == 1:
            return f"F_{self.p}"
        return f"F_{self.order}"

    def describe(self) -> str:
        if self.e == 1:
            return f"F_{self.p}"
        terms = _fmt_u_poly(self.modulus)
        return f"F_{self.order} = F_{self.p}[u]/({terms})"


def _dm(f1, f2):
    from .errors import DomainMismatch

    return DomainMismatch(f"elements of {f1!r} and {f2!r} do not mix")


def _fmt_u_poly(coeffs: tuple[int, ...], compact: bool = False) -> str:
    parts = []
    for j in range(len(coeffs) - 1, -1, -1):
        c = coeffs[j]
        if c == 0:
            continue
        if j == 0:
            parts.append(str(c))
        elif j == 1:
            parts.append("u" if c == 1 else f"{c}*u")
        else:
            parts.append(f"u^{j}" if c == 1 else f"{c}*u^{j}")
    sep = "+" if compact else " + "
    return sep.join(parts) if parts else "0"


class FqElem:
    """An element of an FqField, wrapping an integer index."""

    __slots__ = ("field", "idx")

    def __init__(self, field: FqField, idx: int) -> None:
        self.field = field
        self.idx = idx

    def _coerce(self, other) -> "FqElem":
        if isinstance(other, FqElem):
            if other.field is not self.field:
                raise _dm(self.field, other.field)
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.k_add(self.idx, o.idx))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.k_sub(self.idx, o.idx))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.k_sub(o.idx, self.idx))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.k_mul(self.idx, o.idx))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.k_mul(self.idx, self.field.k_inv(o.idx)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.k_mul(o.idx, self.field.k_inv(self.idx)))

    def __neg__(self):
        return FqElem(self.field, self.field.k_neg(self.idx))

    def __pow__(self, n: int):
        return FqElem(self.field, self.field.k_pow(self.idx, n))

    def inverse(self) -> "FqElem":
        return FqElem(self.field, self.field.k_inv(self.idx))

    def frobenius(self, k: int = 1) -> "FqElem":
        return self

    def rep(self) -> tuple[int, ...]:
        """F_p digit vector, constant digit first."""
        return self.field._decode(self.idx)

    def __eq__(self, other) -> bool:
        if isinstance(other, FqElem):
            return self.field is other.field and self.idx == other.idx
        if isinstance(other, int):
            return self.idx == self.field(other).idx
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.idx))

    def __bool__(self) -> bool:
        return self.idx != 0

    def __repr__(self) -> str:
        if self.field.e == 1:
            return str(self.idx)
        return _fmt_u_poly(self.rep())


def make_field(p: int, e: int = 1, size_cap: int = DEFAULT_SIZE_CAP) -> FqField:
    """Construct (or fetch) the canonical F_{p^e}.

    Raises NotPrime when p is composite and SizeExceeded when p^e exceeds the
    size cap.  Repeated calls return the identical object.
    """
    if not isinstance(p, int) or not isinstance(e, int):
        raise TypeError("p and e must be integers")
    if e < 1:
        raise ValueError("extension degree must be at least 1")
    if not is_prime_int(p):
        raise NotPrime(f"{p} is not prime")
    if p**e > size_cap:
        raise SizeExceeded(f"{p}^{e} exceeds the size cap {size_cap}")
    key = (p, e)
    field = _FIELD_CACHE.get(key)
    if field is None:
        field = FqField(p, e, _MAKE_TOKEN)
        _FIELD_CACHE[key] = field
    return field


_MAKE_TOKEN = object()
