"""Extension fields built over FqField or over another ExtField.

Two element representations:

* table mode (order within the table cap): elements are integer indices in
  the p-adic digit packing; multiplication uses discrete log/exp tables and
  addition uses a Zech logarithm table, so every field operation is a few
  list lookups.  Residue fields F_p = F_q[T]/(p(T)) run in this mode.
* big mode: elements are fixed-length tuples of base representatives and
  arithmetic is polynomial arithmetic over the base.  Torsion ambients of
  large degree live here; they are presentation-only, never hot.

canonical_extension(base, m) picks the lexicographically smallest monic
irreducible modulus of degree m (constant coefficient compared first,
coefficients ordered by index).  The search uses an iterated Frobenius
vector chain rather than full powmods, so degree 24 moduli over a residue
field are found in milliseconds.
"""

from __future__ import annotations

from collections import OrderedDict

import numpy as np

from . import _polykernel as kp
from .errors import (
    DivisionByZero,
    DomainMismatch,
    NotIrreducible,
    SizeExceeded,
)
from .fields import FqElem, FqField

EXT_TABLE_CAP = 1 << 16


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


class ExtField:
    """Degree-m extension of a base field by an explicit monic modulus."""

    def __init__(
        self,
        base,
        modulus: tuple,
        varname: str = "t",
        table_cap: int = EXT_TABLE_CAP,
        check: bool = True,
    ) -> None:
        if not modulus or len(modulus) < 2:
            raise ValueError("modulus must have degree at least 1")
        if modulus[-1] != base.k_int(1):
            raise ValueError("modulus must be monic")
        if check and not kp.kp_is_irreducible(base, modulus, base.order):
            raise NotIrreducible("modulus is reducible over the base field")
        self.base = base
        self.modulus = tuple(modulus)
        self.m = len(modulus) - 1
        self.order = base.order**self.m
        self.char = base.char
        self.varname = varname
        self.constant_field: FqField = base.constant_field
        self._tables = False
        if self.order <= table_cap:
            self._build_tables()

    # -- table construction --------------------------------------------------

    def _find_generator(self) -> tuple:
        """Deterministic primitive element search, sparse candidates first."""
        base = self.base
        m = self.m
        q1 = self.order - 1
        factors = _int_prime_factors(q1) if q1 > 1 else []

        def is_primitive(vec: tuple) -> bool:
            if kp.kp_deg(vec) < 0:
                return False
            for ell in factors:
                if kp.kp_powmod(base, vec, q1 // ell, self.modulus) == (base.k_int(1),):
                    return False
            return True

        def candidates():
            B = base.order
            yield (base.k_int(0), base.k_int(1))  # the class of the variable
            for a in range(1, B):
                for b in range(B):
                    yield kp.kp_trim([b, a][:m] if m >= 2 else [b])
            if m >= 3:
                for c in range(1, B):
                    for a in range(B):
                        for b in range(B):
                            yield kp.kp_trim([b, a, c])
            # exhaustive fallback, cannot miss
            for idx in range(1, self.order):
                yield self._decode_tuple(idx)

        seen = set()
        for cand in candidates():
            cand = kp.kp_mod(base, cand, self.modulus)
            if cand in seen:
                continue
            seen.add(cand)
            if is_primitive(cand):
                return cand
        raise RuntimeError("no primitive element found")  # unreachable

    def _decode_tuple(self, idx: int) -> tuple:
        B = self.base.order
        return kp.kp_trim([(idx // B**j) % B for j in range(self.m)])

    def _build_tables(self) -> None:
        base, m, order = self.base, self.m, self.order
        q1 = order - 1
        g = self._find_generator()
        if isinstance(base, FqField) and base.e == 1:
            exp_idx, digits = self._fill_numpy(g)
        else:
            exp_idx, digits = self._fill_generic(g)
        p_odd = self.char != 2
        log = np.full(order, -1, dtype=np.int64)
        log[exp_idx] = np.arange(q1, dtype=np.int64)
        # Zech logarithms: zech[k] = log(1 + g^k), -1 when 1 + g^k = 0
        bumped = digits.copy()
        if isinstance(base, FqField) and base.e == 1:
            bumped[:, 0] = (bumped[:, 0] + 1) % base.p
        else:
            addv = np.vectorize(lambda a: base.k_add(int(a), 1))
            bumped[:, 0] = addv(bumped[:, 0])
        weights = np.array([base.order**j for j in range(m)], dtype=np.int64)
        bumped_idx = bumped @ weights
        zech = log[bumped_idx]
        self._exp: list[int] = exp_idx.tolist()
        self._log: list[int] = log.tolist()
        self._zech: list[int] = zech.tolist()
        self._digits = digits  # (q1,) rows follow exp order is NOT true; see below
        # digits indexed by element index, rebuild properly
        dig_by_idx = np.zeros((order, m), dtype=np.int64)
        dig_by_idx[exp_idx] = digits
        self._digits = dig_by_idx
        self._neg_shift = q1 // 2 if p_odd else 0
        self._q1 = q1
        self._frob_cache: dict[int, int] = {}
        self._tables = True

    def _fill_numpy(self, g: tuple) -> tuple[np.ndarray, np.ndarray]:
        """Powers of g over a prime base, block matrix fill.

        Works in float64 so the matmul hits BLAS; all values stay far below
        2^53 so the arithmetic is exact.
        """
        base, m = self.base, self.m
        p = base.p
        q1 = self.order - 1
        hlow = np.array(self.modulus[:m], dtype=np.float64)

        def polymulmod(a: np.ndarray, b: tuple) -> np.ndarray:
            out = np.zeros(m + max(len(b) - 1, 0), dtype=np.float64)
            for j, c in enumerate(b):
                if c:
                    out[j : j + m] = np.mod(out[j : j + m] + c * a, p)
            for i in range(len(out) - 1, m - 1, -1):
                c = out[i]
                if c:
                    out[i - m : i] = np.mod(out[i - m : i] - c * hlow, p)
                    out[i] = 0
            return out[:m]

        block = 64
        seq = np.zeros((q1, m), dtype=np.float64)
        v = np.zeros(m, dtype=np.float64)
        v[0] = 1.0
        head = min(block, q1)
        for k in range(head):
            seq[k] = v
            v = polymulmod(v, g)
        if q1 > head:
            # v = g^block; build its multiplication matrix once
            cols = np.zeros((m, m), dtype=np.float64)
            w = v.copy()
            for i in range(m):
                cols[:, i] = w
                # w *= X mod h
                carry = w[m - 1]
                w = np.roll(w, 1)
                w[0] = 0.0
                if carry:
                    w = np.mod(w - carry * hlow, p)
            for s in range(head, q1, block):
                cnt = min(block, q1 - s)
                seq[s : s + cnt] = np.mod(seq[s - block : s - block + cnt] @ cols.T, p)
        digits = seq.astype(np.int64)
        weights = np.array([p**j for j in range(m)], dtype=np.int64)
        return digits @ weights, digits

    def _fill_generic(self, g: tuple) -> tuple[np.ndarray, np.ndarray]:
        """Powers of g over a small non-prime base, plain iteration."""
        base, m = self.base, self.m
        q1 = self.order - 1
        exp_idx = np.zeros(q1, dtype=np.int64)
        digits = np.zeros((q1, m), dtype=np.int64)
        B = base.order
        v: tuple = (base.k_int(1),)
        for k in range(q1):
            for j, c in enumerate(v):
                digits[k, j] = c
            exp_idx[k] = sum(int(c) * B**j for j, c in enumerate(v))
            v = kp.kp_mod(base, kp.kp_mul(base, v, g), self.modulus)
        return exp_idx, digits

    # -- kernel operations ----------------------------------------------------

    def k_int(self, n: int):
        if self._tables:
            # table mode requires a table or prime base, whose reps are ints
            return self.base.k_int(n)
        zero = self.base.k_int(0)
        return (self.base.k_int(n),) + (zero,) * (self.m - 1)

    def k_add(self, a, b):
        if self._tables:
            if a == 0:
                return b
            if b == 0:
                return a
            la, lb = self._log[a], self._log[b]
            z = self._zech[(lb - la) % self._q1]
            if z < 0:
                return 0
            return self._exp[(la + z) % self._q1]
        base = self.base
        return tuple(base.k_add(x, y) for x, y in zip(a, b))

    def k_neg(self, a):
        if self._tables:
            if a == 0 or self._neg_shift == 0:
                return a
            return self._exp[(self._log[a] + self._neg_shift) % self._q1]
        base = self.base
        return tuple(base.k_neg(x) for x in a)

    def k_sub(self, a, b):
        return self.k_add(a, self.k_neg(b))

    def k_mul(self, a, b):
        if self._tables:
            if a == 0 or b == 0:
                return 0
            return self._exp[(self._log[a] + self._log[b]) % self._q1]
        base = self.base
        prod = kp.kp_mul(base, kp.kp_trim(list(a)), kp.kp_trim(list(b)))
        r = kp.kp_mod(base, prod, self.modulus)
        zero = base.k_int(0)
        return tuple(r) + (zero,) * (self.m - len(r))

    def k_inv(self, a):
        if self._tables:
            if a == 0:
                raise DivisionByZero("inverse of zero")
            return self._exp[(-self._log[a]) % self._q1]
        if not any(a):
            raise DivisionByZero("inverse of zero")
        base = self.base
        g, s, _ = kp.kp_xgcd(base, kp.kp_trim(list(a)), self.modulus)
        if kp.kp_deg(g) != 0:
            raise DivisionByZero("element not invertible (modulus reducible?)")
        r = kp.kp_mod(base, s, self.modulus)
        zero = base.k_int(0)
        return tuple(r) + (zero,) * (self.m - len(r))

    def k_pow(self, a, n: int):
        if self._tables:
            if a == 0:
                if n == 0:
                    return 1
                if n < 0:
                    raise DivisionByZero("inverse of zero")
                return 0
            return self._exp[(self._log[a] * n) % self._q1]
        if n < 0:
            return self.k_pow(self.k_inv(a), -n)
        result = self.k_int(1)
        while n:
            if n & 1:
                result = self.k_mul(result, a)
            a = self.k_mul(a, a)
            n >>= 1
        return result

    def k_frobq(self, a, k: int = 1):
        """x -> x^(q^k) for q the constant field order."""
        q = self.constant_field.order
        if self._tables:
            if a == 0:
                return 0
            sh = self._frob_cache.get(k)
            if sh is None:
                sh = pow(q, k, self._q1)
                self._frob_cache[k] = sh
            return self._exp[(self._log[a] * sh) % self._q1]
        return self.k_pow(a, q**k)

    # -- element interface ----------------------------------------------------

    @property
    def zero(self) -> "ExtElem":
        return ExtElem(self, self.k_int(0))

    @property
    def one(self) -> "ExtElem":
        return ExtElem(self, self.k_int(1))

    @property
    def gen(self) -> "ExtElem":
        """The class of the defining variable."""
        if self.m == 1:
            # the variable reduces to -modulus[0]
            neg = self.base.k_neg(self.modulus[0])
            return ExtElem(self, neg if self._tables else (neg,))
        if self._tables:
            return ExtElem(self, self.base.order)
        zero = self.base.k_int(0)
        one = self.base.k_int(1)
        return ExtElem(self, (zero, one) + (zero,) * (self.m - 2))

    def elem(self, rep) -> "ExtElem":
        return ExtElem(self, rep)

    def __call__(self, x) -> "ExtElem":
        return ExtElem(self, self.coerce_rep(x))

    def coerce_rep(self, x):
        """Raw representative from an int, constant-field element, or base element."""
        if isinstance(x, ExtElem):
            if x.field is self:
                return x.rep
            if x.field is self.base:
                return self._embed_base(x.rep)
            raise DomainMismatch("element of an unrelated extension")
        if isinstance(x, FqElem):
            if x.field is self.constant_field:
                return self._embed_const(x.idx)
            if x.field is self.base:
                return self._embed_base(x.idx)
            raise DomainMismatch("element of an unrelated field")
        if isinstance(x, int):
            return self.k_int(x)
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def _embed_const(self, idx: int):
        # constant-field indices are base indices in the digit packing
        if self._tables:
            return idx
        base = self.base
        zero = base.k_int(0)
        if isinstance(base, FqField):
            return (idx,) + (zero,) * (self.m - 1)
        return (base._embed_const(idx),) + (zero,) * (self.m - 1)

    def _embed_base(self, rep):
        if self._tables:
            return rep if isinstance(rep, int) else self.base._encode_rep(rep)
        zero = self.base.k_int(0)
        return (rep,) + (zero,) * (self.m - 1)

    def _encode_rep(self, rep) -> int:
        # tuple rep to integer index (base must be table-backed or prime)
        B = self.base.order
        out = 0
        for j, c in enumerate(rep):
            ci = c if isinstance(c, int) else self.base._encode_rep(c)
            out += ci * B**j
        return out

    def rep_digits(self, rep) -> tuple:
        """Base-field digit vector of an element representative."""
        if self._tables:
            return tuple(int(x) for x in self._digits[rep])
        return tuple(rep)

    def elements(self):
        if self._tables:
            for i in range(self.order):
                yield ExtElem(self, i)
        else:
            raise SizeExceeded("cannot enumerate a big-mode extension field")

    def coeff_to_str(self, rep, compact: bool = True) -> str:
        digits = self.rep_digits(rep)
        parts = []
        for j in range(self.m - 1, -1, -1):
            c = digits[j]
            czero = (c == 0) if isinstance(c, int) else not any(c)
            if czero:
                continue
            cs = (
                self.base.coeff_to_str(c, compact=True)
                if isinstance(self.base, ExtField)
                else _base_coeff_str(self.base, c)
            )
            if j == 0:
                parts.append(cs)
                continue
            mono = self.varname if j == 1 else f"{self.varname}^{j}"
            if cs == "1":
                parts.append(mono)
            else:
                if "+" in cs or "*" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        if not parts:
            return "0"
        return "+".join(parts) if compact else " + ".join(parts)

    def __repr__(self) -> str:
        return f"F_{self.order}[{self.varname}]"

    def describe(self) -> str:
        """Human-readable construction, e.g. 'F_8 = F_2[t]/(t^3+t+1)'."""
        parts = []
        for j in range(self.m, -1, -1):
            c = self.modulus[j] if j < len(self.modulus) else self.base.k_int(0)
            czero = (c == 0) if isinstance(c, int) else not any(c)
            if czero:
                continue
            if isinstance(self.base, ExtField):
                cs = self.base.coeff_to_str(c, compact=True)
            else:
                cs = _base_coeff_str(self.base, c)
            if j == 0:
                parts.append(cs)
                continue
            mono = self.varname if j == 1 else f"{self.varname}^{j}"
            if cs == "1":
                parts.append(mono)
            elif "+" in cs or "*" in cs:
                parts.append(f"({cs})*{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        base_name = repr(self.base) if isinstance(self.base, ExtField) else repr(
            self.base
        )
        return f"F_{self.order} = {base_name}[{self.varname}]/({'+'.join(parts)})"


def _base_coeff_str(base: FqField, idx) -> str:
    from .fields import _fmt_u_poly

    if base.e == 1:
        return str(idx)
    return _fmt_u_poly(base._decode(idx), compact=True)


class ExtElem:
    """Element of an ExtField (int index in table mode, tuple otherwise)."""

    __slots__ = ("field", "rep")

    def __init__(self, field: ExtField, rep) -> None:
        self.field = field
        self.rep = rep

    def _coerce(self, other):
        try:
            return self.field.coerce_rep(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, self.field.k_add(self.rep, r))

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, self.field.k_sub(self.rep, r))

    def __rsub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, self.field.k_sub(r, self.rep))

    def __mul__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, self.field.k_mul(self.rep, r))

    __rmul__ = __mul__

    def __truediv__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, self.field.k_mul(self.rep, self.field.k_inv(r)))

    def __neg__(self):
        return ExtElem(self.field, self.field.k_neg(self.rep))

    def __pow__(self, n: int):
        return ExtElem(self.field, self.field.k_pow(self.rep, n))

    def inverse(self) -> "ExtElem":
        return ExtElem(self.field, self.field.k_inv(self.rep))

    def frobenius(self, k: int = 1) -> "ExtElem":
        """x -> x^(q^k), q the constant field order."""
        return ExtElem(self.field, self.field.k_frobq(self.rep, k))

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtElem) and other.field is self.field:
            return self.rep == other.rep
        try:
            return self.rep == self.field.coerce_rep(other)
        except (TypeError, DomainMismatch):
            return False

    def __hash__(self) -> int:
        return hash((id(self.field), self.rep))

    def __bool__(self) -> bool:
        return self.rep != 0 if isinstance(self.rep, int) else any(self.rep)

    def __repr__(self) -> str:
        return self.field.coeff_to_str(self.rep, compact=True)


# ---------------------------------------------------------------------------
# canonical extensions and residue fields
# ---------------------------------------------------------------------------

_CANON_CACHE: dict[tuple[int, int], tuple] = {}


def canonical_modulus(base, m: int) -> tuple:
    """Lex-smallest monic irreducible of degree m over the base field.

    Coefficient vectors are compared constant term first; base elements are
    ordered by index.  Uses an iterated Frobenius vector chain: per candidate
    f, compute pi = X^B mod f once, extend to the powers pi^j, and walk
    w -> M w instead of repeated powmods.
    """
    key = (id(base), m)
    hit = _CANON_CACHE.get(key)
    if hit is not None:
        return hit
    if m == 1:
        result = (base.k_int(0), base.k_int(1))  # X itself
        _CANON_CACHE[key] = result
        return result
    B = base.order
    zero, one = base.k_int(0), base.k_int(1)
    ell_list = _int_prime_factors(m)

    def digits_of(idx: int) -> list:
        # constant-first lex: c_0 is the most significant digit
        out = []
        for j in range(m - 1, -1, -1):
            out.append(idx // B**j)
            idx %= B**j
        return out

    # base is FqField or a table ExtField, so elements index by int.
    # Candidates with zero constant term are divisible by X, so the search
    # starts at c_0 = 1 (skipping the whole first block).
    for counter in range(B ** (m - 1), B**m):
        vec = [base_elem_from_index(base, d) for d in digits_of(counter)]
        f = tuple(vec) + (one,)
        if _irreducible_by_chain(base, f, m, B, ell_list):
            _CANON_CACHE[key] = f
            return f
    raise NotIrreducible(f"no irreducible of degree {m} found")  # unreachable


def base_elem_from_index(base, idx: int):
    """The base element whose canonical index is idx."""
    if isinstance(base, FqField):
        return idx
    if base._tables:
        return idx
    return base._decode_tuple(idx)  # pragma: no cover - big bases unused here


def _irreducible_by_chain(base, f: tuple, m: int, B: int, ell_list: list[int]) -> bool:
    """Rabin test via the Frobenius chain w_k = X^(B^k) mod f.

    One powmod gives pi = X^B mod f; a gcd against pi - X rejects anything
    with a linear factor before the power matrix is built, which removes the
    bulk of candidates during the canonical search.
    """
    x = (base.k_int(0), base.k_int(1))
    pi = kp.kp_powmod(base, x, B, f)
    if kp.kp_deg(pi) < 1 and m > 1:
        # X^B constant means X satisfies a low-degree relation; f reducible
        return False
    diff1 = kp.kp_sub(base, pi, x)
    if not diff1:
        return m == 1
    if kp.kp_deg(kp.kp_gcd(base, f, diff1)) > 0:
        return False
    zero = base.k_int(0)

    def as_vec(poly: tuple) -> list:
        return list(poly) + [zero] * (m - len(poly))

    # columns of the B-power map: pi^j for j < m
    cols = []
    acc = (base.k_int(1),)
    for _ in range(m):
        cols.append(as_vec(acc))
        acc = kp.kp_mod(base, kp.kp_mul(base, acc, pi), f)
    add, mul = base.k_add, base.k_mul

    def apply(vec: list) -> list:
        out = [zero] * m
        for j, c in enumerate(vec):
            if c:
                col = cols[j]
                for i in range(m):
                    if col[i]:
                        out[i] = add(out[i], mul(c, col[i]))
        return out

    checkpoints = {m // ell for ell in ell_list}
    w = as_vec(x)
    for k in range(1, m + 1):
        w = apply(w)
        if k in checkpoints and k > 1:
            diff = kp.kp_sub(base, kp.kp_trim(list(w)), x)
            if not diff:
                return False
            if kp.kp_deg(kp.kp_gcd(base, f, diff)) > 0:
                return False
    return kp.kp_trim(list(w)) == x


def canonical_extension(
    base, m: int, varname: str = "y", table_cap: int = EXT_TABLE_CAP
) -> ExtField:
    """The canonical degree-m extension (cached per base and degree)."""
    key = (id(base), m, varname, base.order**m <= table_cap)
    field = _EXT_CACHE.get(key)
    if field is None:
        mod = canonical_modulus(base, m)
        field = ExtField(base, mod, varname=varname, table_cap=table_cap, check=False)
        _EXT_CACHE[key] = field
        _EXT_KEEPALIVE.append(base)
    return field


_EXT_CACHE: dict = {}
_EXT_KEEPALIVE: list = []

_RESIDUE_CACHE: OrderedDict = OrderedDict()
_RESIDUE_LRU = 48


def residue_field(p_poly, table_cap: int = EXT_TABLE_CAP) -> ExtField:
    """F_q[T]/(p) as a table-backed field; gen is the class of T.

    Raises NotIrreducible for composite p and SizeExceeded when the residue
    field is too large to table.
    """
    fq = p_poly.field
    key = (id(fq), p_poly.coeffs)
    hit = _RESIDUE_CACHE.get(key)
    if hit is not None:
        _RESIDUE_CACHE.move_to_end(key)
        return hit
    if p_poly.degree < 1:
        raise NotIrreducible("a prime of A must be non-constant")
    if not p_poly.is_monic():
        raise NotIrreducible("primes of A are monic")
    if fq.order ** (len(p_poly.coeffs) - 1) > table_cap:
        raise SizeExceeded(
            f"residue field of size {fq.order}^{len(p_poly.coeffs) - 1} "
            f"exceeds the table cap {table_cap}"
        )
    if not p_poly.is_irreducible():
        raise NotIrreducible(f"{p_poly} is not irreducible")
    field = ExtField(fq, p_poly.coeffs, varname="t", table_cap=table_cap, check=False)
    _RESIDUE_CACHE[key] = field
    while len(_RESIDUE_CACHE) > _RESIDUE_LRU:
        _RESIDUE_CACHE.popitem(last=False)
    return field
