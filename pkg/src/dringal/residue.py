"""The quotient ring A/NA and the matrix groups GL_r(A/NA).

Orders come from the standard local formulas, factored along the primary
decomposition of N; they are cross-validated against brute enumeration in
the test suite.  Matrix inversion splits N into primary components, inverts
over the residue field mod P, and Hensel-lifts to mod P^e.
"""

from __future__ import annotations

import itertools

from .apoly import APoly, crt, factor, format_poly
from .errors import (
    ConstantInput,
    DomainMismatch,
    NonExactDivision,
    NotADivisor,
    NotInvertible,
    SizeExceeded,
)
from .fields import FqElem, FqField

ENUM_CAP = 10**6


class ResidueRing:
    """A/NA for a monic nonconstant modulus N."""

    __slots__ = ("field", "modulus", "_factorization", "_elems")

    def __init__(self, field: FqField, modulus: APoly) -> None:
        if modulus.field is not field:
            raise DomainMismatch("modulus must lie over the given field")
        if modulus.is_zero() or modulus.is_constant():
            raise ConstantInput("modulus must be nonconstant")
        self.field = field
        self.modulus = modulus.monic()
        self._factorization = None
        self._elems = None

    @property
    def degree(self) -> int:
        return int(self.modulus.degree)

    @property
    def size(self) -> int:
        return self.field.order**self.degree

    @property
    def factorization(self):
        if self._factorization is None:
            self._factorization = tuple(factor(self.modulus))
        return self._factorization

    def __call__(self, x) -> "ResidueElem":
        if isinstance(x, ResidueElem):
            if x.ring == self:
                return x
            raise DomainMismatch("element of a different residue ring")
        if isinstance(x, APoly):
            if x.field is not self.field:
                raise DomainMismatch("polynomial over a different field")
            return ResidueElem(self, x % self.modulus)
        if isinstance(x, (int, FqElem)):
            return ResidueElem(self, APoly(self.field, (x,)))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    @property
    def zero(self) -> "ResidueElem":
        return ResidueElem(self, APoly(self.field, ()))

    @property
    def one(self) -> "ResidueElem":
        return ResidueElem(self, APoly(self.field, (1,)))

    def elements(self):
        """All residues, lexicographic on (c_0, ..., c_{d-1})."""
        if self._elems is None:
            felems = list(self.field.elements())
            out = []
            for vec in itertools.product(felems, repeat=self.degree):
                out.append(ResidueElem(self, APoly(self.field, vec)))
            self._elems = out
        return iter(self._elems)

    def __eq__(self, other) -> bool:
        if isinstance(other, ResidueRing):
            return self.field is other.field and self.modulus == other.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.modulus.coeffs))

    def __repr__(self) -> str:
        return f"F_{self.field.order}[T]/({self.modulus})"


class ResidueElem:
    """A residue class mod N, stored as its canonical remainder."""

    __slots__ = ("ring", "rep")

    def __init__(self, ring: ResidueRing, rep: APoly) -> None:
        self.ring = ring
        self.rep = rep % ring.modulus

    def _coerce(self, other):
        if isinstance(other, ResidueElem):
            if other.ring == self.ring:
                return other
            raise DomainMismatch("mixed residue rings")
        if isinstance(other, (int, FqElem, APoly)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ResidueElem(self.ring, self.rep + o.rep)

    __radd__ = __add__

    def __neg__(self):
        return ResidueElem(self.ring, -self.rep)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ResidueElem(self.ring, self.rep - o.rep)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ResidueElem(self.ring, o.rep - self.rep)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ResidueElem(self.ring, self.rep * o.rep)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        from .apoly import poly_gcd

        if self.rep.is_zero():
            return False
        return poly_gcd(self.rep, self.ring.modulus).is_constant()

    def inverse(self) -> "ResidueElem":
        from .apoly import poly_xgcd

        if self.rep.is_zero():
            raise NotInvertible("zero is not a unit")
        g, s, _ = poly_xgcd(self.rep, self.ring.modulus)
        if not g.is_constant():
            raise NotInvertible(f"gcd with the modulus is {g}")
        return ResidueElem(self.ring, s)

    def __pow__(self, n: int) -> "ResidueElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, ResidueElem):
            return self.ring == other.ring and self.rep == other.rep
        if isinstance(other, (int, FqElem, APoly)):
            return self == self.ring(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((hash(self.ring), self.rep.coeffs))

    def __bool__(self) -> bool:
        return not self.rep.is_zero()

    def __str__(self) -> str:
        return format_poly(self.ring.field, self.rep.coeffs, "T")

    def compact_str(self) -> str:
        return format_poly(self.ring.field, self.rep.coeffs, "T", compact=True)

    def __repr__(self) -> str:
        return f"({self} mod {self.ring.modulus})"


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class ResidueMatrix:
    """A square matrix over A/NA."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: ResidueRing, rows) -> None:
        rows = tuple(tuple(ring(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        self.ring = ring
        self.n = n
        self.rows = rows

    @classmethod
    def identity(cls, ring: ResidueRing, n: int) -> "ResidueMatrix":
        return cls(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> ResidueElem:
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        if not isinstance(other, ResidueMatrix):
            return NotImplemented
        if other.ring != self.ring or other.n != self.n:
            raise DomainMismatch("matrix shapes or rings differ")
        n = self.n
        brows = other.rows
        out = []
        for i in range(n):
            arow = self.rows[i]
            orow = []
            for j in range(n):
                acc = self.ring.zero
                for k in range(n):
                    acc = acc + arow[k] * brows[k][j]
                orow.append(acc)
            out.append(orow)
        return ResidueMatrix(self.ring, out)

    def __pow__(self, e: int) -> "ResidueMatrix":
        if e < 0:
            return mat_inverse(self) ** (-e)
        result = ResidueMatrix.identity(self.ring, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def det(self) -> ResidueElem:
        n = self.n
        acc = self.ring.zero
        for perm in itertools.permutations(range(n)):
            term = self.ring.one
            for i in range(n):
                term = term * self.rows[i][perm[i]]
                if not term:
                    break
            else:
                acc = acc + term if _perm_sign(perm) > 0 else acc - term
        return acc

    def trace(self) -> ResidueElem:
        acc = self.ring.zero
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def is_invertible(self) -> bool:
        return self.det().is_unit()

    def is_identity(self) -> bool:
        one, zero = self.ring.one, self.ring.zero
        for i in range(self.n):
            for j in range(self.n):
                if self.rows[i][j] != (one if i == j else zero):
                    return False
        return True

    def __eq__(self, other) -> bool:
        if isinstance(other, ResidueMatrix):
            return self.ring == other.ring and self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash((hash(self.ring), self.n, tuple(e.rep.coeffs for row in self.rows for e in row)))

    def entries_str(self) -> list[list[str]]:
        return [[e.compact_str() for e in row] for row in self.rows]

    def __str__(self) -> str:
        rows = ["[" + ", ".join(e.compact_str() for e in row) + "]" for row in self.rows]
        return "[" + "; ".join(rows) + "]"

    def __repr__(self) -> str:
        return f"ResidueMatrix({self} over {self.ring!r})"


# ---------------------------------------------------------------------------
# orders
# ---------------------------------------------------------------------------


def unit_count(ring: ResidueRing) -> int:
    """#(A/NA)^x by the local formula q_P^e - q_P^(e-1) per factor."""
    q = ring.field.order
    total = 1
    for p_poly, e in ring.factorization:
        q_p = q ** int(p_poly.degree)
        total *= q_p**e - q_p ** (e - 1)
    return total


def gl_order(r: int, ring: ResidueRing) -> int:
    """#GL_r(A/NA) by the local formula per primary factor P^e."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    q = ring.field.order
    total = 1
    for p_poly, e in ring.factorization:
        q_p = q ** int(p_poly.degree)
        local = q_p ** ((e - 1) * r * r)
        for i in range(r):
            local *= q_p**r - q_p**i
        total *= local
    return total


def g_order(r: int, m_poly: APoly, n_poly: APoly) -> int:
    """#{g in GL_r(A/MNA) : g = 1 mod M} = #GL_r(A/MNA) / #GL_r(A/MA)."""
    if m_poly.field is not n_poly.field:
        raise DomainMismatch("moduli over different fields")
    field = m_poly.field
    if n_poly.is_constant():
        if n_poly.is_zero():
            raise ConstantInput("moduli must be nonzero")
        return 1
    prod = (m_poly * n_poly).monic()
    top = gl_order(r, ResidueRing(field, prod))
    if m_poly.is_constant():
        if m_poly.is_zero():
            raise ConstantInput("moduli must be nonzero")
        return top
    bottom = gl_order(r, ResidueRing(field, m_poly))
    quot, rem = divmod(top, bottom)
    if rem:
        raise NonExactDivision("group orders failed to divide exactly")
    return quot


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------


def reduce_matrix(g: ResidueMatrix, m_poly: APoly) -> ResidueMatrix:
    """Entrywise reduction GL_r(A/MNA) -> GL_r(A/MA); M must divide N."""
    if m_poly.field is not g.ring.field:
        raise DomainMismatch("modulus over a different field")
    if m_poly.is_zero() or not (g.ring.modulus % m_poly).is_zero():
        raise NotADivisor(f"{m_poly} does not divide {g.ring.modulus}")
    target = ResidueRing(g.ring.field, m_poly)
    return ResidueMatrix(target, [[e.rep for e in row] for row in g.rows])


def _apoly_matmul(a, b, modulus: APoly):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = None
            for k in range(n):
                t = a[i][k] * b[k][j]
                acc = t if acc is None else acc + t
            row.append(acc % modulus)
        out.append(row)
    return out


def _field_inverse_mod_p(entries, p_poly: APoly):
    """Gauss-Jordan inverse of a matrix over the field A/P."""
    from .apoly import poly_xgcd

    n = len(entries)
    field = p_poly.field
    aug = [
        [entries[i][j] % p_poly for j in range(n)]
        + [APoly(field, (1,)) if i == j else APoly(field, ()) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = None
        for row in range(col, n):
            if not aug[row][col].is_zero():
                piv = row
                break
        if piv is None:
            raise NotInvertible("matrix is singular modulo a prime factor")
        aug[col], aug[piv] = aug[piv], aug[col]
        g, s, _ = poly_xgcd(aug[col][col], p_poly)
        assert g.is_constant()
        inv = (s * APoly(field, (g.constant().inverse(),))) % p_poly
        aug[col] = [(x * inv) % p_poly for x in aug[col]]
        for row in range(n):
            if row == col:
                continue
            c = aug[row][col]
            if c.is_zero():
                continue
            aug[row] = [(aug[row][j] - c * aug[col][j]) % p_poly for j in range(2 * n)]
    return [[aug[i][n + j] for j in range(n)] for i in range(n)]


def mat_inverse(g: ResidueMatrix) -> ResidueMatrix:
    """Inverse in GL_r(A/NA) via CRT split and Hensel lifting.

    Each primary factor P^e is handled by inverting mod P with field
    linear algebra and lifting X -> X(2I - AX) to mod P^e.
    """
    ring = g.ring
    field = ring.field
    n = g.n
    comps = []
    for p_poly, e in ring.factorization:
        p_e = p_poly**e
        a_loc = [[g.rows[i][j].rep % p_e for j in range(n)] for i in range(n)]
        x = _field_inverse_mod_p(a_loc, p_poly)
        k = 1
        while k < e:
            k = min(2 * k, e)
            p_k = p_poly**k
            ax = _apoly_matmul([[v % p_k for v in row] for row in a_loc], x, p_k)
            two_i_minus = [
                [
                    (APoly(field, (2,)) if i == j else APoly(field, ())) - ax[i][j]
                    for j in range(n)
                ]
                for i in range(n)
            ]
            x = _apoly_matmul(x, two_i_minus, p_k)
        comps.append((x, p_e))
    if len(comps) == 1:
        entries = comps[0][0]
    else:
        entries = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(crt([(x[i][j], p_e) for x, p_e in comps]))
            entries.append(row)
    inv = ResidueMatrix(ring, entries)
    if __debug__:
        assert (g * inv).is_identity(), "inverse failed to verify"
    return inv


def char_poly(g: ResidueMatrix) -> tuple:
    """Coefficients of det(X I - g), ascending, length r + 1; always monic."""
    ring = g.ring
    n = g.n
    zero, one = ring.zero, ring.one

    def padd(a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return out

    def pmul(a, b):
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return out

    acc = [zero] * (n + 1)
    for perm in itertools.permutations(range(n)):
        term = [one]
        for i in range(n):
            entry = g.rows[i][perm[i]]
            cell = [-entry, one] if perm[i] == i else [-entry]
            term = pmul(term, cell)
            if all(not c for c in term):
                break
        if _perm_sign(perm) < 0:
            term = [-c for c in term]
        acc = padd(acc, term)
    acc = acc[: n + 1] + [zero] * (n + 1 - len(acc))
    assert acc[n] == one, "characteristic polynomial must be monic"
    return tuple(acc)


def charpoly_str(cp) -> str:
    """Canonical text for a char poly over A/NA, descending powers of X."""
    parts = []
    for k in range(len(cp) - 1, -1, -1):
        c = cp[k]
        if not c:
            continue
        cs = c.compact_str()
        mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            if "+" in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts) if parts else "0"


def enumerate_gl(r: int, ring: ResidueRing, cap: int = ENUM_CAP):
    """Every invertible r x r matrix, lexicographic on entry coefficients."""
    order = gl_order(r, ring)
    if order > cap:
        raise SizeExceeded(f"group order {order} exceeds enumeration cap {cap}")
    elems = list(ring.elements())
    for flat in itertools.product(elems, repeat=r * r):
        rows = [flat[i * r : (i + 1) * r] for i in range(r)]
        m = ResidueMatrix(ring, rows)
        if m.is_invertible():
            yield m


def subgroup_order(generators: list, cap: int = ENUM_CAP) -> int:
    """Order of the generated subgroup by breadth-first closure."""
    if not generators:
        return 1
    ring = generators[0].ring
    n = generators[0].n
    gens = []
    seen_gens = set()
    for g in generators:
        if g.ring != ring or g.n != n:
            raise DomainMismatch("generators live in different groups")
        if not g.is_invertible():
            raise NotInvertible("generators must be invertible")
        if g not in seen_gens:
            seen_gens.add(g)
            gens.append(g)
    identity = ResidueMatrix.identity(ring, n)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                prod = h * g
                if prod not in seen:
                    if len(seen) >= cap:
                        raise SizeExceeded(f"subgroup closure exceeded cap {cap}")
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return len(seen)


def matrix_order(g: ResidueMatrix, cap: int = ENUM_CAP) -> int:
    """Multiplicative order of g; SizeExceeded beyond the cap."""
    power = g
    k = 1
    while not power.is_identity():
        power = power * g
        k += 1
        if k > cap:
            raise SizeExceeded(f"matrix order exceeds cap {cap}")
    return k


def verify_counting_identity(r: int, n_poly: APoly) -> dict:
    """Check #G(NT,T) * #GL_r(A/TA) = #GL_r(A/NTA), and the same with the
    roles of N and T swapped.  Returns both sides; failures are reported,
    not raised."""
    field = n_poly.field
    t = APoly.gen(field)
    nt = (n_poly * t).monic()
    rhs = gl_order(r, ResidueRing(field, nt))
    lhs_t = g_order(r, t, n_poly) * gl_order(r, ResidueRing(field, t))
    lhs_n = g_order(r, n_poly, t) * gl_order(r, ResidueRing(field, n_poly))
    return {
        "modulus": str(nt),
        "kernel_times_base_at_T": lhs_t,
        "kernel_times_base_at_N": lhs_n,
        "full_order": rhs,
        "ok": lhs_t == rhs and lhs_n == rhs,
    }
