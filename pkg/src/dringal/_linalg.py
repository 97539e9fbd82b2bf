"""Dense linear algebra over a finite field, for torsion computations.

Matrices act on coordinate vectors written over a kernel field K (reps as
produced by K's kernel ops).  Two storage backends: rows as machine
integers when |K| = 2, and plain rep lists otherwise.  All reductions are
deterministic so downstream bases are reproducible.
"""

from __future__ import annotations


class Mat:
    """A dense nrows x ncols matrix over a kernel field."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_gf2")

    def __init__(self, field, nrows: int, ncols: int, rows, gf2: bool) -> None:
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self._gf2 = gf2

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows: list, ncols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        if field.order == 2:
            packed = [_pack(r) for r in rows]
            return cls(field, len(rows), nc, packed, True)
        return cls(field, len(rows), nc, rows, False)

    @classmethod
    def from_cols(cls, field, cols: list) -> "Mat":
        nr = len(cols[0]) if cols else 0
        rows = [[col[i] for col in cols] for i in range(nr)]
        return cls.from_rows(field, rows, ncols=len(cols))

    @classmethod
    def identity(cls, field, n: int) -> "Mat":
        one = field.k_int(1)
        zero = field.k_int(0)
        rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
        return cls.from_rows(field, rows, ncols=n)

    def to_rows(self) -> list:
        if self._gf2:
            return [_unpack(r, self.ncols) for r in self.rows]
        return [list(r) for r in self.rows]

    def col(self, j: int) -> list:
        if self._gf2:
            return [(r >> j) & 1 for r in self.rows]
        return [r[j] for r in self.rows]

    # -- arithmetic --------------------------------------------------------

    def add(self, other: "Mat") -> "Mat":
        if self._gf2:
            return Mat(
                self.field,
                self.nrows,
                self.ncols,
                [a ^ b for a, b in zip(self.rows, other.rows)],
                True,
            )
        K = self.field
        rows = [
            [K.k_add(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.rows, other.rows)
        ]
        return Mat(K, self.nrows, self.ncols, rows, False)

    def mul(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions differ")
        if self._gf2:
            out = []
            for arow in self.rows:
                acc = 0
                a = arow
                k = 0
                while a:
                    if a & 1:
                        acc ^= other.rows[k]
                    a >>= 1
                    k += 1
                out.append(acc)
            return Mat(self.field, self.nrows, other.ncols, out, True)
        K = self.field
        zero = K.k_int(0)
        brows = other.rows
        out = []
        for arow in self.rows:
            acc = [zero] * other.ncols
            for k, a in enumerate(arow):
                if a == zero:
                    continue
                brow = brows[k]
                for j, b in enumerate(brow):
                    if b != zero:
                        acc[j] = K.k_add(acc[j], K.k_mul(a, b))
            out.append(acc)
        return Mat(K, self.nrows, other.ncols, out, False)

    def pow(self, e: int) -> "Mat":
        if self.nrows != self.ncols:
            raise ValueError("pow needs a square matrix")
        result = Mat.identity(self.field, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result.mul(base)
            base = base.mul(base)
            e >>= 1
        return result

    def apply(self, vec: list) -> list:
        """Matrix-vector product M v."""
        if self._gf2:
            x = _pack(vec)
            return [_parity(r & x) for r in self.rows]
        K = self.field
        zero = K.k_int(0)
        out = []
        for row in self.rows:
            acc = zero
            for a, v in zip(row, vec):
                if a != zero and v != zero:
                    acc = K.k_add(acc, K.k_mul(a, v))
            out.append(acc)
        return out

    # -- elimination -------------------------------------------------------

    def _rref_data(self, width: int):
        """In-place style RREF over a copy; returns (rows, pivot columns).

        width limits the pivot search to the first `width` columns, so an
        augmented block to the right is carried along but never pivoted.
        """
        if self._gf2:
            rows = list(self.rows)
            pivots = []
            cur = 0
            for col in range(width):
                piv = None
                bit = 1 << col
                for i in range(cur, len(rows)):
                    if rows[i] & bit:
                        piv = i
                        break
                if piv is None:
                    continue
                rows[cur], rows[piv] = rows[piv], rows[cur]
                prow = rows[cur]
                for i in range(len(rows)):
                    if i != cur and rows[i] & bit:
                        rows[i] ^= prow
                pivots.append(col)
                cur += 1
                if cur == len(rows):
                    break
            return rows, pivots
        K = self.field
        zero = K.k_int(0)
        rows = [list(r) for r in self.rows]
        pivots = []
        cur = 0
        for col in range(width):
            piv = None
            for i in range(cur, len(rows)):
                if rows[i][col] != zero:
                    piv = i
                    break
            if piv is None:
                continue
            rows[cur], rows[piv] = rows[piv], rows[cur]
            inv = K.k_inv(rows[cur][col])
            if inv != K.k_int(1):
                rows[cur] = [K.k_mul(inv, v) for v in rows[cur]]
            prow = rows[cur]
            for i in range(len(rows)):
                if i == cur:
                    continue
                c = rows[i][col]
                if c == zero:
                    continue
                nc = K.k_neg(c)
                rows[i] = [K.k_add(v, K.k_mul(nc, w)) for v, w in zip(rows[i], prow)]
            pivots.append(col)
            cur += 1
            if cur == len(rows):
                break
        return rows, pivots

    def rank(self) -> int:
        return len(self._rref_data(self.ncols)[1])

    def rref(self):
        rows, pivots = self._rref_data(self.ncols)
        return Mat(self.field, self.nrows, self.ncols, rows, self._gf2), pivots

    def nullspace(self) -> list:
        """Echelonized basis of {x : M x = 0}, deterministic order."""
        rows, pivots = self._rref_data(self.ncols)
        pivot_set = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivot_set]
        K = self.field
        zero, one = K.k_int(0), K.k_int(1)
        basis = []
        for f in free:
            vec = [zero] * self.ncols
            vec[f] = one
            for i, p in enumerate(pivots):
                if self._gf2:
                    entry = (rows[i] >> f) & 1
                else:
                    entry = rows[i][f]
                if entry != zero:
                    vec[p] = K.k_neg(entry)
            basis.append(vec)
        return basis

    def solve(self, targets: list) -> list | None:
        """Solve M x = t for each target; None if any system is inconsistent.

        Free coordinates (if any) are set to zero, so solutions are
        deterministic.
        """
        K = self.field
        zero = K.k_int(0)
        nt = len(targets)
        if self._gf2:
            aug = []
            for i, r in enumerate(self.rows):
                extra = 0
                for t_idx, t in enumerate(targets):
                    if t[i]:
                        extra |= 1 << (self.ncols + t_idx)
                aug.append(r | extra)
            work = Mat(K, self.nrows, self.ncols + nt, aug, True)
        else:
            aug = [
                list(r) + [targets[t_idx][i] for t_idx in range(nt)]
                for i, r in enumerate(self.rows)
            ]
            work = Mat(K, self.nrows, self.ncols + nt, aug, False)
        rows, pivots = work._rref_data(self.ncols)
        # any leftover nonzero row in the augmented block means inconsistency
        for i in range(len(pivots), self.nrows):
            if self._gf2:
                if rows[i]:
                    return None
            else:
                if any(v != zero for v in rows[i]):
                    return None
        sols = []
        for t_idx in range(nt):
            col = self.ncols + t_idx
            x = [zero] * self.ncols
            for i, p in enumerate(pivots):
                if self._gf2:
                    x[p] = (rows[i] >> col) & 1
                else:
                    x[p] = rows[i][col]
            sols.append(x)
        return sols


def _pack(bits: list) -> int:
    acc = 0
    for j, b in enumerate(bits):
        if b:
            acc |= 1 << j
    return acc


def _unpack(word: int, n: int) -> list:
    return [(word >> j) & 1 for j in range(n)]


def _parity(word: int) -> int:
    return word.bit_count() & 1
