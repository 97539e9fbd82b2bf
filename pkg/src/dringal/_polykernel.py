"""Dense univariate polynomial arithmetic over a kernel field.

A kernel field is any object exposing raw-representative operations
k_add, k_sub, k_neg, k_mul, k_inv, k_pow, k_int (FqField and ExtField both
do).  Polynomials are tuples of raw representatives, ascending degree, with
no trailing zeros; the zero polynomial is the empty tuple.

These helpers are the shared engine under APoly, the canonical extension
search, and the torsion machinery.  They stay on raw representatives for
speed; wrap results in element classes at the boundary.
"""

from __future__ import annotations

from .errors import BothZero, DivisionByZero


def kp_trim(c: list) -> tuple:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def kp_deg(a: tuple) -> int:
    # degree of zero is -1 here; public APoly maps that to the -inf sentinel
    return len(a) - 1


def kp_add(K, a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    add = K.k_add
    for i, x in enumerate(b):
        out[i] = add(out[i], x)
    return kp_trim(out)


def kp_neg(K, a: tuple) -> tuple:
    neg = K.k_neg
    return tuple(neg(x) for x in a)


def kp_sub(K, a: tuple, b: tuple) -> tuple:
    return kp_add(K, a, kp_neg(K, b))


def kp_scal(K, c, a: tuple) -> tuple:
    if not c:
        return ()
    mul = K.k_mul
    return kp_trim([mul(c, x) for x in a])


def kp_mul(K, a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    zero = K.k_int(0)
    out = [zero] * (len(a) + len(b) - 1)
    add, mul = K.k_add, K.k_mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return kp_trim(out)


def kp_divmod(K, a: tuple, b: tuple) -> tuple[tuple, tuple]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    rem = list(a)
    db = len(b) - 1
    inv_lead = K.k_inv(b[-1])
    zero = K.k_int(0)
    quo = [zero] * (len(a) - db)
    sub, mul = K.k_sub, K.k_mul
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i]
        if c:
            f = mul(c, inv_lead)
            quo[i - db] = f
            for j in range(db + 1):
                if b[j]:
                    rem[i - db + j] = sub(rem[i - db + j], mul(f, b[j]))
    return kp_trim(quo), kp_trim(rem)


def kp_mod(K, a: tuple, b: tuple) -> tuple:
    return kp_divmod(K, a, b)[1]


def kp_monic(K, a: tuple) -> tuple:
    if not a:
        return a
    if a[-1] == K.k_int(1):
        return a
    return kp_scal(K, K.k_inv(a[-1]), a)


def kp_gcd(K, a: tuple, b: tuple) -> tuple:
    if not a and not b:
        raise BothZero("gcd(0, 0) is undefined")
    while b:
        a, b = b, kp_mod(K, a, b)
    return kp_monic(K, a)


def kp_xgcd(K, a: tuple, b: tuple) -> tuple[tuple, tuple, tuple]:
    """Monic g and s, t with s*a + t*b = g."""
    if not a and not b:
        raise BothZero("gcd(0, 0) is undefined")
    one = (K.k_int(1),)
    r0, r1 = a, b
    s0, s1 = one, ()
    t0, t1 = (), one
    while r1:
        q, r = kp_divmod(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, kp_sub(K, s0, kp_mul(K, q, s1))
        t0, t1 = t1, kp_sub(K, t0, kp_mul(K, q, t1))
    if r0 and r0[-1] != K.k_int(1):
        u = K.k_inv(r0[-1])
        r0, s0, t0 = kp_scal(K, u, r0), kp_scal(K, u, s0), kp_scal(K, u, t0)
    return r0, s0, t0


def kp_powmod(K, base: tuple, exp: int, mod: tuple) -> tuple:
    result = (K.k_int(1),)
    base = kp_mod(K, base, mod)
    while exp:
        if exp & 1:
            result = kp_mod(K, kp_mul(K, result, base), mod)
        base = kp_mod(K, kp_mul(K, base, base), mod)
        exp >>= 1
    return result


def kp_eval(K, a: tuple, x):
    acc = K.k_int(0)
    add, mul = K.k_add, K.k_mul
    for c in reversed(a):
        acc = add(mul(acc, x), c)
    return acc


def kp_is_irreducible(K, f: tuple, order: int) -> bool:
    """Rabin test: f monic over the field K of the given order."""
    d = kp_deg(f)
    if d < 1:
        return False
    x = (K.k_int(0), K.k_int(1))
    if kp_powmod(K, x, order**d, f) != kp_mod(K, x, f):
        return False
    dd = d
    factors = []
    e = 2
    while e * e <= dd:
        if dd % e == 0:
            factors.append(e)
            while dd % e == 0:
                dd //= e
        e += 1
    if dd > 1:
        factors.append(dd)
    for ell in factors:
        h = kp_powmod(K, x, order ** (d // ell), f)
        diff = kp_sub(K, h, x)
        if not diff or kp_deg(kp_gcd(K, f, diff)) > 0:
            return False
    return True
