"""Dense univariate polynomial helpers on raw field values.

Polynomials are tuples of raw coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``. Every function takes the
coefficient field ``F`` as first argument.
"""


def trim(F, coeffs):
    coeffs = list(coeffs)
    while coeffs and F.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def degree(p):
    return len(p) - 1


def add(F, p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = F.add(out[i], c)
    return trim(F, out)


def neg(F, p):
    return tuple(F.neg(c) for c in p)


def sub(F, p, q):
    return add(F, p, neg(F, q))


def scale(F, p, c):
    if F.is_zero(c):
        return ()
    return trim(F, (F.mul(c, a) for a in p))


def mul(F, p, q):
    if not p or not q:
        return ()
    out = [F.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if F.is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(F, out)


def divmod_(F, p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    inv_lc = F.inv(q[-1])
    quot = [F.zero] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = F.mul(rem[k + dq], inv_lc)
        quot[k] = c
        if F.is_zero(c):
            continue
        for j, b in enumerate(q):
            rem[k + j] = F.sub(rem[k + j], F.mul(c, b))
    return trim(F, quot), trim(F, rem[:dq])


def monic(F, p):
    if not p:
        return p
    return scale(F, p, F.inv(p[-1]))


def gcd(F, p, q):
    """Monic gcd; ``gcd(0, 0) = 0``."""
    while q:
        p, q = q, divmod_(F, p, q)[1]
    return monic(F, p)


def deriv(F, p):
    return trim(F, (F.mul(F.from_int(i), c) for i, c in enumerate(p) if i))


def evaluate(F, p, x):
    acc = F.zero
    for c in reversed(p):
        acc = F.add(F.mul(acc, x), c)
    return acc


def from_roots(F, roots):
    """Coefficients of prod (z - a) over the given roots."""
    out = (F.one,)
    for a in roots:
        out = mul(F, out, (F.neg(a), F.one))
    return out
