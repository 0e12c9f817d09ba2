"""Dense univariate kernels on raw field values.

Every function takes the field first and works on plain lists of raw
coefficients, low degree first, with no trailing zeros (the zero polynomial
is ``[]``).  Field objects only need ``zero``, ``one``, ``add``, ``sub``,
``neg``, ``mul`` and ``inv``.
"""

from __future__ import annotations


def trim(F, a):
    z = F.zero
    n = len(a)
    while n and a[n - 1] == z:
        n -= 1
    return a[:n] if n != len(a) else a


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(F, out)


def sub(F, a, b):
    n = max(len(a), len(b))
    z = F.zero
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else z
        y = b[i] if i < len(b) else z
        out.append(F.sub(x, y))
    return trim(F, out)


def scale(F, a, c):
    if c == F.zero:
        return []
    return trim(F, [F.mul(c, x) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    z = F.zero
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == z:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(F, a)
    inv_lead = F.inv(b[-1])
    qt = [F.zero] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = F.mul(a[k + db], inv_lead)
        qt[k] = c
        if c == F.zero:
            continue
        for j in range(db + 1):
            a[k + j] = F.sub(a[k + j], F.mul(c, b[j]))
    return trim(F, qt), trim(F, a[:db])


def rem(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    """Monic gcd; ``gcd(0, 0) == 0``."""
    a = trim(F, list(a))
    b = trim(F, list(b))
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def mulmod(F, a, b, m):
    return rem(F, mul(F, a, b), m)


def powmod(F, a, e, m):
    """``a**e mod m`` by square-and-multiply, ``e >= 0``."""
    result = rem(F, [F.one], m)
    base = rem(F, a, m)
    while e:
        if e & 1:
            result = mulmod(F, result, base, m)
        e >>= 1
        if e:
            base = mulmod(F, base, base, m)
    return result


def derivative(F, a):
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(F.from_int(i), a[i]))
    return trim(F, out)


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc
