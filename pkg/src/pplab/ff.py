"""Exact arithmetic in F_p, F_q = F_{p^h} and the cubic extension F_{q^3}.

The three levels form a tower: F_q is a degree-h extension of F_p and
F_{q^3} is a degree-3 extension of F_q.  Raw values are ints at the prime
level and tuples of next-level-down raw values above it.  User code works
with :class:`FFElement`, a small value wrapper around ``(field, raw)``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import gmpy2

from pplab import _polyops as P

LEVELS = ("prime", "base", "cubic", "quadratic")


class FieldMismatchError(ValueError):
    """Operands belong to different fields (or different contexts)."""


class PrimeField:
    level = "prime"

    def __init__(self, p: int):
        self.p = self.char = self.order = p
        self.degree = 1
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"GF({self.p})"

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return pow(a, e % (self.p - 1), self.p)

    def encode(self, a):
        return a

    def decode(self, n):
        return n

    def digits(self, a):
        return [a]

    def from_digits(self, ds):
        if len(ds) != 1:
            raise ValueError(f"expected 1 digit, got {len(ds)}")
        return ds[0] % self.p


class ExtField:
    """``base[t] / (modulus)`` for a monic irreducible ``modulus``.

    ``modulus`` is a tuple of base raw values, low degree first, length
    ``n + 1`` with a trailing one.
    """

    def __init__(self, base, modulus, level):
        self.base = base
        self.level = level
        self.modulus = tuple(modulus)
        self.n = self.degree = len(modulus) - 1
        self.char = base.char
        self.order = base.order ** self.n
        self.zero = (base.zero,) * self.n
        self.one = (base.one,) + (base.zero,) * (self.n - 1)
        self._prime_base = isinstance(base, PrimeField)
        # images of the basis 1, t, t^2, ... under x -> x^{|base|}
        t = (base.zero, base.one) + (base.zero,) * (self.n - 2)
        tq = self._pow_nonneg(t, base.order)
        images = [self.one]
        for _ in range(1, self.n):
            images.append(self.mul(images[-1], tq))
        self._frob_images = tuple(images)

    def __repr__(self):
        return f"{self.base!r}[t]/({self.modulus})"

    # construction ---------------------------------------------------------
    def from_int(self, n):
        return (self.base.from_int(n),) + (self.base.zero,) * (self.n - 1)

    def embed(self, c):
        """Lift a base raw value into this field."""
        return (c,) + (self.base.zero,) * (self.n - 1)

    def in_base(self, a):
        z = self.base.zero
        return all(c == z for c in a[1:])

    def encode(self, a):
        out = 0
        m = self.base.order
        for c in reversed(a):
            out = out * m + self.base.encode(c)
        return out

    def decode(self, n):
        m = self.base.order
        cs = []
        for _ in range(self.n):
            n, r = divmod(n, m)
            cs.append(self.base.decode(r))
        return tuple(cs)

    def digits(self, a):
        return [d for c in a for d in self.base.digits(c)]

    def from_digits(self, ds):
        k = len(ds) // self.n
        if k * self.n != len(ds):
            raise ValueError(f"digit count {len(ds)} is not a multiple of {self.n}")
        return tuple(self.base.from_digits(ds[i * k:(i + 1) * k]) for i in range(self.n))

    # arithmetic -----------------------------------------------------------
    def add(self, a, b):
        if self._prime_base:
            p = self.char
            return tuple((x + y) % p for x, y in zip(a, b))
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self._prime_base:
            p = self.char
            return tuple((x - y) % p for x, y in zip(a, b))
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def scale(self, c, a):
        """Multiply by a base raw value."""
        B = self.base
        return tuple(B.mul(c, x) for x in a)

    def mul(self, a, b):
        n = self.n
        m = self.modulus
        if self._prime_base:
            p = self.char
            prod = [0] * (2 * n - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
            for k in range(2 * n - 2, n - 1, -1):
                t = prod[k] % p
                if t:
                    for i in range(n):
                        prod[k - n + i] -= t * m[i]
            return tuple(c % p for c in prod[:n])
        B = self.base
        z = B.zero
        prod = [z] * (2 * n - 1)
        for i, x in enumerate(a):
            if x == z:
                continue
            for j, y in enumerate(b):
                if y != z:
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        for k in range(2 * n - 2, n - 1, -1):
            t = prod[k]
            if t != z:
                for i in range(n):
                    prod[k - n + i] = B.sub(prod[k - n + i], B.mul(t, m[i]))
        return tuple(prod[:n])

    def frob(self, a, k=1):
        """``a ** (|base| ** k)`` through the precomputed linear map."""
        for _ in range(k % self.n):
            acc = self.zero
            for c, img in zip(a, self._frob_images):
                if c != self.base.zero:
                    acc = self.add(acc, self.scale(c, img))
            a = acc
        return a

    def norm(self, a):
        """Norm down to the base field, as a base raw value."""
        acc = a
        for k in range(1, self.n):
            acc = self.mul(acc, self.frob(a, k))
        return acc[0]

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        conj = self.frob(a, 1)
        for k in range(2, self.n):
            conj = self.mul(conj, self.frob(a, k))
        nrm = self.mul(a, conj)[0]
        return self.scale(self.base.inv(nrm), conj)

    def _pow_nonneg(self, a, e):
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def pow(self, a, e):
        if a == self.zero:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return self.one if e == 0 else self.zero
        return self._pow_nonneg(a, e % (self.order - 1))


class FFElement:
    """An element of one level of a field tower.  Immutable and hashable."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _other(self, other):
        if isinstance(other, FFElement):
            if other.field is not self.field:
                raise FieldMismatchError(f"{other.field!r} vs {self.field!r}")
            return other.raw
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, raw):
        return FFElement(self.field, raw)

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.sub(o, self.raw))

    def __neg__(self):
        return self._wrap(self.field.neg(self.raw))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(self.raw, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(o, self.field.inv(self.raw)))

    def __pow__(self, e):
        return self._wrap(self.field.pow(self.raw, int(e)))

    def inverse(self):
        return self._wrap(self.field.inv(self.raw))

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.field is other.field and self.raw == other.raw
        if isinstance(other, int):
            return self.raw == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.raw))

    def __bool__(self):
        return self.raw != self.field.zero

    def is_zero(self):
        return self.raw == self.field.zero

    @property
    def level(self):
        return self.field.level

    @property
    def coords(self):
        """Coefficients over the next field down (the value itself at F_p)."""
        if isinstance(self.field, PrimeField):
            return (self.raw,)
        return tuple(FFElement(self.field.base, c) for c in self.raw)

    def digits(self):
        """Flat F_p coordinates, low degree first."""
        return self.field.digits(self.raw)

    def encode(self):
        return self.field.encode(self.raw)

    def sort_key(self):
        return self.field.encode(self.raw)

    def __repr__(self):
        ds = self.field.digits(self.raw)
        if len(ds) == 1:
            return f"{self.field.level}({ds[0]})"
        return f"{self.field.level}({','.join(map(str, ds))})"


class FieldCtx:
    """F_p ⊂ F_q ⊂ F_{q^3} with fixed moduli.  Build it with :func:`make_field`."""

    def __init__(self, p, h, base_modulus, cubic_modulus):
        self.p = p
        self.h = h
        self.q = p ** h
        self.prime = PrimeField(p)
        self.base_modulus = tuple(base_modulus)
        if h == 1:
            self.base = PrimeField(p)
            self.base.level = "base"
        else:
            self.base = ExtField(self.prime, base_modulus, "base")
        self.cubic_modulus = tuple(cubic_modulus)
        self.cubic = ExtField(self.base, tuple(self.base.decode(c) for c in cubic_modulus), "cubic")
        self._quadratic = None

    def __repr__(self):
        return f"FieldCtx(p={self.p}, h={self.h})"

    @property
    def quadratic(self):
        """F_{q^2} as its own quadratic extension of F_q (built on first use)."""
        if self._quadratic is None:
            mod = _smallest_irreducible(self.base, 2)
            self._quadratic = ExtField(self.base, mod, "quadratic")
        return self._quadratic

    def field(self, level):
        if level == "prime":
            return self.prime
        if level == "base":
            return self.base
        if level == "cubic":
            return self.cubic
        if level == "quadratic":
            return self.quadratic
        raise ValueError(f"unknown level {level!r}")

    # element helpers --------------------------------------------------------
    def elem(self, value, level="base"):
        """Build an element from an int (F_p image), a digit list, or an element."""
        F = self.field(level)
        if isinstance(value, FFElement):
            if value.field is F:
                return value
            if value.field is self.base and level == "cubic":
                return FFElement(F, F.embed(value.raw))
            if value.field is self.base and level == "quadratic":
                return FFElement(F, F.embed(value.raw))
            raise FieldMismatchError(f"cannot move {value!r} to level {level}")
        if isinstance(value, int):
            return FFElement(F, F.from_int(value))
        return FFElement(F, F.from_digits([int(d) for d in value]))

    def lift(self, c):
        """Embed an F_q element into F_{q^3}."""
        return self.elem(c, "cubic")

    def elements(self, level="base"):
        F = self.field(level)
        return [FFElement(F, F.decode(i)) for i in range(F.order)]

    def zero(self, level="base"):
        F = self.field(level)
        return FFElement(F, F.zero)

    def one(self, level="base"):
        F = self.field(level)
        return FFElement(F, F.one)

    def random(self, rng, level="cubic", nonzero=False):
        F = self.field(level)
        lo = 1 if nonzero else 0
        return FFElement(F, F.decode(rng.randrange(lo, F.order)))

    def header(self):
        """One-line text description used at the top of census artifacts."""
        bm = ",".join(str(c) for c in self.base_modulus)
        cm = ",".join(str(c) for c in self.cubic_modulus)
        return f"p={self.p} h={self.h} base_modulus={bm} cubic_modulus={cm}"


def parse_header(line):
    """Inverse of :meth:`FieldCtx.header`; returns a dict of ints / int tuples."""
    out = {}
    for tok in line.split():
        key, _, val = tok.partition("=")
        if key in ("p", "h"):
            out[key] = int(val)
        elif key in ("base_modulus", "cubic_modulus"):
            out[key] = tuple(int(v) for v in val.split(","))
        else:
            raise ValueError(f"unknown header field {key!r}")
    return out


# modulus search -------------------------------------------------------------

def is_irreducible(F, f):
    """Rabin's test for a monic raw polynomial ``f`` over the field ``F``."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    X = [F.zero, F.one]
    Q = F.order
    # X^(Q^n) == X (mod f)
    xp = X
    powers = {}
    for k in range(1, n + 1):
        xp = P.powmod(F, xp, Q, f)
        powers[k] = xp
    if P.sub(F, powers[n], X):
        return False
    for r in _prime_factors(n):
        d = n // r
        g = P.gcd(F, f, P.sub(F, powers[d], X))
        if len(g) > 1:
            return False
    return True


def _prime_factors(n):
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


def _smallest_irreducible(F, n):
    """Lexicographically smallest monic irreducible of degree n (low coefficients first)."""
    for cs in itertools.product(range(F.order), repeat=n):
        if cs[0] == 0:
            continue
        f = [F.decode(c) for c in cs] + [F.one]
        if is_irreducible(F, f):
            return tuple(f)
    raise RuntimeError(f"no irreducible polynomial of degree {n} over {F!r}")


@lru_cache(maxsize=None)
def make_field(p: int, h: int = 1) -> FieldCtx:
    """Build the tower F_p ⊂ F_{p^h} ⊂ F_{p^{3h}} with deterministic moduli."""
    if not isinstance(p, int) or not isinstance(h, int):
        raise TypeError("p and h must be integers")
    if h < 1:
        raise ValueError("extension degree h must be at least 1")
    if p in (2, 3):
        raise ValueError("characteristic must exceed 3")
    if p < 2 or not gmpy2.is_prime(p):
        raise ValueError(f"{p} is not prime")
    fp = PrimeField(p)
    if h == 1:
        base_mod = (0, 1)
        base = fp
    else:
        base_mod = _smallest_irreducible(fp, h)
        base = ExtField(fp, base_mod, "base")
    cubic_raw = _smallest_irreducible(base, 3)
    return FieldCtx(p, h, base_mod, tuple(base.encode(c) for c in cubic_raw))


# operations on elements -------------------------------------------------------

def _require_cubic(ctx, x):
    if x.field is not ctx.cubic:
        raise FieldMismatchError(f"expected an element of F_(q^3) of {ctx!r}")


def frobenius(ctx: FieldCtx, x: FFElement, k: int = 1) -> FFElement:
    """x ** (q ** k) on F_{q^3}."""
    _require_cubic(ctx, x)
    if k < 0:
        raise ValueError("k must be non-negative")
    return FFElement(ctx.cubic, ctx.cubic.frob(x.raw, k))


def norm(ctx: FieldCtx, x: FFElement) -> FFElement:
    """x ** (q^2 + q + 1) as an element of F_q."""
    _require_cubic(ctx, x)
    return FFElement(ctx.base, ctx.cubic.norm(x.raw))


def in_mu(ctx: FieldCtx, x: FFElement) -> bool:
    """True iff x is a (q^2+q+1)-th root of unity."""
    _require_cubic(ctx, x)
    if x.is_zero():
        return False
    return ctx.cubic.norm(x.raw) == ctx.base.one


def mu_intersect_base(ctx: FieldCtx) -> list[FFElement]:
    """Elements of F_q that are (q^2+q+1)-th roots of unity, i.e. cube roots of 1."""
    F = ctx.base
    out = []
    for i in range(1, F.order):
        c = F.decode(i)
        if F.pow(c, 3) == F.one:
            out.append(FFElement(F, c))
    return out


def cube_class(x: FFElement) -> bool:
    """Is the nonzero element x a cube in its own field?"""
    if x.is_zero():
        raise ValueError("cube test of zero")
    N = x.field.order
    if (N - 1) % 3:
        return True
    return x.field.pow(x.raw, (N - 1) // 3) == x.field.one
