"""Sparse polynomials over Z (or Z/P) in the fixed ring Z[x, y, z, A, B, a, b, c].

Monomials are packed into a single int, 16 bits per variable with x in the
most significant slot, so monomial products are integer additions and the
integer order of packed keys is the lex order x > y > z > A > B > a > b > c.
Printing uses graded lex.

A polynomial may carry a prime ``modulus``; it then lives in F_P[...] and
every coefficient is kept in ``range(P)``.  That mode is the evaluation
image used by the probabilistic checks.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from functools import reduce
from math import gcd

VARS = ("x", "y", "z", "A", "B", "a", "b", "c")
NVARS = len(VARS)
_BITS = 16
_MASK = (1 << _BITS) - 1
MAX_DEGREE = (1 << (_BITS - 1)) - 1
_SHIFT = {v: (NVARS - 1 - i) * _BITS for i, v in enumerate(VARS)}
_SHIFTS = tuple(_SHIFT[v] for v in VARS)
_GUARD = sum(1 << (s + _BITS - 1) for s in _SHIFTS)


class InexactDivisionError(ArithmeticError):
    """Raised by :meth:`ZPoly.exact_divide` when the divisor does not divide."""

    def __init__(self, remainder, message="inexact division"):
        super().__init__(f"{message}; remainder has {len(remainder.terms)} terms")
        self.remainder = remainder


def pack(exps):
    m = 0
    for e, s in zip(exps, _SHIFTS):
        if e < 0 or e > MAX_DEGREE:
            raise ValueError(f"exponent {e} out of range")
        m |= e << s
    return m


def unpack(m):
    return tuple((m >> s) & _MASK for s in _SHIFTS)


def _tdeg(m):
    return sum((m >> s) & _MASK for s in _SHIFTS)


def _divides(d, m):
    """Does monomial d divide monomial m?"""
    return ((m | _GUARD) - d) & _GUARD == _GUARD


def _shift_of(var):
    try:
        return _SHIFT[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}; ring variables are {VARS}") from None


class ZPoly:
    """Immutable sparse polynomial.  ``terms`` maps packed monomials to nonzero ints."""

    __slots__ = ("terms", "modulus")

    def __init__(self, terms=None, modulus=None):
        self.terms = terms if terms is not None else {}
        self.modulus = modulus

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c, modulus=None):
        if modulus is not None:
            c %= modulus
        return cls({0: c} if c else {}, modulus)

    @classmethod
    def var(cls, name, modulus=None):
        return cls({1 << _shift_of(name): 1}, modulus)

    @classmethod
    def gens(cls, modulus=None):
        return tuple(cls.var(v, modulus) for v in VARS)

    @classmethod
    def monomial(cls, exps, coeff=1, modulus=None):
        if isinstance(exps, dict):
            exps = [exps.get(v, 0) for v in VARS]
        return cls.from_terms({tuple(exps): coeff}, modulus)

    @classmethod
    def from_terms(cls, items, modulus=None):
        """Build from ``{exponent tuple: coeff}`` (tuples of length 8)."""
        out = {}
        for exps, c in dict(items).items():
            k = pack(exps)
            out[k] = out.get(k, 0) + c
        return cls(_clean(out, modulus), modulus)

    def _coerce(self, other):
        if isinstance(other, ZPoly):
            if other.modulus != self.modulus:
                raise ValueError("mixing polynomials with different moduli")
            return other
        if isinstance(other, int):
            return ZPoly.const(other, self.modulus)
        return NotImplemented

    # basic queries --------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        """(exponent tuple, coefficient) pairs in canonical (graded lex, descending) order."""
        for m in sorted(self.terms, key=lambda k: (_tdeg(k), k), reverse=True):
            yield unpack(m), self.terms[m]

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(_tdeg(m) for m in self.terms)
        s = _shift_of(var)
        return max((m >> s) & _MASK for m in self.terms)

    def variables(self):
        seen = 0
        for m in self.terms:
            seen |= m
        return tuple(v for v in VARS if (seen >> _SHIFT[v]) & _MASK)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        return self.terms.get(0, 0)

    def content(self):
        return reduce(gcd, self.terms.values(), 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = ZPoly.const(other, self.modulus)
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self.modulus == other.modulus and self.terms == other.terms

    def __hash__(self):
        return hash((self.modulus, frozenset(self.terms.items())))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ZPoly(_clean(out, self.modulus), self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return ZPoly(_clean({m: -c for m, c in self.terms.items()}, self.modulus), self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return ZPoly(_clean(out, self.modulus), self.modulus)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ZPoly(_mul(self.terms, other.terms, self.modulus), self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = ZPoly.const(1, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c):
        return ZPoly(_clean({m: c * v for m, v in self.terms.items()}, self.modulus), self.modulus)

    def divmod(self, g):
        """Multivariate division by ``g`` in lex order; returns (quotient, remainder)."""
        g = self._coerce(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        qt, rt = _divide(self.terms, g.terms, self.modulus)
        return ZPoly(qt, self.modulus), ZPoly(rt, self.modulus)

    def exact_divide(self, g):
        """Quotient of an exact division; raises :class:`InexactDivisionError` otherwise."""
        q, r = self.divmod(g)
        if r.terms:
            raise InexactDivisionError(r)
        return q

    def divides(self, f):
        """Does self divide f exactly?"""
        return not f.divmod(self)[1].terms

    def __floordiv__(self, g):
        return self.exact_divide(g)

    # substitution ---------------------------------------------------------
    def permute(self, mapping):
        """Rename variables, e.g. ``{"x": "y", "y": "z", "z": "x"}``; unlisted ones stay."""
        moves = [(_SHIFT[s], _SHIFT[d]) for s, d in mapping.items() if s != d]
        if not moves:
            return self
        fixed_mask = 0
        for s, _ in moves:
            fixed_mask |= _MASK << s
        keep = ~fixed_mask
        out = {}
        for m, c in self.terms.items():
            k = m & keep
            for s, d in moves:
                k |= ((m >> s) & _MASK) << d
            out[k] = out.get(k, 0) + c
        return ZPoly(_clean(out, self.modulus), self.modulus)

    def subs(self, values):
        """Substitute ints or ZPolys for some variables."""
        values = dict(values)
        for v in values:
            _shift_of(v)
        cache = {v: {0: ZPoly.const(1, self.modulus)} for v in values}

        def power(v, e):
            got = cache[v].get(e)
            if got is None:
                val = values[v]
                if isinstance(val, int):
                    got = ZPoly.const(pow(val, e, self.modulus) if self.modulus else val ** e, self.modulus)
                else:
                    got = val._coerce(val) ** e if val.modulus == self.modulus else None
                    if got is None:
                        raise ValueError("substituted polynomial has a different modulus")
                cache[v][e] = got
            return got

        strip = 0
        for v in values:
            strip |= _MASK << _SHIFT[v]
        keep = ~strip
        acc = {}
        groups = {}
        for m, c in self.terms.items():
            key = tuple((m >> _SHIFT[v]) & _MASK for v in values)
            groups.setdefault(key, {})[m & keep] = c
        for key, part in groups.items():
            factor = ZPoly.const(1, self.modulus)
            for v, e in zip(values, key):
                if e:
                    factor = factor * power(v, e)
            for m, c in _mul(part, factor.terms, self.modulus).items():
                acc[m] = acc.get(m, 0) + c
        return ZPoly(_clean(acc, self.modulus), self.modulus)

    def evaluate(self, point, modulus):
        """Value at ``point`` (dict var -> int) modulo ``modulus``; every variable present must be given."""
        pows = {}
        total = 0
        for m, c in self.terms.items():
            term = c % modulus
            for v, s in _SHIFT.items():
                e = (m >> s) & _MASK
                if e:
                    key = (v, e)
                    pv = pows.get(key)
                    if pv is None:
                        pv = pows[key] = pow(point[v], e, modulus)
                    term = term * pv % modulus
            total += term
        return total % modulus

    def reduce_mod(self, modulus):
        """Image in F_modulus[...]."""
        return ZPoly(_clean(dict(self.terms), modulus), modulus)

    # univariate views -----------------------------------------------------
    def coeffs_in(self, var):
        """Coefficients as a polynomial in ``var``: a list indexed by degree."""
        s = _shift_of(var)
        buckets = {}
        for m, c in self.terms.items():
            e = (m >> s) & _MASK
            buckets.setdefault(e, {})[m - (e << s)] = c
        if not buckets:
            return []
        out = [ZPoly({}, self.modulus) for _ in range(max(buckets) + 1)]
        for e, t in buckets.items():
            out[e] = ZPoly(t, self.modulus)
        return out

    @classmethod
    def from_coeffs(cls, coeffs, var, modulus=None):
        s = _shift_of(var)
        out = {}
        for e, cf in enumerate(coeffs):
            for m, c in cf.terms.items():
                out[m + (e << s)] = c
        return cls(out, modulus)

    def univariate_ints(self, var):
        """Integer coefficient list (low degree first) of a polynomial in ``var`` only."""
        extra = [v for v in self.variables() if v != var]
        if extra:
            raise ValueError(f"polynomial also involves {extra}")
        return [cf.constant_value() for cf in self.coeffs_in(var)]

    # text form ------------------------------------------------------------
    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.items():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(VARS, exps) if e)
            body = f"{abs(c)}*{mono}" if mono else f"{abs(c)}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        txt = self.to_text()
        if len(txt) > 120:
            txt = txt[:117] + "..."
        mod = f", mod {self.modulus}" if self.modulus else ""
        return f"ZPoly({txt}{mod})"

    @classmethod
    def from_text(cls, text, modulus=None):
        text = text.strip()
        if text == "0":
            return cls({}, modulus)
        out = {}
        for sign, body in _TERM_RE.findall(text.replace(" ", "")):
            coeff = 1
            exps = [0] * NVARS
            for factor in body.split("*"):
                if factor.isdigit():
                    coeff *= int(factor)
                    continue
                name, _, e = factor.partition("^")
                exps[VARS.index(name)] += int(e) if e else 1
            if sign == "-":
                coeff = -coeff
            k = pack(exps)
            out[k] = out.get(k, 0) + coeff
        return cls(_clean(out, modulus), modulus)


_TERM_RE = re.compile(r"([+-]?)([^+-]+)")


def _clean(d, modulus):
    if modulus is None:
        return {m: c for m, c in d.items() if c}
    out = {}
    for m, c in d.items():
        c %= modulus
        if c:
            out[m] = c
    return out


def _mul(t1, t2, modulus):
    if len(t1) < len(t2):
        t1, t2 = t2, t1
    out = {}
    get = out.get
    for m2, c2 in t2.items():
        for m1, c1 in t1.items():
            k = m1 + m2
            out[k] = get(k, 0) + c1 * c2
    if out and max(out) & _GUARD:
        raise OverflowError("exponent overflow in packed monomial")
    return _clean(out, modulus)


def _divide(f, g, modulus):
    """Lex-order division of term dicts; returns (quotient, remainder) dicts."""
    lm = max(g)
    lc = g[lm]
    rest = [(m, c) for m, c in g.items() if m != lm]
    inv_lc = pow(lc, -1, modulus) if modulus else None
    r = dict(f)
    heap = [-m for m in r]
    heapq.heapify(heap)
    qt = {}
    rem = {}
    while heap:
        m = -heapq.heappop(heap)
        c = r.pop(m, 0)
        if not c:
            continue
        if not _divides(lm, m):
            rem[m] = c
            continue
        if modulus:
            qc = c * inv_lc % modulus
        else:
            qc, cr = divmod(c, lc)
            if cr:
                rem[m] = c
                continue
        d = m - lm
        qt[d] = qc
        for mg, cg in rest:
            k = d + mg
            old = r.get(k)
            v = (old or 0) - qc * cg
            if modulus:
                v %= modulus
            if v:
                if old is None:
                    heapq.heappush(heap, -k)
                r[k] = v
            elif old is not None:
                del r[k]
    return qt, rem


# resultants -----------------------------------------------------------------

def _ucoeffs(f, var):
    cs = f.coeffs_in(var)
    while cs and not cs[-1].terms:
        cs.pop()
    return cs


def _uzero(cs):
    return not cs


def _prem(F, G):
    """Pseudo-remainder lc(G)^(deg F - deg G + 1) * F mod G, coefficient lists."""
    dF, dG = len(F) - 1, len(G) - 1
    lcG = G[-1]
    R = list(F)
    e = dF - dG + 1
    while R and len(R) - 1 >= dG:
        dR = len(R) - 1
        lcR = R[-1]
        shift = dR - dG
        newR = [c * lcG for c in R]
        for i, g in enumerate(G):
            newR[i + shift] = newR[i + shift] - lcR * g
        newR.pop()  # leading term cancels
        while newR and not newR[-1].terms:
            newR.pop()
        R = newR
        e -= 1
    if e > 0 and R:
        f = lcG ** e
        R = [c * f for c in R]
    return R


def resultant(f: ZPoly, g: ZPoly, var: str) -> ZPoly:
    """Resultant with respect to ``var`` by the subresultant PRS.

    Normalised to agree with the determinant of the Sylvester matrix whose
    first rows hold the coefficients of ``f``.
    """
    if f.modulus != g.modulus:
        raise ValueError("mixing polynomials with different moduli")
    mod = f.modulus
    A = _ucoeffs(f, var)
    Bq = _ucoeffs(g, var)
    if len(A) < 2 or len(Bq) < 2:
        raise ValueError(f"both polynomials need positive degree in {var}")
    one = ZPoly.const(1, mod)
    s = 1
    dA, dB = len(A) - 1, len(Bq) - 1
    if dA < dB:
        A, Bq = Bq, A
        if (dA * dB) % 2:
            s = -s
    # integer content, removed up front (the exact-division steps stay exact)
    t = 1
    if mod is None:
        ca = reduce(gcd, (cf.content() for cf in A), 0)
        cb = reduce(gcd, (cf.content() for cf in Bq), 0)
        if ca > 1:
            A = [ZPoly({m: c // ca for m, c in cf.terms.items()}) for cf in A]
        if cb > 1:
            Bq = [ZPoly({m: c // cb for m, c in cf.terms.items()}) for cf in Bq]
        t = ca ** (len(Bq) - 1) * cb ** (len(A) - 1)
    gg = one
    h = one
    while True:
        dA, dB = len(A) - 1, len(Bq) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem(A, Bq)
        A = Bq
        if not R:
            return ZPoly({}, mod)
        div = gg * h ** delta
        Bq = [c.exact_divide(div) for c in R] if not div == one else R
        gg = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            h = (gg ** delta).exact_divide(h ** (delta - 1))
        if len(Bq) - 1 == 0:
            dA = len(A) - 1
            lb = Bq[0]
            if dA == 0:
                res = one
            elif dA == 1:
                res = lb
            else:
                res = (lb ** dA).exact_divide(h ** (dA - 1))
            return res.scale(s * t)


def sylvester_matrix(f: ZPoly, g: ZPoly, var: str):
    """Sylvester matrix (rows of f first, highest degree left) as nested lists of ZPoly."""
    F = _ucoeffs(f, var)
    G = _ucoeffs(g, var)
    m, n = len(F) - 1, len(G) - 1
    zero = ZPoly({}, f.modulus)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(F)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(G)):
            row[i + j] = c
        rows.append(row)
    return rows


def bareiss_determinant(M) -> ZPoly:
    """Fraction-free Gaussian elimination (Bareiss) over the polynomial ring."""
    M = [list(r) for r in M]
    n = len(M)
    if n == 0:
        return ZPoly.const(1)
    mod = M[0][0].modulus
    sign = 1
    prev = ZPoly.const(1, mod)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return ZPoly({}, mod)
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * pivot - M[i][k] * M[k][j]
                M[i][j] = num.exact_divide(prev)
            M[i][k] = ZPoly({}, mod)
        prev = pivot
    return M[n - 1][n - 1].scale(sign)


def resultant_sylvester(f: ZPoly, g: ZPoly, var: str) -> ZPoly:
    """Resultant as the Bareiss determinant of the Sylvester matrix (reference route)."""
    return bareiss_determinant(sylvester_matrix(f, g, var))


# rewriting ------------------------------------------------------------------

def substitute_reduce(pol: ZPoly, m: ZPoly, r: ZPoly) -> ZPoly:
    """Rewrite every term divisible by the monomial ``m`` as (term/m)*r until none is left.

    Works pass by pass: each pass rewrites every divisible term once.  To
    guarantee termination some variable v of m must satisfy deg_v(r) < deg_v(m).
    """
    if len(m.terms) != 1 or next(iter(m.terms.values())) != 1:
        raise ValueError("m must be a monic monomial")
    (mk,) = m.terms
    mexp = unpack(mk)
    if not any(e and r.degree(v) < e for v, e in zip(VARS, mexp)):
        raise ValueError("rewrite does not terminate: r must have lower degree than m in some variable of m")
    mod = pol.modulus
    single = [v for v, e in zip(VARS, mexp) if e]
    if len(single) == 1:
        return _reduce_power(pol, single[0], mexp[VARS.index(single[0])], r)
    cur = pol.terms
    while True:
        hit = False
        out = {}
        for t, c in cur.items():
            if _divides(mk, t):
                hit = True
                for k, v in _mul({t - mk: c}, r.terms, mod).items():
                    out[k] = out.get(k, 0) + v
            else:
                out[t] = out.get(t, 0) + c
        if not hit:
            return ZPoly(cur, mod)
        cur = _clean(out, mod)


def _reduce_power(pol, var, d, r):
    """Normal form modulo var^d - r (same result as the pass-by-pass rewrite)."""
    s = _SHIFT[var]
    mod = pol.modulus
    rpow = {0: {0: 1}}
    cur = pol.terms
    while True:
        out = {}
        hit = False
        for t, c in cur.items():
            e = (t >> s) & _MASK
            if e < d:
                out[t] = out.get(t, 0) + c
                continue
            hit = True
            k, e0 = divmod(e, d)
            if k not in rpow:
                rpow[k] = (r ** k).terms
            base = t - ((e - e0) << s)
            for mk, v in rpow[k].items():
                key = base + mk
                out[key] = out.get(key, 0) + c * v
        cur = _clean(out, mod)
        if not hit:
            return ZPoly(cur, mod)


def reciprocal(f: ZPoly, var: str, n: int) -> ZPoly:
    """var^n * f(1/var); requires deg_var f <= n."""
    cs = f.coeffs_in(var)
    if len(cs) - 1 > n:
        raise ValueError("degree exceeds n")
    cs = cs + [ZPoly({}, f.modulus)] * (n + 1 - len(cs))
    return ZPoly.from_coeffs(list(reversed(cs)), var, f.modulus)


# k-th powers ----------------------------------------------------------------

class _Rationals:
    zero = Fraction(0)
    one = Fraction(1)
    order = 0

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return 1 / a


def squarefree_multiplicities(coeffs, field):
    """Yun's algorithm; returns the multiplicities of the squarefree factors of a
    univariate polynomial (raw coefficients over ``field``, degree below the characteristic)."""
    from pplab import _polyops as P

    F = field
    f = P.trim(F, list(coeffs))
    if len(f) <= 1:
        return []
    df = P.derivative(F, f)
    b = P.gcd(F, f, df)
    c = P.divmod_(F, f, b)[0]
    d = P.sub(F, P.divmod_(F, df, b)[0], P.derivative(F, c))
    out = []
    i = 1
    while len(c) > 1:
        a = P.gcd(F, c, d)
        if len(a) > 1:
            out.append(i)
        c = P.divmod_(F, c, a)[0]
        d = P.sub(F, P.divmod_(F, d, a)[0], P.derivative(F, c))
        i += 1
    return out


def _is_rational_kth_power(x: Fraction, k):
    if x < 0:
        if k % 2 == 0:
            return False
        x = -x
    return _is_int_kth_power(x.numerator, k) and _is_int_kth_power(x.denominator, k)


def _is_int_kth_power(n, k):
    import gmpy2

    return bool(gmpy2.iroot(gmpy2.mpz(n), k)[1])


def is_kth_power(f: ZPoly, k: int) -> bool:
    """Is the univariate f a k-th power?

    Over Z this means f = c * g^k with g an integer polynomial and c a
    rational k-th power (so f is a k-th power in Q[t]).  For a polynomial
    carrying a modulus P the test is over the algebraic closure of F_P, so
    constant factors are ignored; the degree must stay below P.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if f.is_zero():
        raise ValueError("zero polynomial")
    vs = f.variables()
    if len(vs) > 1:
        raise ValueError(f"expected a univariate polynomial, got variables {vs}")
    if not vs:
        if f.modulus:
            return True
        return _is_rational_kth_power(Fraction(f.constant_value()), k)
    coeffs = f.univariate_ints(vs[0])
    if f.modulus:
        from pplab.ff import PrimeField

        F = PrimeField(f.modulus)
        if len(coeffs) - 1 >= f.modulus:
            raise ValueError("degree must be below the characteristic")
        return all(m % k == 0 for m in squarefree_multiplicities([c % f.modulus for c in coeffs], F))
    mults = squarefree_multiplicities([Fraction(c) for c in coeffs], _Rationals)
    return all(m % k == 0 for m in mults) and _is_rational_kth_power(Fraction(coeffs[-1]), k)
