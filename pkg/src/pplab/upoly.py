"""Univariate polynomials over one level of a field tower.

Besides the usual ring operations this module finds roots of low-degree
polynomials (gcd with ``X^N - X`` followed by equal-degree splitting) and
implements the Hessian splitting criterion for cubics over F_q, q = 1 mod 3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from pplab import _polyops as P
from pplab.ff import FFElement, FieldCtx, FieldMismatchError, cube_class, in_mu

# Fields at most this large are split by evaluating at every element.
EXHAUSTIVE_SPLIT_LIMIT = 1 << 10
DEFAULT_SEED = 20240


class UniPoly:
    """Dense polynomial with coefficients in ``field``; ``coeffs`` low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = P.trim(field, list(coeffs))

    @classmethod
    def from_elements(cls, elements, field=None):
        elements = list(elements)
        if field is None:
            field = elements[0].field
        raws = []
        for c in elements:
            if isinstance(c, int):
                raws.append(field.from_int(c))
            elif c.field is field:
                raws.append(c.raw)
            else:
                raise FieldMismatchError(f"coefficient {c!r} not in {field!r}")
        return cls(field, raws)

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(n) for n in ints])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, i):
        raw = self.coeffs[i] if i < len(self.coeffs) else self.field.zero
        return FFElement(self.field, raw)

    def elements(self):
        return [FFElement(self.field, c) for c in self.coeffs]

    def lead(self):
        return self.coefficient(self.degree)

    def _check(self, other):
        if isinstance(other, (int, FFElement)):
            other = UniPoly.from_elements([other], self.field)
        if other.field is not self.field:
            raise FieldMismatchError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return UniPoly(self.field, P.add(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return UniPoly(self.field, P.sub(self.field, self.coeffs, other.coeffs))

    def __neg__(self):
        F = self.field
        return UniPoly(F, [F.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        other = self._check(other)
        return UniPoly(self.field, P.mul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e):
        out = UniPoly(self.field, [self.field.one])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other):
        other = self._check(other)
        q, r = P.divmod_(self.field, self.coeffs, other.coeffs)
        return UniPoly(self.field, q), UniPoly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), tuple(self.coeffs)))

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x: FFElement) -> FFElement:
        if x.field is not self.field:
            raise FieldMismatchError("evaluation point lies in a different field")
        return FFElement(self.field, P.evaluate(self.field, self.coeffs, x.raw))

    def derivative(self):
        return UniPoly(self.field, P.derivative(self.field, self.coeffs))

    def monic(self):
        return UniPoly(self.field, P.monic(self.field, self.coeffs))

    def gcd(self, other):
        other = self._check(other)
        return UniPoly(self.field, P.gcd(self.field, self.coeffs, other.coeffs))

    def lift(self, field, embed):
        """Map coefficients into ``field`` with ``embed`` (raw -> raw)."""
        return UniPoly(field, [embed(c) for c in self.coeffs])

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c != self.field.zero:
                terms.append(f"{FFElement(self.field, c)!r}*T^{i}")
        return " + ".join(terms) if terms else "0"


# root finding ---------------------------------------------------------------

def _split(F, g, rng, out):
    """Append the roots of ``g`` (monic, squarefree, split over F) to ``out``."""
    d = len(g) - 1
    if d == 0:
        return
    if d == 1:
        out.append(F.neg(g[0]))
        return
    N = F.order
    while True:
        delta = F.decode(rng.randrange(N))
        h = P.powmod(F, [delta, F.one], (N - 1) // 2, g)
        k = P.gcd(F, g, P.sub(F, h, [F.one]))
        if 0 < len(k) - 1 < d:
            _split(F, k, rng, out)
            _split(F, P.divmod_(F, g, k)[0], rng, out)
            return


def roots(f: UniPoly, seed: int = DEFAULT_SEED) -> list[FFElement]:
    """Distinct roots of ``f`` in its own field, sorted by encoding.

    Only degrees 1..4 are accepted.
    """
    if not 1 <= f.degree <= 4:
        raise ValueError(f"roots() supports degrees 1..4, got {f.degree}")
    F = f.field
    m = P.monic(F, f.coeffs)
    N = F.order
    if N <= EXHAUSTIVE_SPLIT_LIMIT:
        found = [F.decode(i) for i in range(N) if P.evaluate(F, m, F.decode(i)) == F.zero]
    else:
        xn = P.powmod(F, [F.zero, F.one], N, m)
        g = P.gcd(F, m, P.sub(F, xn, [F.zero, F.one]))
        found = []
        _split(F, g, random.Random(seed), found)
    found.sort(key=F.encode)
    return [FFElement(F, r) for r in found]


def roots_in_mu(f: UniPoly, ctx: FieldCtx, seed: int = DEFAULT_SEED) -> list[FFElement]:
    """Roots of an F_q polynomial that lie in the (q^2+q+1)-th roots of unity.

    The polynomial is lifted to F_{q^3}; mu is never enumerated.
    """
    if f.field is not ctx.base:
        raise FieldMismatchError("roots_in_mu expects a polynomial over F_q")
    lifted = f.lift(ctx.cubic, ctx.cubic.embed)
    return [r for r in roots(lifted, seed) if in_mu(ctx, r)]


def count_roots_exhaustive(f: UniPoly) -> int:
    F = f.field
    return sum(1 for i in range(F.order) if P.evaluate(F, f.coeffs, F.decode(i)) == F.zero)


# Hessian criterion ------------------------------------------------------------

def hessian(F: UniPoly) -> UniPoly:
    """Hessian quadratic of the binary cubic form attached to ``F``.

    For ``F = a T^3 + b T^2 + c T + d`` this is
    ``(3ac - b^2) T^2 + (9ad - bc) T + (3bd - c^2)``.
    """
    if F.degree != 3:
        raise ValueError("hessian() needs a cubic")
    d, c, b, a = F.elements()
    return UniPoly.from_elements([3 * b * d - c * c, 9 * a * d - b * c, 3 * a * c - b * b], F.field)


@dataclass(frozen=True)
class HessianVerdict:
    split: bool
    beta1: Optional[FFElement] = None
    beta2: Optional[FFElement] = None
    ratio: Optional[FFElement] = None
    fallback: bool = False
    reason: str = ""


def hessian_split(F: UniPoly) -> HessianVerdict:
    """Decide whether a cubic over F_q (q = 1 mod 3) has three roots in F_q.

    Degenerate shapes (repeated roots, a Hessian that is not a separable
    quadratic, a Hessian root where F vanishes) are decided by counting roots
    exhaustively; ``fallback`` is set in that case.
    """
    K = F.field
    if (K.order - 1) % 3:
        raise ValueError("the Hessian criterion needs q = 1 (mod 3)")
    if F.degree != 3:
        raise ValueError("hessian_split() needs a cubic")

    def fallback(reason):
        return HessianVerdict(split=count_roots_exhaustive(F) == 3, fallback=True, reason=reason)

    if F.gcd(F.derivative()).degree > 0:
        return fallback("not squarefree")
    H = hessian(F)
    if H.degree < 2:
        return fallback("hessian has vanishing leading coefficient")
    h0, h1, h2 = H.elements()
    if (h1 * h1 - 4 * h2 * h0).is_zero():
        return fallback("hessian has a double root")
    bs = roots(H)
    if len(bs) < 2:
        return HessianVerdict(split=False, reason="hessian roots outside F_q")
    b1, b2 = bs
    v1, v2 = F.eval(b1), F.eval(b2)
    if v1.is_zero() or v2.is_zero():
        return fallback("cubic vanishes at a hessian root")
    ratio = v1 / v2
    return HessianVerdict(split=cube_class(ratio), beta1=b1, beta2=b2, ratio=ratio)
