"""Exact comparisons against bounds of the form r + s*sqrt(q).

Nothing here touches floating point except :meth:`Surd.approx`, which is
for display only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _sign(x):
    return (x > 0) - (x < 0)


def surd_sign(r, s, q) -> int:
    """Sign of r + s*sqrt(q) for rationals r, s and an integer q >= 0."""
    r, s = Fraction(r), Fraction(s)
    if q < 0:
        raise ValueError("q must be non-negative")
    if s == 0 or q == 0:
        return _sign(r)
    if r == 0:
        return _sign(s)
    if _sign(r) == _sign(s):
        return _sign(r)
    # opposite signs: compare r^2 with s^2 q
    return _sign(r) * _sign(r * r - s * s * q)


@dataclass(frozen=True)
class Surd:
    """The real number r + s*sqrt(q)."""

    r: Fraction
    s: Fraction
    q: int

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "s", Fraction(self.s))

    def compare(self, n) -> int:
        """Sign of n - self."""
        return surd_sign(Fraction(n) - self.r, -self.s, self.q)

    def le(self, n):
        """self <= n."""
        return self.compare(n) >= 0

    def ge(self, n):
        """self >= n."""
        return self.compare(n) <= 0

    def ceil(self) -> int:
        """Smallest integer n with n >= self."""
        n = math.floor(self.approx()) - 1
        while not self.le(n):
            n += 1
        while self.le(n - 1):
            n -= 1
        return n

    def floor(self) -> int:
        n = math.ceil(self.approx()) + 1
        while not self.ge(n):
            n -= 1
        while self.ge(n + 1):
            n += 1
        return n

    def approx(self) -> float:
        return float(self.r) + float(self.s) * math.sqrt(self.q)

    def token(self) -> str:
        return f"{self.r}{'+' if self.s >= 0 else '-'}{abs(self.s)}*sqrt({self.q})"


@dataclass(frozen=True)
class LowerBound:
    """(q - c1 sqrt(q) - c2) / c3."""

    c1: int
    c2: int
    c3: int
    q: int

    @property
    def value(self) -> Surd:
        return Surd(Fraction(self.q - self.c2, self.c3), Fraction(-self.c1, self.c3), self.q)

    def satisfied_by(self, count: int) -> bool:
        """count >= bound, decided as c3*count - q + c2 >= -c1*sqrt(q)."""
        return surd_sign(self.c3 * count - self.q + self.c2, self.c1, self.q) >= 0

    def min_count(self) -> int:
        """Smallest non-negative count meeting the bound."""
        return max(0, self.value.ceil())

    def token(self) -> str:
        return f"(q-{self.c1}*sqrt(q)-{self.c2})/{self.c3} with q={self.q}"


FAMILY_BOUNDS = {"f1": (22, 79, 6), "f2": (22, 79, 6), "f4": (8, 50, 3)}


def lower_bound(family: str, q: int) -> LowerBound:
    try:
        c1, c2, c3 = FAMILY_BOUNDS[family]
    except KeyError:
        raise ValueError(f"no counting bound for family {family!r}") from None
    return LowerBound(c1, c2, c3, q)


@dataclass(frozen=True)
class Window:
    """[q + 1 - 2g sqrt(q), q + 1 + 2g sqrt(q) + slack] with exact endpoints."""

    q: int
    g: int
    slack: int = 0

    @property
    def lower(self) -> Surd:
        return Surd(self.q + 1, -2 * self.g, self.q)

    @property
    def upper(self) -> Surd:
        return Surd(self.q + 1 + self.slack, 2 * self.g, self.q)

    def __contains__(self, n) -> bool:
        return self.lower.le(n) and self.upper.ge(n)

    def token(self) -> str:
        return f"[{self.lower.token()}, {self.upper.token()}]"


def hasse_weil_window(q: int, g: int, slack: int = 0) -> Window:
    if g < 0:
        raise ValueError("genus must be non-negative")
    return Window(q, g, slack)
