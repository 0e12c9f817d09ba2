"""Polynomial identities behind the a = 0 case of f1 and f2.

For f1 (variable u, stored in the x slot) the combination
``A^5 h(u) + C(u) g(u)`` and for f2 (variable y) the combination
``A^6 L(y) + C(y) M(y)`` are compared with ``B^6`` times the excluded cubic,
modulo the curve relation A^3 = -B^2 + B - 1.

Both combinations come out as the *negative* of the displayed right-hand
side; an overall sign does not change the roots, so :func:`verify_identity`
accepts either sign and :func:`identity_report` says which one holds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from pplab.zmpoly import ZPoly, reciprocal, substitute_reduce

from .pipeline import EVAL_PRIME, random_curve_point


@dataclass(frozen=True)
class IdentityComponents:
    """lhs = weight * main + cofactor * aux ; rhs = target."""

    family: str
    var: str
    weight: ZPoly
    main: ZPoly
    cofactor: ZPoly
    aux: ZPoly
    target: ZPoly

    @property
    def lhs(self):
        return self.weight * self.main + self.cofactor * self.aux

    def replace(self, **kw):
        d = dict(self.__dict__)
        d.update(kw)
        return IdentityComponents(**d)


def identity_components(family: str) -> IdentityComponents:
    x, y, z, A, B, a, b, c = ZPoly.gens()
    if family == "f1":
        u = x
        g = -A * u**4 + B**2 * u**3 - 2 * A**2 * u**2 + A * B**2 * u - B + 1
        h = ((-B + 1) * u**8
             + (-A * B**3 - 4 * A * B + 4 * A) * u**6
             + (-3 * A**2 * B**3 - 2 * A**2 * B**2 - 6 * A**2 * B + 6 * A**2) * u**4
             + (-3 * A**3 * B**3 - 4 * A**3 * B**2 - 4 * A**3 * B + 4 * A**3 - B**5) * u**2
             - A * (A**3 * B**3 + 2 * A**3 * B**2 + A**3 * B - A**3 + B**5 + B**4))
        cof = (-A**4 * (B - 1) * u**4
               - A**3 * (B**3 - B**2) * u**3
               + A**2 * (-A**3 * B**3 - 2 * A**3 * B + 2 * A**3 - B**5 + B**4) * u**2
               + A * (-A**3 * B**5 - A**3 * B**3 + A**3 * B**2 - B**7 + B**6) * u
               - A**6 * B**3 - 2 * A**6 * B**2 - 2 * A**6 * B + 2 * A**6
               - A**3 * B**7 + A**3 * B**2 - 2 * A**3 * B + A**3 - B**9 + B**8)
        target = B**6 * (u**3 + A**2 * u**2 + (A * B + A) * u - 1)
        return IdentityComponents("f1", "x", A**5, h, cof, g, target)
    if family == "f2":
        M = -A**2 * y**4 - B**3 * y**3 - A * B**2 * y**2 - 2 * A * y**2 - 1
        L = (-A**4 * y**8
             + (-A**3 * B**4 - 2 * A**3 * B**2 - 4 * A**3) * y**6
             + A * B**6 * y**5
             + (-3 * A**2 * B**4 - 4 * A**2 * B**2 - 6 * A**2) * y**4
             + B**6 * y**3
             + (-A * B**4 - 2 * A * B**2 - 4 * A) * y**2 - 1)
        cof = (-A**8 * y**4 + A**6 * B**3 * y**3
               + A**4 * (-A**3 * B**4 - A**3 * B**2 - 2 * A**3 - B**6) * y**2
               - A**2 * B**6 * (-A**3 * B - A**3 - B**3) * y
               + (A**3 * B**2 - A**3 * B + A**3 - B**6) * (A**3 * B**4 + A**3 * B**3 - A**3 * B - A**3 + B**6))
        target = B**6 * (y**3 - A * B * y**2 - A * y**2 - A**2 * y - 1)
        return IdentityComponents("f2", "y", A**6, L, cof, M, target)
    raise ValueError(f"identities exist for f1 and f2 only, not {family!r}")


@dataclass(frozen=True)
class IdentityReport:
    family: str
    holds: bool
    sign: int            # +1: lhs = rhs, -1: lhs = -rhs, 0: neither
    residual: ZPoly      # reduced lhs - rhs
    mode: str = "full"


def _reduce(f):
    return substitute_reduce(f, ZPoly.var("A") ** 3, -ZPoly.var("B") ** 2 + ZPoly.var("B") - 1)


def check_components(comp: IdentityComponents) -> IdentityReport:
    lhs = _reduce(comp.lhs)
    rhs = _reduce(comp.target)
    residual = lhs - rhs
    if residual.is_zero():
        return IdentityReport(comp.family, True, 1, residual)
    if (lhs + rhs).is_zero():
        return IdentityReport(comp.family, True, -1, residual)
    return IdentityReport(comp.family, False, 0, residual)


def check_components_probabilistic(comp: IdentityComponents, points=40, seed=0, prime=EVAL_PRIME):
    """Evaluate both sides at random (u, A, B) with A^3 + B^2 - B + 1 = 0 modulo ``prime``."""
    rng = random.Random(seed)
    lhs = comp.lhs
    signs = set()
    for _ in range(points):
        A, B = random_curve_point("f1", rng, prime)
        pt = {"A": A, "B": B, comp.var: rng.randrange(prime)}
        left = lhs.evaluate(pt, prime)
        right = comp.target.evaluate(pt, prime)
        if left == right == 0:
            continue
        if left == right:
            signs.add(1)
        elif left == (-right) % prime:
            signs.add(-1)
        else:
            signs.add(0)
    sign = signs.pop() if len(signs) == 1 else 0
    return IdentityReport(comp.family, sign != 0, sign, ZPoly(), mode="probabilistic")


def identity_report(family: str, probabilistic=False, points=40, seed=0) -> IdentityReport:
    comp = identity_components(family)
    if probabilistic:
        return check_components_probabilistic(comp, points, seed)
    return check_components(comp)


def verify_identity(family: str, probabilistic=False, points=40, seed=0) -> bool:
    """True iff the displayed combination equals the displayed right-hand side up to sign."""
    return identity_report(family, probabilistic, points, seed).holds


def reciprocal_identity() -> bool:
    """T^3 G(1/T) = -F(T), with T in the x slot."""
    x, y, z, A, B, a, b, c = ZPoly.gens()
    F = x**3 + A**2 * x**2 + (A * B + A) * x - 1
    G = x**3 - (A * B + A) * x**2 - A**2 * x - 1
    return reciprocal(G, "x", 3) == -F
