"""Explicit preimages for f3 and f4 when a != 0.

With b = a^q and c = a^{q^2}, the linear factor left by the elimination
pipeline reads ``den * x = num`` where num is homogeneous of degree 4 and
den of degree 3 in (a, b, c).
"""

from __future__ import annotations

from typing import Optional

from pplab.ff import FFElement, frobenius

from .trinomials import TrinomialSpec


def _forms_f3(A, B, a, b, c):
    num = ((A * A * B + A * A) * a * b * b * c
           + (A * B - A) * a * b * c * c
           + A * B * b ** 3 * c
           - A * a * a * b * b
           - B * a * a * b * c
           - (B + 1) * (a * b ** 3 + a * c ** 3)
           - b * b * c * c)
    den = ((A ** 3 * B + A ** 3 - 3 * B - 3) * a * b * c
           + A * A * B * (a * a * b + a * c * c + b * b * c)
           + (A * B - A) * (a * a * c + a * b * b + b * c * c)
           - a ** 3 - b ** 3 - c ** 3)
    return num, den


def _forms_f4(A, B, a, b, c):
    num = ((A * A * B + A * A) * a * b * c * c
           + (A * B - A) * a * b * b * c
           + A * B * b * c ** 3
           - A * a * a * c * c
           - (B + 1) * (a * b ** 3 + a * c ** 3)
           - b * b * c * c
           - B * a * a * b * c)
    den = ((A ** 3 * B + A ** 3 - 3 * B - 3) * a * b * c
           + A * A * B * (a * a * c + a * b * b + b * c * c)
           + (A * B - A) * (b * b * c + a * a * b + a * c * c)
           - a ** 3 - b ** 3 - c ** 3)
    return num, den


def preimage_forms(spec: TrinomialSpec, a: FFElement):
    """(numerator, denominator) of the closed form at ``a``."""
    ctx = spec.ctx
    if spec.family == "f3":
        forms = _forms_f3
    elif spec.family == "f4":
        forms = _forms_f4
    else:
        raise ValueError("closed forms exist for f3 and f4 only")
    A, B = ctx.lift(spec.A), ctx.lift(spec.B)
    return forms(A, B, a, frobenius(ctx, a, 1), frobenius(ctx, a, 2))


def closed_form_preimage(spec: TrinomialSpec, a: FFElement) -> Optional[FFElement]:
    """The candidate preimage of ``a``, or None where the denominator vanishes."""
    if a.is_zero():
        raise ValueError("a must be nonzero")
    num, den = preimage_forms(spec, a)
    if den.is_zero():
        return None
    return num / den
