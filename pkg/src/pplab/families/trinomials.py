"""The trinomials f1..f4 over F_{q^3}: construction, evaluation, and the
sufficient conditions under which each is a permutation."""

from __future__ import annotations

from dataclasses import dataclass, field

from pplab.ff import FFElement, FieldCtx, in_mu
from pplab.upoly import DEFAULT_SEED, UniPoly, roots_in_mu

FAMILIES = ("f1", "f2", "f3", "f4")


class CongruenceError(ValueError):
    """A family was requested over a field where its conditions do not apply."""


def exponents(family: str, q: int) -> tuple[int, int, int]:
    """Integer exponents (e1, e2, e3) of x^e1 + A x^e2 +- B x^e3."""
    head = q * q + q - 1
    second = {
        "f1": q * q - q + 1,
        "f2": q ** 3 - q * q + q,
        "f3": q * q,
        "f4": q,
    }
    try:
        return head, second[family], 1
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None


def b_sign(family: str) -> int:
    """Sign in front of B: f1, f2 add it, f3, f4 subtract it."""
    return 1 if family in ("f1", "f2") else -1


def require_congruence(family: str, ctx: FieldCtx):
    if family in ("f3", "f4") and ctx.q % 3 != 1:
        raise CongruenceError(f"{family} needs q = 1 (mod 3); got q = {ctx.q}")


@dataclass(frozen=True)
class TrinomialSpec:
    family: str
    A: FFElement
    B: FFElement
    ctx: FieldCtx

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        for name in ("A", "B"):
            v = getattr(self, name)
            if v.field is not self.ctx.base:
                raise ValueError(f"{name} must lie in F_q")

    @classmethod
    def make(cls, family, ctx, A, B):
        """Accept ints, digit lists or base-level elements for A and B."""
        return cls(family, ctx.elem(A, "base"), ctx.elem(B, "base"), ctx)

    @property
    def exponents(self):
        return exponents(self.family, self.ctx.q)

    def key(self):
        """Canonical order: B first, then A."""
        return (self.B.encode(), self.A.encode())


def trinomial_eval(spec: TrinomialSpec, x: FFElement) -> FFElement:
    """f(x) with every exponent reduced mod q^3 - 1 (the value at 0 is 0)."""
    ctx = spec.ctx
    if x.field is not ctx.cubic:
        raise ValueError("x must lie in F_{q^3}")
    if x.is_zero():
        return x
    e1, e2, _ = spec.exponents
    n = ctx.q ** 3 - 1
    A = ctx.lift(spec.A)
    B = ctx.lift(spec.B)
    return x ** (e1 % n) + A * x ** (e2 % n) + b_sign(spec.family) * B * x


# h1 ----------------------------------------------------------------------------

# the three factors of h1, integer coefficients, low degree first
H1_LINEAR = (0, 1)
H1_DEG22 = (1, 0, 3, 0, 6, 36, 7, 45, 15, -108, 300, -64, -215, 165, 72, 78, 63, 1, 18, 9, 0, 0, 1)
H1_DEG44 = (
    1, 0, -3, 0, 3, 22, -10, -59, 27, 47, 140, -121, -327, 298, 72, 237, -141, -475, 458, -645,
    252, 1189, -392, -691, -161, -611, 996, 258, -16, -217, 627, -726, -112, 218, -254, 145, 118,
    -50, 22, -7, -18, 3, -1, 0, 1,
)
H1_FACTORS = (H1_LINEAR, H1_DEG22, H1_DEG44)


def _horner(F, coeffs, x):
    acc = F.zero
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), F.from_int(c))
    return acc


def h1_eval(A: FFElement) -> FFElement:
    """h1(A) as the product of its three factors, coefficients reduced mod p."""
    F = A.field
    acc = F.one
    for fac in H1_FACTORS:
        acc = F.mul(acc, _horner(F, fac, A.raw))
    return FFElement(F, acc)


# the cubics whose roots in mu are excluded -------------------------------------

def cubic_f1(A, B):
    """T^3 + A^2 T^2 + (AB + A) T - 1."""
    return UniPoly.from_elements([-1 + 0 * A, A * B + A, A * A, 1 + 0 * A])


def cubic_f2(A, B):
    """G(T) = T^3 - (AB + A) T^2 - A^2 T - 1."""
    return UniPoly.from_elements([-1 + 0 * A, -(A * A), -(A * B) - A, 1 + 0 * A])


def cubic_f4(A, B):
    """F(y) = B y^3 + A^2 y^2 + (A - AB) y - B."""
    return UniPoly.from_elements([-B, A - A * B, A * A, B])


def curve_f12(A, B):
    """A^3 + B^2 - B + 1."""
    return A ** 3 + B * B - B + 1


def curve_f34(B):
    """B^2 + B + 1."""
    return B * B + B + 1


@dataclass
class ConditionReport:
    passes: bool
    reasons: list = field(default_factory=list)

    def __bool__(self):
        return self.passes


def check_conditions(spec: TrinomialSpec, seed: int = DEFAULT_SEED) -> ConditionReport:
    """Evaluate the family's sufficient conditions; every failing clause is listed."""
    ctx = spec.ctx
    A, B = spec.A, spec.B
    fam = spec.family
    require_congruence(fam, ctx)
    reasons = []
    if fam in ("f1", "f2"):
        if not curve_f12(A, B).is_zero():
            reasons.append("A^3+B^2-B+1 != 0")
        if fam == "f1":
            if B.is_zero() or B == 1:
                reasons.append("B in {0,1}")
            poly, name = cubic_f1(A, B), "F(T)"
        else:
            if B.is_zero() or B == -1:
                reasons.append("B in {0,-1}")
            poly, name = cubic_f2(A, B), "G(T)"
        if roots_in_mu(poly, ctx, seed):
            reasons.append(f"{name} has a root in mu")
    else:
        if not curve_f34(B).is_zero():
            reasons.append("B^2+B+1 != 0")
        if fam == "f3" and h1_eval(A).is_zero():
            reasons.append("h1(A) = 0")
        if (A ** 3 + 1).is_zero():
            reasons.append("A^3 = -1")
        if fam == "f4":
            # B = 0 makes F(y) degenerate; the curve clause already fails then
            if not B.is_zero() and roots_in_mu(cubic_f4(A, B), ctx, seed):
                reasons.append("F(y) has a root in mu")
    return ConditionReport(not reasons, reasons)


def mu_roots_exhaustive(poly: UniPoly, ctx: FieldCtx):
    """Roots of ``poly`` in mu by scanning F_{q^3}; a test oracle for small q."""
    lifted = poly.lift(ctx.cubic, ctx.cubic.embed)
    out = []
    for x in ctx.elements("cubic"):
        if in_mu(ctx, x) and lifted.eval(x).is_zero():
            out.append(x)
    return out


# f3 diagnostics -----------------------------------------------------------------

def cubic_f3_alt(A, B):
    """B y^3 + (AB - A) y^2 - A^2 y - B.

    Eliminating with y^{q^2} taken as B / (y (y + A)) leaves
    (y + A) times this cubic, so its roots in mu are the ones that matter.
    """
    return UniPoly.from_elements([-B, -(A * A), A * B - A, B])


def f3_alternative_conditions(spec: TrinomialSpec, seed: int = DEFAULT_SEED) -> ConditionReport:
    """B^2 + B + 1 = 0, A^3 != -1 and cubic_f3_alt(A, B) without roots in mu.

    Not the standard f3 condition; a diagnostic that agrees with the
    brute-force verdicts wherever it has been compared.
    """
    if spec.family != "f3":
        raise ValueError("f3 only")
    ctx = spec.ctx
    require_congruence("f3", ctx)
    A, B = spec.A, spec.B
    reasons = []
    if not curve_f34(B).is_zero():
        reasons.append("B^2+B+1 != 0")
    if (A ** 3 + 1).is_zero():
        reasons.append("A^3 = -1")
    if not B.is_zero() and roots_in_mu(cubic_f3_alt(A, B), ctx, seed):
        reasons.append("alternative cubic has a root in mu")
    return ConditionReport(not reasons, reasons)
