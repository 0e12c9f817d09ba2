"""Exhaustive permutation test over F_{q^3}.

All q^3 elements are handled at once as an (N, 3) integer array of F_q
encodings; F_q itself is done with q x q addition and multiplication
tables, so prime and non-prime q share one code path.  The Frobenius forms

    x^{q^2+q-1} = z y / x,  x^{q^2-q+1} = z x / y,  x^{q^3-q^2+q} = x y / z,
    x^{q^2} = z,  x^q = y          (y = x^q, z = x^{q^2}, x != 0)

turn every trinomial into a handful of array products, and the part not
involving A and B is cached per field and family.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from pplab.ff import FFElement, FieldCtx
from pplab.families.trinomials import TrinomialSpec, b_sign

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


class CubicArrays:
    """Vectorised arithmetic on F_{q^3} for one FieldCtx."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        q = self.q = ctx.q
        F = ctx.base
        raws = [F.decode(i) for i in range(q)]
        self.add_t = np.array([[F.encode(F.add(a, b)) for b in raws] for a in raws], dtype=np.int32)
        self.mul_t = np.array([[F.encode(F.mul(a, b)) for b in raws] for a in raws], dtype=np.int32)
        self.neg_t = np.array([F.encode(F.neg(a)) for a in raws], dtype=np.int32)
        self.inv_t = np.array([0] + [F.encode(F.inv(a)) for a in raws[1:]], dtype=np.int32)
        C = ctx.cubic
        # t^3 = r0 + r1 t + r2 t^2 and t^4 = s0 + s1 t + s2 t^2
        t = (F.zero, F.one, F.zero)
        t3 = C.mul(C.mul(t, t), t)
        t4 = C.mul(t3, t)
        self.r = [F.encode(c) for c in t3]
        self.s = [F.encode(c) for c in t4]
        self.frob_images = [[F.encode(c) for c in img] for img in C._frob_images]

    # element-wise helpers on F_q encodings
    def _add(self, a, b):
        return self.add_t[a, b]

    def _mul(self, a, b):
        return self.mul_t[a, b]

    def all_elements(self):
        q = self.q
        k = np.arange(q ** 3, dtype=np.int64)
        return np.stack([k % q, (k // q) % q, k // (q * q)], axis=1).astype(np.int32)

    def mul(self, U, V):
        u0, u1, u2 = U[:, 0], U[:, 1], U[:, 2]
        v0, v1, v2 = V[:, 0], V[:, 1], V[:, 2]
        m, ad = self._mul, self._add
        p0 = m(u0, v0)
        p1 = ad(m(u0, v1), m(u1, v0))
        p2 = ad(ad(m(u0, v2), m(u1, v1)), m(u2, v0))
        p3 = ad(m(u1, v2), m(u2, v1))
        p4 = m(u2, v2)
        r, s = self.r, self.s
        out = np.empty_like(U)
        for i, low in enumerate((p0, p1, p2)):
            out[:, i] = ad(ad(low, m(p3, r[i])), m(p4, s[i]))
        return out

    def add(self, U, V):
        return self.add_t[U, V]

    def scale(self, c: int, U):
        """Multiply by the F_q element with encoding c."""
        return self.mul_t[c, U]

    def frob(self, U):
        imgs = self.frob_images
        out = np.zeros_like(U)
        for j in range(3):
            for i in range(3):
                out[:, i] = self._add(out[:, i], self._mul(U[:, j], imgs[j][i]))
        return out

    def inverse_nonzero(self, X, Y, Z):
        """x^{-1} = y z / N(x) for nonzero rows."""
        YZ = self.mul(Y, Z)
        N = self.mul(X, YZ)[:, 0]
        return self.mul_t[self.inv_t[N][:, None], YZ]

    def encode(self, U):
        q = self.q
        return U[:, 0].astype(np.int64) + q * U[:, 1].astype(np.int64) + q * q * U[:, 2].astype(np.int64)


@lru_cache(maxsize=8)
def _arrays(ctx):
    arr = CubicArrays(ctx)
    X = arr.all_elements()[1:]          # drop 0; f(0) = 0 is added back by hand
    Y = arr.frob(X)
    Z = arr.frob(Y)
    return arr, X, Y, Z


@lru_cache(maxsize=16)
def _family_terms(ctx, family):
    """(x^{e1}, x^{e2}) on the nonzero elements, as arrays."""
    arr, X, Y, Z = _arrays(ctx)
    if family in ("f1", "f2"):
        inv_x = arr.inverse_nonzero(X, Y, Z)
        head = arr.mul(arr.mul(Z, Y), inv_x)
        if family == "f1":
            inv_y = arr.frob(inv_x)
            second = arr.mul(arr.mul(Z, X), inv_y)
        else:
            inv_z = arr.frob(arr.frob(inv_x))
            second = arr.mul(arr.mul(X, Y), inv_z)
        return head, second
    inv_x = arr.inverse_nonzero(X, Y, Z)
    head = arr.mul(arr.mul(Z, Y), inv_x)
    return head, (Z if family == "f3" else Y)


def trinomial_values(spec: TrinomialSpec):
    """Encodings of f(x) for x = 1 .. q^3-1 in encoding order (f(0) = 0 is implicit)."""
    ctx = spec.ctx
    arr, X, Y, Z = _arrays(ctx)
    head, second = _family_terms(ctx, spec.family)
    Bc = spec.B if b_sign(spec.family) > 0 else -spec.B
    vals = arr.add(arr.add(head, arr.scale(spec.A.encode(), second)), arr.scale(Bc.encode(), X))
    return arr.encode(vals)


def _is_bijective(values_nonzero, size):
    """values for x != 0 plus f(0) = 0: a bijection iff the q^3 - 1 values are distinct and nonzero."""
    hits = np.zeros(size, dtype=bool)
    hits[values_nonzero] = True
    hits_count = int(hits.sum())
    return hits_count == size - 1 and not hits[0]


def is_permutation_bruteforce(spec, ctx: FieldCtx | None = None, budget: int = DEFAULT_BUDGET) -> bool:
    """Exhaustive injectivity check on F_{q^3}.

    ``spec`` is a TrinomialSpec, or any callable FFElement -> FFElement
    together with ``ctx`` (slow path, one Python call per element).
    """
    if isinstance(spec, TrinomialSpec):
        ctx = spec.ctx
    elif ctx is None:
        raise ValueError("a raw map needs ctx")
    size = ctx.q ** 3
    if size > budget:
        raise BudgetExceeded(f"q^3 = {size} exceeds the budget {budget}")
    if isinstance(spec, TrinomialSpec):
        return _is_bijective(trinomial_values(spec), size)
    hits = np.zeros(size, dtype=bool)
    for x in ctx.elements("cubic"):
        v = spec(x)
        if not isinstance(v, FFElement) or v.field is not ctx.cubic:
            raise ValueError("map must return elements of F_{q^3}")
        k = v.encode()
        if hits[k]:
            return False
        hits[k] = True
    return True


def image_size(spec: TrinomialSpec) -> int:
    """|f(F_{q^3})| by a set of Python ints (an independent count for cross-checks)."""
    return len(set(trinomial_values(spec).tolist()) | {0})


def preimages(spec: TrinomialSpec, a: FFElement):
    """All x with f(x) = a, by scanning the value table."""
    ctx = spec.ctx
    vals = trinomial_values(spec)
    target = a.encode()
    out = [int(i) + 1 for i in np.nonzero(vals == target)[0]]
    if target == 0:
        out.insert(0, 0)
    return [FFElement(ctx.cubic, ctx.cubic.decode(k)) for k in out]
