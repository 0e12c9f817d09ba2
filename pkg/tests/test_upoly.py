import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pplab.ff import make_field
from pplab.families.trinomials import cubic_f1, cubic_f2, cubic_f4, mu_roots_exhaustive
from pplab.upoly import (
    UniPoly,
    count_roots_exhaustive,
    hessian,
    hessian_split,
    roots,
    roots_in_mu,
)

HESSIAN_QS = [7, 13, 19, 31, 37]


def F7():
    return make_field(7).base


def test_eval():
    F = F7()
    c = make_field(7)
    assert UniPoly.from_ints(F, [-1, 0, 0, 1])(c.one()) == 0
    assert UniPoly.from_ints(F, [])(c.elem(5)) == 0
    assert UniPoly.from_ints(F, [1, 0, 1])(c.elem(3)) == 3


def test_roots_small():
    F = F7()
    assert [r.raw for r in roots(UniPoly.from_ints(F, [-1, 0, 0, 1]))] == [1, 2, 4]
    assert roots(UniPoly.from_ints(F, [1, 0, 1])) == []
    assert [r.raw for r in roots(UniPoly.from_ints(F, [9, -6, 1]))] == [3]


def test_roots_degree_guard():
    F = F7()
    with pytest.raises(ValueError):
        roots(UniPoly.from_ints(F, [1] * 6))
    with pytest.raises(ValueError):
        roots(UniPoly.from_ints(F, [3]))


@pytest.mark.parametrize("p,h", [(5, 2), (13, 1)])
def test_roots_large_field_by_splitting(p, h):
    # F_{q^3} has more than 2^10 elements, so Cantor-Zassenhaus is used
    c = make_field(p, h)
    rng = random.Random(5)
    for _ in range(30):
        rs = {c.random(rng) for _ in range(3)}
        f = UniPoly.from_elements([c.one("cubic")], c.cubic)
        for r in rs:
            f = f * UniPoly.from_elements([-r, c.one("cubic")])
        assert sorted(roots(f, seed=rng.randrange(100)), key=lambda e: e.encode()) == \
            sorted(rs, key=lambda e: e.encode())


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=2, max_size=5))
def test_roots_vs_exhaustive_f13(cs):
    F = make_field(13).base
    f = UniPoly.from_ints(F, cs)
    if f.degree < 1:
        return
    got = [r.raw for r in roots(f)]
    want = [x for x in range(13) if f(make_field(13).elem(x)).is_zero()]
    assert got == want


def test_roots_in_mu_examples():
    c = make_field(7)
    r = roots_in_mu(UniPoly.from_ints(c.base, [-1, 0, 0, 1]), c)
    assert len(r) == 3
    # c^3 != 1 so T - c has no root in mu
    assert roots_in_mu(UniPoly.from_ints(c.base, [-3, 1]), c) == []


@pytest.mark.parametrize("p", [5, 7])
def test_roots_in_mu_vs_scan(p):
    c = make_field(p)
    rng = random.Random(p)
    for _ in range(15):
        f = UniPoly.from_ints(c.base, [rng.randrange(p) for _ in range(3)] + [1])
        got = {x.encode() for x in roots_in_mu(f, c)}
        want = {x.encode() for x in mu_roots_exhaustive(f, c)}
        assert got == want


def test_hessian_formula():
    F = make_field(13).base
    f = UniPoly.from_ints(F, [4, 3, 2, 1])      # a=1 b=2 c=3 d=4
    a, b, cc, d = 1, 2, 3, 4
    want = [3 * b * d - cc * cc, 9 * a * d - b * cc, 3 * a * cc - b * b]
    assert hessian(f) == UniPoly.from_ints(F, want)


def family_cubics(q):
    c = make_field(q)
    out = []
    for A in c.elements():
        for B in c.elements():
            if (A ** 3 + B * B - B + 1).is_zero():
                out += [cubic_f1(A, B), cubic_f2(A, B)]
            if (B * B + B + 1).is_zero():
                out.append(cubic_f4(A, B))
    return out


@pytest.mark.parametrize("q", HESSIAN_QS)
def test_hessian_split_vs_exhaustive(q):
    mismatches = 0
    fallback = 0
    for f in family_cubics(q):
        v = hessian_split(f)
        fallback += v.fallback
        mismatches += v.split != (count_roots_exhaustive(f) == 3)
    assert mismatches == 0


@pytest.mark.parametrize("q", [7, 13])
def test_hessian_split_all_monic_cubics(q):
    F = make_field(q).base
    for a in range(q):
        for b in range(q):
            for d in range(q):
                f = UniPoly.from_ints(F, [d, b, a, 1])
                assert hessian_split(f).split == (count_roots_exhaustive(f) == 3)


def test_hessian_split_degenerate_routes():
    F = make_field(7).base
    v = hessian_split(UniPoly.from_ints(F, [-1, 3, -3, 1]))   # (T-1)^3
    assert v.fallback and not v.split
    v = hessian_split(UniPoly.from_ints(F, [-1, 0, 0, 1]))    # T^3 - 1: Hessian is 0 T^2 + ...
    assert v.split


def test_hessian_split_needs_q_1_mod_3():
    F = make_field(5).base
    with pytest.raises(ValueError):
        hessian_split(UniPoly.from_ints(F, [1, 0, 0, 1]))
