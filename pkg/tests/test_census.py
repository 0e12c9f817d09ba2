import math
import random
from fractions import Fraction

import mpmath
import pytest

from pplab.census import (
    BudgetExceeded,
    LowerBound,
    Surd,
    candidate_pairs,
    curve_point_count,
    hasse_weil_window,
    image_size,
    is_permutation_bruteforce,
    lower_bound,
    p2_count_naive,
    run_census,
    surd_sign,
    trinomial_values,
)
from pplab.census.run import default_workers
from pplab.ff import FFElement, make_field
from pplab.families import TrinomialSpec, trinomial_eval
from pplab.families.trinomials import f3_alternative_conditions


# brute force ----------------------------------------------------------------------

@pytest.mark.parametrize("family", ["f1", "f2", "f3", "f4"])
@pytest.mark.parametrize("p,h", [(7, 1), (5, 2)])
def test_vectorised_values_match_scalar_eval(family, p, h):
    ctx = make_field(p, h)
    rng = random.Random(p + h)
    A, B = ctx.random(rng, "base"), ctx.random(rng, "base")
    s = TrinomialSpec(family, A, B, ctx)
    vals = trinomial_values(s)
    for k in [1, 2, 3] + [rng.randrange(1, ctx.cubic.order) for _ in range(300)]:
        x = ctx.cubic.decode(k)
        assert vals[k - 1] == trinomial_eval(s, FFElement(ctx.cubic, x)).encode()


def test_raw_maps():
    ctx = make_field(7)
    assert is_permutation_bruteforce(lambda x: x, ctx)
    assert not is_permutation_bruteforce(lambda x: x ** 3, ctx)
    with pytest.raises(ValueError):
        is_permutation_bruteforce(lambda x: x)


def test_budget():
    ctx = make_field(7)
    s = TrinomialSpec("f1", ctx.one(), ctx.one(), ctx)
    with pytest.raises(BudgetExceeded):
        is_permutation_bruteforce(s, budget=100)


def test_bitset_agrees_with_image_size_q13():
    ctx = make_field(13)
    for A, B in candidate_pairs("f1", ctx):
        s = TrinomialSpec("f1", A, B, ctx)
        assert is_permutation_bruteforce(s) == (image_size(s) == 13 ** 3)


# exact bounds ----------------------------------------------------------------------

def test_surd_sign_vs_mpmath():
    mpmath.mp.prec = 256
    rng = random.Random(17)
    for _ in range(10_000):
        q = rng.randrange(0, 10**6)
        if rng.random() < 0.3:
            q = rng.randrange(1, 1000) ** 2          # perfect squares hit the equality cases
        s = Fraction(rng.randrange(-50, 51), rng.randrange(1, 7))
        if rng.random() < 0.5 and q:
            # land exactly on or next to the surd
            r = -s * math.isqrt(q) + rng.choice([-1, 0, 1, Fraction(1, 3)])
        else:
            r = Fraction(rng.randrange(-10**5, 10**5), rng.randrange(1, 7))
        # scale by the positive denominators so the only rounding is in sqrt
        v = mpmath.mpf(r.numerator * s.denominator) + mpmath.mpf(s.numerator * r.denominator) * mpmath.sqrt(q)
        want = 0 if v == 0 else (1 if v > 0 else -1)
        assert surd_sign(r, s, q) == want, (r, s, q)


def test_lower_bound_exact_edges():
    # q = 841 = 29^2: (841 - 22*29 - 79)/6 = 21 exactly
    lb = lower_bound("f1", 841)
    assert lb.satisfied_by(21) and not lb.satisfied_by(20)
    assert lb.min_count() == 21
    lb4 = lower_bound("f4", 169)
    assert lb4.min_count() == 5 and not lb4.satisfied_by(4)
    with pytest.raises(ValueError):
        lower_bound("f3", 169)


def test_surd_floor_ceil():
    s = Surd(Fraction(1, 2), 3, 2)
    assert s.floor() == math.floor(0.5 + 3 * math.sqrt(2))
    assert s.ceil() == s.floor() + 1
    assert Surd(1, 1, 49).ceil() == 8


def test_window():
    w = hasse_weil_window(101, 0)
    assert w.lower.le(102) and w.upper.ge(102) and 102 in w
    assert 101 not in w and 103 not in w
    w = hasse_weil_window(61, 3, 15)
    assert 61 + 1 + 15 + 46 in w and 61 + 1 + 15 + 47 not in w
    with pytest.raises(ValueError):
        hasse_weil_window(7, -1)


# census ------------------------------------------------------------------------------

def test_candidate_pairs_are_on_the_curve_and_ordered():
    ctx = make_field(13)
    prs = candidate_pairs("f1", ctx)
    for A, B in prs:
        assert (A ** 3 + B * B - B + 1).is_zero()
    keys = [(B.encode(), A.encode()) for A, B in prs]
    assert keys == sorted(keys)
    prs4 = candidate_pairs("f4", ctx)
    assert len(prs4) == 2 * 13


@pytest.mark.parametrize("family", ["f1", "f2", "f4"])
@pytest.mark.parametrize("q", [7, 13])
def test_census_sound(family, q):
    rep = run_census(family, q, bruteforce=True)
    assert rep.bruteforce_complete
    assert rep.anomalies == []
    assert rep.pairs_bruteforce_pp >= rep.pairs_passing


def test_conditions_are_only_sufficient_q13():
    # the passing set is strictly smaller than the PP set
    rep = run_census("f1", 13, bruteforce=True)
    assert rep.uncovered


def test_f3_stated_conditions_admit_non_permutations():
    rep = run_census("f3", 7, bruteforce=True)
    got = {(A.raw, B.raw) for A, B in rep.anomalies}
    assert got == {(1, 2), (4, 2), (1, 4), (4, 4)}
    ctx = make_field(7)
    s = TrinomialSpec("f3", ctx.elem(1), ctx.elem(2), ctx)
    assert image_size(s) == 301


@pytest.mark.parametrize("p,h", [(7, 1), (13, 1), (19, 1), (5, 2)])
def test_f3_alternative_condition_is_sound(p, h):
    ctx = make_field(p, h)
    for A, B in candidate_pairs("f3", ctx):
        s = TrinomialSpec("f3", A, B, ctx)
        if f3_alternative_conditions(s).passes:
            assert is_permutation_bruteforce(s)


def test_parallel_matches_serial():
    a = run_census("f2", 13, bruteforce=True, workers=1)
    b = run_census("f2", 13, bruteforce=True, workers=3)
    key = lambda r: (r.A.encode(), r.B.encode(), r.passes, r.bruteforce_pp, tuple(r.reasons))
    assert [key(r) for r in a.rows] == [key(r) for r in b.rows]


def test_f4_per_B_and_bound():
    rep = run_census("f4", 13)
    assert len(rep.per_B) == 2
    assert sum(d["passing"] for d in rep.per_B.values()) == rep.pairs_passing
    assert rep.bound_satisfied


def test_budget_marks_census_incomplete():
    rep = run_census("f1", 7, bruteforce=True, budget=10)
    assert not rep.bruteforce_complete and rep.pairs_bruteforce_pp is None


def test_default_workers(monkeypatch):
    monkeypatch.setenv("PPLAB_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("PPLAB_WORKERS", "junk")
    assert default_workers() == 1


# curves ------------------------------------------------------------------------------

@pytest.mark.parametrize("q", [7, 13, 19])
def test_p2_vs_naive(q):
    assert curve_point_count("P2", q).solution_count == p2_count_naive(make_field(q))


def test_p1_degenerate_fibers():
    rep = curve_point_count("P1", 13)
    pts = {(x.raw, y.raw) for x, y in rep.details["degenerate_fibers"]}
    inv2 = pow(2, -1, 13)
    assert pts == {(12, 0), (inv2, inv2), (inv2, 13 - inv2)}


def test_p1_vs_naive_small():
    ctx = make_field(11)
    F = ctx.base
    n = 0
    for x in range(11):
        for y in range(11):
            if (x * x + 3 * y * y - 1) % 11:
                continue
            c2 = 6 * x * x * y - 6 * y**3
            c1 = 3 * x**3 + 3 * x * x * y - 27 * x * y * y - 3 * y**3 + 3
            c0 = -12 * x * x * y + 12 * y**3
            if c2 % 11 == c1 % 11 == c0 % 11 == 0:
                continue
            for z in range(11):
                if (c2 * z * z + c1 * z + c0) % 11:
                    continue
                n += sum(1 for u in range(11) if (u**3 + z * z - z + 1) % 11 == 0)
    assert curve_point_count("P1", 11).solution_count == n


def test_p3_vs_naive_small():
    q = 13
    B = min(b for b in range(q) if (b * b + b + 1) % q == 0)
    n = 0
    for x in range(q):
        v = (B * x**12 + 12 * B * x**9 + 24 * x**9 - 162 * B * x**6 - 324 * B * x**3 - 648 * x**3 + 729 * B) % q
        n += sum(1 for y in range(q) if (B * y**3 - v) % q == 0)
    assert curve_point_count("P3", q).solution_count == n


def test_curve_errors():
    with pytest.raises(ValueError):
        curve_point_count("P2", 11)
    with pytest.raises(ValueError):
        curve_point_count("P4", 7)
