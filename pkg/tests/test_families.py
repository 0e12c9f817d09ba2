import random

import pytest

from pplab.census.bruteforce import is_permutation_bruteforce, preimages
from pplab.ff import frobenius, make_field
from pplab.families import (
    H1_FACTORS,
    CongruenceError,
    TrinomialSpec,
    check_conditions,
    closed_form_preimage,
    exponents,
    h1_eval,
    homomorphism_check,
    identity_components,
    identity_report,
    reciprocal_identity,
    run_resultant_pipeline,
    trinomial_eval,
    verify_identity,
)
from pplab.families.identities import check_components
from pplab.families.pipeline import h1_factor_polys, p_curve_poly
from pplab.zmpoly import ZPoly


def spec(family, p, h, A, B):
    ctx = make_field(p, h)
    return TrinomialSpec(family, ctx.elem(A), ctx.elem(B), ctx)


def test_exponents():
    q = 7
    assert exponents("f1", q) == (q * q + q - 1, q * q - q + 1, 1)
    assert exponents("f2", q)[1] == q**3 - q * q + q
    assert exponents("f3", q)[1] == q * q
    assert exponents("f4", q)[1] == q
    with pytest.raises(ValueError):
        exponents("f5", q)


@pytest.mark.parametrize("family", ["f1", "f2", "f3", "f4"])
def test_trinomial_eval_vs_literal_powers_q25(family):
    s = spec(family, 5, 2, [2, 1], [3, 4])
    ctx = s.ctx
    e1, e2, _ = exponents(family, ctx.q)
    sign = 1 if family in ("f1", "f2") else -1
    A, B = ctx.lift(s.A), ctx.lift(s.B)
    rng = random.Random(11)
    for _ in range(1000):
        x = ctx.random(rng)
        want = x ** e1 + A * x ** e2 + sign * B * x
        assert trinomial_eval(s, x) == want
    assert trinomial_eval(s, ctx.zero("cubic")).is_zero()


def test_f1_on_base_field():
    s = spec("f1", 7, 1, 3, 5)
    ctx = s.ctx
    for x in ctx.elements()[1:]:
        X = ctx.lift(x)
        assert trinomial_eval(s, X) == X * (1 + ctx.lift(s.A) + ctx.lift(s.B))


def test_conditions_examples():
    r = check_conditions(spec("f1", 7, 1, 0, 0))
    assert not r.passes and "B in {0,1}" in r.reasons
    # A^3 = -1 in F_7 for A = 3 (27 = -1); B = 2 satisfies B^2 + B + 1 = 0
    r = check_conditions(spec("f3", 7, 1, 3, 2))
    assert not r.passes and "A^3 = -1" in r.reasons
    r = check_conditions(spec("f2", 7, 1, 1, 6))
    assert "B in {0,-1}" in r.reasons


def test_congruence_error():
    with pytest.raises(CongruenceError):
        check_conditions(spec("f3", 5, 1, 1, 1))
    with pytest.raises(CongruenceError):
        check_conditions(spec("f4", 11, 1, 1, 1))


def test_h1():
    ctx = make_field(7)
    assert h1_eval(ctx.zero()).is_zero()
    # expand h1 with Python ints and evaluate at 1 modulo 7
    prod = [1]
    for fac in H1_FACTORS:
        out = [0] * (len(prod) + len(fac) - 1)
        for i, u in enumerate(prod):
            for j, v in enumerate(fac):
                out[i + j] += u * v
        prod = out
    assert len(prod) - 1 == 67
    assert h1_eval(ctx.one()).raw == sum(prod) % 7
    assert h1_eval(ctx.elem(3)).raw == sum(cf * 3**i for i, cf in enumerate(prod)) % 7


def test_h1_factor_degrees():
    ds = sorted(f.degree("A") for f in h1_factor_polys())
    assert ds == [1, 22, 44]


def test_identities_hold():
    for fam in ("f1", "f2"):
        assert verify_identity(fam)
        rep = identity_report(fam)
        assert rep.sign == -1
        assert verify_identity(fam, probabilistic=True, seed=3)


@pytest.mark.parametrize("fam", ["f1", "f2"])
def test_identity_mutation_is_detected(fam):
    comp = identity_components(fam)
    v = ZPoly.var(comp.var)
    bumped = comp.replace(cofactor=comp.cofactor + v**2)
    assert not check_components(bumped).holds
    assert not check_components(comp.replace(target=comp.target + 1)).holds


def test_reciprocal_identity():
    assert reciprocal_identity()


@pytest.mark.parametrize("fam", ["f1", "f2"])
def test_pipeline_structure_f12(fam):
    rep = run_resultant_pipeline(fam, "a_nonzero")
    assert rep.structure_ok
    assert rep.details["x_valuation"] == 4
    assert rep.details["remaining_x_degree"] == 1
    x, B, a = ZPoly.var("x"), ZPoly.var("B"), ZPoly.var("a")
    assert rep.certified_factors[0] == x**4
    assert rep.certified_factors[1] == B * x - a


@pytest.mark.parametrize("fam", ["f1", "f2", "f3", "f4"])
def test_pipeline_homomorphism(fam):
    rep = run_resultant_pipeline(fam, "a_nonzero")
    assert homomorphism_check(rep, points=10, seed=2) == 0


@pytest.mark.parametrize("fam", ["f1", "f3"])
def test_pipeline_probabilistic(fam):
    rep = run_resultant_pipeline(fam, "a_nonzero", probabilistic=True, points=10, seed=4)
    assert rep.structure_ok and rep.mode == "probabilistic"


def test_pipeline_f3_a_zero():
    rep = run_resultant_pipeline("f3", "a_zero")
    assert rep.structure_ok
    assert rep.details["h1_factor_divides"] == [True, True, True]


def test_pipeline_f4_a_zero():
    rep = run_resultant_pipeline("f4", "a_zero")
    assert rep.structure_ok
    assert rep.certified_factors == [p_curve_poly()]


def test_pipeline_rejects_bad_requests():
    with pytest.raises(ValueError):
        run_resultant_pipeline("f1", "a_zero")
    with pytest.raises(ValueError):
        run_resultant_pipeline("f9")


@pytest.mark.parametrize("name,fam,branch", [
    ("f1_a_nonzero", "f1", "a_nonzero"), ("f2_a_nonzero", "f2", "a_nonzero"),
    ("f3_a_nonzero", "f3", "a_nonzero"), ("f4_a_nonzero", "f4", "a_nonzero"),
    ("f3_a_zero", "f3", "a_zero"), ("f4_a_zero", "f4", "a_zero"),
])
def test_golden_files(golden_dir, name, fam, branch):
    rep = run_resultant_pipeline(fam, branch)
    text = (golden_dir / f"{name}.zpoly").read_text().strip()
    assert ZPoly.from_text(text) == rep.reduced_resultant
    assert rep.reduced_resultant.to_text() == text


@pytest.mark.parametrize("fam", ["f3", "f4"])
def test_closed_form_preimage_vs_scan_q7(fam):
    """Where the denominator is nonzero the closed form is the unique preimage."""
    ctx = make_field(7)
    for B in ctx.elements():
        if not (B * B + B + 1).is_zero():
            continue
        for A in ctx.elements():
            s = TrinomialSpec(fam, A, B, ctx)
            pp = is_permutation_bruteforce(s)
            for a in ctx.elements("cubic")[1:]:
                x = closed_form_preimage(s, a)
                if x is None:
                    assert not pp
                    continue
                assert preimages(s, a) == [x]


def test_closed_form_needs_nonzero():
    s = spec("f4", 7, 1, 1, 2)
    with pytest.raises(ValueError):
        closed_form_preimage(s, s.ctx.zero("cubic"))
