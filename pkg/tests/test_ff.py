import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pplab.ff import (
    FieldMismatchError,
    cube_class,
    frobenius,
    in_mu,
    is_irreducible,
    make_field,
    mu_intersect_base,
    norm,
    parse_header,
)

SMALL = [(5, 1), (7, 1), (5, 2), (13, 1)]


def test_sizes():
    c = make_field(7, 1)
    assert c.q == 7 and c.base.order == 7 and c.cubic.order == 343
    c = make_field(5, 2)
    assert c.q == 25 and c.cubic.order == 15625


@pytest.mark.parametrize("p,h", [(3, 1), (2, 1)])
def test_small_characteristic_rejected(p, h):
    with pytest.raises(ValueError, match="characteristic must exceed 3"):
        make_field(p, h)


def test_bad_params():
    with pytest.raises(ValueError):
        make_field(9, 1)
    with pytest.raises(ValueError):
        make_field(5, 0)


def test_moduli_are_lex_smallest_irreducible():
    # brute-force the smallest monic irreducible cubic over F_7 and the quadratic over F_5
    c = make_field(7, 1)
    F = c.base
    best = None
    for a0 in range(1, 7):
        for a1 in range(7):
            for a2 in range(7):
                f = [a0, a1, a2, 1]
                if all(sum(f[i] * pow(x, i, 7) for i in range(4)) % 7 for x in range(7)):
                    best = best or (a0, a1, a2, 1)
    assert c.cubic_modulus == best
    c25 = make_field(5, 2)
    quads = [(a0, a1, 1) for a0 in range(1, 5) for a1 in range(5)
             if all((a0 + a1 * x + x * x) % 5 for x in range(5))]
    assert c25.base_modulus == quads[0]
    assert is_irreducible(c25.base, [c25.base.decode(v) for v in c25.cubic_modulus])


def test_header_roundtrip():
    c = make_field(5, 2)
    d = parse_header(c.header())
    assert d["p"] == 5 and d["h"] == 2
    assert d["base_modulus"] == c.base_modulus and d["cubic_modulus"] == c.cubic_modulus


@pytest.mark.parametrize("p,h", SMALL)
def test_inverse_and_lagrange(p, h):
    c = make_field(p, h)
    rng = random.Random(p * 10 + h)
    for _ in range(200):
        x = c.random(rng, nonzero=True)
        assert x * x.inverse() == 1
        assert x ** (c.cubic.order - 1) == 1
        assert x ** c.cubic.order == x


def test_zero_inverse():
    c = make_field(7)
    with pytest.raises(ZeroDivisionError):
        c.zero("cubic").inverse()


def test_levels_do_not_mix():
    c = make_field(7)
    with pytest.raises(FieldMismatchError):
        c.one("cubic") + c.one("base")


def test_frobenius_matches_power_q25():
    c = make_field(5, 2)
    rng = random.Random(1)
    for _ in range(1000):
        x = c.random(rng)
        assert frobenius(c, x) == x ** 25
        assert frobenius(c, x, 2) == x ** 625
    assert frobenius(c, c.one("cubic"), 3) == 1


@pytest.mark.parametrize("p,h", SMALL)
def test_norm_and_mu(p, h):
    c = make_field(p, h)
    q = c.q
    rng = random.Random(3)
    for _ in range(100):
        x = c.random(rng, nonzero=True)
        n = norm(c, x)
        assert n.field is c.base
        assert c.lift(n) == x ** (q * q + q + 1)
        assert in_mu(c, x ** (q - 1))
    assert in_mu(c, c.one("cubic"))
    assert not in_mu(c, c.zero("cubic"))


def test_mu_intersect_base():
    assert len(mu_intersect_base(make_field(7))) == 3
    assert [x.raw for x in mu_intersect_base(make_field(5))] == [1]
    assert len(mu_intersect_base(make_field(5, 2))) == 3


def test_mu_has_expected_size_q7():
    c = make_field(7)
    assert sum(in_mu(c, x) for x in c.elements("cubic")) == 57


def test_cube_class():
    c = make_field(7)
    assert cube_class(c.one())
    cubes = {x ** 3 for x in c.elements() if not x.is_zero()}
    for x in c.elements()[1:]:
        assert cube_class(x) == (x in cubes)
    with pytest.raises(ValueError):
        cube_class(c.zero())


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 15624), st.integers(0, 15624), st.integers(0, 15624))
def test_field_axioms_q25(i, j, k):
    c = make_field(5, 2)
    F = c.cubic
    from pplab.ff import FFElement
    x, y, z = (FFElement(F, F.decode(n)) for n in (i, j, k))
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - y + y == x
    assert FFElement(F, F.decode(x.encode())) == x
    assert frobenius(c, x * y) == frobenius(c, x) * frobenius(c, y)
    assert frobenius(c, x + y) == frobenius(c, x) + frobenius(c, y)


def test_digits_roundtrip():
    c = make_field(5, 2)
    for x in c.elements():
        assert c.elem(x.digits()) == x
    x = c.elements("cubic")[1234]
    assert len(x.digits()) == 6
    assert c.elem(x.digits(), "cubic") == x
