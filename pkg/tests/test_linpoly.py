import random

import pytest

from twotier.fields import FieldContext
from twotier.linpoly import LinearizedPoly

import oracles


def gf8():
    return FieldContext(2, 3)


def test_identity_polynomial():
    ctx = gf8()
    u = LinearizedPoly((ctx.one,), q=2)
    assert u.evaluate(ctx.gamma) == ctx.gamma


def test_zero_polynomial():
    ctx = gf8()
    u = LinearizedPoly((ctx.zero, ctx.zero), q=2)
    for code in range(8):
        assert u.evaluate(ctx.from_int(code)) == ctx.zero


def test_single_term_example():
    # u(x) = gamma * x^[1]; at gamma^3: gamma * gamma^6 = 1
    ctx = gf8()
    u = LinearizedPoly((ctx.zero, ctx.gamma), q=2)
    assert u.evaluate(ctx.gamma_pow(3)) == ctx.one


def test_evaluate_matches_oracle():
    ctx = gf8()
    rng = random.Random(2)
    for _ in range(50):
        coeffs = tuple(ctx.from_int(rng.randrange(8)) for _ in range(3))
        u = LinearizedPoly(coeffs, q=2)
        x = ctx.from_int(rng.randrange(8))
        expect = oracles.lin_eval([c.coeffs for c in coeffs], x.coeffs,
                                  oracles.MOD_GF8, 2, 2)
        assert u.evaluate(x).coeffs == expect


def test_iterate_identity_at_zero_steps():
    ctx = gf8()
    u = LinearizedPoly((ctx.gamma, ctx.gamma_pow(3)), q=2)
    x = ctx.gamma_pow(6)
    assert u.iterate_evaluate(x, 0) == x
    assert u.iterate_evaluate(x, 1) == u.evaluate(x)


def test_iterate_double_squaring():
    # u(x) = x^2 composed twice is x^4
    ctx = gf8()
    u = LinearizedPoly((ctx.zero, ctx.one), q=2)
    assert u.iterate_evaluate(ctx.gamma, 2) == ctx.gamma_pow(4)


def test_iterate_recurrence():
    ctx = gf8()
    rng = random.Random(9)
    for _ in range(20):
        u = LinearizedPoly(tuple(ctx.from_int(rng.randrange(8)) for _ in range(2)), q=2)
        x = ctx.from_int(rng.randrange(8))
        for j in range(4):
            assert u.iterate_evaluate(x, j + 1) == u.evaluate(u.iterate_evaluate(x, j))


def test_additivity_and_base_linearity():
    ctx = FieldContext(3, 6)
    rng = random.Random(7)
    for _ in range(50):
        u = LinearizedPoly(tuple(ctx.from_int(rng.randrange(729)) for _ in range(2)), q=3)
        x = ctx.from_int(rng.randrange(729))
        y = ctx.from_int(rng.randrange(729))
        assert u.evaluate(x + y) == u.evaluate(x) + u.evaluate(y)
        for c in range(3):
            ce = ctx.element([c, 0, 0, 0, 0, 0])
            assert u.evaluate(ce * x) == ce * u.evaluate(x)


def test_validation():
    ctx = gf8()
    with pytest.raises(ValueError):
        LinearizedPoly((), q=2)
    with pytest.raises(ValueError):
        LinearizedPoly((ctx.one,), q=4)  # GF(4) not a subfield of GF(8)
    other = FieldContext(3, 6)
    with pytest.raises(ValueError):
        LinearizedPoly((ctx.one, other.one), q=2)
    with pytest.raises(ValueError):
        LinearizedPoly((ctx.one,), q=2).evaluate(other.gamma)
    with pytest.raises(ValueError):
        LinearizedPoly((ctx.one,), q=2).iterate_evaluate(ctx.gamma, -1)
