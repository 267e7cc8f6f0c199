"""Exact constants, error-tracked floats, and the pi oracle.

Frozen oracle values (classical constants, independent of the engine):
  pi to 80 digits, sin(pi/5) to 40 digits.
"""

import random

import pytest

from rpv._backend import QQ
from rpv.errors import IncompatibleRadicals, ParseError
from rpv.numerics import (
    BigApprox,
    RadConst,
    agm_pi,
    format_rational,
    machin_pi,
    parse_radconst,
    parse_rational,
    pi_oracle,
    prec_for_digits,
    rad_pow_half,
    rad_to_bigapprox,
    sin_pi,
    squarefree_decompose,
)

PI_80 = (
    "3."
    "14159265358979323846264338327950288419716939937510"
    "582097494459230781640628620899"
)
SIN_PI_5_40 = "0.5877852522924731291687059546390727685976"


# ------------------------------------------------------------------
# rational text form
# ------------------------------------------------------------------

def test_parse_rational_forms():
    assert parse_rational("-9/40") == QQ(-9, 40)
    assert parse_rational("7") == QQ(7)
    assert parse_rational(" 3/9 ") == QQ(1, 3)
    assert format_rational(QQ(-9, 40)) == "-9/40"
    assert format_rational(QQ(8, 4)) == "2"


@pytest.mark.parametrize("bad", ["0.5", "1e3", "", "1/0", "2/3/4", "x", "1.0/2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


# ------------------------------------------------------------------
# RadConst algebra
# ------------------------------------------------------------------

def test_squarefree_decompose():
    assert squarefree_decompose(12) == (2, 3)
    assert squarefree_decompose(1) == (1, 1)
    assert squarefree_decompose(10005) == (1, 10005)
    s, m = squarefree_decompose(255 * 255 * 17)
    assert s * s * m == 255 * 255 * 17 and m == 17


def test_rad_mul_examples():
    # sqrt(2)*sqrt(2) = 2 ; i*i = -1 ; 3sqrt(2)*2sqrt(6) = 12sqrt(3)
    assert RadConst(1, 2) * RadConst(1, 2) == RadConst(2)
    assert RadConst.i() * RadConst.i() == RadConst(-1)
    assert RadConst(3, 2) * RadConst(2, 6) == RadConst(12, 3)


def test_rad_add_examples():
    assert RadConst(1, 2) + RadConst(2, 2) == RadConst(3, 2)
    assert RadConst(5, 3) + RadConst.zero() == RadConst(5, 3)
    with pytest.raises(IncompatibleRadicals):
        RadConst(1, 2) + RadConst(1, 3)
    with pytest.raises(IncompatibleRadicals):
        RadConst(1, 2) + RadConst(1, 2, 1)


def _random_rad(rng):
    r = QQ(rng.randint(-9, 9), rng.randint(1, 9))
    m = rng.choice([1, 2, 3, 5, 6, 7, 10, 15])
    t = rng.randint(0, 1)
    return RadConst(r, m, t)


def test_rad_mul_commutative_associative_randomized():
    rng = random.Random(20260825)
    for _ in range(300):
        x, y, z = (_random_rad(rng) for _ in range(3))
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)


def test_rad_inverse_and_division():
    rng = random.Random(7)
    for _ in range(200):
        x = _random_rad(rng)
        if x.is_zero():
            continue
        assert x * x.inverse() == RadConst.one()
        y = _random_rad(rng)
        if not y.is_zero():
            assert (x / y) * y == x


def test_rad_pow_half_principal_branch():
    # (1-u)^(-1/2) for u > 1 is -i/sqrt(u-1): here u = 5 -> -i/2
    assert rad_pow_half(QQ(-4), -1) == RadConst(QQ(-1, 2), 1, 1)
    assert rad_pow_half(QQ(9, 4), 1) == RadConst(QQ(3, 2))
    assert rad_pow_half(QQ(2), 3) == RadConst(2, 2)
    assert rad_pow_half(QQ(-1), 1) == RadConst.i()


def test_rad_text_roundtrip():
    rng = random.Random(99)
    for _ in range(200):
        x = _random_rad(rng)
        assert parse_radconst(repr(x)) == x
    assert parse_radconst("0") == RadConst.zero()
    assert repr(RadConst(QQ(5, 3), 15)) == "5/3*sqrt(15)"


# ------------------------------------------------------------------
# BigApprox
# ------------------------------------------------------------------

def test_bigapprox_basic_ops_track_error():
    P = 128
    a = BigApprox.from_rational(QQ(1, 3), P)
    b = BigApprox.from_rational(QQ(1, 7), P)
    s = a + b
    exact = BigApprox.from_rational(QQ(10, 21), P)
    assert s.agrees_to(exact, 30)
    p = a * b
    assert p.agrees_to(BigApprox.from_rational(QQ(1, 21), P), 30)
    q = a / b
    assert q.agrees_to(BigApprox.from_rational(QQ(7, 3), P), 30)


def test_bigapprox_sqrt():
    P = 160
    two = BigApprox.from_int(2, P)
    r = two.sqrt()
    assert (r * r).agrees_to(two, 40)


def test_rad_embedding_commutes_with_algebra():
    P = prec_for_digits(30)
    rng = random.Random(11)
    for _ in range(50):
        x, y = _random_rad(rng), _random_rad(rng)
        if x.t or y.t:
            continue
        lhs = rad_to_bigapprox(x * y, P)
        rhs = rad_to_bigapprox(x, P) * rad_to_bigapprox(y, P)
        assert lhs.agrees_to(rhs, 25)
        if (x.m, x.t) == (y.m, y.t):
            lhs = rad_to_bigapprox(x + y, P)
            rhs = rad_to_bigapprox(x, P) + rad_to_bigapprox(y, P)
            assert lhs.agrees_to(rhs, 25)


# ------------------------------------------------------------------
# pi oracle
# ------------------------------------------------------------------

def test_pi_oracle_matches_frozen_digits():
    pi = pi_oracle(80)
    assert pi.to_decimal(78)[:79] == PI_80[:79]
    assert pi.err_bound_lt_pow10(80)


@pytest.mark.parametrize("digits", [10, 100, 1000])
def test_agm_machin_cross_agreement(digits):
    P = prec_for_digits(digits)
    mac, err = machin_pi(P)
    agm = agm_pi(P)
    assert abs(mac - agm) + err < (1 << P) // 10**digits


def test_pi_oracle_small_digits():
    pi = pi_oracle(1)
    assert pi.to_decimal(1).startswith("3.1")


# ------------------------------------------------------------------
# sin(pi s)
# ------------------------------------------------------------------

def test_sin_pi_exact_table():
    assert sin_pi(QQ(1, 2)) == RadConst(1)
    assert sin_pi(QQ(1, 4)) == RadConst(QQ(1, 2), 2)
    assert sin_pi(QQ(3, 4)) == RadConst(QQ(1, 2), 2)
    assert sin_pi(QQ(1, 3)) == RadConst(QQ(1, 2), 3)
    assert sin_pi(QQ(1, 6)) == RadConst(QQ(1, 2))


def test_sin_pi_numeric_branch_matches_frozen():
    v = sin_pi(QQ(1, 5), digits=40)
    assert isinstance(v, BigApprox)  # non-exact flag
    assert v.to_decimal(38)[:39] == SIN_PI_5_40[:39]


def test_sin_pi_exact_values_match_numeric_embedding():
    for s in (QQ(1, 2), QQ(1, 3), QQ(1, 4), QQ(1, 6), QQ(5, 6)):
        exact = sin_pi(s)
        P = prec_for_digits(35)
        num = sin_pi(s + QQ(1, 10**9), digits=35)  # nearby non-exact input
        emb = rad_to_bigapprox(exact, P)
        # sin is 1-Lipschitz w.r.t. pi*s, so drift < 2^-20 of a digit budget
        assert abs(float(emb) - float(num)) < 1e-8
