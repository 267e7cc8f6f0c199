"""Coefficient families, certified summation, Clausen/Gauss checks."""

import random

import pytest

from rpv._backend import QQ
from rpv.errors import DivergentInput
from rpv.fps import fps_mul
from rpv.hyper import (
    CheckReport,
    clausen_check,
    coeff,
    convCentral,
    converges,
    domb,
    eval_numeric,
    family_series,
    gauss_half_check,
    hyper3F2,
    hyper_series,
    parse_family,
    pochhammer,
    square2F1,
    tail_bound,
    _gauss_coeffs,
    _tail_power_sum,
)
from rpv.numerics import pi_oracle, rad_to_bigapprox, sin_pi


def test_pochhammer_examples():
    assert pochhammer(QQ(1, 2), 3) == QQ(15, 8)
    assert pochhammer(QQ(7, 3), 0) == 1
    assert pochhammer(QQ(1), 5) == 120


def test_pochhammer_coeff_oracle_randomized():
    rng = random.Random(424242)
    for _ in range(20):
        s = QQ(rng.randint(1, 9), 10)
        fam = hyper3F2(s)
        n = rng.randint(0, 50)
        expected = (
            pochhammer(QQ(1, 2), n)
            * pochhammer(s, n)
            * pochhammer(1 - s, n)
            / pochhammer(QQ(1), n) ** 3
        )
        assert coeff(fam, n) == expected


def test_family_small_values():
    assert coeff(hyper3F2(QQ(1, 2)), 1) == QQ(1, 8)
    assert coeff(square2F1(QQ(1, 2)), 0) == 1
    assert coeff(square2F1(QQ(1, 2)), 1) == QQ(1, 2)
    assert coeff(domb(), 2) == 90
    assert coeff(domb(), 1) == 6


def test_square2f1_equals_fps_square():
    for s in (QQ(1, 2), QQ(1, 4), QQ(1, 6)):
        g = hyper_series([s, 1 - s], [QQ(1)], 40)
        sq = fps_mul(g, g)
        assert family_series(square2F1(s), 40) == sq


def test_convcentral_equals_cauchy_product():
    for s in (QQ(1, 2), QQ(1, 3)):
        n = 60
        u = _gauss_coeffs(QQ(1, 2), s, QQ(-4), n)
        v = _gauss_coeffs(QQ(1, 2), 1 - s, QQ(-4), n)
        fam = convCentral(s)
        for m in (0, 1, 5, 17, 60):
            assert coeff(fam, m) == sum(u[k] * v[m - k] for k in range(m + 1))


def test_family_string_roundtrip():
    for fam in (hyper3F2(QQ(1, 6)), square2F1(QQ(1, 4)), convCentral(QQ(1, 3)), domb()):
        assert parse_family(str(fam)) == fam


def test_envelope_is_sound_sampled():
    from rpv.hyper import family_envelope

    for fam in (hyper3F2(QQ(1, 6)), square2F1(QQ(1, 3)), convCentral(QQ(1, 4)), domb()):
        R, deg = family_envelope(fam)
        for n in range(0, 41, 8):
            assert abs(coeff(fam, n)) <= (n + 1) ** deg * QQ(R) ** n


def test_tail_power_sum_against_brute_force():
    r = QQ(2, 5)
    for j in (0, 1, 2, 3):
        for N in (0, 3, 7):
            brute = sum(QQ(n) ** j * r**n for n in range(N, N + 200))
            bound = _tail_power_sum(j, r, N)
            assert brute <= bound <= brute + QQ(1, 10**20)


def test_tail_bound_dominates_actual_tail():
    fam = hyper3F2(QQ(1, 2))
    z = QQ(-1, 2)
    actual = sum(
        (1 + 6 * n) * coeff(fam, n) * z**n for n in range(30, 230)
    )
    assert abs(actual) <= tail_bound(fam, 1, 6, z, 30)


def test_eval_numeric_against_pi():
    # (6n+1) t_n (1/4)^n = 4/pi for the s=1/2 family
    from rpv.numerics import BigApprox

    val = eval_numeric(hyper3F2(QQ(1, 2)), 1, 6, QQ(1, 4), 40)
    pi = pi_oracle(40).rescale(val.prec)
    assert (val * pi).agrees_to(BigApprox.from_int(4, val.prec), 38)


def test_eval_numeric_digit_stability():
    fam = hyper3F2(QQ(1, 2))
    v30 = eval_numeric(fam, 5, 42, QQ(1, 64), 30)
    v60 = eval_numeric(fam, 5, 42, QQ(1, 64), 60)
    assert v30.agrees_to(v60.rescale(v30.prec), 30)


def test_eval_numeric_divergent_input():
    with pytest.raises(DivergentInput):
        eval_numeric(hyper3F2(QQ(1, 2)), 1, 3, QQ(4), 10)
    with pytest.raises(DivergentInput):
        eval_numeric(hyper3F2(QQ(1, 2)), 1, 4, QQ(-1), 10)  # boundary excluded
    assert not converges(convCentral(QQ(1, 2)), QQ(1, 4))


def test_clausen_check_passes_and_negative_control():
    assert clausen_check(QQ(1, 4), QQ(1, 4), 32).passed
    assert clausen_check(QQ(1, 6), QQ(1, 3), 32).passed
    # perturb the second lower parameter: must fail at a small index
    from rpv.fps import fps_mul as _m

    a = b = QQ(1, 4)
    f = hyper_series([a, b], [a + b + QQ(1, 2)], 8)
    lhs = _m(f, f)
    rhs = hyper_series(
        [2 * a, 2 * b, a + b], [a + b + QQ(1, 2), 2 * a + 2 * b + 1], 8
    )
    miss = lhs.first_mismatch(rhs)
    assert miss is not None and miss <= 2


def test_gauss_half_check():
    for s in (QQ(1, 2), QQ(1, 4)):
        rep = gauss_half_check(s, digits=30)
        assert rep.passed, rep.detail
    rep = gauss_half_check(QQ(1, 5), digits=30)  # non-exact sin branch
    assert rep.passed, rep.detail


def test_gauss_half_value_is_2_over_pi_at_half():
    rep = gauss_half_check(QQ(1, 2), digits=25)
    assert rep.passed and rep.digits_agreed >= 25
