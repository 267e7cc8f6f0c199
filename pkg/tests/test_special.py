"""Tests for the starting formula, limit ladder, and Sun conjecture checks."""

import math
import random

import pytest

from rpv._backend import QQ
from rpv.errors import InvariantViolation, NoConvergenceDetected
from rpv.hyper import gauss_half_check, hyper3F2, square2F1
from rpv.numerics import RadConst
from rpv.poly import RatFun
from rpv.special import (
    LIMIT_SPECS,
    LimitSpec,
    corollary_binomial_check,
    limit_eval,
    rogers_domb_check,
    starting_formula,
    sun_2_11,
    sun_4_14,
    sun_S2_identity,
    sun_solve_points,
)


def test_starting_formula_half():
    rep = starting_formula(QQ(1, 2))
    assert rep.passed
    assert rep.exact_target
    assert rep.digits_agreed >= 30


def test_starting_formula_generic_s():
    rep = starting_formula(QQ(1, 5))
    assert rep.passed
    assert not rep.exact_target
    assert rep.digits_agreed >= 30


def test_starting_formula_random_s():
    rng = random.Random(20260825)
    seen = 0
    while seen < 12:
        q = rng.randint(2, 12)
        p = rng.randint(1, q - 1)
        if math.gcd(p, q) != 1:
            continue
        s = QQ(p, q)
        rep = starting_formula(s, digits=25)
        assert rep.passed, (s, rep.detail)
        gauss = gauss_half_check(s, digits=25)
        assert gauss.passed, (s, gauss.detail)
        seen += 1


def test_corollary_binomial_forms():
    for p, q in [(1, 2), (1, 3), (1, 4), (1, 6)]:
        rep = corollary_binomial_check(QQ(p, q), 100)
        assert rep.passed, rep.detail
        assert rep.first_mismatch is None


def test_corollary_binomial_wrong_base_fails():
    rep = corollary_binomial_check(QQ(1, 2), 8, base=33)
    assert not rep.passed
    assert rep.first_mismatch == 1


LIMIT_TARGETS = {
    "limit-start-1/2": (QQ(2), 1),
    "limit-start-1/3": (QQ(1), 3),
    "limit-start-1/4": (QQ(1), 2),
    "limit-start-1/6": (QQ(1), 1),
    "limit-8x1": (QQ(1, 2), 3),
    "limit-x1": (QQ(1), 2),
    "limit-8px": (QQ(4), 3),
}


def test_limit_spec_targets():
    assert set(LIMIT_SPECS) == set(LIMIT_TARGETS)
    for lid, (r, m) in LIMIT_TARGETS.items():
        assert LIMIT_SPECS[lid].target == RadConst(r, m), lid


def test_limit_ladder_all_specs():
    for lid, spec in LIMIT_SPECS.items():
        rep = limit_eval(spec, 1e-8)
        assert rep.passed, (lid, rep.detail)
        assert abs(rep.value - rep.target_value) <= 1e-8, lid
        assert rep.error_estimate <= 1e-8, lid
        assert rep.k_used >= 5


def test_limit_deeper_ladder_stays_within_tolerance():
    spec = LIMIT_SPECS["limit-8x1"]
    shallow = limit_eval(spec, 1e-8)
    deep = limit_eval(spec, 1e-8, k_min=6)
    assert deep.k_used > shallow.k_used
    assert abs(deep.value - deep.target_value) <= 1e-8
    assert deep.nodes[: len(shallow.nodes)] == shallow.nodes


def test_limit_parallel_matches_serial():
    spec = LIMIT_SPECS["limit-start-1/3"]
    serial = limit_eval(spec, 1e-8)
    parallel = limit_eval(spec, 1e-8, jobs=3)
    assert parallel.value == serial.value
    assert parallel.nodes == serial.nodes
    assert parallel.extrapolants == serial.extrapolants


def test_limit_shallow_ladder_refuses():
    with pytest.raises(NoConvergenceDetected):
        limit_eval(LIMIT_SPECS["limit-start-1/2"], 1e-8, k_max=4)


def test_limit_node_budget_refuses():
    with pytest.raises(NoConvergenceDetected):
        limit_eval(LIMIT_SPECS["limit-start-1/2"], 1e-8, max_node_terms=100_000)


def test_limit_spec_rejects_bad_input():
    weight = RatFun((1, -2), (1, -1))
    arg = RatFun((0, 4, -4))
    half = QQ(1, 2)
    with pytest.raises(InvariantViolation):
        LimitSpec(hyper3F2(half), RatFun((1,)), arg, half, "left", RadConst(2))
    with pytest.raises(InvariantViolation):
        LimitSpec(hyper3F2(half), weight, arg, half, "up", RadConst(2))
    with pytest.raises(InvariantViolation):
        LimitSpec(square2F1(half), weight, arg, half, "left", RadConst(2))
    with pytest.raises(InvariantViolation):
        LimitSpec(hyper3F2(half), weight, RatFun((0, 2, -2)), half, "left", RadConst(2))
    with pytest.raises(InvariantViolation):
        LimitSpec(hyper3F2(half), weight, arg, half, "left", RadConst(2, 1, 1))


def test_sun_s2_identity():
    rep = sun_S2_identity(120)
    assert rep.passed
    assert rep.checked == 120
    assert rep.first_mismatch is None
    assert not rep.printed_def_consistent
    assert rep.printed_first_mismatch == 1


def test_sun_2_11():
    rep = sun_2_11()
    assert rep.passed
    assert rep.rewrite_ok
    assert rep.replay_passed
    assert rep.digits_agreed >= 30
    assert rep.head_digits == 3


def test_sun_4_14():
    rep = sun_4_14()
    assert rep.passed
    assert rep.formal_passed
    assert rep.transport_ok
    assert rep.negative_control_failed
    assert rep.digits_agreed >= 30


def test_rogers_domb():
    rep = rogers_domb_check()
    assert rep.passed
    assert rep.formal_passed
    assert rep.transport_ok
    assert rep.gate_refused
    assert rep.digits_agreed >= 30
    assert rep.naive_c == RadConst(QQ(25, 9), 3)
    assert rep.corrected_c == RadConst(QQ(25, 3), 3)


def test_sun_solve_points():
    expected = {
        QQ(-1): [QQ(1, 128)],
        QQ(-1, 8): [QQ(1, 576)],
        QQ(1, 64): [QQ(-1, 4032)],
        QQ(4): [QQ(1, 48)],
        QQ(-8): [QQ(1, 72)],
        QQ(64): [QQ(1, 63)],
    }
    assert sun_solve_points() == expected


def test_report_json_keys():
    start = starting_formula(QQ(1, 2)).to_json()
    assert start["pass"] and start["exactTarget"]
    limit = limit_eval(LIMIT_SPECS["limit-start-1/6"], 1e-6).to_json()
    assert limit["pass"] and limit["kUsed"] >= 5
    assert limit["errorEstimate"] <= limit["tolerance"]
