"""Transformation rules between coefficient families, with formal verification.

A rule asserts, as an identity of power series about x = 0,

    sum_n l_n A(x)^n  =  B(x) * sum_n r_n C(x)^n

where l/r are the coefficient streams of the two families, A and C are
rational functions with A(0) = C(0) = 0, and B is a finite product of
rational powers of polynomials normalized to B(0) = 1.  Rules are data
(``src/rpv/data/rules.json``); checking one at order N is plain arithmetic
over exact rationals and proves the first N+1 coefficients.

A formal pass says nothing about the identity at a distant point x0: the
half-integer powers in B pick branches, and a rule can be true as a series
yet false as a numeric identity on part of the real line (see the
``warning`` tag).  ``verify_rule_numeric`` checks the identity at a point
with certified interval arithmetic; ``translate`` uses it as a gate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ._backend import QQ, qq_den, qq_num
from .errors import (
    DivergentInput,
    ParseError,
    SingularPoint,
    UnrepresentableConstant,
)
from .fps import Series, fps_compose, fps_expand_ratfun, fps_mul, fps_pow_rational, fps_sub
from .hyper import (
    CheckReport,
    CoeffFamily,
    _extend,
    converges,
    eval_numeric,
    hyper_series,
    parse_family,
)
from .numerics import (
    RadConst,
    format_rational,
    parse_rational,
    rad_pow_half,
    rad_to_bigapprox,
)
from .poly import RatFun, poly, poly_derivative, poly_eval

# ============================================================
# prefactors: scale * prod p_i(x)^(e_i)
# ============================================================

@dataclass(frozen=True)
class Prefactor:
    """scale * prod p_i(x)^(e_i), e_i rational with denominator 1 or 2.

    The constant value at x = 0 must be 1 (loader invariant), which pins the
    series branch; at other points the principal branch of each half power
    is taken, so the value may be imaginary (RadConst with t = 1).
    """

    scale: object  # QQ
    factors: tuple  # of (poly_tuple, QQ exponent)

    def value_at(self, x0) -> RadConst:
        """Exact value at x0 on the principal branch, as a RadConst."""
        out = RadConst(self.scale)
        for p, e in self.factors:
            v = poly_eval(p, QQ(x0))
            if v == 0:
                if e > 0:
                    out = RadConst.zero()
                    continue
                raise SingularPoint(
                    f"prefactor base {list(p)} vanishes at x = {format_rational(x0)}"
                )
            if qq_den(e) == 1:
                out = out * RadConst(v).pow_int(qq_num(e))
            else:
                out = out * rad_pow_half(v, qq_num(e))
        return out

    def series(self, order: int) -> Series:
        """Power series about 0 to `order` (coefficients exact rationals)."""
        out = Series.one(order)
        const = QQ(self.scale)
        for p, e in self.factors:
            p0 = poly_eval(p, QQ(0))
            if p0 == 0:
                raise SingularPoint("prefactor base vanishes at x = 0")
            if qq_den(e) == 1:
                const *= p0 ** int(qq_num(e)) if qq_num(e) >= 0 else 1 / (
                    p0 ** int(-qq_num(e))
                )
            else:
                c = rad_pow_half(p0, qq_num(e))
                if not c.is_rational():
                    raise UnrepresentableConstant(
                        f"{format_rational(p0)}^({e}) is not rational; "
                        "normalize the prefactor base"
                    )
                const *= c.r
            unit = [QQ(c) / p0 for c in p]
            unit += [QQ(0)] * (order + 1 - len(unit))
            out = fps_mul(out, fps_pow_rational(Series(unit[: order + 1]), e))
        return Series([c * const for c in out.coeffs])

    def dlog_at(self, x0):
        """Exact logarithmic derivative B'(x0)/B(x0), a rational."""
        x0 = QQ(x0)
        out = QQ(0)
        for p, e in self.factors:
            v = poly_eval(p, x0)
            if v == 0:
                raise SingularPoint(
                    f"prefactor base {list(p)} vanishes at x = {format_rational(x0)}"
                )
            out += QQ(e) * poly_eval(poly_derivative(p), x0) / v
        return out

    def inverse(self) -> "Prefactor":
        return Prefactor(1 / QQ(self.scale), tuple((p, -e) for p, e in self.factors))

    def __str__(self) -> str:
        bits = [] if self.scale == 1 else [format_rational(self.scale)]
        for p, e in self.factors:
            body = _poly_str(p)
            bits.append(f"({body})^({format_rational(e)})" if e != 1 else f"({body})")
        return " * ".join(bits) if bits else "1"


def _poly_str(p: tuple) -> str:
    terms = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        if k == 0:
            terms.append(format_rational(c))
        elif k == 1:
            terms.append(f"{format_rational(c)}*x" if c != 1 else "x")
        else:
            terms.append(f"{format_rational(c)}*x^{k}" if c != 1 else f"x^{k}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


# ============================================================
# rules
# ============================================================

@dataclass(frozen=True)
class TransformRule:
    rid: str
    lhs: CoeffFamily
    rhs: CoeffFamily
    A: RatFun
    B: Prefactor
    C: RatFun
    note: str = ""
    tags: tuple = ()

    def __str__(self) -> str:
        return f"{self.rid}: {self.lhs} -> {self.rhs}"


def reverse_rule(rule: TransformRule) -> TransformRule:
    """Swap the two sides:  sum r_n C^n = B^(-1) sum l_n A^n."""
    return TransformRule(
        rid=rule.rid + "::reversed",
        lhs=rule.rhs,
        rhs=rule.lhs,
        A=rule.C,
        B=rule.B.inverse(),
        C=rule.A,
        note=rule.note,
        tags=tuple(rule.tags) + ("reversed",),
    )


# --- JSON loading -------------------------------------------------------

def _parse_coeff(v):
    return parse_rational(v) if isinstance(v, str) else QQ(v)


def _parse_poly_spec(spec) -> tuple:
    """A poly is either a dense coefficient list (constant first) or
    {"base": [...], "pow": k, "scale": q} meaning scale * base^pow."""
    if isinstance(spec, list):
        return poly([_parse_coeff(c) for c in spec])
    base = poly([_parse_coeff(c) for c in spec["base"]])
    out = poly([1])
    from .poly import poly_mul, poly_scale

    for _ in range(int(spec.get("pow", 1))):
        out = poly_mul(out, base)
    if "scale" in spec:
        out = poly_scale(out, _parse_coeff(spec["scale"]))
    return out


def _parse_ratfun(spec) -> RatFun:
    return RatFun(_parse_poly_spec(spec["num"]), _parse_poly_spec(spec.get("den", [1])))


def _parse_prefactor(spec) -> Prefactor:
    scale = _parse_coeff(spec.get("scale", 1))
    factors = tuple(
        (_parse_poly_spec(f["poly"]), parse_rational(str(f["exp"])))
        for f in spec.get("factors", ())
    )
    for _, e in factors:
        if qq_den(e) not in (1, 2):
            raise ParseError(f"prefactor exponent {e} must be a half-integer")
    return Prefactor(scale, factors)


def _parse_rule(obj) -> TransformRule:
    rule = TransformRule(
        rid=obj["id"],
        lhs=parse_family(obj["lhs"]),
        rhs=parse_family(obj["rhs"]),
        A=_parse_ratfun(obj["A"]),
        B=_parse_prefactor(obj["B"]),
        C=_parse_ratfun(obj["C"]),
        note=obj.get("note", ""),
        tags=tuple(obj.get("tags", ())),
    )
    if rule.A(QQ(0)) != 0 or rule.C(QQ(0)) != 0:
        raise ParseError(f"rule {rule.rid}: argument maps must vanish at x = 0")
    if rule.B.value_at(QQ(0)) != RadConst.one():
        raise ParseError(f"rule {rule.rid}: prefactor must equal 1 at x = 0")
    return rule


_rules_cache: dict | None = None


def load_rules(path: str | None = None) -> dict:
    """id -> TransformRule, from the bundled rules.json (or an explicit path)."""
    global _rules_cache
    if path is None and _rules_cache is not None:
        return _rules_cache
    if path is None:
        text = resources.files("rpv").joinpath("data/rules.json").read_text()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    raw = json.loads(text)
    out: dict = {}
    for obj in raw["rules"]:
        rule = _parse_rule(obj)
        if rule.rid in out:
            raise ParseError(f"duplicate rule id {rule.rid}")
        out[rule.rid] = rule
    if path is None:
        _rules_cache = out
    return out


def get_rule(rid: str) -> TransformRule:
    rules = load_rules()
    if rid not in rules:
        raise ParseError(f"unknown rule id {rid!r}")
    return rules[rid]


def rule_ids() -> list[str]:
    return sorted(load_rules())


# ============================================================
# verification
# ============================================================

def _family_compose(fam: CoeffFamily, arg: Series, order: int) -> Series:
    """sum_n t_n arg(x)^n to `order`; arg must vanish at 0."""
    outer = Series(_extend(fam, order)[: order + 1])
    return fps_compose(outer, arg.truncate(order))


def verify_rule_formal(rule: TransformRule, order: int = 64) -> CheckReport:
    """Expand both sides to `order` and compare coefficients exactly."""
    Aser = fps_expand_ratfun(rule.A.num, rule.A.den, order)
    Cser = fps_expand_ratfun(rule.C.num, rule.C.den, order)
    lhs = _family_compose(rule.lhs, Aser, order)
    rhs = fps_mul(rule.B.series(order), _family_compose(rule.rhs, Cser, order))
    miss = lhs.first_mismatch(rhs)
    if miss is None:
        return CheckReport(True, f"series agree to order {order}")
    return CheckReport(
        False,
        f"first coefficient mismatch at index {miss}",
        first_mismatch=miss,
    )


def verify_rule_numeric(rule: TransformRule, x0, digits: int = 20) -> CheckReport:
    """Check the rule as a numeric identity at x = x0.

    Both argument values must be inside their families' convergence
    envelopes (DivergentInput otherwise; such points are certificate
    territory, not gate territory).  The check is meaningful only for a
    real prefactor value.
    """
    x0 = QQ(x0)
    zA, zC = rule.A(x0), rule.C(x0)
    if not converges(rule.lhs, zA):
        raise DivergentInput(
            f"lhs argument {format_rational(zA)} outside the {rule.lhs} envelope"
        )
    if not converges(rule.rhs, zC):
        raise DivergentInput(
            f"rhs argument {format_rational(zC)} outside the {rule.rhs} envelope"
        )
    bval = rule.B.value_at(x0)
    if not bval.is_real():
        return CheckReport(
            False, f"prefactor value {bval} at x = {format_rational(x0)} is not real"
        )
    lhs = eval_numeric(rule.lhs, 1, 0, zA, digits + 5)
    rhs = eval_numeric(rule.rhs, 1, 0, zC, digits + 5)
    prod = rhs * rad_to_bigapprox(bval, rhs.prec)
    agreed = lhs.digits_agreed(prod)
    ok = lhs.agrees_to(prod, digits)
    return CheckReport(
        ok,
        f"sides agree to {agreed} digits at x = {format_rational(x0)}",
        digits_agreed=agreed,
    )


def verify_all_rules(order: int = 64) -> list[tuple[str, CheckReport]]:
    """Formally verify every bundled rule; deterministic id order."""
    return [(rid, verify_rule_formal(get_rule(rid), order)) for rid in rule_ids()]


# ============================================================
# Gauss-level (2F1) transformations
# ============================================================
#
# The square2F1 rules above are squares of classical 2F1 transformations.
# These checks work at the 2F1 level directly, mostly as regression evidence
# that the series substrate composes transformations correctly.

def _one_minus_x_pow(e, order: int) -> Series:
    return fps_pow_rational(
        Series([QQ(1), QQ(-1)] + [QQ(0)] * (order - 1)), QQ(e)
    )


def _x_over_x_minus_1(order: int) -> Series:
    # x/(x-1) = -x/(1-x) = -(x + x^2 + ...)
    return Series([QQ(0)] + [QQ(-1)] * order)


def gauss_pfaff_check(a, b, c, order: int = 32) -> CheckReport:
    """2F1(a,b;c;x) == (1-x)^(-a) 2F1(a, c-b; c; x/(x-1)) to `order`."""
    a, b, c = QQ(a), QQ(b), QQ(c)
    lhs = hyper_series([a, b], [c], order)
    inner = fps_compose(hyper_series([a, c - b], [c], order), _x_over_x_minus_1(order))
    rhs = fps_mul(_one_minus_x_pow(-a, order), inner)
    miss = lhs.first_mismatch(rhs)
    if miss is None:
        return CheckReport(True, f"series agree to order {order}")
    return CheckReport(False, f"first mismatch at index {miss}", first_mismatch=miss)


def gauss_euler_check(a, b, c, order: int = 32) -> CheckReport:
    """2F1(a,b;c;x) == (1-x)^(c-a-b) 2F1(c-a, c-b; c; x) to `order`."""
    a, b, c = QQ(a), QQ(b), QQ(c)
    lhs = hyper_series([a, b], [c], order)
    rhs = fps_mul(
        _one_minus_x_pow(c - a - b, order), hyper_series([c - a, c - b], [c], order)
    )
    miss = lhs.first_mismatch(rhs)
    if miss is None:
        return CheckReport(True, f"series agree to order {order}")
    return CheckReport(False, f"first mismatch at index {miss}", first_mismatch=miss)


def pfaff_twice_is_euler(a, b, c, order: int = 32) -> CheckReport:
    """Composing Pfaff (b-slot) with Pfaff (a-slot) reproduces Euler.

    Both steps are carried out mechanically on series: substitute
    y = x/(x-1) into the once-transformed series, multiply the two
    prefactors, and compare against the Euler form termwise.
    """
    a, b, c = QQ(a), QQ(b), QQ(c)
    y = _x_over_x_minus_1(order)
    # w = y/(y-1) = -y * (1-y)^(-1), as a series in x (collapses back to x,
    # but it is computed, not assumed)
    one_minus_y = fps_sub(Series.one(order), y)
    w = Series([-cf for cf in fps_mul(y, fps_pow_rational(one_minus_y, QQ(-1))).coeffs])
    # step 1 prefactor (1-x)^(-a); step 2 prefactor (1-y)^(-(c-b)) composed in x
    pref = fps_mul(
        _one_minus_x_pow(-a, order), fps_pow_rational(one_minus_y, -(c - b))
    )
    core = fps_compose(hyper_series([c - a, c - b], [c], order), w)
    composed = fps_mul(pref, core)
    euler = fps_mul(
        _one_minus_x_pow(c - a - b, order), hyper_series([c - a, c - b], [c], order)
    )
    direct = hyper_series([a, b], [c], order)
    miss1 = composed.first_mismatch(euler)
    miss2 = composed.first_mismatch(direct)
    if miss1 is None and miss2 is None:
        return CheckReport(True, f"composition equals the Euler form to order {order}")
    miss = miss1 if miss1 is not None else miss2
    return CheckReport(False, f"first mismatch at index {miss}", first_mismatch=miss)
