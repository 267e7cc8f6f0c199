"""Exact transport of series specifications along transformation rules.

A SeriesSpec records a claimed identity

    sum_n (a + b n) t_n z^n = c / pi

with t_n one of the coefficient families, z an exact rational, and c an
exact radical constant.  Given a rule  sum l_n A(x)^n = B(x) sum r_n C(x)^n
that is numerically valid at a rational point x0 with A(x0) = z (or C(x0) = z
for the reversed orientation), applying theta = x d/dx to both sides and
evaluating at x0 transports the series spec to the other family:

    lam * S1 = x0 B'(x0) * T0 + B(x0) * dlogC * T1,   lam = x0 A'(x0)/A(x0)

so  c/pi = a S0 + b S1 = w0 T0 + w1 T1  with w0, w1 in beta * Q, beta = B(x0).
Everything on the right is exact; the result is a new SeriesSpec plus a
Certificate recording each intermediate quantity for later replay.

Distant points are dangerous: a rule that is true as a series can be false
numerically at x0 (branch crossings).  translate() therefore gates every
derivation with a certified point check when both sides converge, falls back
to an inner gate point for boundary targets (Abel continuity), and for
divergent targets refuses to gate at all — such certificates *define* the
assigned value and say so in their notes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from ._backend import QQ, qq_den, qq_num
from .errors import ArgumentMismatch, GateRefused, SingularPoint
from .hyper import CheckReport, CoeffFamily, converges, family_envelope, parse_family
from .numerics import RadConst, format_rational, parse_radconst, parse_rational
from .poly import poly_eval, poly_scale, poly_sub, rational_roots
from .transforms import (
    TransformRule,
    get_rule,
    reverse_rule,
    verify_rule_numeric,
)

CERT_SCHEMA = "rpv-certificate/1"


# ============================================================
# series specifications
# ============================================================

@dataclass(frozen=True)
class SeriesSpec:
    """sum (a + b n) t_n z^n = c / pi, all parts exact."""

    fam: CoeffFamily
    z: object  # QQ
    a: object  # QQ
    b: object  # QQ
    c: RadConst

    def scaled(self, q) -> "SeriesSpec":
        q = QQ(q)
        if q == 0:
            raise ValueError("scaling a spec by zero")
        return SeriesSpec(self.fam, self.z, self.a * q, self.b * q, self.c.scale(q))

    def normalized(self) -> tuple["SeriesSpec", object]:
        """Equivalent spec with integer a, b, gcd 1 and b > 0 (a > 0 if b = 0);
        returns (spec, k) with spec = self.scaled(k)."""
        a, b = QQ(self.a), QQ(self.b)
        if a == 0 and b == 0:
            raise ValueError("spec with a = b = 0")
        d = lcm(qq_den(a), qq_den(b))
        ia, ib = qq_num(a) * (d // qq_den(a)), qq_num(b) * (d // qq_den(b))
        g = gcd(abs(ia), abs(ib))
        k = QQ(d, g)
        lead = ib if ib != 0 else ia
        if lead < 0:
            k = -k
        return self.scaled(k), k

    def same_identity(self, other: "SeriesSpec") -> bool:
        """True if the two specs state the same identity up to a common
        nonzero rational factor on (a, b, c)."""
        if self.fam != other.fam or QQ(self.z) != QQ(other.z):
            return False
        if (QQ(self.a) == 0) != (QQ(other.a) == 0):
            return False
        if (QQ(self.b) == 0) != (QQ(other.b) == 0):
            return False
        q = (
            QQ(other.a) / QQ(self.a)
            if QQ(self.a) != 0
            else QQ(other.b) / QQ(self.b)
        )
        return (
            q != 0
            and QQ(self.a) * q == QQ(other.a)
            and QQ(self.b) * q == QQ(other.b)
            and self.c.scale(q) == other.c
        )

    def to_json(self) -> dict:
        return {
            "family": str(self.fam),
            "z": format_rational(self.z),
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "c": repr(self.c),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SeriesSpec":
        return cls(
            fam=parse_family(obj["family"]),
            z=parse_rational(obj["z"]),
            a=parse_rational(obj["a"]),
            b=parse_rational(obj["b"]),
            c=parse_radconst(obj["c"]),
        )

    def __str__(self) -> str:
        return (
            f"sum ({format_rational(self.a)} + {format_rational(self.b)} n) t_n "
            f"({format_rational(self.z)})^n = ({self.c}) / pi  [{self.fam}]"
        )


# ============================================================
# certificates
# ============================================================

@dataclass(frozen=True)
class Certificate:
    source: SeriesSpec
    rule_id: str
    orientation: str  # "forward" | "reversed"
    x0: object  # QQ
    lam: object  # QQ: x0 A'(x0)/A(x0) of the oriented rule
    dlog_b: object  # QQ: x0 B'(x0)/B(x0)
    dlog_c: object  # QQ: x0 C'(x0)/C(x0)
    beta: RadConst  # B(x0), principal branch
    u0: object  # QQ: a + b dlog_b / lam   (target weights are beta*(u0, u1))
    u1: object  # QQ: b dlog_c / lam
    k: object  # QQ: normalization factor applied to (u0, u1)
    target: SeriesSpec
    gate_mode: str  # "numeric" | "boundary" | "divergent"
    gate_x: object | None  # QQ point at which the rule identity was checked
    gate_digits: int
    gate_agreed: int | None
    status: str  # "proved-translation" | "divergent-certificate"
    notes: tuple = ()

    def to_json(self) -> dict:
        return {
            "schema": CERT_SCHEMA,
            "source": self.source.to_json(),
            "rule": self.rule_id,
            "orientation": self.orientation,
            "x0": format_rational(self.x0),
            "trace": {
                "lam": format_rational(self.lam),
                "dlog_b": format_rational(self.dlog_b),
                "dlog_c": format_rational(self.dlog_c),
                "beta": repr(self.beta),
                "u0": format_rational(self.u0),
                "u1": format_rational(self.u1),
                "k": format_rational(self.k),
            },
            "target": self.target.to_json(),
            "gate": {
                "mode": self.gate_mode,
                "x": None if self.gate_x is None else format_rational(self.gate_x),
                "digits": self.gate_digits,
                "agreed": self.gate_agreed,
            },
            "status": self.status,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        if obj.get("schema") != CERT_SCHEMA:
            raise ArgumentMismatch(f"unknown certificate schema {obj.get('schema')!r}")
        tr, gate = obj["trace"], obj["gate"]
        return cls(
            source=SeriesSpec.from_json(obj["source"]),
            rule_id=obj["rule"],
            orientation=obj["orientation"],
            x0=parse_rational(obj["x0"]),
            lam=parse_rational(tr["lam"]),
            dlog_b=parse_rational(tr["dlog_b"]),
            dlog_c=parse_rational(tr["dlog_c"]),
            beta=parse_radconst(tr["beta"]),
            u0=parse_rational(tr["u0"]),
            u1=parse_rational(tr["u1"]),
            k=parse_rational(tr["k"]),
            target=SeriesSpec.from_json(obj["target"]),
            gate_mode=gate["mode"],
            gate_x=None if gate["x"] is None else parse_rational(gate["x"]),
            gate_digits=gate["digits"],
            gate_agreed=gate["agreed"],
            status=obj["status"],
            notes=tuple(obj.get("notes", ())),
        )


# ============================================================
# solving for evaluation points
# ============================================================

def solve_for_x(ratfun, z_target) -> list:
    """All rational x with ratfun(x) = z_target (poles excluded), sorted."""
    z = QQ(z_target)
    p = poly_sub(ratfun.num, poly_scale(ratfun.den, z))
    roots, _ = rational_roots(p)
    return sorted(r for r in roots if poly_eval(ratfun.den, r) != 0)


def _orient(source: SeriesSpec, rule: TransformRule, x0) -> tuple:
    """Pick the rule orientation that puts the source on the left at x0."""
    x0 = QQ(x0)
    if source.fam == rule.lhs:
        try:
            if rule.A(x0) == QQ(source.z):
                return rule, "forward"
        except SingularPoint:
            pass
    if source.fam == rule.rhs:
        try:
            if rule.C(x0) == QQ(source.z):
                return reverse_rule(rule), "reversed"
        except SingularPoint:
            pass
    raise ArgumentMismatch(
        f"source {source.fam} at z = {format_rational(source.z)} does not match "
        f"either side of rule {rule.rid} at x0 = {format_rational(x0)}"
    )


def _find_x0(source: SeriesSpec, rule: TransformRule, target_z) -> object:
    """Rational x0 joining source.z on one side of the rule to target_z on
    the other; smallest |x0| wins when several qualify."""
    z_src, z_tgt = QQ(source.z), QQ(target_z)
    cands = []
    if source.fam == rule.lhs:
        for x in solve_for_x(rule.C, z_tgt):
            try:
                if rule.A(x) == z_src:
                    cands.append(x)
            except SingularPoint:
                continue
    if source.fam == rule.rhs:
        for x in solve_for_x(rule.A, z_tgt):
            try:
                if rule.C(x) == z_src:
                    cands.append(x)
            except SingularPoint:
                continue
    if not cands:
        raise ArgumentMismatch(
            f"no rational point joins z = {format_rational(z_src)} to "
            f"z = {format_rational(z_tgt)} along rule {rule.rid}"
        )
    return sorted(cands, key=lambda x: (abs(x), x))[0]


# ============================================================
# translation
# ============================================================

_GATE_SHRINKS = (QQ(7, 8), QQ(3, 4), QQ(1, 2), QQ(1, 4), QQ(1, 8), QQ(1, 16))
_GATE_MARGIN = QQ(7, 8)  # require |arg| * R <= 7/8 at the gate point


def _gate_point_ok(rule: TransformRule, x) -> bool:
    try:
        zA, zC = rule.A(x), rule.C(x)
    except SingularPoint:
        return False
    rl, _ = family_envelope(rule.lhs)
    rr, _ = family_envelope(rule.rhs)
    return abs(zA) * rl <= _GATE_MARGIN and abs(zC) * rr <= _GATE_MARGIN


def translate(
    source: SeriesSpec,
    rule: TransformRule | str,
    x0=None,
    target_z=None,
    gate_digits: int = 12,
) -> Certificate:
    """Transport `source` along `rule`, returning an exact Certificate.

    Exactly one of x0 / target_z selects the evaluation point.  Derivations
    whose target converges are gated numerically at x0 and refused (loudly)
    on failure; boundary targets are gated at an inner point; divergent
    targets cannot be gated and yield a divergent-certificate.
    """
    if isinstance(rule, str):
        rule = get_rule(rule)
    if (x0 is None) == (target_z is None):
        raise ArgumentMismatch("specify exactly one of x0 / target_z")
    if QQ(source.z) == 0:
        raise ArgumentMismatch("source z must be nonzero")
    if x0 is None:
        x0 = _find_x0(source, rule, target_z)
    x0 = QQ(x0)
    if x0 == 0:
        raise ArgumentMismatch("x0 must be nonzero")
    oriented, orientation = _orient(source, rule, x0)

    # --- exact theta transport -----------------------------------------
    zC = oriented.C(x0)
    lam = x0 * oriented.A.derivative_at(x0) / oriented.A(x0)
    if lam == 0:
        raise SingularPoint(
            f"x0 = {format_rational(x0)} is a critical point of the argument "
            "map (lam = 0): this is limit-formula territory, not a transport"
        )
    beta = oriented.B.value_at(x0)
    if beta.is_zero():
        raise SingularPoint(
            f"prefactor vanishes at x0 = {format_rational(x0)}: "
            "limit-formula territory, not a transport"
        )
    dlog_b = x0 * oriented.B.dlog_at(x0)
    if zC == 0:
        raise SingularPoint("target argument vanishes at x0")
    dlog_c = x0 * oriented.C.derivative_at(x0) / zC
    a, b = QQ(source.a), QQ(source.b)
    u0 = a + b * dlog_b / lam
    u1 = b * dlog_c / lam
    raw = SeriesSpec(oriented.rhs, zC, u0, u1, source.c / beta)
    target, k = raw.normalized()

    # --- gate ------------------------------------------------------------
    notes = []
    rl, _ = family_envelope(oriented.lhs)
    rr, _ = family_envelope(oriented.rhs)
    edge_src = abs(QQ(source.z)) * rl
    edge_tgt = abs(zC) * rr
    if edge_src < 1 and edge_tgt < 1:
        mode = "numeric"
        gate_x = x0
        if not _gate_point_ok(oriented, x0):
            for shrink in _GATE_SHRINKS:
                if _gate_point_ok(oriented, x0 * shrink):
                    gate_x = x0 * shrink
                    notes.append(
                        "gate moved to an inner point to keep certified "
                        "summation cheap; validity extends by continuity"
                    )
                    break
            else:
                raise GateRefused(
                    f"no usable gate point found near x0 = {format_rational(x0)}"
                )
        status = "proved-translation"
    elif edge_src <= 1 and edge_tgt <= 1:
        # at least one side sits exactly on its convergence boundary
        mode = "boundary"
        gate_x = None
        for shrink in _GATE_SHRINKS:
            if _gate_point_ok(oriented, x0 * shrink):
                gate_x = x0 * shrink
                break
        if gate_x is None:
            raise GateRefused(
                f"no usable inner gate point for boundary target at "
                f"x0 = {format_rational(x0)}"
            )
        notes.append(
            "an argument sits on its convergence boundary; the rule is "
            "gated at an inner point and the value extends by Abel continuity"
        )
        status = "proved-translation"
    else:
        mode = "divergent"
        gate_x = None
        status = "divergent-certificate"
        side = "target" if edge_tgt > 1 else "source"
        notes.append(
            f"{side} argument lies outside the convergence envelope; the "
            "series value is *defined* by this certificate through analytic "
            "continuation of the rule along the real segment from 0"
        )
        notes.append(
            "the prefactor at x0 is taken on the principal branch; a branch "
            "mismatch rescales c by a constant algebraic factor but leaves "
            "the normalized pair (a, b) invariant"
        )
        if edge_src > 1:
            notes.append(
                "the source spec itself lies outside the envelope; this "
                "certificate composes with the source's own certificate"
            )
        if not beta.is_real():
            notes.append(
                "principal branch gives an imaginary prefactor: "
                "(-u)^(1/2) = i sqrt(u) for u > 0"
            )

    agreed = None
    if gate_x is not None:
        report = verify_rule_numeric(oriented, gate_x, digits=gate_digits)
        agreed = report.digits_agreed
        if not report.passed:
            raise GateRefused(
                f"rule {rule.rid} fails its numeric gate at "
                f"x = {format_rational(gate_x)} ({report.detail}); "
                + (f"rule note: {rule.note}" if rule.note else "refusing")
            )

    return Certificate(
        source=source,
        rule_id=rule.rid,
        orientation=orientation,
        x0=x0,
        lam=lam,
        dlog_b=dlog_b,
        dlog_c=dlog_c,
        beta=beta,
        u0=u0,
        u1=u1,
        k=k,
        target=target,
        gate_mode=mode,
        gate_x=gate_x,
        gate_digits=gate_digits,
        gate_agreed=agreed,
        status=status,
        notes=tuple(notes),
    )


def replay(cert: Certificate | dict) -> CheckReport:
    """Re-derive a certificate from its source/rule/x0 and compare exactly."""
    if isinstance(cert, dict):
        cert = Certificate.from_json(cert)
    rule = get_rule(cert.rule_id)
    fresh = translate(
        cert.source, rule, x0=cert.x0, gate_digits=cert.gate_digits
    )
    mismatches = []
    for name in ("lam", "dlog_b", "dlog_c", "u0", "u1", "k", "x0"):
        if QQ(getattr(fresh, name)) != QQ(getattr(cert, name)):
            mismatches.append(name)
    if fresh.beta != cert.beta:
        mismatches.append("beta")
    if fresh.orientation != cert.orientation:
        mismatches.append("orientation")
    if fresh.gate_mode != cert.gate_mode:
        mismatches.append("gate_mode")
    if not fresh.target.same_identity(cert.target):
        mismatches.append("target")
    if fresh.target.to_json() != cert.target.to_json():
        # same identity but different normalization would also be a drift
        if "target" not in mismatches:
            mismatches.append("target-normalization")
    if mismatches:
        return CheckReport(False, "replay drift in: " + ", ".join(mismatches))
    return CheckReport(
        True,
        f"replayed {cert.rule_id} ({cert.orientation}) at "
        f"x0 = {format_rational(cert.x0)}; all exact fields match",
    )
