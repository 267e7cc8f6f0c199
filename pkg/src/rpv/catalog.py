"""The machine-readable series catalog and its verification driver."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from ._backend import QQ
from .errors import InvariantViolation, ParseError
from .hyper import domb, eval_numeric, family_envelope, parse_family
from .numerics import (
    BigApprox,
    RadConst,
    format_rational,
    parse_rational,
    pi_oracle,
    prec_for_digits,
    rad_to_bigapprox,
)
from .translate import Certificate, SeriesSpec, replay

DATA_DIR = Path(__file__).resolve().parent / "data"
STATUSES = ("proved-start", "proved-translation", "numeric-only", "divergent-certificate")
TAGS = ("R", "WZ", "modular", "new")
MIN_ENTRIES = 44


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    spec: SeriesSpec
    status: str
    tags: tuple
    paper_line: int
    note: str
    discrepancy_note: str
    certificates: tuple  # raw {"kind": ...} dicts from the certificate file

    @property
    def edge(self):
        """|z| times the envelope radius; < 1 means provably summable."""
        R, _ = family_envelope(self.spec.fam)
        return abs(self.spec.z) * R


@dataclass(frozen=True)
class VerifyReport:
    id: str
    status: str
    computed: str
    target: str
    digits_matched: int
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "computed": self.computed,
            "target": self.target,
            "digitsMatched": self.digits_matched,
            "pass": self.passed,
            "detail": self.detail,
        }


def _entry_from_json(rec: dict, certs: dict) -> CatalogEntry:
    try:
        fam = (
            domb()
            if rec["family"] == "domb"
            else parse_family(f"{rec['family']}:{rec['s']}")
        )
        spec = SeriesSpec(
            fam,
            parse_rational(rec["z"]),
            parse_rational(rec["a"]),
            parse_rational(rec["b"]),
            RadConst(parse_rational(rec["c_r"]), int(rec["c_m"]), int(rec["c_t"])),
        )
        entry = CatalogEntry(
            id=rec["id"],
            spec=spec,
            status=rec["status"],
            tags=tuple(rec["tags"]),
            paper_line=int(rec["paper_line"]),
            note=rec.get("note", ""),
            discrepancy_note=rec.get("discrepancy_note", ""),
            certificates=tuple(certs.get(rec["id"], ())),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"catalog entry {rec.get('id', '?')}: {exc}") from exc
    if entry.status not in STATUSES:
        raise ParseError(f"catalog entry {entry.id}: unknown status {entry.status!r}")
    bad = set(entry.tags) - set(TAGS)
    if bad:
        raise ParseError(f"catalog entry {entry.id}: unknown tags {sorted(bad)}")
    return entry


def _check_invariants(entries: list) -> None:
    seen = set()
    for e in entries:
        if e.id in seen:
            raise InvariantViolation(f"duplicate catalog id {e.id}")
        seen.add(e.id)
    if len(entries) < MIN_ENTRIES:
        raise InvariantViolation(
            f"catalog has {len(entries)} entries; at least {MIN_ENTRIES} required"
        )
    for e in entries:
        edge = e.edge
        if edge > 1 and e.status != "divergent-certificate":
            raise InvariantViolation(
                f"{e.id}: |z|*R = {format_rational(edge)} > 1 requires "
                f"divergent-certificate status, got {e.status}"
            )
        if edge == 1 and e.status not in ("proved-translation", "divergent-certificate"):
            raise InvariantViolation(
                f"{e.id}: boundary entry must carry a certificate-backed status"
            )
        if edge < 1 and e.status == "divergent-certificate":
            raise InvariantViolation(
                f"{e.id}: |z|*R = {format_rational(edge)} < 1 contradicts "
                "divergent-certificate status"
            )
        if e.status == "divergent-certificate" and not e.certificates:
            raise InvariantViolation(f"{e.id}: divergent entry carries no certificate")
        if e.edge == 1 and e.status == "proved-translation":
            if not any(c.get("kind") == "transport" for c in e.certificates):
                raise InvariantViolation(
                    f"{e.id}: boundary entry carries no transport certificate"
                )


def load_catalog(path: str | None = None) -> list:
    """Load and validate the catalog (RPV_CATALOG overrides the bundled file).

    Certificates are read from a certificates.json sitting next to the
    catalog file when present.
    """
    if path is None:
        path = os.environ.get("RPV_CATALOG") or str(DATA_DIR / "catalog.json")
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise ParseError(f"catalog file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"catalog file {path} is not valid JSON: {exc}") from exc
    if doc.get("schema") != "rpv-catalog/1":
        raise ParseError(f"catalog file {path}: unknown schema {doc.get('schema')!r}")
    certs = {}
    cert_path = path.parent / "certificates.json"
    if cert_path.exists():
        cdoc = json.loads(cert_path.read_text())
        if cdoc.get("schema") != "rpv-certificates/1":
            raise ParseError(f"{cert_path}: unknown schema {cdoc.get('schema')!r}")
        certs = cdoc["entries"]
    entries = [_entry_from_json(rec, certs) for rec in doc["entries"]]
    _check_invariants(entries)
    return entries


def get_entry(entries: list, entry_id: str) -> CatalogEntry:
    for e in entries:
        if e.id == entry_id:
            return e
    raise ParseError(f"no catalog entry with id {entry_id!r}")


# ============================================================
# verification
# ============================================================

def _verify_numeric(entry: CatalogEntry, digits: int, pi: BigApprox) -> VerifyReport:
    work = digits + 5
    prec = prec_for_digits(work)
    s = entry.spec
    total = eval_numeric(s.fam, s.a, s.b, s.z, work).rescale(prec)
    computed = total * pi.rescale(prec)
    target = rad_to_bigapprox(s.c, prec)
    agreed = computed.digits_agreed(target)
    ok = computed.agrees_to(target, digits)
    detail = f"sum times pi vs {s.c} at {digits} digits"
    if entry.discrepancy_note:
        detail += f" [discrepancy: {entry.discrepancy_note}]"
    return VerifyReport(
        id=entry.id,
        status=entry.status,
        computed=_signed_decimal(computed, digits),
        target=_signed_decimal(target, digits),
        digits_matched=agreed,
        passed=ok,
        detail=detail,
    )


def _signed_decimal(x: BigApprox, digits: int) -> str:
    if x.man < 0:
        return "-" + (-x).to_decimal(digits)
    return x.to_decimal(digits)


def _replay_transport(entry: CatalogEntry, wrapper: dict, entries) -> tuple:
    """Replay one stored transport certificate; returns (ok, detail)."""
    cert = Certificate.from_json(wrapper["certificate"])
    rep = replay(cert)
    if not rep.passed:
        return False, f"replay failed: {rep.detail}"
    src_id = wrapper.get("source_id", "")
    if entries is not None and src_id:
        src = get_entry(entries, src_id)
        if not (cert.source == src.spec or cert.source.same_identity(src.spec)):
            return False, f"stored source does not match catalog entry {src_id}"
    tgt = cert.target
    spec = entry.spec
    if tgt.fam != spec.fam or tgt.z != spec.z:
        return False, "certificate target family/argument mismatch"
    nt, _ = tgt.normalized()
    ne, _ = spec.normalized()
    if (nt.a, nt.b) != (ne.a, ne.b):
        return False, f"certificate target weights ({nt.a},{nt.b}) != ({ne.a},{ne.b})"
    if entry.status == "divergent-certificate":
        if tgt.same_identity(spec):
            return True, f"transport from {src_id} reproduces the printed constant"
        return True, (
            f"transport from {src_id} pins (a,b); constant {tgt.c} vs printed "
            f"{spec.c} (constant-branch factor)"
        )
    if not tgt.same_identity(spec):
        return False, f"certificate constant {tgt.c} != printed {spec.c}"
    return True, f"transport from {src_id} reproduces the entry exactly"


def _verify_certificates(entry: CatalogEntry, entries) -> VerifyReport:
    details = []
    ok = True
    transports = [c for c in entry.certificates if c.get("kind") == "transport"]
    gate_digits = 0
    for wrapper in transports:
        good, detail = _replay_transport(entry, wrapper, entries)
        ok = ok and good
        details.append(detail)
        gate_digits = max(gate_digits, wrapper["certificate"]["gate"]["agreed"] or 0)
    for wrapper in entry.certificates:
        if wrapper.get("kind") != "divergence":
            continue
        edge = parse_rational(wrapper["edge"])
        if edge != entry.edge or edge < 1:
            ok = False
            details.append("divergence certificate edge mismatch")
        else:
            details.append(f"divergence certified: |z|*R = {format_rational(edge)}")
    if entry.status == "divergent-certificate" and not transports:
        details.append("no transport route exists from the shipped rule set")
    return VerifyReport(
        id=entry.id,
        status=entry.status,
        computed=str(entry.spec),
        target=f"{entry.spec.c}/pi",
        digits_matched=gate_digits,
        passed=ok,
        detail="; ".join(details),
    )


def verify_entry(
    entry: CatalogEntry,
    digits: int,
    pi: BigApprox | None = None,
    entries: list | None = None,
) -> VerifyReport:
    """Check one catalog entry at the requested digit count.

    Convergent entries are summed and compared against c/pi; boundary and
    divergent entries replay their stored certificates instead.  Entries that
    carry both a numeric value and transport certificates must pass both.
    """
    if pi is None and entry.edge < 1:
        pi = pi_oracle(digits + 5)
    if entry.edge < 1:
        report = _verify_numeric(entry, digits, pi)
        if any(c.get("kind") == "transport" for c in entry.certificates):
            cert_rep = _verify_certificates(entry, entries)
            report = VerifyReport(
                id=report.id,
                status=report.status,
                computed=report.computed,
                target=report.target,
                digits_matched=report.digits_matched,
                passed=report.passed and cert_rep.passed,
                detail=report.detail + "; " + cert_rep.detail,
            )
        return report
    return _verify_certificates(entry, entries)


def _verify_one_by_id(args) -> dict:
    path, entry_id, digits = args
    entries = load_catalog(path)
    entry = get_entry(entries, entry_id)
    return verify_entry(entry, digits, entries=entries).to_json()


def verify_all(
    digits: int,
    path: str | None = None,
    ids: list | None = None,
    jobs: int = 1,
) -> list:
    """Verify the whole catalog (or a chosen id subset) in catalog order."""
    entries = load_catalog(path)
    if ids is not None:
        chosen = [get_entry(entries, i) for i in ids]
    else:
        chosen = entries
    if jobs > 1:
        work = [(path, e.id, digits) for e in chosen]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            raw = list(pool.map(_verify_one_by_id, work))
        return [_report_from_json(r) for r in raw]
    pi = pi_oracle(digits + 5)
    return [verify_entry(e, digits, pi=pi, entries=entries) for e in chosen]


def _report_from_json(rec: dict) -> VerifyReport:
    return VerifyReport(
        id=rec["id"],
        status=rec["status"],
        computed=rec["computed"],
        target=rec["target"],
        digits_matched=rec["digitsMatched"],
        passed=rec["pass"],
        detail=rec["detail"],
    )
