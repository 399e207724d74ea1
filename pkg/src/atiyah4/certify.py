"""Certificate files and exact residual checks for the central identities.

A certificate stores the data half of an identity: the multi-indices and
positive integer coefficients of averaged triangular monomials whose
combination is claimed to reproduce a target polynomial.  The structural
half (which target, which fixed cocktail of named polynomials, which
scale) is owned by the matching ``check_*`` function, so a certificate
cannot redefine what it is supposed to prove.

The checks expand everything exactly and subtract; they pass only when
the residual is the zero polynomial.  To keep the hot path in integer
arithmetic, each check works with 24 times the identity (clearing the
1/24 of the symmetric average) and rescales the residual at the end.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import catalog, polyring
from .catalog import MultiIndex, check_multi_index, t_alpha_expand
from .polyring import Coeff, Mono, Poly, mono_key
from .symmetry import orbit_sum

WORST_MONOMIALS_SHOWN = 10

KNOWN_IDS = ("sec3-188/3", "eq42", "eq53")

#: certificate id -> conventional file name inside a certificate directory
CERT_FILES = {
    "sec3-188/3": "sec3.cert",
    "eq42": "eq42.cert",
    "eq53": "eq53.cert",
}

_HEADER_KEYS = ("id", "scale", "slot_mapping", "source", "note")


@dataclass(frozen=True)
class Certificate:
    """Parsed certificate: header fields plus the coefficient tables."""

    cert_id: str
    scale: int
    slot_mapping: str
    source: str
    terms: tuple[tuple[MultiIndex, int], ...]
    multiplier_terms: tuple[tuple[MultiIndex, int], ...] = ()
    notes: tuple[str, ...] = ()

    def term_count(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one identity check."""

    identity: str
    passed: bool
    residual: Poly
    elapsed_seconds: float
    worst_monomials: tuple[tuple[Mono, Coeff], ...] = field(default=())

    def summary(self) -> str:
        if self.passed:
            return f"{self.identity}: PASS (residual 0, {self.elapsed_seconds:.2f}s)"
        worst = ", ".join(
            f"{_format_mono(m)}: {c}" for m, c in self.worst_monomials[:3]
        )
        return (
            f"{self.identity}: FAIL (residual has {len(self.residual.terms)} "
            f"monomials; worst {worst}; {self.elapsed_seconds:.2f}s)"
        )


def _format_mono(mono: Mono) -> str:
    parts = [
        f"{name}^{e}" if e > 1 else name
        for name, e in zip(polyring.VAR_NAMES, mono)
        if e
    ]
    return " ".join(parts) if parts else "1"


# -- file format -------------------------------------------------------------

_ALPHA_RE = re.compile(r"^alpha\s*=\s*\[([0-9,\s]*)\]$")


def load_certificate(path: str | Path) -> Certificate:
    """Parse a certificate file; all errors cite the offending line."""
    path = Path(path)
    header: dict[str, str] = {}
    notes: list[str] = []
    sections: dict[str, list[tuple[MultiIndex, int]]] = {}
    current: list[tuple[MultiIndex, int]] | None = None
    pending_alpha: MultiIndex | None = None

    def fail(lineno: int, message: str):
        raise ValueError(f"{path.name}:{lineno}: {message}")

    lineno = 0
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            if pending_alpha is not None:
                fail(lineno, "alpha record without a coeff")
            name = line[1:-1]
            if name not in ("terms", "multiplier_terms"):
                fail(lineno, f"unknown section [{name}]")
            if name in sections:
                fail(lineno, f"duplicate section [{name}]")
            sections[name] = []
            current = sections[name]
            continue
        if "=" not in line:
            fail(lineno, f"expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if current is None:
            if key not in _HEADER_KEYS:
                fail(lineno, f"unknown header field {key!r}")
            if key == "note":
                notes.append(value)
            elif key in header:
                fail(lineno, f"duplicate header field {key!r}")
            else:
                header[key] = value
            continue
        if key == "alpha":
            if pending_alpha is not None:
                fail(lineno, "two alpha lines in a row")
            match = _ALPHA_RE.match(line)
            if match is None:
                fail(lineno, f"cannot parse alpha line {line!r}")
            entries = [p for p in match.group(1).replace(",", " ").split() if p]
            if len(entries) != 12:
                fail(lineno, f"alpha needs 12 entries, got {len(entries)}")
            pending_alpha = tuple(int(p) for p in entries)
        elif key == "coeff":
            if pending_alpha is None:
                fail(lineno, "coeff line without a preceding alpha")
            if not re.fullmatch(r"-?\d+", value):
                fail(lineno, f"coeff must be a decimal integer, got {value!r}")
            coeff = int(value)
            if coeff <= 0:
                fail(lineno, f"coefficients must be positive, got {coeff}")
            assert current is not None
            current.append((pending_alpha, coeff))
            pending_alpha = None
        else:
            fail(lineno, f"unknown record field {key!r}")

    if pending_alpha is not None:
        fail(lineno, "file ends inside an alpha record")
    for required in ("id", "scale", "slot_mapping", "source"):
        if required not in header:
            raise ValueError(f"{path.name}: missing header field {required!r}")
    if not re.fullmatch(r"\d+", header["scale"]) or int(header["scale"]) < 1:
        raise ValueError(f"{path.name}: scale must be a positive integer")
    if "terms" not in sections:
        raise ValueError(f"{path.name}: missing [terms] section")
    terms = sections["terms"]
    seen = set()
    for alpha, _ in terms + sections.get("multiplier_terms", []):
        check_multi_index(alpha)
        if alpha in seen:
            raise ValueError(f"{path.name}: duplicate multi-index {alpha}")
        seen.add(alpha)
    return Certificate(
        cert_id=header["id"],
        scale=int(header["scale"]),
        slot_mapping=header["slot_mapping"],
        source=header["source"],
        terms=tuple(terms),
        multiplier_terms=tuple(sections.get("multiplier_terms", [])),
        notes=tuple(notes),
    )


def save_certificate(cert: Certificate, path: str | Path) -> None:
    """Write a certificate in the same format ``load_certificate`` reads."""
    lines = [
        f"id = {cert.cert_id}",
        f"scale = {cert.scale}",
        f"slot_mapping = {cert.slot_mapping}",
        f"source = {cert.source}",
    ]
    lines.extend(f"note = {note}" for note in cert.notes)
    lines.append("")
    if cert.multiplier_terms:
        lines.append("[multiplier_terms]")
        for alpha, coeff in cert.multiplier_terms:
            lines.append(f"alpha = [{', '.join(map(str, alpha))}]")
            lines.append(f"coeff = {coeff}")
        lines.append("")
    lines.append("[terms]")
    for alpha, coeff in cert.terms:
        lines.append(f"alpha = [{', '.join(map(str, alpha))}]")
        lines.append(f"coeff = {coeff}")
    lines.append("")
    Path(path).write_text("\n".join(lines))


def bundled_certificate_dir() -> Path:
    """Directory of the certificate files shipped inside the package."""
    return Path(__file__).resolve().parent / "data" / "certificates"


def load_bundled(cert_id: str) -> Certificate:
    if cert_id not in CERT_FILES:
        raise ValueError(f"unknown certificate id {cert_id!r}")
    return load_certificate(bundled_certificate_dir() / CERT_FILES[cert_id])


# -- residual machinery ------------------------------------------------------


def _require_id(cert: Certificate, expected: str) -> None:
    if cert.cert_id != expected:
        raise ValueError(
            f"certificate id mismatch: expected {expected!r}, got {cert.cert_id!r}"
        )


def _require_orders(
    terms: tuple[tuple[MultiIndex, int], ...], order: int, label: str
) -> None:
    for alpha, _ in terms:
        if sum(alpha) != order:
            raise ValueError(
                f"{label} multi-index {alpha} has order {sum(alpha)}, expected {order}"
            )


def combination_orbit_sum(terms: tuple[tuple[MultiIndex, int], ...]) -> Poly:
    """Integer polynomial sum of coeff * (24 av[t^alpha]) over the table."""
    acc: dict[Mono, Coeff] = {}
    get = acc.get
    for alpha, lam in terms:
        expanded = orbit_sum(t_alpha_expand(alpha))
        for mono, c in expanded.terms.items():
            total = get(mono, 0) + lam * c
            if total:
                acc[mono] = total
            elif mono in acc:
                del acc[mono]
    return Poly._raw(acc)


def _report(identity: str, scaled_residual: Poly, started: float) -> ResidualReport:
    # scaled_residual carries 24 times the true residual; rescale on exit.
    residual = scaled_residual.scale(Fraction(1, 24))
    worst = sorted(
        residual.terms.items(),
        key=lambda item: (abs(item[1]), mono_key(item[0])),
        reverse=True,
    )[:WORST_MONOMIALS_SHOWN]
    return ResidualReport(
        identity=identity,
        passed=residual.is_zero(),
        residual=residual,
        elapsed_seconds=time.perf_counter() - started,
        worst_monomials=tuple(worst),
    )


def check_sec3(cert: Certificate) -> ResidualReport:
    """Degree-6 identity: 3 d4 = 188 p4 + 10 z4 + 4 n4 + 2 v4^2 + sum."""
    started = time.perf_counter()
    _require_id(cert, "sec3-188/3")
    if cert.scale != 3:
        raise ValueError(f"sec3 certificate must have scale 3, got {cert.scale}")
    _require_orders(cert.terms, 6, "sec3")
    fixed = (
        188 * catalog.p4()
        + 10 * catalog.z4()
        + 4 * catalog.n4()
        + 2 * catalog.v4() ** 2
    )
    scaled = (
        (3 * 24) * catalog.d4()
        - 24 * fixed
        - combination_orbit_sum(cert.terms)
    )
    return _report("sec3-188/3", scaled, started)


def check_eq42(cert: Certificate) -> ResidualReport:
    """Degree-12 identity: 64 p4 m4 equals the averaged combination."""
    started = time.perf_counter()
    _require_id(cert, "eq42")
    if cert.scale != 64:
        raise ValueError(f"eq42 certificate must have scale 64, got {cert.scale}")
    _require_orders(cert.terms, 12, "eq42")
    scaled = (64 * 24) * (catalog.p4() * catalog.m4()) - combination_orbit_sum(
        cert.terms
    )
    return _report("eq42", scaled, started)


def check_eq53(cert: Certificate) -> ResidualReport:
    """Degree-12 identity: 128 M4 = (4 z4 + v4^2) sum_mu + sum_nu."""
    started = time.perf_counter()
    _require_id(cert, "eq53")
    if cert.scale != 128:
        raise ValueError(f"eq53 certificate must have scale 128, got {cert.scale}")
    if not cert.multiplier_terms:
        raise ValueError("eq53 certificate needs a [multiplier_terms] section")
    _require_orders(cert.multiplier_terms, 6, "eq53 multiplier")
    _require_orders(cert.terms, 12, "eq53")
    multiplier = 4 * catalog.z4() + catalog.v4() ** 2
    scaled = (
        (128 * 24) * catalog.big_m4()
        - multiplier * combination_orbit_sum(cert.multiplier_terms)
        - combination_orbit_sum(cert.terms)
    )
    return _report("eq53", scaled, started)


def check_eq52() -> ResidualReport:
    """Bookkeeping identity d4^2 = P4 + (4 z4 + v4^2)(d4 + 32 p4 + m4) + M4.

    Takes no certificate: every ingredient is a named polynomial, so the
    identity is forced by the definitions of m4 and M4 and the check
    guards the constructions rather than any table.
    """
    started = time.perf_counter()
    d4 = catalog.d4()
    residual = (
        d4 * d4
        - catalog.big_p4()
        - (4 * catalog.z4() + catalog.v4() ** 2)
        * (d4 + 32 * catalog.p4() + catalog.m4())
        - catalog.big_m4()
    )
    return _report("eq52", residual.scale(24), started)


CHECKS_WITH_CERTIFICATES = {
    "sec3": ("sec3-188/3", check_sec3),
    "eq42": ("eq42", check_eq42),
    "eq53": ("eq53", check_eq53),
}


def run_certificate_check(name: str, cert_dir: str | Path | None = None) -> ResidualReport:
    """Load the certificate for ``name`` (sec3 | eq42 | eq53) and check it."""
    if name not in CHECKS_WITH_CERTIFICATES:
        raise ValueError(f"unknown certificate check {name!r}")
    cert_id, checker = CHECKS_WITH_CERTIFICATES[name]
    if cert_dir is None:
        cert = load_bundled(cert_id)
    else:
        cert = load_certificate(Path(cert_dir) / CERT_FILES[cert_id])
    return checker(cert)
