"""Per-sector reports combining the three routes, plus JSON/CSV serialization."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath

from . import bm, oracle
from .bethe import BetheSolveError, SolverConfig, solve_bethe
from .irrep import IrrepLabel, make_sector, so3_content

SCHEMA_VERSION = 1
DIGITS = 30
CSV_COLUMNS = ("lambda", "mu", "L", "M", "alpha_count", "route", "value_exact", "value_decimal")


def decimal(v, digits: int = DIGITS) -> str:
    """Fixed-precision decimal string; complex values keep their imaginary part
    only when it is significant."""
    with mpmath.workdps(digits + 10):
        v = mpmath.mpmathify(v)
        if isinstance(v, mpmath.mpc):
            if abs(v.imag) > mpmath.mpf(10) ** (-(digits - 5)) * max(1, abs(v)):
                return mpmath.nstr(v, digits)
            v = v.real
        return mpmath.nstr(v, digits)


def rational(q: Optional[Fraction]) -> Optional[str]:
    if q is None:
        return None
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def parse_rational(s: Optional[str]) -> Optional[Fraction]:
    return None if s in (None, "") else Fraction(s)


@dataclass
class Eigenvalue:
    exact: Optional[str]
    approx: str


@dataclass
class BetheSolution:
    e_vector: list
    e_exact: list
    residual: str
    y: str
    y_exact: Optional[str] = None
    singular_pair: bool = False


@dataclass
class CrossCheck:
    bm_vs_oracle: str = "skipped"
    bethe_vs_bm: str = "skipped"
    max_deviation: str = "0"


@dataclass
class SectorReport:
    lam: int
    mu: int
    L: int
    M: int
    multiplicity: int
    y_eigenvalues: list = field(default_factory=list)
    x_eigenvalues: list = field(default_factory=list)
    bethe_solutions: list = field(default_factory=list)
    cross_check: CrossCheck = field(default_factory=CrossCheck)
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.y_eigenvalues) != self.multiplicity:
            raise ValueError("y_eigenvalues must have one entry per copy of the spin-L irrep")

    @property
    def failed(self) -> bool:
        return "fail" in (self.cross_check.bm_vs_oracle, self.cross_check.bethe_vs_bm)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SectorReport":
        d = dict(d)
        return cls(
            lam=d["lambda"], mu=d["mu"], L=d["L"], M=d["M"], multiplicity=d["multiplicity"],
            y_eigenvalues=[Eigenvalue(**e) for e in d["y_eigenvalues"]],
            x_eigenvalues=[Eigenvalue(**e) for e in d["x_eigenvalues"]],
            bethe_solutions=[BetheSolution(**b) for b in d["bethe_solutions"]],
            cross_check=CrossCheck(**d["cross_check"]),
            notes=list(d.get("notes", [])),
        )


def _eigenvalues(spec: bm.SpectrumResult) -> list[Eigenvalue]:
    return [Eigenvalue(rational(q), decimal(v)) for v, q in zip(spec.roots, spec.exact)]


def compute_sector(lam: int, mu: int, L: int, *, use_oracle: bool = False, use_bethe: bool = False,
                   tol: float = 1e-10, precision: int = 50, cap: int = oracle.DEFAULT_CAP,
                   seed: int = 0) -> Optional[SectorReport]:
    """All requested routes for one sector; None when the sector is empty."""
    sector = make_sector(lam, mu, L)
    if not sector.multiplicity:
        return None
    digits = max(DIGITS, precision - 10)
    xs = bm.spectrum(bm.x_matrix(sector), digits)
    ys = bm.spectrum(bm.y_matrix(sector), digits)
    rep = SectorReport(lam, mu, L, sector.M, sector.multiplicity, _eigenvalues(ys), _eigenvalues(xs))
    deviation = mpmath.mpf(0)
    irrep = IrrepLabel(lam, mu)

    if use_oracle:
        try:
            ops = oracle.labeling_operators(irrep, cap)
            same = (oracle.block_charpoly(ops, "x", L) == xs.char_poly
                    and oracle.block_charpoly(ops, "y", L) == ys.char_poly)
            rep.cross_check.bm_vs_oracle = "pass" if same else "fail"
        except oracle.IrrepTooLargeError as exc:
            rep.notes.append(f"oracle skipped: {exc}")

    if use_bethe:
        with mpmath.workdps(precision):
            try:
                sols = solve_bethe(irrep, L, SolverConfig(precision=precision, seed=seed))
            except BetheSolveError as exc:
                sols = exc.partial
                rep.notes.append(str(exc))
            for s in sols:
                rep.bethe_solutions.append(BetheSolution(
                    e_vector=[decimal(c) for c in s.elementary_symmetric],
                    e_exact=[rational(q) for q in s.e_exact],
                    residual=decimal(s.max_residual, 5),
                    y=decimal(s.y),
                    y_exact=rational(s.y_exact),
                    singular_pair=s.paired,
                ))
            ok, deviation = match_spectra([s.y for s in sols], ys.roots, tol)
            if len(sols) > sector.multiplicity:
                rep.notes.append(f"{len(sols)} physical root sets exceed multiplicity {sector.multiplicity}")
            rep.cross_check.bethe_vs_bm = "pass" if ok else "fail"
    rep.cross_check.max_deviation = decimal(deviation, 5)
    return rep


def match_spectra(found, reference, tol) -> tuple[bool, mpmath.mpf]:
    """One-to-one match of two multisets of reals after sorting; (ok, max deviation)."""
    a = sorted(mpmath.re(v) for v in found)
    b = sorted(mpmath.re(v) for v in reference)
    if len(a) != len(b):
        return False, mpmath.inf if not a or not b else max(abs(u - v) for u, v in zip(a, b))
    if not a:
        return True, mpmath.mpf(0)
    dev = max(abs(u - v) for u, v in zip(a, b))
    return dev <= tol, dev


def irrep_reports(lam: int, mu: int, L: Optional[int] = None, **kw) -> list[SectorReport]:
    """Reports for one L, or for every L occurring in (lam, mu), sorted by L."""
    Ls = [L] if L is not None else sorted(so3_content(IrrepLabel(lam, mu)))
    out = []
    for l in Ls:
        r = compute_sector(lam, mu, l, **kw)
        if r is not None:
            out.append(r)
    return out


# -- serialization ----------------------------------------------------------

def to_json(reports: list[SectorReport]) -> str:
    reports = sorted(reports, key=lambda r: (r.lam, r.mu, r.L))
    doc = {"schema_version": SCHEMA_VERSION, "sectors": [r.to_dict() for r in reports]}
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> list[SectorReport]:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    return [SectorReport.from_dict(d) for d in doc["sectors"]]


def csv_rows(reports: list[SectorReport]) -> list[dict]:
    rows = []
    for r in sorted(reports, key=lambda r: (r.lam, r.mu, r.L)):
        base = {"lambda": r.lam, "mu": r.mu, "L": r.L, "M": r.M, "alpha_count": r.multiplicity}
        for route, vals in (("bm_x", r.x_eigenvalues), ("bm_y", r.y_eigenvalues)):
            for e in vals:
                rows.append({**base, "route": route, "value_exact": e.exact or "", "value_decimal": e.approx})
        for s in sorted(r.bethe_solutions, key=lambda s: mpmath.mpf(s.y)):
            rows.append({**base, "route": "bethe_y", "value_exact": s.y_exact or "", "value_decimal": s.y})
    return rows


def to_csv(reports: list[SectorReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(csv_rows(reports))
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    rows = list(csv.DictReader(io.StringIO(text)))
    for row in rows:
        for k in ("lambda", "mu", "L", "M", "alpha_count"):
            row[k] = int(row[k])
    return rows
