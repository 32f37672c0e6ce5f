"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 verification mismatch, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import mpmath

from . import bm, oracle, report, table1
from .bethe import BetheSolveError, SolverConfig, solve_bethe
from .irrep import IrrepLabel, make_sector, so3_content

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_IO = 0, 2, 3, 4


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"labels must be non-negative, got {v}")
    return v


def _common(p: argparse.ArgumentParser):
    p.add_argument("--oracle", action="store_true", help="cross-check against explicit irrep matrices")
    p.add_argument("--bethe", action="store_true", help="also solve the Bethe equations")
    p.add_argument("--tol", type=float, default=1e-10, help="tolerance for Bethe vs matrix eigenvalues")
    p.add_argument("--precision", type=int, default=50, help="working precision in decimal digits")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP, help="largest irrep dimension for the oracle")
    p.add_argument("--seed", type=int, default=0, help="seed for the multistart solver")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent sectors")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="su3bethe", description="Spectra of the SU(3) > SO(3) missing-label operators.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="x and y eigenvalues of one irrep, per L")
    p.add_argument("lam", type=_nonneg)
    p.add_argument("mu", type=_nonneg)
    p.add_argument("L", type=_nonneg, nargs="?")
    p.add_argument("--json", action="store_true", help="print the JSON document instead of text")
    _common(p)

    p = sub.add_parser("table1", help="recompute the published Bethe-ansatz examples")
    p.add_argument("--precision", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="algebra relations and matrix vs oracle spectra for a range of irreps")
    p.add_argument("lam_max", type=_nonneg)
    p.add_argument("mu_max", type=_nonneg)
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    p.add_argument("--omega-blockwise", action="store_true",
                   help="accept Omega when it is scalar on each L^2 eigenspace")

    p = sub.add_parser("export", help="write sector reports as JSON or CSV")
    p.add_argument("lam", type=_nonneg)
    p.add_argument("mu", type=_nonneg)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-o", "--output", required=True, help="output path, '-' for stdout")
    _common(p)

    p = sub.add_parser("bethe", help="raw Bethe root sets with residuals")
    p.add_argument("lam", type=_nonneg)
    p.add_argument("mu", type=_nonneg)
    p.add_argument("L", type=_nonneg)
    p.add_argument("--precision", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    return ap


def _reports(args, L=None) -> list[report.SectorReport]:
    irrep = IrrepLabel(args.lam, args.mu)
    Ls = [L] if L is not None else sorted(so3_content(irrep))
    work = partial(report.compute_sector, args.lam, args.mu, use_oracle=args.oracle, use_bethe=args.bethe,
                   tol=args.tol, precision=args.precision, cap=args.cap, seed=args.seed)
    if args.jobs > 1 and len(Ls) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            out = list(pool.map(work, Ls))
    else:
        out = [work(l) for l in Ls]
    return sorted((r for r in out if r is not None), key=lambda r: r.L)


def _fmt_values(vals) -> str:
    return ", ".join(e.exact if e.exact else e.approx for e in vals)


def _print_report(r: report.SectorReport):
    print(f"({r.lam},{r.mu}) L={r.L} M={r.M} d={r.multiplicity}")
    print(f"  y: {_fmt_values(r.y_eigenvalues)}")
    print(f"  x: {_fmt_values(r.x_eigenvalues)}")
    for s in r.bethe_solutions:
        e = ", ".join(q if q else v for q, v in zip(s.e_exact, s.e_vector)) if s.e_vector else "-"
        tag = " [singular pair]" if s.singular_pair else ""
        print(f"  bethe: e=({e}) y={s.y_exact or s.y} residual={s.residual}{tag}")
    c = r.cross_check
    print(f"  check: oracle {c.bm_vs_oracle}, bethe {c.bethe_vs_bm}, max deviation {c.max_deviation}")
    for n in r.notes:
        print(f"  note: {n}")


def cmd_spectrum(args) -> int:
    if args.L is not None and not make_sector(args.lam, args.mu, args.L).multiplicity:
        print(f"sector is empty: L={args.L} does not occur in ({args.lam},{args.mu})")
        return EXIT_OK
    reports = _reports(args, args.L)
    if args.json:
        sys.stdout.write(report.to_json(reports))
    else:
        for r in reports:
            _print_report(r)
    bad = [r for r in reports if r.failed]
    for r in bad:
        print(f"mismatch in ({r.lam},{r.mu}) L={r.L}: {r.cross_check}", file=sys.stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


def check_table1(precision: int = 50, seed: int = 0) -> list[tuple[table1.Row, bool, str]]:
    """Recompute every published row; (row, ok, detail) for each."""
    out = []
    tol = mpmath.mpf(10) ** -20
    for lam, mu, L in table1.sectors():
        rows = [r for r in table1.ROWS if (r.lam, r.mu, r.L) == (lam, mu, L)]
        with mpmath.workdps(precision):
            ys = bm.spectrum(bm.y_matrix(make_sector(lam, mu, L)))
            try:
                sols = solve_bethe(IrrepLabel(lam, mu), L, SolverConfig(precision=precision, seed=seed))
            except BetheSolveError as exc:
                sols = exc.partial
            for row in rows:
                problems = []
                if lam + mu - L != row.M:
                    problems.append(f"M={lam + mu - L}")
                if row.y not in ys.exact:
                    problems.append("y not in matrix spectrum")
                match = None
                for s in sols:
                    if len(s.elementary_symmetric) == len(row.e) and all(
                            abs(c - bethe_mpq(q)) < tol for c, q in zip(s.elementary_symmetric, row.e)):
                        match = s
                if match is None:
                    problems.append("no Bethe root set with these e-values")
                else:
                    if tuple(match.e_exact) != row.e:
                        problems.append(f"e reconstructed as {match.e_exact}")
                    if match.y_exact != row.y:
                        problems.append(f"Bethe y = {match.y_exact or match.y}")
                out.append((row, not problems, "; ".join(problems)))
    return out


def bethe_mpq(q):
    return mpmath.mpf(q.numerator) / q.denominator


def cmd_table1(args) -> int:
    results = check_table1(args.precision, args.seed)
    print(f"{'(lam,mu)':9} {'L':>2} {'M':>2}  {'e-vector':40} y")
    for row, ok, detail in results:
        e = "(" + ", ".join(report.rational(q) for q in row.e) + ")" if row.e else "-"
        mark = "ok" if ok else f"MISMATCH {detail}"
        print(f"({row.lam},{row.mu}){'':4} {row.L:>2} {row.M:>2}  {e:40} {report.rational(row.y):8} {mark}")
    n_ok = sum(ok for _, ok, _ in results)
    print(f"{n_ok}/{len(results)} rows match")
    return EXIT_OK if n_ok == len(results) else EXIT_MISMATCH


def cmd_verify(args) -> int:
    failed = 0
    for lam in range(args.lam_max + 1):
        for mu in range(args.mu_max + 1):
            irrep = IrrepLabel(lam, mu)
            try:
                rep = oracle.verify_algebra(irrep, args.cap)
                ops = oracle.labeling_operators(irrep, args.cap)
            except oracle.IrrepTooLargeError as exc:
                print(f"{irrep}: skipped ({exc})")
                continue
            spectra_ok = True
            for L in so3_content(irrep):
                s = make_sector(lam, mu, L)
                for which, mat in (("x", bm.x_matrix(s)), ("y", bm.y_matrix(s))):
                    if oracle.block_charpoly(ops, which, L) != bm.characteristic_polynomial(mat):
                        spectra_ok = False
            omega_ok = rep.omega_scalar or (args.omega_blockwise and rep.omega_blockwise_scalar)
            ok = rep.relations_hold and rep.omega_commutes and omega_ok and spectra_ok
            failed += not ok
            omega = ("scalar" if rep.omega_scalar
                     else "scalar per L only" if rep.omega_blockwise_scalar else "not scalar")
            print(f"{irrep}: {'pass' if ok else 'FAIL'}  relations {_ok(rep.relations_hold)}, "
                  f"[Omega,x|y] {_ok(rep.omega_commutes)}, Omega {omega}, spectra {_ok(spectra_ok)}")
    return EXIT_MISMATCH if failed else EXIT_OK


def _ok(flag: bool) -> str:
    return "ok" if flag else "FAIL"


def cmd_export(args) -> int:
    reports = _reports(args)
    text = report.to_json(reports) if args.format == "json" else report.to_csv(reports)
    try:
        if args.output == "-":
            sys.stdout.write(text)
        else:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_MISMATCH if any(r.failed for r in reports) else EXIT_OK


def cmd_bethe(args) -> int:
    if not make_sector(args.lam, args.mu, args.L).multiplicity:
        print(f"sector is empty: L={args.L} does not occur in ({args.lam},{args.mu})")
        return EXIT_OK
    with mpmath.workdps(args.precision):
        try:
            sols = solve_bethe(IrrepLabel(args.lam, args.mu), args.L,
                               SolverConfig(precision=args.precision, seed=args.seed))
            code = EXIT_OK
        except BetheSolveError as exc:
            print(str(exc), file=sys.stderr)
            sols, code = exc.partial, EXIT_MISMATCH
        for i, s in enumerate(sols):
            print(f"root set {i}: M={s.M} residual={report.decimal(s.max_residual, 5)}"
                  f"{' singular pair' if s.paired else ''}")
            for u in s.roots:
                print(f"  u = {report.decimal(u)}")
            print(f"  e = ({', '.join(report.decimal(c) for c in s.elementary_symmetric)})")
            print(f"  y = {report.rational(s.y_exact) or report.decimal(s.y)}")
    return code


COMMANDS = {"spectrum": cmd_spectrum, "table1": cmd_table1, "verify": cmd_verify,
            "export": cmd_export, "bethe": cmd_bethe}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
