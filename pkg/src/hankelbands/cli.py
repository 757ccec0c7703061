"""Command-line entry point.

Subcommands: bands | secdet | mathieu-sweep | mathieu-flat | verify |
dump-matrix.  All CSV output uses fixed 17-significant-digit scientific
notation and '\n' line endings, so identical configurations produce
byte-identical files.  Exit codes: 0 success, 1 configuration error,
2 numerical tolerance breach, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bands as bands_mod
from . import mathieu as mathieu_mod
from . import secdet as secdet_mod
from .errors import ConfigError, DomainError, ToleranceError
from .fiber import build_fiber, choose_truncation, gronwall_derivative_check
from .linalg import hermitian_eigenvalues
from .special import ref_elliptic
from .symbol import (
    PeriodicSymbol,
    carleman_symbol,
    evaluate_symbol,
    from_s_coefficients,
    laplace_kernel_residual,
    load_symbol,
    to_s_coefficients,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_TOLERANCE = 2
EXIT_DOMAIN = 3


def _fmt(x: float) -> str:
    """Fixed 17-significant-digit scientific notation (byte-stable)."""
    return f"{float(x):.16e}"


@dataclass
class RunConfig:
    symbol: PeriodicSymbol
    name: str
    grid_size: int
    N: int
    m_top: int
    out_dir: Path
    tol_flat: float
    mathieu_A: float | None = None
    omega: float | None = None


def _resolve_symbol(args) -> tuple[PeriodicSymbol, str, float | None]:
    """Exactly one symbol source: --symbol file or --builtin name[:A]."""
    if (args.symbol is None) == (args.builtin is None):
        raise ConfigError("exactly one of --symbol and --builtin is required")
    omega = args.omega
    period = args.period
    if omega is not None and period is not None:
        raise ConfigError("--omega and --period are mutually exclusive")
    if omega is not None and omega <= 0:
        raise ConfigError(f"--omega must be positive, got {omega}")
    if period is not None and period <= 0:
        raise ConfigError(f"--period must be positive, got {period}")
    if omega is None and period is not None:
        omega = 2.0 * math.pi / period
    A = None
    if args.symbol is not None:
        sym = load_symbol(args.symbol)
        if omega is not None:
            raise ConfigError("--omega/--period cannot override a symbol file period")
        name = Path(args.symbol).stem
    else:
        spec = args.builtin
        if omega is None:
            omega = 1.0
        if spec == "carleman":
            sym = carleman_symbol(2.0 * math.pi / omega)
            name = "carleman"
        elif spec.startswith("mathieu"):
            A = 0.0
            if ":" in spec:
                try:
                    A = float(spec.split(":", 1)[1])
                except ValueError:
                    raise ConfigError(f"bad builtin spec {spec!r}: A must be a number")
            sym = mathieu_mod.mathieu_symbol(A, omega)
            name = f"mathieu:{A:g}"
        else:
            raise ConfigError(f"unknown builtin {spec!r} (expected carleman or mathieu[:A])")
    return sym, name, A


def _resolve_truncation(args, sym: PeriodicSymbol) -> int:
    if args.n is not None and args.tol is not None:
        raise ConfigError("--n and --tol are mutually exclusive")
    if args.n is not None:
        if args.n < 1:
            raise ConfigError(f"--n must be >= 1, got {args.n}")
        return args.n
    if args.tol is not None:
        return choose_truncation(sym, 0.0, args.tol)
    return 40


def _config(args) -> RunConfig:
    sym, name, A = _resolve_symbol(args)
    N = _resolve_truncation(args, sym)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if not out_dir.is_dir():
        raise ConfigError(f"output directory {out_dir} is not writable")
    if args.grid < 34:
        raise ConfigError(f"--grid must be >= 34 (32 interior points), got {args.grid}")
    return RunConfig(
        symbol=sym,
        name=name,
        grid_size=args.grid,
        N=N,
        m_top=args.m_top,
        out_dir=out_dir,
        tol_flat=args.tol_flat,
        mathieu_A=A,
        omega=sym.dual_period,
    )


def _write(path: Path, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _k_grid(cfg: RunConfig) -> np.ndarray:
    return np.linspace(0.0, cfg.symbol.dual_period / 2.0, cfg.grid_size)


# --- subcommands -------------------------------------------------------------

def cmd_bands(cfg: RunConfig) -> int:
    branches = bands_mod.sweep(cfg.symbol, cfg.N, _k_grid(cfg), cfg.m_top,
                               tol_flat=cfg.tol_flat)
    lines = ["k,branch_id,sign,value"]
    for b in branches:
        for k, v in zip(b.k, b.values):
            lines.append(f"{_fmt(k)},{b.branch_id},{b.sign},{_fmt(v)}")
    _write(cfg.out_dir / "bands.csv", lines)
    meta = {}
    for b in branches:
        band = bands_mod.band_interval(b)
        meta[str(b.branch_id)] = {
            "sign": b.sign,
            "flat": bool(b.flat),
            "monotonicity": b.monotonicity,
            "lo": band.lo,
            "hi": band.hi,
        }
    with open(cfg.out_dir / "bands_meta.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return EXIT_OK


def cmd_secdet(cfg: RunConfig, s_list: list[complex], lam_list: list[complex]) -> int:
    lines = ["s_re,s_im,lambda_re,lambda_im,det_re,det_im"]
    for s in s_list:
        for lam in lam_list:
            d = secdet_mod.secular_det(cfg.symbol, s, lam, cfg.N)
            lines.append(",".join(_fmt(x) for x in
                                  (s.real, s.imag, lam.real, lam.imag, d.real, d.imag)))
    _write(cfg.out_dir / "secdet.csv", lines)
    report = {}
    ok = True
    for lam in lam_list:
        if lam.imag == 0.0 and lam.real != 0.0:
            rep = secdet_mod.check_identities(cfg.symbol, lam.real, s_list[0], cfg.N)
            report[f"lambda={lam.real:g}"] = {
                "ok": rep.ok,
                "deviations": rep.info,
                "violations": rep.violations,
            }
            ok = ok and rep.ok
    with open(cfg.out_dir / "secdet_identities.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report, fh, indent=2, sort_keys=True, default=float)
        fh.write("\n")
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_mathieu_sweep(cfg: RunConfig, a_min: float, a_max: float, a_count: int) -> int:
    if cfg.mathieu_A is None:
        raise ConfigError("mathieu-sweep requires --builtin mathieu[:A]")
    p = mathieu_mod.MathieuParams(
        A=cfg.mathieu_A, omega=cfg.symbol.dual_period, N=cfg.N,
        k_grid=_k_grid(cfg), A_grid=np.linspace(a_min, a_max, a_count),
    )
    table = mathieu_mod.sweep_A(p, cfg.m_top)
    lines = ["A,branch_id,sign,lo,hi,flat"]
    for A, bands in table:
        for band in bands:
            lines.append(
                f"{_fmt(A)},{band.branch_id},{band.sign},"
                f"{_fmt(band.lo)},{_fmt(band.hi)},{int(band.flat)}"
            )
    _write(cfg.out_dir / "mathieu_sweep.csv", lines)
    return EXIT_OK


def cmd_mathieu_flat(cfg: RunConfig, bracket: tuple[float, float]) -> int:
    if cfg.mathieu_A is None:
        raise ConfigError("mathieu-flat requires --builtin mathieu[:A]")
    p = mathieu_mod.MathieuParams(
        A=cfg.mathieu_A, omega=cfg.symbol.dual_period, N=cfg.N, k_grid=_k_grid(cfg),
    )
    result = mathieu_mod.find_flat_A(p, bracket)
    payload = {
        "A_star": result.A_star,
        "bracket": list(result.bracket),
        "iterations": result.iterations,
        "pair_values": list(result.pair_values),
        "branch_spreads": list(result.branch_spreads),
        "flat": result.flat,
        "mutual_negative_dev": result.mutual_negative_dev,
    }
    with open(cfg.out_dir / "astar.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return EXIT_OK if result.flat else EXIT_TOLERANCE


def cmd_dump_matrix(cfg: RunConfig, s: complex) -> int:
    fm = build_fiber(cfg.symbol, s, cfg.N)
    idx = fm.index_range()
    lines = ["n,m,re,im"]
    for i, n in enumerate(idx):
        for j, m in enumerate(idx):
            e = fm.entries[i, j]
            lines.append(f"{n},{m},{_fmt(e.real)},{_fmt(e.imag)}")
    _write(cfg.out_dir / "matrix.csv", lines)
    return EXIT_OK


def _verify_checks(cfg: RunConfig):
    """The one-shot verification suite: (name, ok, measured, tolerance)."""
    sym = cfg.symbol
    omega = sym.dual_period
    ks = _k_grid(cfg)
    checks = []

    def add(name, measured, tol, ok=None):
        checks.append({
            "check": name,
            "measured": float(measured),
            "tolerance": float(tol),
            "pass": bool(measured < tol) if ok is None else bool(ok),
        })

    # reference elliptic function identities
    s0 = 0.21 + 0.13j
    p = lambda s: ref_elliptic(s, omega, 1e-12)
    add("elliptic-evenness", abs(p(-s0) - p(s0)), 1e-10)
    add("elliptic-omega-period", abs(p(s0 + omega) - p(s0)), 1e-10)
    add("elliptic-2i-period", abs(p(s0 + 2j) - p(s0)), 1e-10)
    add("elliptic-half-period-flip", abs(p(s0 + 1j) + p(s0)), 1e-10)
    add("elliptic-zero", abs(p((omega + 1j) / 2)), 1e-10)
    add("elliptic-residue", abs(1e-5 * p(0.5j + 1e-5) + 1j), 1e-4)

    # symbol-level checks
    sc = to_s_coefficients(sym)
    rt = from_s_coefficients(sym.period, sc.values)
    dev = max(
        (abs(rt.coefficients[l] - v) for l, v in sym.coefficients.items()), default=0.0
    )
    add("s-coefficient-roundtrip", dev, 1e-14)
    rng = np.random.default_rng(20240611)
    xs = rng.uniform(-3 * sym.period, 3 * sym.period, 100)
    per = max(abs(evaluate_symbol(sym, x + sym.period) - evaluate_symbol(sym, x)) for x in xs)
    add("symbol-periodicity", per, 1e-13)
    add("laplace-kernel-t0.1", laplace_kernel_residual(sym, 0.1), 1e-8)
    add("laplace-kernel-t1", laplace_kernel_residual(sym, 1.0), 1e-8)
    add("laplace-kernel-t10", laplace_kernel_residual(sym, 10.0), 1e-8)

    # fiber-level checks
    from .fiber import build_fiber_factorized
    k_probe = 0.2 * omega
    fb = build_fiber(sym, k_probe, cfg.N)
    ff = build_fiber_factorized(sym, k_probe, cfg.N)
    scale = float(np.max(np.abs(fb.entries)))
    add("fiber-route-cross-check", float(np.max(np.abs(fb.entries - ff.entries))) / scale, 1e-12)
    up = build_fiber(sym, k_probe + 0.2j, cfg.N)
    dn = build_fiber(sym, k_probe - 0.2j, cfg.N)
    add("fiber-conjugation", float(np.max(np.abs(up.entries.conj().T - dn.entries))) / scale, 1e-12)
    add("gronwall-derivative", gronwall_derivative_check(omega, 0.3, range(-20, 21), 1e-5),
        math.pi / 2 + 1e-4)
    e_lo = hermitian_eigenvalues(build_fiber_factorized(sym, k_probe, cfg.N))
    e_hi = hermitian_eigenvalues(build_fiber_factorized(sym, k_probe, cfg.N + 10))
    lo10 = np.sort(np.abs(e_lo))[::-1][:10]
    hi10 = np.sort(np.abs(e_hi))[::-1][:10]
    add("truncation-stability", float(np.max(np.abs(lo10 - hi10))), 1e-9)

    # band-structure checks
    branches = bands_mod.sweep(sym, cfg.N, ks, cfg.m_top, tol_flat=cfg.tol_flat)
    flats = [b for b in branches if b.flat]
    nonflats = [b for b in branches if not b.flat]
    env_ok = all(bands_mod.gronwall_envelope_check(b) for b in branches)
    add("gronwall-envelope", 0.0 if env_ok else 1.0, 0.5, ok=env_ok)
    if nonflats:
        rep = bands_mod.check_alternation(branches)
        add("alternation", len(rep.violations), 1, ok=rep.ok)
    else:
        add("all-flat", 0.0, 0.5, ok=True)
    bandlist = [bands_mod.band_interval(b) for b in branches]
    rep = bands_mod.check_disjointness(bandlist)
    add("disjointness", len(rep.violations), 1, ok=rep.ok)
    add("period-doubling", bands_mod.period_doubling_check(sym, 0.2 * omega, cfg.N, 10), 1e-9)

    # secular determinant checks
    lam = 0.4 * float(np.max(np.abs(e_lo)))
    rep = secdet_mod.check_identities(sym, lam, 0.17 * omega + 0.1j, cfg.N)
    add("determinant-identities", max(rep.info.values()), 1e-8, ok=rep.ok)
    fit = secdet_mod.fit_affine_in_P(sym, lam, cfg.N)
    add("affine-in-P", fit.fit_residual, 1e-8)
    add("zero-consistency", secdet_mod.zero_consistency(sym, branches[0], cfg.N), 1e-7)

    # Mathieu-specific checks
    if cfg.mathieu_A is not None:
        A = cfg.mathieu_A
        par = mathieu_mod.MathieuParams(A=A, omega=omega, N=cfg.N, k_grid=ks)
        add("A-reflection", mathieu_mod.check_A_reflection(par, 0.2 * omega), 1e-10)
        n_pos, n_neg = mathieu_mod.check_sign_counts(par)
        if abs(A) < 1:
            add("sign-counts", 0.0, 0.5, ok=(n_pos > 0 and n_neg > 0))
        else:
            evs = hermitian_eigenvalues(mathieu_mod.build_mathieu_fiber(par, omega / 4))
            worst = -float(np.min(evs)) if A >= 1 else float(np.max(evs))
            add("semi-definite", worst, 1e-9)
        if flats and not nonflats:
            pos_flat = sorted((float(np.mean(b.values)) for b in flats if b.sign == "+"),
                              reverse=True)
            neg_flat = sorted((-float(np.mean(b.values)) for b in flats if b.sign == "-"),
                              reverse=True)
            pairs = min(len(pos_flat), len(neg_flat))
            dev = max(abs(a - b) for a, b in zip(pos_flat[:pairs], neg_flat[:pairs]))
            add("flat-pair-symmetry", dev, 1e-9)
        if nonflats and not flats:
            # off the flat-coincidence set; at a coincidence the colliding
            # pair shares one modulus, so the modulus-gap check is moot
            rep = mathieu_mod.check_gap_openness(par, min(cfg.m_top, 6))
            add("gap-openness", len(rep.violations), 1, ok=rep.ok)
    return checks


def cmd_verify(cfg: RunConfig) -> int:
    checks = _verify_checks(cfg)
    for c in checks:
        status = "pass" if c["pass"] else "FAIL"
        print(f"{c['check']}: {status} (measured {c['measured']:.3e}, tol {c['tolerance']:.3e})")
    report = {"symbol": cfg.name, "N": cfg.N, "checks": checks,
              "ok": all(c["pass"] for c in checks)}
    with open(cfg.out_dir / "verify_report.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return EXIT_OK if report["ok"] else EXIT_TOLERANCE


# --- argument parsing --------------------------------------------------------

def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hankelbands",
        description="Band structure of periodic Hankel operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--symbol", help="path to a symbol JSON file")
    common.add_argument("--builtin", help="builtin symbol: carleman or mathieu[:A]")
    common.add_argument("--omega", type=float, help="dual period (builtins only)")
    common.add_argument("--period", type=float, help="period T (alternative to --omega)")
    common.add_argument("--grid", type=int, default=101, help="k-grid size incl. endpoints")
    common.add_argument("--n", type=int, help="truncation half-width N")
    common.add_argument("--tol", type=float, help="auto-select N from this tail tolerance")
    common.add_argument("--m-top", type=int, default=6, help="tracked branches per sign")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--tol-flat", type=float, default=bands_mod.DEFAULT_TOL_FLAT,
                        help="relative flatness threshold")

    sub.add_parser("bands", parents=[common], help="sweep band branches, write bands.csv")
    p = sub.add_parser("secdet", parents=[common], help="evaluate the secular determinant")
    p.add_argument("--s", type=_parse_complex, action="append", required=True,
                   metavar="RE[,IM]", help="spectral parameter (repeatable)")
    p.add_argument("--lam", type=_parse_complex, action="append", required=True,
                   metavar="RE[,IM]", help="determinant parameter lambda (repeatable)")
    p = sub.add_parser("mathieu-sweep", parents=[common], help="band intervals over an A-grid")
    p.add_argument("--a-min", type=float, default=0.0)
    p.add_argument("--a-max", type=float, default=1.2)
    p.add_argument("--a-count", type=int, default=25)
    p = sub.add_parser("mathieu-flat", parents=[common], help="bisection for the flat point A*")
    p.add_argument("--bracket", type=float, nargs=2, default=(0.3, 0.7),
                   metavar=("A_LO", "A_HI"))
    sub.add_parser("verify", parents=[common], help="run the full invariant suite")
    p = sub.add_parser("dump-matrix", parents=[common], help="dump one fiber matrix as CSV")
    p.add_argument("--s", type=_parse_complex, default=0.0 + 0.0j, metavar="RE[,IM]",
                   help="spectral parameter (default 0)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "bands":
            code = cmd_bands(cfg)
        elif args.command == "secdet":
            code = cmd_secdet(cfg, args.s, args.lam)
        elif args.command == "mathieu-sweep":
            code = cmd_mathieu_sweep(cfg, args.a_min, args.a_max, args.a_count)
        elif args.command == "mathieu-flat":
            code = cmd_mathieu_flat(cfg, tuple(args.bracket))
        elif args.command == "verify":
            code = cmd_verify(cfg)
        elif args.command == "dump-matrix":
            code = cmd_dump_matrix(cfg, args.s)
        else:  # pragma: no cover
            raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as e:
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ToleranceError as e:
        print(f"numerical tolerance breach: {e}", file=sys.stderr)
        return EXIT_TOLERANCE
    return code


if __name__ == "__main__":
    sys.exit(main())
