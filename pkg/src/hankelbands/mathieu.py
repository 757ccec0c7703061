"""The Mathieu-Hankel family: s(xi) = A + cos(omega*xi).

The modified coefficients are s_0 = A, s_{+/-1} = 1/2, so the fiber matrix
splits as H(k; A) = H(k; 0) + A * W(k) with W(k) the diagonal of weights
pi/cosh(pi*(omega*n + k)).  The family interpolates between an all-flat
spectrum at A = 0 and a positive semi-definite operator for A >= 1; in
between, the branch pair (E1+, E0-) collides and goes flat at a single
parameter value A*, located here by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._parallel import parallel_map
from .bands import (
    BandBranch,
    CheckReport,
    SpectralBand,
    band_interval,
    classify_flat,
    eigenvalue_table,
    order_by_modulus,
    sweep,
)
from .errors import TrackingError
from .fiber import build_fiber_factorized, FiberMatrix
from .linalg import hermitian_eigenvalues
from .special import sech
from .symbol import PeriodicSymbol, from_s_coefficients


def mathieu_symbol(A: float, omega: float = 1.0) -> PeriodicSymbol:
    """Symbol whose modified coefficients are s_0 = A, s_{+/-1} = 1/2."""
    return from_s_coefficients(2.0 * math.pi / omega, {0: float(A), 1: 0.5})


@dataclass
class MathieuParams:
    """Parameters for the Mathieu-Hankel study."""

    A: float
    omega: float = 1.0
    N: int = 60
    k_grid: np.ndarray | None = None
    A_grid: np.ndarray | None = None

    def __post_init__(self):
        if self.N < 3:
            raise ValueError(f"N must be >= 3, got {self.N}")
        if self.k_grid is None:
            self.k_grid = np.linspace(0.0, self.omega / 2.0, 65)
        self.k_grid = np.asarray(self.k_grid, dtype=float)
        if len(self.k_grid) == 0 or np.any(np.diff(self.k_grid) <= 0):
            raise ValueError("k_grid must be nonempty and sorted")
        if self.A_grid is not None:
            self.A_grid = np.asarray(self.A_grid, dtype=float)
            if len(self.A_grid) == 0 or np.any(np.diff(self.A_grid) <= 0):
                raise ValueError("A_grid must be nonempty and sorted")

    def symbol(self, A: float | None = None) -> PeriodicSymbol:
        return mathieu_symbol(self.A if A is None else A, self.omega)


def build_mathieu_fiber(p: MathieuParams, k: float, A: float | None = None) -> FiberMatrix:
    return build_fiber_factorized(p.symbol(A), k, p.N)


def gamma_weight_diagonal(p: MathieuParams, k: float) -> np.ndarray:
    """Diagonal of W(k): w_n = pi/cosh(pi*(omega*n + k)) for n in [-N, N]."""
    n = np.arange(-p.N, p.N + 1)
    return np.pi * np.real(sech(np.pi * (p.omega * n + k)))


def sweep_A(p: MathieuParams, m_top: int) -> list[tuple[float, list[SpectralBand]]]:
    """Band intervals of the top branches for each A in the sweep grid."""
    if p.A_grid is None:
        raise ValueError("sweep_A requires A_grid")

    def one(A: float):
        try:
            branches = sweep(p.symbol(A), p.N, p.k_grid, m_top)
        except TrackingError as e:
            raise TrackingError(f"A={A:g}: {e}") from e
        return float(A), [band_interval(b) for b in branches]

    return parallel_map(one, p.A_grid)


def _pair_values(p: MathieuParams, A: float, k: float) -> tuple[float, float]:
    """(E1+, E0-) at one k: second largest positive and most negative."""
    evs = hermitian_eigenvalues(build_mathieu_fiber(p, k, A))
    pos = np.sort(evs[evs > 0])[::-1]
    neg = np.sort(evs[evs < 0])
    if len(pos) < 2 or len(neg) < 1:
        raise TrackingError(f"A={A:g}: fewer tracked eigenvalues than expected")
    return float(pos[1]), float(neg[0])


@dataclass
class FlatPointResult:
    """Outcome of the flat-coincidence bisection."""

    A_star: float
    bracket: tuple[float, float]
    iterations: int
    pair_values: tuple[float, float]    # (E1+, E0-) at A_star, at khat
    branch_spreads: tuple[float, float]
    flat: bool
    mutual_negative_dev: float


def find_flat_A(p: MathieuParams, bracket: tuple[float, float],
                tol_A: float = 1e-6, tol_flat: float = 1e-6) -> FlatPointResult:
    """Bisect for the parameter A* where E1+ and E0- collide and go flat.

    The objective f(A) = E1+(khat; A) + E0-(khat; A) at khat = omega/4 is
    strictly increasing in A and changes sign exactly at the coincidence.
    At the returned A*, both branches classify flat and their values are
    mutual negatives.
    """
    if not tol_A >= 1e-6:
        raise ValueError(f"tol_A must be >= 1e-6, got {tol_A!r}")
    khat = p.omega / 4.0
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValueError(f"invalid bracket {bracket!r}")
    f_lo = sum(_pair_values(p, lo, khat))
    f_hi = sum(_pair_values(p, hi, khat))
    if not f_lo < 0.0 < f_hi:
        raise ValueError(
            f"objective does not change sign on the bracket: "
            f"f({lo:g})={f_lo:.3e}, f({hi:g})={f_hi:.3e}"
        )
    iterations = 0
    while hi - lo > tol_A:
        mid = 0.5 * (lo + hi)
        if sum(_pair_values(p, mid, khat)) < 0.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
    A_star = 0.5 * (lo + hi)

    # Flatness of the colliding pair across the k-grid at A_star.
    e1p, e0m = [], []
    for evs in eigenvalue_table(p.symbol(A_star), p.N, p.k_grid):
        pos = np.sort(evs[evs > 0])[::-1]
        neg = np.sort(evs[evs < 0])
        e1p.append(pos[1])
        e0m.append(neg[0])
    ks = np.asarray(p.k_grid)
    b1 = BandBranch(0, "+", ks, np.asarray(e1p))
    b0 = BandBranch(1, "-", ks, np.asarray(e0m))
    flat = classify_flat(b1, tol_flat) and classify_flat(b0, tol_flat)
    spread1 = float(np.ptp(b1.values))
    spread0 = float(np.ptp(b0.values))
    dev = float(np.max(np.abs(b1.values + b0.values)))
    return FlatPointResult(
        A_star=float(A_star),
        bracket=(lo, hi),
        iterations=iterations,
        pair_values=_pair_values(p, A_star, khat),
        branch_spreads=(spread1, spread0),
        flat=bool(flat),
        mutual_negative_dev=dev,
    )


def check_A_reflection(p: MathieuParams, k: float, m_top: int = 6) -> float:
    """Deviation between spectrum(H(k;-A)) and -spectrum(H(k;A)) over the
    top 2*m_top values by modulus."""
    e_plus = hermitian_eigenvalues(build_mathieu_fiber(p, k, p.A))
    e_minus = hermitian_eigenvalues(build_mathieu_fiber(p, k, -p.A))
    lhs = np.sort(e_minus)
    rhs = np.sort(-e_plus)
    devs = np.abs(lhs - rhs)
    order = np.argsort(-np.abs(rhs))
    return float(np.max(devs[order[: 2 * m_top]]))


def check_gap_openness(p: MathieuParams, m_top: int = 6,
                       gap_tol: float = 1e-6, sym_tol: float = 1e-9) -> CheckReport:
    """All spectral gaps open: modulus-ordered top bands strictly separated,
    every tracked eigenvalue simple, branches even and omega-periodic."""
    rep = CheckReport("gap-openness", ok=True)
    sym = p.symbol()
    branches = sweep(sym, p.N, p.k_grid, m_top)
    ordered = order_by_modulus(branches)[:m_top]
    intervals = [band_interval(b).modulus_interval for b in ordered]
    for j in range(len(intervals) - 1):
        gap = intervals[j][0] - intervals[j + 1][1]
        rep.checked += 1
        if gap <= gap_tol:
            rep.violations.append(
                {"kind": "closed-gap", "pair": (ordered[j].branch_id, ordered[j + 1].branch_id),
                 "gap": float(gap)}
            )
    # simplicity of tracked eigenvalues at every k
    for i in range(len(p.k_grid)):
        vals = np.sort(np.array([b.values[i] for b in branches]))
        rel = np.diff(vals) / np.maximum(np.abs(vals[:-1]), 1e-300)
        rep.checked += 1
        if np.any(np.abs(rel) <= 1e-6):
            rep.violations.append({"kind": "degenerate-eigenvalue", "k": float(p.k_grid[i])})
    # evenness and omega-periodicity at a few interior points
    for k in np.asarray(p.k_grid)[[len(p.k_grid) // 4, len(p.k_grid) // 2, 3 * len(p.k_grid) // 4]]:
        base = np.sort(hermitian_eigenvalues(build_mathieu_fiber(p, float(k))))
        sel = np.argsort(-np.abs(base))[: 2 * m_top]
        for label, kk in (("evenness", -float(k)), ("periodicity", float(k) + p.omega)):
            other = np.sort(hermitian_eigenvalues(build_mathieu_fiber(p, kk)))
            dev = float(np.max(np.abs(base[sel] - other[sel])))
            rep.checked += 1
            rep.info[f"{label}@k={k:.4g}"] = dev
            if dev > sym_tol:
                rep.violations.append({"kind": label, "k": float(k), "dev": dev})
    rep.ok = not rep.violations
    return rep


def check_small_A_monotonicity(p: MathieuParams, A_values=(0.02, 0.05),
                               n_top: int = 3) -> CheckReport:
    """For small A > 0 the top positive branches are all decreasing and the
    moduli interleave as |E0+| > |E0-| > |E1+| > |E1-| > ..."""
    rep = CheckReport("small-A-monotonicity", ok=True)
    for A in A_values:
        branches = sweep(p.symbol(A), p.N, p.k_grid, n_top)
        pos = [b for b in branches if b.sign == "+"][:n_top]
        neg = [b for b in branches if b.sign == "-"][:n_top]
        for b in pos:
            rep.checked += 1
            if b.monotonicity != "decreasing":
                rep.violations.append(
                    {"kind": "not-decreasing", "A": A, "branch_id": b.branch_id,
                     "monotonicity": b.monotonicity}
                )
        mid = len(p.k_grid) // 2
        ladder = []
        for bp, bn in zip(pos, neg):
            ladder.extend([abs(bp.values[mid]), abs(bn.values[mid])])
        rep.checked += 1
        if not all(ladder[i] > ladder[i + 1] for i in range(len(ladder) - 1)):
            rep.violations.append({"kind": "interleaving", "A": A, "ladder": ladder})
    rep.ok = not rep.violations
    return rep


def check_sign_counts(p: MathieuParams, k: float | None = None,
                      floor: float = 1e-6) -> tuple[int, int]:
    """Counts of eigenvalues above/below +/-floor at one k.

    For |A| >= 1 the operator is semi-definite, so the report-style use is:
    both counts positive for |A| < 1, and no eigenvalue beyond -1e-9 (resp.
    1e-9) for A >= 1 (resp. A <= -1).  Eigenvalues collapse to zero
    double-exponentially along the weak sign, so the counts above any fixed
    floor stay small; they are returned as-is for the caller to judge.
    """
    if k is None:
        k = p.omega / 4.0
    evs = hermitian_eigenvalues(build_mathieu_fiber(p, float(k)))
    return int(np.sum(evs > floor)), int(np.sum(evs < -floor))
