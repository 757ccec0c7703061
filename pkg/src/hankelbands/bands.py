"""Band branches over the half period cell and their structural checks.

The sweep eigendecomposes the fiber matrix on a k-grid over [0, omega/2]
and threads the top eigenvalues of each sign into branches by rank.  Rank
threading is exact on the open interval: branches of the same sign cannot
cross there, only at k = 0 mod omega/2, where equal ranks produce equal
values anyway.

The check_* operations are report-style verifiers for the structural
properties of band functions: alternation of the monotonicity sign across
modulus-ordered branches, disjointness of spectral bands (including the
reflected-band property), transversality or non-degeneracy at the cell
endpoints, the exponential Gronwall envelope, and the period-doubling
decomposition H_2T(k) ~ H(k) + H(k + omega/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._parallel import parallel_map
from .errors import TrackingError
from .fiber import build_fiber_factorized
from .linalg import hermitian_eigenvalues
from .special import sech
from .symbol import PeriodicSymbol, double_period

DEFAULT_TOL_FLAT = 1e-8
DEFAULT_VALUE_FLOOR_REL = 1e-9


@dataclass
class BandBranch:
    """One sampled eigenvalue branch E(k) on [0, omega/2].

    Values keep a fixed sign and never vanish inside the tracked window;
    flat/monotonicity are filled by classification.
    """

    branch_id: int
    sign: str                 # '+' or '-'
    k: np.ndarray
    values: np.ndarray
    flat: bool | None = None
    monotonicity: str | None = None   # 'increasing' | 'decreasing' | 'flat'

    @property
    def samples(self):
        return list(zip(self.k.tolist(), self.values.tolist()))


@dataclass(frozen=True)
class SpectralBand:
    """Closed interval swept by one branch; degenerate when flat."""

    lo: float
    hi: float
    flat: bool
    sign: str
    branch_id: int

    @property
    def modulus_interval(self) -> tuple[float, float]:
        a, b = abs(self.lo), abs(self.hi)
        return (min(a, b), max(a, b))


@dataclass
class CheckReport:
    """Outcome of a report-style verifier."""

    name: str
    ok: bool
    checked: int = 0
    skipped: bool = False
    violations: list = field(default_factory=list)
    info: dict = field(default_factory=dict)


def carleman_oracle(omega: float, n: int, k: float) -> float:
    """Closed-form Carleman band value pi / cosh(pi*(k + omega*n))."""
    return float(np.pi * np.real(sech(np.pi * (k + omega * n))))


def eigenvalue_table(sym: PeriodicSymbol, N: int, ks) -> list[np.ndarray]:
    """Ascending eigenvalues of the fiber matrix at each k (parallel over k)."""
    return parallel_map(
        lambda k: hermitian_eigenvalues(build_fiber_factorized(sym, float(k), N)),
        ks,
    )


def _thread_branches(ks: np.ndarray, tables: list[np.ndarray], m_top: int,
                     floor: float) -> tuple[np.ndarray, np.ndarray]:
    """Thread ranks per sign into (n_k, p_track) and (n_k, n_track) arrays."""
    first = tables[0]
    p_track = min(m_top, int(np.sum(first > floor)))
    n_track = min(m_top, int(np.sum(first < -floor)))
    pos = np.empty((len(ks), p_track))
    neg = np.empty((len(ks), n_track))
    for i, evs in enumerate(tables):
        p = np.sort(evs[evs > floor])[::-1]
        n = np.sort(evs[evs < -floor])
        if len(p) < p_track:
            raise TrackingError(
                f"positive branch {len(p)} fell below the value floor at "
                f"k={ks[i]:.6g} (m_top too deep for this truncation)"
            )
        if len(n) < n_track:
            raise TrackingError(
                f"negative branch {len(n)} fell below the value floor at "
                f"k={ks[i]:.6g} (m_top too deep for this truncation)"
            )
        pos[i] = p[:p_track]
        neg[i] = n[:n_track]
    return pos, neg


def classify_flat(b: BandBranch, tol_flat: float = DEFAULT_TOL_FLAT) -> bool:
    """Flat iff (max - min) < tol_flat * max(1, |mean|) over the samples."""
    if len(b.values) < 8:
        raise ValueError(f"need at least 8 samples to classify, got {len(b.values)}")
    spread = float(np.max(b.values) - np.min(b.values))
    return spread < tol_flat * max(1.0, abs(float(np.mean(b.values))))


def _classify(b: BandBranch, tol_flat: float) -> BandBranch:
    b.flat = classify_flat(b, tol_flat)
    if b.flat:
        b.monotonicity = "flat"
    else:
        b.monotonicity = "increasing" if b.values[-1] > b.values[0] else "decreasing"
    return b


def sweep(sym: PeriodicSymbol, N: int, grid, m_top: int,
          value_floor_rel: float = DEFAULT_VALUE_FLOOR_REL,
          tol_flat: float = DEFAULT_TOL_FLAT) -> list[BandBranch]:
    """Sweep the half period cell and return classified band branches.

    Grid must include the endpoints 0 and omega/2 and at least 32 interior
    points.  Positive branches come first (ranked by descending value),
    then negative ones (ranked by ascending value); ids are sequential.
    """
    omega = sym.dual_period
    ks = np.asarray(grid, dtype=float)
    if ks.ndim != 1 or len(ks) < 34:
        raise ValueError("grid must be 1-D with >= 32 interior points plus endpoints")
    if np.any(np.diff(ks) <= 0):
        raise ValueError("grid must be strictly increasing")
    if abs(ks[0]) > 1e-12 or abs(ks[-1] - omega / 2) > 1e-12 * max(1.0, omega):
        raise ValueError("grid must span [0, omega/2] inclusive")
    tables = eigenvalue_table(sym, N, ks)
    top = max(float(np.max(np.abs(t))) for t in tables)
    floor = value_floor_rel * top
    pos, neg = _thread_branches(ks, tables, m_top, floor)
    branches = []
    bid = 0
    for j in range(pos.shape[1]):
        branches.append(_classify(BandBranch(bid, "+", ks.copy(), pos[:, j].copy()), tol_flat))
        bid += 1
    for j in range(neg.shape[1]):
        branches.append(_classify(BandBranch(bid, "-", ks.copy(), neg[:, j].copy()), tol_flat))
        bid += 1
    return branches


def band_interval(b: BandBranch) -> SpectralBand:
    """Interval swept by a classified branch.

    Non-flat branches are strictly monotone inside the cell, so the range
    is spanned by the endpoint values; flat branches collapse to a point.
    """
    if b.flat is None:
        raise ValueError("branch must be classified before taking its interval")
    if b.flat:
        v = float(np.mean(b.values))
        return SpectralBand(v, v, True, b.sign, b.branch_id)
    v0, v1 = float(b.values[0]), float(b.values[-1])
    return SpectralBand(min(v0, v1), max(v0, v1), False, b.sign, b.branch_id)


def order_by_modulus(branches: list[BandBranch]) -> list[BandBranch]:
    """Order branches by decreasing |E| at an interior reference point."""
    if not branches:
        return []
    mid = len(branches[0].k) // 2
    return sorted(branches, key=lambda b: -abs(float(b.values[mid])))


def check_alternation(branches: list[BandBranch]) -> CheckReport:
    """Sign pattern (-1)^(n+1) * d|E_n|/dk > 0 on the open interval.

    Branches are the non-flat ones, ordered by decreasing modulus; central
    differences at interior grid points, with a 5*h^2 curvature allowance.
    """
    nf = order_by_modulus([b for b in branches if not b.flat])
    rep = CheckReport("alternation", ok=True)
    if not nf:
        rep.skipped = True
        return rep
    for n, b in enumerate(nf):
        want = -1.0 if n % 2 == 0 else 1.0   # (-1)^(n+1)
        v = np.abs(b.values)
        k = b.k
        slope = (v[2:] - v[:-2]) / (k[2:] - k[:-2])
        h = np.diff(k).max()
        allow = 5.0 * h * h * np.maximum(1.0, v[1:-1])
        bad = np.nonzero(want * slope <= -allow)[0]
        rep.checked += len(slope)
        for i in bad:
            rep.violations.append(
                {"branch_id": b.branch_id, "k": float(k[i + 1]), "slope": float(slope[i])}
            )
    rep.ok = not rep.violations
    return rep


def check_disjointness(bands: list[SpectralBand]) -> CheckReport:
    """Interval-level structure of the spectrum.

    Non-flat band interiors are pairwise disjoint (touching allowed);
    reflected non-flat bands never meet at all; flat values occur in
    +/- pairs.
    """
    rep = CheckReport("disjointness", ok=True)
    nf = [b for b in bands if not b.flat]
    scale = max([max(abs(b.lo), abs(b.hi)) for b in bands], default=1.0)
    touch_tol = 1e-9 * max(1.0, scale)
    for i in range(len(nf)):
        for j in range(i + 1, len(nf)):
            overlap = min(nf[i].hi, nf[j].hi) - max(nf[i].lo, nf[j].lo)
            rep.checked += 1
            if overlap > touch_tol:
                rep.violations.append(
                    {"kind": "interior-overlap", "bands": (nf[i].branch_id, nf[j].branch_id),
                     "overlap": float(overlap)}
                )
    for i in range(len(nf)):
        for j in range(len(nf)):
            # reflected band (-hi, -lo) of i against band j: must be empty
            overlap = min(-nf[i].lo, nf[j].hi) - max(-nf[i].hi, nf[j].lo)
            rep.checked += 1
            if overlap >= 0.0:
                rep.violations.append(
                    {"kind": "reflected-overlap", "bands": (nf[i].branch_id, nf[j].branch_id),
                     "overlap": float(overlap)}
                )
    flat_pos = sorted(b.lo for b in bands if b.flat and b.lo > 0)
    flat_neg = sorted(-b.lo for b in bands if b.flat and b.lo < 0)
    pairs = min(len(flat_pos), len(flat_neg))
    for a, bb in zip(flat_pos[::-1][:pairs], flat_neg[::-1][:pairs]):
        rep.checked += 1
        if abs(a - bb) > 1e-9 * max(1.0, a):
            rep.violations.append({"kind": "flat-pairing", "values": (a, -bb), "dev": abs(a - bb)})
    rep.info["flat_count"] = (len(flat_pos), len(flat_neg))
    rep.ok = not rep.violations
    return rep


def gronwall_envelope_check(b: BandBranch, slack: float = 1e-9) -> bool:
    """Exponential envelope |E(k*)| e^{-pi|k-k*|} <= |E(k)| <= |E(k*)| e^{pi|k-k*|}
    over all sample pairs of the branch."""
    logv = np.log(np.abs(b.values))
    dk = np.abs(b.k[:, None] - b.k[None, :])
    dv = np.abs(logv[:, None] - logv[None, :])
    return bool(np.max(dv - math.pi * dk) <= slack)


@dataclass(frozen=True)
class CrossingInfo:
    """Local classification of one branch (or branch pair) at a cell endpoint."""

    kind: str                      # 'transversal' | 'extremum' | 'flat' | 'anomalous'
    branch_ids: tuple
    value: float
    slopes: tuple
    second_derivative: float | None
    ok: bool


def local_branches(sym: PeriodicSymbol, N: int, m_top: int, k0: float,
                   h: float = 1e-3, points: int = 5,
                   value_floor_rel: float = DEFAULT_VALUE_FLOOR_REL) -> list[BandBranch]:
    """Branches on a refined one-sided grid at a cell endpoint k0.

    The grid steps from k0 into the cell ([0, omega/2]), so one-sided
    difference stencils anchored at k0 are well defined.
    """
    omega = sym.dual_period
    direction = 1.0 if k0 < omega / 4 else -1.0
    ks = k0 + direction * h * np.arange(points)
    tables = eigenvalue_table(sym, N, ks)
    top = max(float(np.max(np.abs(t))) for t in tables)
    pos, neg = _thread_branches(ks, tables, m_top, value_floor_rel * top)
    branches = []
    bid = 0
    for arr, sign in ((pos, "+"), (neg, "-")):
        for j in range(arr.shape[1]):
            branches.append(BandBranch(bid, sign, ks.copy(), arr[:, j].copy()))
            bid += 1
    return branches


def crossing_analysis(branches: list[BandBranch], k0: float,
                      share_rtol: float = 1e-9,
                      slope_match_rtol: float = 0.05) -> list[CrossingInfo]:
    """Classify endpoint behaviour of branches sampled on a local grid at k0.

    Branch values shared by two branches at k0 must be transversal
    crossings (opposite nonzero one-sided slopes, matching within 5%);
    unshared values must be non-degenerate extrema (vanishing slope,
    nonzero second derivative).  Flat branches are reported but not
    classified either way.
    """
    out = []
    data = []
    for b in branches:
        k = b.k
        v = b.values
        if abs(k[0] - k0) > 1e-12:
            raise ValueError("local branches must start at k0")
        h = abs(k[1] - k[0])
        if b.flat:
            out.append(CrossingInfo("flat", (b.branch_id,), float(v[0]), (), None, True))
            continue
        d1 = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
        if k[1] < k[0]:
            d1 = -d1
        d2 = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (h * h)
        data.append((b, float(v[0]), float(d1), float(d2), h))
    used = [False] * len(data)
    for i, (bi, vi, d1i, d2i, h) in enumerate(data):
        if used[i]:
            continue
        partners = [
            j for j in range(i + 1, len(data))
            if not used[j] and abs(data[j][1] - vi) <= share_rtol * max(1.0, abs(vi))
        ]
        if len(partners) > 1:
            ids = (bi.branch_id,) + tuple(data[j][0].branch_id for j in partners)
            out.append(CrossingInfo("anomalous", ids, vi, (), None, False))
            used[i] = True
            for j in partners:
                used[j] = True
            continue
        if partners:
            j = partners[0]
            bj, vj, d1j, d2j, _ = data[j]
            used[i] = used[j] = True
            scale = max(abs(d1i), abs(d1j))
            nonzero = scale > 1e-6 * max(1.0, abs(vi))
            matched = abs(d1i + d1j) <= slope_match_rtol * max(scale, 1e-300)
            out.append(CrossingInfo(
                "transversal", (bi.branch_id, bj.branch_id), vi,
                (d1i, d1j), None, bool(nonzero and matched)))
        else:
            used[i] = True
            flat_slope = abs(d1i) <= 50.0 * h * h * max(1.0, abs(vi)) * (math.pi ** 3)
            curved = abs(d2i) > 1e-4 * max(1e-12, abs(vi))
            out.append(CrossingInfo(
                "extremum", (bi.branch_id,), vi, (d1i,), d2i,
                bool(flat_slope and curved)))
    return out


def period_doubling_check(sym: PeriodicSymbol, k: float, N: int, top_m: int) -> float:
    """Spectral consistency of the period-doubled symbol.

    The doubled-period fiber at k decomposes into the original fibers at k
    and k + omega/2; the top |eigenvalues| must agree as multisets.  Greedy
    nearest matching over the top_m values; returns the max deviation.
    """
    omega = sym.dual_period
    e1 = hermitian_eigenvalues(build_fiber_factorized(sym, k, N))
    e2 = hermitian_eigenvalues(build_fiber_factorized(sym, k + omega / 2, N))
    dsym = double_period(sym)
    ed = hermitian_eigenvalues(build_fiber_factorized(dsym, k, 2 * N + 1))
    union = np.concatenate([e1, e2])
    union = union[np.argsort(-np.abs(union))][: top_m + 5]
    dtop = ed[np.argsort(-np.abs(ed))][:top_m]
    used = np.zeros(len(union), dtype=bool)
    worst = 0.0
    for a in dtop:
        idx = None
        best = np.inf
        for j, bval in enumerate(union):
            if not used[j] and abs(a - bval) < best:
                best = abs(a - bval)
                idx = j
        used[idx] = True
        worst = max(worst, best)
    return float(worst)
