"""Truncated fiber matrices of a periodic Hankel operator.

The fiber operator at spectral parameter s has entries

    H(s)[n, m] = B(1/2 - i*omega*n - i*s, 1/2 + i*omega*m + i*s) * p_{n-m}

over n, m in Z, truncated here to the window [-N, N].  An equivalent
factorized form uses the modified coefficients s_l:

    H(s)[n, m] = Gamma(1/2 - i*(omega*n + s)) * s_{n-m}
                                              * Gamma(1/2 + i*(omega*m + s)).

Both builders are kept permanently: they are algebraically identical but
numerically independent evaluation routes, so they cross-check each other
for free.  Entries are always assembled from log-Gamma sums (raw Gamma
products underflow at moderate N).

Matrix index layout: row/column i corresponds to lattice index n = i - N
(row-major), so dumps and golden files are bit-stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.special as sc

from .errors import DomainError
from .symbol import PeriodicSymbol, to_s_coefficients
from .special import require_off_lattice

_HERMITICITY_RTOL = 1e-13


@dataclass(frozen=True)
class FiberMatrix:
    """Truncated (2N+1) x (2N+1) fiber matrix at spectral parameter s."""

    s: complex
    truncation: int
    omega: float
    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def size(self) -> int:
        return 2 * self.truncation + 1

    def index_range(self) -> np.ndarray:
        """Lattice indices n for the rows/columns, i.e. arange(-N, N+1)."""
        return np.arange(-self.truncation, self.truncation + 1)

    @property
    def is_real_parameter(self) -> bool:
        return self.s.imag == 0.0

    def max_asymmetry(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


def _finish(s: complex, N: int, omega: float, entries: np.ndarray) -> FiberMatrix:
    if not np.all(np.isfinite(entries.view(float))):
        raise ArithmeticError("fiber matrix has non-finite entries")
    fm = FiberMatrix(complex(s), N, omega, entries)
    if fm.is_real_parameter:
        scale = float(np.max(np.abs(entries)))
        if fm.max_asymmetry() > _HERMITICITY_RTOL * max(scale, 1e-300):
            raise ArithmeticError(
                f"fiber matrix at real s={s!r} is not Hermitian to "
                f"{_HERMITICITY_RTOL:g} relative"
            )
    return fm


def _validate_args(sym: PeriodicSymbol, s: complex, N: int) -> complex:
    if N < max(1, sym.max_index):
        raise ValueError(
            f"truncation N={N} too small; need at least max stored index "
            f"{sym.max_index}"
        )
    return require_off_lattice(complex(s), sym.dual_period)


def _fill_diagonals(N: int, coeffs, lga: np.ndarray, lgb: np.ndarray,
                    omega: float, divide_gamma: bool) -> np.ndarray:
    """Assemble sum over stored offsets l of exp(lga[n] + lgb[m]) * c_l
    placed on the diagonal m = n - l; optionally divide by Gamma(1-i*omega*l).
    """
    size = 2 * N + 1
    H = np.zeros((size, size), dtype=complex)
    for l, c in coeffs.items():
        if abs(l) > 2 * N:
            continue
        rows = np.arange(max(0, l), min(size, size + l))
        cols = rows - l
        log_entries = lga[rows] + lgb[cols]
        if divide_gamma:
            log_entries = log_entries - sc.loggamma(1.0 - 1j * omega * l)
        H[rows, cols] = np.exp(log_entries) * c
    return H


def build_fiber(sym: PeriodicSymbol, s: complex, N: int) -> FiberMatrix:
    """Beta-function route: entries B(1/2-i*omega*n-i*s, 1/2+i*omega*m+i*s)*p_{n-m}."""
    s = _validate_args(sym, s, N)
    omega = sym.dual_period
    n = np.arange(-N, N + 1)
    lga = sc.loggamma(0.5 - 1j * (omega * n + s))
    lgb = sc.loggamma(0.5 + 1j * (omega * n + s))
    H = _fill_diagonals(N, sym.coefficients, lga, lgb, omega, divide_gamma=True)
    return _finish(s, N, omega, H)


def build_fiber_factorized(sym: PeriodicSymbol, s: complex, N: int) -> FiberMatrix:
    """Factorized route through the modified coefficients s_l."""
    s = _validate_args(sym, s, N)
    omega = sym.dual_period
    n = np.arange(-N, N + 1)
    lga = sc.loggamma(0.5 - 1j * (omega * n + s))
    lgb = sc.loggamma(0.5 + 1j * (omega * n + s))
    svals = to_s_coefficients(sym).values
    H = _fill_diagonals(N, svals, lga, lgb, omega, divide_gamma=False)
    return _finish(s, N, omega, H)


def build_atomic_fiber(alpha: float, period: float, k: float, N: int) -> FiberMatrix:
    """Fiber of the atomic-measure example: a rank-one matrix.

    Entries (1/T) * Gamma(1/2-i*omega*n-i*k) * exp(i*alpha*omega*(n-m))
                  * Gamma(1/2+i*omega*m+i*k), with omega = 2*pi/T.
    """
    period = float(period)
    if not (math.isfinite(period) and period > 0):
        raise ValueError(f"period must be positive, got {period!r}")
    if not 0.0 <= alpha < period:
        raise ValueError(f"alpha must lie in [0, period), got {alpha!r}")
    omega = 2.0 * math.pi / period
    k = require_off_lattice(complex(k), omega)
    n = np.arange(-N, N + 1)
    u = np.exp(sc.loggamma(0.5 - 1j * (omega * n + k)) + 1j * alpha * omega * n)
    H = np.outer(u, np.conj(u)) / period
    return _finish(k, N, omega, H)


def truncation_tail_bound(sym: PeriodicSymbol, k: float, N: int) -> float:
    """Upper bound on the discarded diagonal weight beyond the window [-N, N],
    scaled by the total mass of the modified coefficients.

    sum_{|n|>N} pi*sech(pi*(omega*n+k)) <= 2*pi*(e^{-pi*(omega*(N+1)+k)}
        + e^{-pi*(omega*(N+1)-k)}) / (1 - e^{-pi*omega}).
    """
    omega = sym.dual_period
    mass = to_s_coefficients(sym).total_mass()
    geo = 1.0 - math.exp(-math.pi * omega)
    up = math.exp(-math.pi * (omega * (N + 1) + k))
    down = math.exp(-math.pi * (omega * (N + 1) - k))
    return mass * 2.0 * math.pi * (up + down) / geo


def choose_truncation(sym: PeriodicSymbol, k: float, tol: float) -> int:
    """Smallest window half-width N whose discarded diagonal weight, scaled
    by sum|s_l|, stays below tol.  Always at least max stored index + 2.
    """
    if not tol >= 1e-14:
        raise ValueError(f"tol must be >= 1e-14, got {tol!r}")
    k = float(k)
    N = max(sym.max_index + 2, 3)
    while truncation_tail_bound(sym, k, N) >= tol:
        N += 1
        if N > 100000:
            raise ArithmeticError("choose_truncation failed to converge")
    return N


def _log_cosh(x: np.ndarray) -> np.ndarray:
    x = np.abs(x)
    return x + np.log1p(np.exp(-2.0 * x)) - math.log(2.0)


def _g_weight(omega: float, n: np.ndarray, k: float) -> np.ndarray:
    # g_n(k) = sqrt(cosh(pi*omega*n)/cosh(pi*(omega*n+k))), via logs so the
    # individual cosh factors never overflow.
    return np.exp(0.5 * (_log_cosh(math.pi * omega * n) - _log_cosh(math.pi * (omega * n + k))))


def gronwall_derivative_check(omega: float, k: float, n_range, h: float = 1e-5) -> float:
    """Max over n of |g_n'(k)| / g_n(k) by central differences.

    The diagonal weights g_n(k) = sqrt(cosh(pi*omega*n)/cosh(pi*(omega*n+k)))
    satisfy |g_n'| <= (pi/2) g_n, which is what drives the exponential
    envelope of band functions; the returned ratio must stay below
    pi/2 + 10*h.
    """
    if not 1e-7 <= h <= 1e-3:
        raise ValueError(f"h must lie in [1e-7, 1e-3], got {h!r}")
    n = np.asarray(list(n_range), dtype=float)
    g0 = _g_weight(omega, n, k)
    gp = _g_weight(omega, n, k + h)
    gm = _g_weight(omega, n, k - h)
    ratios = np.abs((gp - gm) / (2.0 * h)) / g0
    return float(np.max(ratios))
