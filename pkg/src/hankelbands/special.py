"""Complex log-Gamma, Beta and the reference elliptic function.

Everything downstream (fiber matrices, secular determinants) is built from
these three primitives.  Gamma products are always assembled in log space:
|Gamma(1/2+ix)| decays like exp(-pi|x|/2), so raw products underflow long
before the truncation sizes used elsewhere become interesting.

The reference elliptic function is the lattice sum

    P(s) = sum_n pi / cosh(pi*(n*omega + s)),

a scaled Jacobi dn function with periods omega and 2i, simple poles on the
lattice {omega*n + i*(m+1/2)} and zeros congruent to (omega+i)/2.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.special as sc

from .errors import DomainError

# Shared pole-proximity guard.  Residue tests approach poles explicitly with
# controlled offsets >= 1e-5, so the guard never gets in their way.
POLE_GUARD = 1e-6


def _require_finite(z: complex, name: str) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Raises DomainError when z sits within 1e-12 of a pole (a nonpositive
    integer); the message names the offending integer.
    """
    z = _require_finite(z, "z")
    m = round(z.real)
    if m <= 0 and abs(z - m) <= 1e-12:
        raise DomainError(f"log_gamma: z={z!r} is within 1e-12 of the pole at {m}")
    return complex(sc.loggamma(z))


def gamma(z: complex) -> complex:
    """Gamma(z) = exp(log_gamma(z)), with the same pole guard."""
    return np.exp(log_gamma(z))


def beta(z1: complex, z2: complex) -> complex:
    """Beta function B(z1, z2) = Gamma(z1)*Gamma(z2)/Gamma(z1+z2).

    Formed in log space and exponentiated last, so large imaginary parts
    never overflow or underflow on the way.
    """
    z1 = _require_finite(z1, "z1")
    z2 = _require_finite(z2, "z2")
    lg1 = log_gamma(z1)
    lg2 = log_gamma(z2)
    lg12 = log_gamma(z1 + z2)
    return complex(np.exp(lg1 + lg2 - lg12))


def sech(z):
    """Numerically stable sech for scalar or array arguments.

    cosh overflows around |Re z| ~ 710; this form only ever exponentiates
    nonpositive real parts (sech is even, so flip to Re z >= 0 first).
    """
    z = np.asarray(z, dtype=complex)
    z = np.where(z.real < 0, -z, z)
    e = np.exp(-z)
    out = 2.0 * e / (1.0 + e * e)
    if out.ndim == 0:
        return complex(out)
    return out


def pole_lattice_distance(s: complex, omega: float) -> tuple[float, complex]:
    """Distance from s to the pole lattice {omega*n + i*(m + 1/2)}.

    Returns (distance, nearest lattice point).
    """
    s = complex(s)
    n = round(s.real / omega)
    m = round(s.imag - 0.5)
    nearest = complex(omega * n, m + 0.5)
    return abs(s - nearest), nearest


def require_off_lattice(s: complex, omega: float, guard: float = POLE_GUARD) -> complex:
    s = _require_finite(s, "s")
    dist, nearest = pole_lattice_distance(s, omega)
    if dist <= guard:
        raise DomainError(
            f"s={s!r} is within {guard:g} of the pole lattice point {nearest!r}"
        )
    return s


def elliptic_window(omega: float, tol: float) -> int:
    """Summation half-width for ref_elliptic.

    Terms decay like 2*pi*exp(-pi*omega*|n|), so a fixed window with an
    explicit geometric tail bound suffices; no adaptive loop.
    """
    return math.ceil(math.log(4.0 * math.pi / tol) / (math.pi * omega)) + 2


def ref_elliptic(s: complex, omega: float = 1.0, tol: float = 1e-12) -> complex:
    """Reference elliptic function P(s) = sum_n pi/cosh(pi*(n*omega + s)).

    Satisfies P(-s) = P(s), P(s+omega) = P(s), P(s+2i) = P(s) and
    P(s+i) = -P(s); zeros congruent to (omega+i)/2, simple poles on
    {omega*n + i*(m+1/2)} with residue -i at i/2.  The window size is
    chosen so the discarded tail stays below tol.
    """
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    if not tol >= 1e-15:
        raise ValueError(f"tol must be >= 1e-15, got {tol!r}")
    s = require_off_lattice(s, omega)
    # The full sum is exactly omega-periodic; recentre so the window is
    # symmetric around the dominant terms.
    s = s - omega * round(s.real / omega)
    n = np.arange(-elliptic_window(omega, tol), elliptic_window(omega, tol) + 1)
    terms = np.pi * sech(np.pi * (n * omega + s))
    return complex(np.sum(terms))
