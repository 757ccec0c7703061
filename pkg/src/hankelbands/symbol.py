"""Periodic symbols and their modified Fourier coefficients.

A symbol is a real-valued trigonometric polynomial p with period T, given
by its Fourier coefficients.  The kernel function of the associated Hankel
operator is h(t) = p(log t)/t.  The modified coefficients

    s_l = p_l / Gamma(1 - i*omega*l),      omega = 2*pi/T,

drive the factorized fiber-matrix construction, and the Laplace
representation

    p(log t)/t = integral_0^inf exp(-lam*t) * s(log(1/lam)) d(lam)

is checked here by quadrature as a kernel-level self-test.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import ConfigError, ToleranceError
from .special import log_gamma

_REALITY_RTOL = 1e-13


def _canonical_coefficients(raw: dict[int, complex]) -> dict[int, complex]:
    """Validate reality (p_{-l} = conj(p_l)) and return the full map.

    Violations are rejected rather than repaired; negative indices are
    stored as exact conjugates so downstream reality checks are exact.
    """
    out: dict[int, complex] = {}
    for l in sorted({abs(k) for k in raw}):
        plus = raw.get(l)
        minus = raw.get(-l)
        if l == 0:
            v = complex(plus if plus is not None else minus)
            if abs(v.imag) > _REALITY_RTOL * max(1.0, abs(v)):
                raise ValueError(f"reality violation: coefficient 0 must be real, got {v!r}")
            if v.real != 0.0:
                out[0] = complex(v.real, 0.0)
            continue
        if plus is not None and minus is not None:
            if abs(minus - np.conj(plus)) > _REALITY_RTOL * max(1.0, abs(plus)):
                raise ValueError(
                    f"reality violation: coefficient {-l} = {minus!r} is not the "
                    f"conjugate of coefficient {l} = {plus!r}"
                )
        v = complex(plus) if plus is not None else complex(minus).conjugate()
        if v != 0:
            out[l] = v
            out[-l] = v.conjugate()
    return out


@dataclass(frozen=True)
class PeriodicSymbol:
    """Real T-periodic symbol given as a finite Fourier coefficient map.

    coefficients maps l to p_l for all stored l (negative indices are exact
    conjugates of the positive ones).  Immutable after construction.
    """

    period: float
    coefficients: dict[int, complex]

    @classmethod
    def from_coefficients(cls, period: float, coefficients) -> "PeriodicSymbol":
        period = float(period)
        if not (math.isfinite(period) and period > 0):
            raise ValueError(f"period must be positive and finite, got {period!r}")
        return cls(period, _canonical_coefficients(dict(coefficients)))

    @property
    def dual_period(self) -> float:
        return 2.0 * math.pi / self.period

    @property
    def max_index(self) -> int:
        return max((abs(l) for l in self.coefficients), default=0)

    def smoothness_weight(self) -> float:
        """sum_l |p_l| * (1 + l^2)^(1/4)  (finite by construction)."""
        return float(
            sum(abs(v) * (1.0 + l * l) ** 0.25 for l, v in self.coefficients.items())
        )


@dataclass(frozen=True)
class ModifiedCoefficients:
    """The map l -> s_l = p_l / Gamma(1 - i*omega*l), plus its dual period."""

    values: dict[int, complex]
    dual_period: float

    def total_mass(self) -> float:
        return float(sum(abs(v) for v in self.values.values()))

    def evaluate(self, xi: float) -> float:
        """s(xi) = sum_l s_l exp(i*omega*l*xi); real by the reality symmetry."""
        return _evaluate_real(self.values, self.dual_period, xi)


def _evaluate_real(coeffs: dict[int, complex], omega: float, xi: float) -> float:
    val = sum(v * np.exp(1j * omega * l * xi) for l, v in coeffs.items())
    val = complex(val)
    if abs(val.imag) > 1e-13 * max(1.0, abs(val)):
        raise ToleranceError(
            f"internal consistency: evaluation has imaginary part {val.imag:.3e}"
        )
    return val.real


def evaluate_symbol(sym: PeriodicSymbol, xi: float) -> float:
    """p(xi) = sum_l p_l exp(i*omega*l*xi), returned as a real number."""
    return _evaluate_real(sym.coefficients, sym.dual_period, xi)


def to_s_coefficients(sym: PeriodicSymbol) -> ModifiedCoefficients:
    """Divide each p_l by Gamma(1 - i*omega*l).

    Gamma(1 - i*omega*l) never vanishes, so this is total; the conjugate
    symmetry of Gamma keeps s_{-l} = conj(s_l) exact.
    """
    omega = sym.dual_period
    values: dict[int, complex] = {}
    for l, v in sym.coefficients.items():
        if l < 0:
            continue
        s = v * np.exp(-log_gamma(1.0 - 1j * omega * l))
        s = complex(s)
        if l == 0:
            values[0] = complex(s.real, 0.0)
        else:
            values[l] = s
            values[-l] = s.conjugate()
    return ModifiedCoefficients(values, omega)


def from_s_coefficients(period: float, s_values) -> PeriodicSymbol:
    """Right inverse of to_s_coefficients: p_l = s_l * Gamma(1 - i*omega*l)."""
    omega = 2.0 * math.pi / float(period)
    raw: dict[int, complex] = {}
    for l, s in dict(s_values).items():
        raw[l] = complex(s) * np.exp(log_gamma(1.0 - 1j * omega * l))
    return PeriodicSymbol.from_coefficients(period, raw)


def carleman_symbol(period: float = 2.0 * math.pi) -> PeriodicSymbol:
    """Constant symbol p = 1 (kernel 1/t), viewed with an arbitrary period."""
    return PeriodicSymbol.from_coefficients(period, {0: 1.0})


def double_period(sym: PeriodicSymbol) -> PeriodicSymbol:
    """The same symbol viewed with period 2T: coefficients move to even slots."""
    return PeriodicSymbol.from_coefficients(
        2.0 * sym.period, {2 * l: v for l, v in sym.coefficients.items()}
    )


def laplace_kernel_residual(sym: PeriodicSymbol, t: float) -> float:
    """Check the Laplace representation of the kernel at a point t > 0.

    Returns |p(log t)/t - integral_0^inf exp(-lam*t) s(log(1/lam)) d(lam)|,
    with the integral split at lam = 40/t (adaptive Gauss-Kronrod on the
    finite part, geometric tail bound beyond, folded into the result).
    """
    t = float(t)
    if not (math.isfinite(t) and t > 0):
        raise ValueError(f"t must be positive, got {t!r}")
    sc = to_s_coefficients(sym)

    def integrand(lam: float) -> float:
        return math.exp(-lam * t) * sc.evaluate(math.log(1.0 / lam))

    cut = 40.0 / t
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, abserr = quad(integrand, 0.0, cut, limit=800, epsabs=1e-12, epsrel=1e-12)
        except IntegrationWarning as w:
            raise ToleranceError(f"Laplace quadrature did not converge: {w}") from w
    if abserr > 1e-10:
        raise ToleranceError(
            f"Laplace quadrature achieved abs error {abserr:.3e} > 1e-10"
        )
    tail_bound = sc.total_mass() * math.exp(-40.0) / t
    lhs = evaluate_symbol(sym, math.log(t)) / t
    return abs(lhs - value) + tail_bound


# --- JSON ingestion ---------------------------------------------------------

def symbol_from_json_dict(data: dict) -> PeriodicSymbol:
    """Build a symbol from the documented JSON schema.

    Schema: {"period": float, "coefficients": [{"l": int, "re": float,
    "im": float}, ...]} listing only l >= 0 (negative indices are implied
    by reality).  Violations are rejected with field diagnostics.
    """
    if not isinstance(data, dict):
        raise ConfigError(f"symbol JSON: expected an object, got {type(data).__name__}")
    unknown = set(data) - {"period", "coefficients"}
    if unknown:
        raise ConfigError(f"symbol JSON: unknown keys {sorted(unknown)}")
    if "period" not in data:
        raise ConfigError("symbol JSON: missing key 'period'")
    period = data["period"]
    if not isinstance(period, (int, float)) or isinstance(period, bool) or period <= 0:
        raise ConfigError(f"symbol JSON: 'period' must be a positive number, got {period!r}")
    entries = data.get("coefficients")
    if not isinstance(entries, list):
        raise ConfigError("symbol JSON: 'coefficients' must be a list")
    raw: dict[int, complex] = {}
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise ConfigError(f"symbol JSON: coefficients[{i}] must be an object")
        for field in ("l", "re", "im"):
            if field not in entry:
                raise ConfigError(f"symbol JSON: coefficients[{i}] missing field '{field}'")
        l = entry["l"]
        if not isinstance(l, int) or isinstance(l, bool):
            raise ConfigError(f"symbol JSON: coefficients[{i}].l must be an integer")
        if l < 0:
            raise ConfigError(
                f"symbol JSON: coefficients[{i}].l = {l} is negative "
                "(negative indices are implied by reality)"
            )
        if l in raw:
            raise ConfigError(f"symbol JSON: duplicate index l = {l} at coefficients[{i}]")
        re, im = entry["re"], entry["im"]
        for field, v in (("re", re), ("im", im)):
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise ConfigError(f"symbol JSON: coefficients[{i}].{field} must be a number")
        raw[l] = complex(re, im)
    try:
        return PeriodicSymbol.from_coefficients(period, raw)
    except ValueError as e:
        raise ConfigError(f"symbol JSON: {e}") from e


def load_symbol(path: str) -> PeriodicSymbol:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}") from e
    return symbol_from_json_dict(data)
