"""Real-argument Jacobi elliptic functions and the complete integral K(k).

Everything is built on the arithmetic-geometric mean. ``complete_K`` uses
K = pi / (2 agm(1, k')), and the sn/cn/dn triple comes from the descending
Landen recursion (DLMF 22.20(ii)) applied to an argument first reduced into
[-K, K]. The reduction makes the half-period relations

    sn(u + 2K) = -sn(u),  cn(u + 2K) = -cn(u),  dn(u + 2K) = dn(u),
    am(u + 2K) = am(u) + pi

hold to rounding, and gives a continuous amplitude.

All functions accept scalars or numpy arrays for ``u``; ``k`` is a scalar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError

_AGM_TOL = 1e-16
_AGM_MAX_ITER = 64


def _agm_ladder(k: float) -> tuple[list[float], list[float]]:
    """Return the (a_n, c_n) sequences of the AGM started at (1, k')."""
    a, b, c = 1.0, math.sqrt((1.0 - k) * (1.0 + k)), k
    a_seq, c_seq = [a], [c]
    for _ in range(_AGM_MAX_ITER):
        if abs(c) <= _AGM_TOL * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        a_seq.append(a)
        c_seq.append(c)
    return a_seq, c_seq


@lru_cache(maxsize=256)
def _ladder(k: float) -> tuple[tuple[float, ...], tuple[float, ...], float]:
    a_seq, c_seq = _agm_ladder(k)
    K = math.pi / (2.0 * a_seq[-1])
    return tuple(a_seq), tuple(c_seq), K


def _check_modulus(k: float, *, allow_zero: bool) -> float:
    k = float(k)
    if not math.isfinite(k):
        raise DomainError(f"modulus must be finite, got {k!r}")
    lo_ok = k >= 0.0 if allow_zero else k > 0.0
    if not (lo_ok and k < 1.0):
        interval = "[0, 1)" if allow_zero else "(0, 1)"
        raise DomainError(f"modulus k={k!r} outside {interval}")
    return k


def complete_K(k: float) -> float:
    """Complete elliptic integral of the first kind, K(k) = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t).

    Raises DomainError for k outside [0, 1).
    """
    k = _check_modulus(k, allow_zero=True)
    return _ladder(k)[2]


@dataclass(frozen=True)
class EllipticModulus:
    """Modulus k with the derived constants m = k^2, k', K(k) and K' = K(k')."""

    k: float
    m: float = field(init=False)
    k_prime: float = field(init=False)
    K: float = field(init=False)
    K_prime: float = field(init=False)

    def __post_init__(self) -> None:
        k = _check_modulus(self.k, allow_zero=False)
        kp = math.sqrt((1.0 - k) * (1.0 + k))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "m", k * k)
        object.__setattr__(self, "k_prime", kp)
        object.__setattr__(self, "K", complete_K(k))
        object.__setattr__(self, "K_prime", complete_K(kp))


def _reduced_amplitude(u0: np.ndarray, k: float) -> np.ndarray:
    """Amplitude for |u0| <= K via descending Landen; result lies in [-pi/2, pi/2]."""
    a_seq, c_seq, _ = _ladder(k)
    n = len(a_seq) - 1
    phi = (2.0**n) * a_seq[n] * u0
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(np.clip(c_seq[j] / a_seq[j] * np.sin(phi), -1.0, 1.0)))
    return phi


def _evaluate_scalar(u: float, k: float):
    # same recursion as the array path, without numpy call overhead
    if not math.isfinite(u):
        raise DomainError("argument u must be finite")
    a_seq, c_seq, K = _ladder(k)
    half_periods = round(u / (2.0 * K))
    u0 = u - 2.0 * K * half_periods
    n = len(a_seq) - 1
    phi = (2.0**n) * a_seq[n] * u0
    for j in range(n, 0, -1):
        x = c_seq[j] / a_seq[j] * math.sin(phi)
        phi = 0.5 * (phi + math.asin(min(1.0, max(-1.0, x))))
    sign = -1.0 if half_periods % 2 else 1.0
    sn = sign * math.sin(phi)
    cn = sign * math.cos(phi)
    dn = math.sqrt((1.0 - k) * (1.0 + k) + (k * cn) ** 2)
    return sn, cn, dn, phi + math.pi * half_periods


def _evaluate(u, k: float):
    k = _check_modulus(k, allow_zero=False)
    if isinstance(u, (int, float, np.floating, np.integer)):
        return _evaluate_scalar(float(u), k)
    u_arr = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u_arr)):
        raise DomainError("argument u must be finite")
    K = _ladder(k)[2]
    half_periods = np.rint(u_arr / (2.0 * K))
    u0 = u_arr - 2.0 * K * half_periods
    phi0 = _reduced_amplitude(u0, k)
    sign = np.where(np.mod(half_periods, 2.0) == 0.0, 1.0, -1.0)
    sn = sign * np.sin(phi0)
    cn = sign * np.cos(phi0)
    # k'^2 + k^2 cn^2 avoids the cancellation in 1 - k^2 sn^2 when k is near 1
    kp2 = (1.0 - k) * (1.0 + k)
    dn = np.sqrt(kp2 + (k * cn) ** 2)
    am = phi0 + math.pi * half_periods
    return sn, cn, dn, am


def _unwrap_scalar(u, *arrays):
    if np.ndim(u) == 0:
        return tuple(float(x) for x in arrays)
    return arrays


def jacobi_sn_cn_dn(u, k: float):
    """Return (sn, cn, dn) at real u for modulus 0 < k < 1."""
    sn, cn, dn, _ = _evaluate(u, k)
    return _unwrap_scalar(u, sn, cn, dn)


def jacobi_am(u, k: float):
    """Continuous (unwrapped) Jacobi amplitude; strictly increasing in u."""
    am = _evaluate(u, k)[3]
    return float(am) if np.ndim(u) == 0 else am


def jacobi_all(u, k: float):
    """Return (sn, cn, dn, am) in one pass."""
    return _unwrap_scalar(u, *_evaluate(u, k))
