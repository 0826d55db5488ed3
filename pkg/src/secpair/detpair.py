"""Determinants of unitary paths and the log-det pairing for finite-dimensional
representations.

For a smooth unitary path u on [0, 1],

    Delta(u) = (1/2 pi i) int_0^1 u'(t) u(t)^* dt

is Hermitian, and its trace is the winding number of det u around 0 when u
is a loop.  Sampled paths use principal logarithms of consecutive ratios,
which is single valued while consecutive samples stay within 0.5 in
operator norm.

Normalisation: the winding-one generator u = u_11 (+) 1 of the mod-m group
pairs to +1/m.  The mapping-cone formula carries a minus sign on the
exponential term; it is dropped here so that this holds.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm, logm

from .functors import QZValue
from .spectral import certify

UNITARY_TOL = 1e-10
MAX_GAP = 0.5


class BranchError(ValueError):
    pass


@dataclass(frozen=True)
class UnitaryPath:
    """Samples (t_i, U_i) of a unitary path with t_0 = 0 < ... < t_N = 1.

    ``rates`` marks the exact path t -> diag(exp(2 pi i rate_j t)), for
    which Delta is computed in closed form.
    """

    times: tuple[float, ...]
    samples: tuple[np.ndarray, ...]
    rates: tuple[float, ...] | None = None

    def __post_init__(self):
        ts = self.times
        if len(ts) != len(self.samples) or len(ts) < 2:
            raise ValueError("need at least two samples with matching times")
        if ts[0] != 0 or ts[-1] != 1 or any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("times must increase from 0 to 1")
        k = self.samples[0].shape[0]
        for i, U in enumerate(self.samples):
            if U.shape != (k, k):
                raise ValueError(f"sample {i} has shape {U.shape}, expected {(k, k)}")
            err = np.linalg.norm(U @ U.conj().T - np.eye(k), 2)
            if err > UNITARY_TOL:
                raise ValueError(f"sample {i} is not unitary (error {err:.2e})")
        for i, (A, B) in enumerate(zip(self.samples, self.samples[1:])):
            gap = np.linalg.norm(B - A, 2)
            if gap >= MAX_GAP:
                raise BranchError(
                    f"samples {i} and {i + 1} are {gap:.3f} apart in operator norm; "
                    f"refine the path to at least {2 * len(ts)} samples")

    @property
    def dimension(self) -> int:
        return self.samples[0].shape[0]

    @classmethod
    def sample(cls, u: Callable[[float], np.ndarray], steps: int) -> UnitaryPath:
        ts = tuple(np.linspace(0.0, 1.0, steps + 1))
        ts = (0.0,) + ts[1:-1] + (1.0,)
        return cls(ts, tuple(np.asarray(u(t), dtype=complex) for t in ts))

    @classmethod
    def diagonal_exponential(cls, rates: Sequence[float], steps: int = 64) -> UnitaryPath:
        rates = tuple(float(r) for r in rates)
        path = cls.sample(lambda t: np.diag(np.exp(2j * np.pi * np.array(rates) * t)), steps)
        return cls(path.times, path.samples, rates)

    def is_loop(self, tol: float = 1e-10) -> bool:
        return np.linalg.norm(self.samples[-1] - self.samples[0], 2) < tol


def dls_determinant(u: UnitaryPath, exact: bool = True) -> np.ndarray:
    """Delta(u); closed form for diagonal exponential paths unless ``exact=False``."""
    if exact and u.rates is not None:
        return np.diag(np.array(u.rates, dtype=complex))
    k = u.dimension
    total = np.zeros((k, k), dtype=complex)
    for A, B in zip(u.samples, u.samples[1:]):
        total += logm(B @ A.conj().T)
    return total / (2j * np.pi)


def winding_number(u: UnitaryPath) -> float:
    """trace Delta(u); an integer for loops."""
    return float(np.trace(dls_determinant(u)).real)


@dataclass(frozen=True)
class QZPairingResult:
    value: QZValue | None
    numeric: float
    numeric_residual: float
    branch_candidates: tuple[float, ...] = ()

    @property
    def accepted(self) -> bool:
        return self.value is not None and self.numeric_residual < 1e-6


def _log_det_turns(M: np.ndarray) -> tuple[float, tuple[float, ...]]:
    det = complex(np.linalg.det(M))
    if abs(abs(det) - 1) > 1e-8:
        raise ValueError(f"|det| = {abs(det)} is not 1")
    turns = cmath.phase(det) / (2 * math.pi)
    candidates = ()
    if det.real < 0 and abs(det.imag) < 1e-12:
        # principal branch is ambiguous on the negative axis
        candidates = (0.5, -0.5)
    return turns % 1.0, candidates


def _result(turns: float, candidates, max_denominator: int) -> QZPairingResult:
    cert, residual = certify(turns, max_denominator)
    return QZPairingResult(cert, turns, residual, candidates)


def log_det_pairing(pi_u, sigma_u, max_denominator: int = 1000) -> QZPairingResult:
    """(1/2 pi i) log det(pi(u) sigma(u)^*) mod 1, certified to a fraction."""
    P = np.atleast_2d(np.asarray(pi_u, dtype=complex))
    S = np.atleast_2d(np.asarray(sigma_u, dtype=complex))
    if P.shape != S.shape or P.shape[0] != P.shape[1]:
        raise ValueError(f"shapes {P.shape} and {S.shape} are not equal square shapes")
    for name, M in (("pi(u)", P), ("sigma(u)", S)):
        if np.linalg.norm(M @ M.conj().T - np.eye(M.shape[0]), 2) > UNITARY_TOL:
            raise ValueError(f"{name} is not unitary")
    turns, cands = _log_det_turns(P @ S.conj().T)
    return _result(turns, cands, max_denominator)


def winding_one_generator(m: int, n: int, steps: int = 64) -> UnitaryPath:
    """u = u_11 (+) 1_{mn-1} in M_{mn} with u_11(t) = exp(2 pi i t)."""
    k = m * n
    rates = [1.0] + [0.0] * (k - 1)
    return UnitaryPath.sample(lambda t: np.diag(np.exp(2j * np.pi * np.array(rates) * t)), steps)


def zeta_generator_check(m: int, n: int = 1, steps: int = 64) -> QZPairingResult:
    """Log-det of exp((2 pi i/m) Delta(u)) for the winding-one generator of K_0(M_n; Z/m).

    Raises if the result is not [1/m] within residual 1e-6.
    """
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    u = winding_one_generator(m, n, steps)
    delta = dls_determinant(u, exact=False)
    v = expm((2j * np.pi / m) * delta)
    turns, cands = _log_det_turns(v)
    res = _result(turns, cands, max(1000, 4 * m))
    if not res.accepted or res.value != QZValue(1, m):
        raise ArithmeticError(f"zeta generator check for m={m}, n={n} gave {turns} "
                              f"(residual {res.numeric_residual:.2e})")
    return res


def root_of_unity(d: int, k: int = 1) -> complex:
    return cmath.exp(2j * math.pi * k / d)


def pairing_crosscheck_group(d: int) -> bool:
    """log det(pi(g)) for pi(g) = exp(2 pi i/d) against the extension pairing."""
    from .pairing import ExtensionClass, delta_via_extension

    if d < 2:
        raise ValueError("d must be at least 2")
    res = log_det_pairing([[root_of_unity(d)]], [[1.0]], max_denominator=4 * d)
    delta = delta_via_extension(ExtensionClass.multiplication(d))
    return res.accepted and res.value == delta.values[0]
