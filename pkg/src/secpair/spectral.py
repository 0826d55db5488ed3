"""Eta invariants of the circle Dirac operator -i d/dx twisted by flat line bundles.

The bundle with holonomy exp(-2 pi i theta) gives the spectrum {n - theta : n in Z}.
Positive eigenvalues are k + (1 - theta), negative ones -(k + theta), k >= 0,
so for 0 < theta < 1

    eta(s) = zeta_H(s, 1 - theta) - zeta_H(s, theta),  eta = eta(0) = 2 theta - 1.

With this convention the relative invariant rho(V_theta, V_0) equals +theta;
the opposite holonomy convention gives -theta mod 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .functors import QZValue

# B_2, B_4, B_6, B_8
_BERNOULLI = (Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30))


def hurwitz_zeta(s: float, a: float, N: int = 50) -> float:
    """Hurwitz zeta sum_{k>=0} (k + a)^-s by Euler-Maclaurin summation.

    Uses N head terms and the Bernoulli tail through B_8.  Intended for
    s <= 1/2 (the continuation at s = 0 is exact: 1/2 - a).
    """
    if not 0 < a <= 1:
        raise ValueError(f"a must lie in (0, 1], got {a}")
    if s == 1:
        raise ValueError("pole at s = 1")
    head = math.fsum((k + a) ** (-s) for k in range(N))
    x = N + a
    tail = x ** (1 - s) / (s - 1) + 0.5 * x ** (-s)
    rising = s  # s (s+1) ... (s + 2j - 2)
    for j, b in enumerate(_BERNOULLI, start=1):
        tail += float(b) / math.factorial(2 * j) * rising * x ** (-s - 2 * j + 1)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return head + tail


@dataclass(frozen=True)
class FlatLineBundle:
    """Flat line bundle on the circle with holonomy angle theta (in turns)."""

    theta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "theta", Fraction(self.theta) % 1)

    @classmethod
    def trivial(cls) -> FlatLineBundle:
        return cls(Fraction(0))


@dataclass(frozen=True)
class EtaResult:
    eta: float
    kernel_dim: int
    closed_form: float

    @property
    def reduced_xi(self) -> float:
        return (self.eta + self.kernel_dim) / 2


def eta_closed_form(theta) -> float:
    theta = Fraction(theta) % 1
    return 0.0 if theta == 0 else float(2 * theta - 1)


def eta_circle(V: FlatLineBundle, tol: float = 1e-8) -> EtaResult:
    """Eta invariant via Hurwitz zeta, checked against 2 theta - 1."""
    th = V.theta
    if th == 0:
        # spectrum Z: symmetric, one zero mode
        return EtaResult(0.0, 1, 0.0)
    t = float(th)
    eta = hurwitz_zeta(0.0, 1.0 - t) - hurwitz_zeta(0.0, t)
    closed = eta_closed_form(th)
    if abs(eta - closed) > tol:
        raise ArithmeticError(f"eta({th}) = {eta} disagrees with closed form {closed}")
    return EtaResult(eta, 0, closed)


@dataclass(frozen=True)
class RhoResult:
    value: float
    certified: QZValue | None
    residual: float


def certify(x: float, max_denominator: int = 1000, tol: float = 1e-6) -> tuple[QZValue | None, float]:
    """Nearest fraction mod 1 with bounded denominator, if within tol."""
    x = x % 1.0
    f = Fraction(x).limit_denominator(max_denominator)
    residual = abs(float(f) - x)
    return (QZValue.of(f) if residual < tol else None), residual


def rho_relative(V: FlatLineBundle, W: FlatLineBundle, max_denominator: int = 1000) -> RhoResult:
    """(eta_V - eta_W)/2 - (h_V - h_W)/2 mod 1, with h the kernel dimension."""
    ev, ew = eta_circle(V), eta_circle(W)
    raw = 0.5 * (ev.eta - ew.eta) - 0.5 * (ev.kernel_dim - ew.kernel_dim)
    value = raw % 1.0
    cert, residual = certify(value, max_denominator)
    return RhoResult(value, cert, residual)


def pairing_crosscheck(d: int) -> bool:
    """rho(V_{1/d}, V_0) against the extension pairing of Z --(x d)--> Z -> Z/d."""
    from .pairing import ExtensionClass, delta_via_extension

    if d < 2:
        raise ValueError("d must be at least 2")
    rho = rho_relative(FlatLineBundle(Fraction(1, d)), FlatLineBundle.trivial(), max_denominator=4 * d)
    delta = delta_via_extension(ExtensionClass.multiplication(d))
    return rho.certified is not None and rho.certified == delta.values[0]
