"""Renormalised Jacobi theta products and the elliptic coefficient functions.

Everything downstream is built from a nome 0 < p < 1 and a coupling kappa
through the single-valued power p^x := exp(x * log p) with the real branch
of log p.  This branch makes p^(x+y) = p^x * p^y hold exactly for complex
exponents, which the coefficient identities below rely on.

The theta function is the renormalised product

    theta(z) = prod_{m>=0} (1 - p^m z) (1 - p^{m+1} / z),

truncated once the tail factors are within ``theta_truncation_tol`` of 1.
Its zero set is z in p^Z, which is where the pole guards of the coefficient
functions fire.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

__all__ = [
    "Nome",
    "EllipticParams",
    "EllipticError",
    "ThetaDomainError",
    "ThetaOverflowError",
    "PoleError",
    "default_params",
    "pow_p",
    "theta",
    "theta_multi",
    "coeff_a",
    "coeff_b",
    "c_func",
]

THETA_TRUNCATION_TOL = 1e-16
POLE_TOL = 1e-10
RESONANCE_TOL = 1e-8
MAX_THETA_FACTORS = 10_000


class EllipticError(Exception):
    """Base class for evaluation failures of the elliptic building blocks."""


class ThetaDomainError(EllipticError):
    """theta(z) was requested at z = 0, where the 1/z factors blow up."""


class ThetaOverflowError(EllipticError):
    """The requested truncation needs more than MAX_THETA_FACTORS factors."""


class PoleError(EllipticError):
    """A theta factor in a denominator is numerically zero."""

    def __init__(self, message: str, factor: str | None = None, magnitude: float | None = None):
        super().__init__(message)
        self.factor = factor
        self.magnitude = magnitude


@dataclass(frozen=True)
class Nome:
    """Elliptic nome p with its (negative) natural logarithm cached."""

    p: float
    log_p: float = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"nome must satisfy 0 < p < 1, got {self.p!r}")
        object.__setattr__(self, "log_p", math.log(self.p))


@dataclass(frozen=True)
class EllipticParams:
    """Nome, coupling and the numerical guards used by every evaluation."""

    nome: Nome
    kappa: complex
    theta_truncation_tol: float = THETA_TRUNCATION_TOL
    pole_tol: float = POLE_TOL

    def __post_init__(self) -> None:
        if self.theta_truncation_tol <= 0.0:
            raise ValueError("theta_truncation_tol must be positive")
        if self.pole_tol <= 0.0:
            raise ValueError("pole_tol must be positive")
        # Resonance guard: |p^(2 kappa)| on the lattice |p^m| collapses the
        # coefficient functions (theta(p^(2 kappa)) sits in every numerator).
        t = 2.0 * complex(self.kappa).real
        if abs(t - round(t)) < RESONANCE_TOL:
            raise ValueError(
                f"kappa={self.kappa!r} is resonant: |p^(2 kappa)| lies on the lattice |p^Z|"
            )


def default_params(p: float = 0.35, kappa: complex = 0.27, **kwargs) -> EllipticParams:
    """Desk-scale defaults: theta products converge in ~35 factors."""
    return EllipticParams(nome=Nome(p), kappa=complex(kappa), **kwargs)


def pow_p(ep: EllipticParams, x: complex) -> complex:
    """p^x on the principal branch exp(x * log p); entire in x."""
    return cmath.exp(complex(x) * ep.nome.log_p)


def _factor_count(ep: EllipticParams, zmod: float) -> int:
    # smallest M with p^(M+1) * max(|z|, 1/|z|) < tol; factors run m = 0..M
    big = max(zmod, 1.0 / zmod)
    bound = (math.log(ep.theta_truncation_tol) - math.log(big)) / ep.nome.log_p
    m = max(0, math.ceil(bound - 1.0))
    if m + 1 > MAX_THETA_FACTORS:
        raise ThetaOverflowError(
            f"theta truncation needs {m + 1} factors for |z| = {zmod:.3e} "
            f"(cap {MAX_THETA_FACTORS})"
        )
    return m


def theta(ep: EllipticParams, z: complex, min_factors: int = 0) -> complex:
    """Truncated product prod_{m=0}^{M} (1 - p^m z)(1 - p^{m+1}/z).

    ``min_factors`` forces at least that many factors; used to test that the
    truncation rule is already converged.
    """
    z = complex(z)
    if z == 0.0:
        raise ThetaDomainError("theta(z) is undefined at z = 0")
    p = ep.nome.p
    m_top = max(_factor_count(ep, abs(z)), min_factors)
    acc = 1.0 + 0.0j
    pm = 1.0
    zinv = 1.0 / z
    for _ in range(m_top + 1):
        acc *= (1.0 - pm * z) * (1.0 - pm * p * zinv)
        pm *= p
    return acc


def theta_multi(ep: EllipticParams, zs) -> complex:
    """Product of theta over the arguments; empty product is 1."""
    acc = 1.0 + 0.0j
    for z in zs:
        acc *= theta(ep, z)
    return acc


def _theta_denominator(ep: EllipticParams, exponent: complex, label: str) -> complex:
    val = theta(ep, pow_p(ep, exponent))
    if abs(val) < ep.pole_tol:
        raise PoleError(
            f"pole: theta factor {label} has modulus {abs(val):.3e} < {ep.pole_tol:.1e}",
            factor=label,
            magnitude=abs(val),
        )
    return val


def coeff_a(ep: EllipticParams, y: complex, x: complex) -> complex:
    """A-coefficient theta(p^{2k}, p^{y-x}) / theta(p^y, p^{2k-x}) * p^{(2k-y)x}."""
    k2 = 2.0 * ep.kappa
    num = theta(ep, pow_p(ep, k2)) * theta(ep, pow_p(ep, y - x))
    den = _theta_denominator(ep, y, "p^y") * _theta_denominator(ep, k2 - x, "p^(2*kappa-x)")
    return (num / den) * pow_p(ep, (k2 - y) * x)


def coeff_b(ep: EllipticParams, y: complex, x: complex) -> complex:
    """B-coefficient theta(p^{2k-y}, p^{-x}) / theta(p^{2k-x}, p^{-y}) * p^{2k(x-y)}."""
    k2 = 2.0 * ep.kappa
    num = theta(ep, pow_p(ep, k2 - y)) * theta(ep, pow_p(ep, -x))
    den = _theta_denominator(ep, k2 - x, "p^(2*kappa-x)") * _theta_denominator(ep, -y, "p^(-y)")
    return (num / den) * pow_p(ep, k2 * (x - y))


def c_func(ep: EllipticParams, x: complex) -> complex:
    """Elliptic c-function p^{2k x} * theta(p^{2k+x}) / theta(p^x)."""
    k2 = 2.0 * ep.kappa
    num = theta(ep, pow_p(ep, k2 + x))
    den = _theta_denominator(ep, x, "p^x")
    return pow_p(ep, k2 * x) * num / den
