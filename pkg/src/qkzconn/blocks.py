"""Principal series data and the block decomposition of the spin representation.

The tensor space splits into blocks labelled by the content r = (r1, r2, r3)
of the multi-indices.  Each block carries an induced-module structure fixed
by an index set I, a sign tuple and a spectral vector gamma; the leading
multi-index of the block is a joint eigenvector of the T_i (i in I) and of
the commuting family Y_j, and the remaining basis vectors are reached by
T_w for minimal coset representatives w, up to an explicit sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .elliptic import EllipticParams, pow_p
from .heckespin import SpinRep, rho_vector, t_word, y_operators, y_tilde
from .symgroup import (
    Content,
    Perm,
    content_labels,
    content_stabiliser,
    eta_exponent,
    inverse,
    is_min_coset_rep,
    leading_index,
    min_coset_reps,
)
from .tensorspace import tensor_index

__all__ = [
    "PrincipalSeriesSpec",
    "CharacterValues",
    "GenericityReport",
    "character_values",
    "content_block",
    "block_specs",
    "dimension_count",
    "eigen_residual",
    "sign_residual",
    "predicted_y_tilde_spectrum",
    "spectrum_match_residual",
    "genericity_report",
]

MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True)
class PrincipalSeriesSpec:
    """Index set I, signs (aligned with sorted I) and the spectral vector gamma."""

    n: int
    index_set: tuple[int, ...]
    signs: tuple[int, ...]
    gamma: tuple[complex, ...]

    def __post_init__(self) -> None:
        if tuple(sorted(self.index_set)) != self.index_set:
            raise ValueError("index_set must be sorted")
        if len(self.signs) != len(self.index_set):
            raise ValueError("one sign per index")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be +-1")
        if len(self.gamma) != self.n:
            raise ValueError("gamma must have one entry per site")

    def sign_of(self, i: int) -> int:
        return self.signs[self.index_set.index(i)]


def validate_spec(ep: EllipticParams, spec: PrincipalSeriesSpec, tol: float = MEMBERSHIP_TOL) -> None:
    """Check gamma_i - gamma_{i+1} = 2 eps_i kappa on I, and sign constancy on runs."""
    for i in spec.index_set:
        want = 2.0 * spec.sign_of(i) * ep.kappa
        got = spec.gamma[i - 1] - spec.gamma[i]
        if abs(got - want) > tol * max(1.0, abs(want)):
            raise ValueError(
                f"gamma_{i} - gamma_{i + 1} = {got} differs from 2*eps*kappa = {want}"
            )
    for i in spec.index_set:
        if i + 1 in spec.index_set and spec.sign_of(i) != spec.sign_of(i + 1):
            raise ValueError(f"signs at the adjacent indices {i}, {i + 1} must agree")


@dataclass(frozen=True)
class CharacterValues:
    t_values: tuple[tuple[int, complex], ...]
    y_values: tuple[complex, ...]


def character_values(ep: EllipticParams, spec: PrincipalSeriesSpec) -> CharacterValues:
    """The one-dimensional character: T_i -> eps_i q^{eps_i}, Y_j -> p^{-gamma_j}."""
    validate_spec(ep, spec)
    q = pow_p(ep, -ep.kappa)
    t_vals = []
    for i in spec.index_set:
        eps = spec.sign_of(i)
        val = eps * q**eps
        # the character value must solve the quadratic relation
        assert abs((val - q) * (val + 1.0 / q)) < 1e-10 * max(1.0, abs(q)) ** 2
        t_vals.append((i, val))
    y_vals = tuple(pow_p(ep, -g) for g in spec.gamma)
    return CharacterValues(t_values=tuple(t_vals), y_values=y_vals)


def _block_gamma_raw(
    log_p: float, kappa: complex, phi: Sequence[complex], n: int, r: Content
) -> tuple[complex, ...]:
    r1, r2, r3 = r
    i_pi = 1j * math.pi / log_p
    eta1 = -i_pi * r3 + (r1 + 1) * kappa
    eta2 = -i_pi * r3 + (r2 + 1) * kappa
    eta3 = -i_pi * (n - 1) - (r3 + 1) * kappa
    gamma = []
    for i in range(1, n + 1):
        if i <= r3:
            gamma.append(eta3 + phi[2] + 2 * i * kappa)
        elif i <= r3 + r2:
            gamma.append(eta2 + phi[1] - 2 * (i - r3) * kappa)
        else:
            gamma.append(eta1 + phi[0] - 2 * (i - r2 - r3) * kappa)
    return tuple(gamma)


def content_block(
    ep: EllipticParams, n: int, r: Content, phi: Sequence[complex]
) -> PrincipalSeriesSpec:
    """The principal-series data (I, eps, gamma) of the block with content r."""
    if sum(r) != n or min(r) < 0:
        raise ValueError(f"{r} is not a content label for n={n}")
    index_set = tuple(sorted(content_stabiliser(n, r)))
    signs = tuple(-1 if i < r[2] else 1 for i in index_set)
    gamma = _block_gamma_raw(ep.nome.log_p, ep.kappa, phi, n, r)
    spec = PrincipalSeriesSpec(n=n, index_set=index_set, signs=signs, gamma=gamma)
    validate_spec(ep, spec)
    return spec


def block_specs(ep: EllipticParams, n: int, phi: Sequence[complex]) -> dict:
    return {r: content_block(ep, n, r, phi) for r in content_labels(n)}


def dimension_count(n: int) -> int:
    """Sum of block dimensions |S_n^{I(r)}| over all contents."""
    return sum(len(min_coset_reps(n, content_stabiliser(n, r))) for r in content_labels(n))


def eigen_residual(rep: SpinRep, r: Content, y_ops: list[np.ndarray] | None = None) -> float:
    """Worst eigen-equation defect of the leading basis vector of the block r.

    Checks Y_j v = p^{-gamma_j} v for all j and T_i v = eps_i q^{eps_i} v for
    i in the block's index set.
    """
    ep = rep.params.elliptic
    n = rep.n
    spec = content_block(ep, n, r, rep.phi)
    idx = tensor_index(leading_index(r))
    if y_ops is None:
        y_ops = y_operators(rep)
    worst = 0.0
    for j in range(1, n + 1):
        col = y_ops[j - 1][:, idx].copy()
        lam = pow_p(ep, -spec.gamma[j - 1])
        col[idx] -= lam
        worst = max(worst, float(np.linalg.norm(col)) / max(1.0, abs(lam)))
    q = rep.params.q
    for i in spec.index_set:
        eps = spec.sign_of(i)
        col = rep.t(i)[:, idx].copy()
        lam = eps * q**eps
        col[idx] -= lam
        worst = max(worst, float(np.linalg.norm(col)) / max(1.0, abs(lam)))
    return worst


def sign_residual(rep: SpinRep, r: Content, w: Perm, inclusive: bool = True) -> float:
    """Defect of T_w v_leading = (-1)^eta(w) v_{w . leading} for a coset rep w."""
    n = rep.n
    if not is_min_coset_rep(w, content_stabiliser(n, r)):
        raise ValueError(f"{w} is not a minimal coset representative for content {r}")
    from .symgroup import act

    src = tensor_index(leading_index(r))
    dst = tensor_index(act(w, leading_index(r)))
    sign = (-1.0) ** eta_exponent(w, r, inclusive=inclusive)
    col = t_word(rep, w)[:, src].copy()
    col[dst] -= sign
    return float(np.linalg.norm(col))


def predicted_y_tilde_spectrum(
    ep: EllipticParams, n: int, phi: Sequence[complex], j: int
) -> list[complex]:
    """Closed-form eigenvalue multiset p^{-(e_j, rho + w0 sigma gamma)} over all blocks."""
    rho = rho_vector(n, ep.kappa)
    values: list[complex] = []
    for r in content_labels(n):
        gamma = _block_gamma_raw(ep.nome.log_p, ep.kappa, phi, n, r)
        for sigma in min_coset_reps(n, content_stabiliser(n, r)):
            sigma_inv = inverse(sigma)
            # (w0 sigma gamma)_j = gamma_{sigma^{-1}(n+1-j)}
            g = gamma[sigma_inv[n - j] - 1]
            values.append(pow_p(ep, -(rho[j - 1] + g)))
    return values


def greedy_match_distance(predicted: Sequence[complex], observed: Sequence[complex]) -> float:
    """Largest distance after greedily pairing each predicted value to the nearest
    unused observed value."""
    if len(predicted) != len(observed):
        raise ValueError("multisets must have equal size")
    remaining = list(observed)
    worst = 0.0
    for val in predicted:
        dists = [abs(val - o) for o in remaining]
        k = int(np.argmin(dists))
        worst = max(worst, dists[k])
        remaining.pop(k)
    return worst


def spectrum_match_residual(rep: SpinRep, j: int) -> float:
    """Greedy-matching distance between the predicted multiset and the numerical
    eigenvalues of the braid-limit operator for lam = e_j."""
    n = rep.n
    lam = tuple(1 if k == j else 0 for k in range(1, n + 1))
    eigs = np.linalg.eigvals(y_tilde(rep, lam))
    pred = predicted_y_tilde_spectrum(rep.params.elliptic, n, rep.phi, j)
    return greedy_match_distance(pred, list(eigs))


@dataclass(frozen=True)
class GenericityReport:
    """Diagnostics of the braid-limit spectrum for the given raw parameters.

    Violations come in three kinds:

    * ``("coupling", m)`` -- |p^(2 kappa)| sits on the lattice |p^m| (the
      coefficient functions degenerate; kappa = 0 lands here),
    * ``("collision", a, b)`` -- two distinct spectral labels coincide, so
      the eigenvalue family cannot separate the blocks,
    * ``("resonance", a, b, i, m)`` -- p^((s_b - s_a, varpi_i)) = p^m for
      some nonzero integer m in the search window.

    Label indices a, b refer to ``labels``, the flattened (content, coset
    representative) list.
    """

    n: int
    window: int
    tol: float
    labels: tuple[tuple[Content, Perm], ...]
    violations: tuple[tuple, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations


def genericity_report(
    p: float,
    kappa: complex,
    phi: Sequence[complex],
    n: int,
    window: int = 20,
    tol: float = 1e-8,
) -> GenericityReport:
    """Check the spectral labels for collisions and lattice resonances.

    Works on raw parameters (no resonance guard) so that degenerate choices
    such as kappa = 0 produce a report instead of an exception.
    """
    log_p = math.log(p)
    kappa = complex(kappa)
    violations: list[tuple] = []

    t = 2.0 * kappa.real
    if abs(t - round(t)) <= tol:
        violations.append(("coupling", int(round(t))))

    rho = rho_vector(n, kappa)
    labels: list[tuple[Content, Perm]] = []
    s_vectors: list[tuple[complex, ...]] = []
    for r in content_labels(n):
        gamma = _block_gamma_raw(log_p, kappa, phi, n, r)
        for sigma in min_coset_reps(n, content_stabiliser(n, r)):
            sigma_inv = inverse(sigma)
            # (w0 sigma gamma)_k = gamma_{sigma^{-1}(n+1-k)}
            s = tuple(
                -(rho[k - 1] + gamma[sigma_inv[n - k] - 1]) for k in range(1, n + 1)
            )
            labels.append((r, sigma))
            s_vectors.append(s)

    # collisions: all components of s_b - s_a vanish modulo 2 pi i / log p
    comp = np.array(s_vectors, dtype=complex)
    count = comp.shape[0]
    unit = np.exp((comp[None, :, :] - comp[:, None, :]) * log_p)
    collide = np.all(np.abs(unit - 1.0) <= tol, axis=2)
    for a in range(count):
        for b in range(a + 1, count):
            if collide[a, b]:
                violations.append(("collision", a, b))

    # lattice resonances of the partial sums (pairings with varpi_i)
    partials = np.array(
        [[sum(s[:i]) for i in range(1, n)] for s in s_vectors], dtype=complex
    )
    for i in range(n - 1):
        col = partials[:, i]
        diff = col[None, :] - col[:, None]  # entry (a, b) is (s_b - s_a, varpi_{i+1})
        vals = np.exp(diff * log_p)
        for m in range(-window, window + 1):
            if m == 0:
                continue
            bad = np.argwhere(np.abs(vals / (p**m) - 1.0) <= tol)
            for a, b in bad:
                violations.append(("resonance", int(a), int(b), i + 1, m))
    return GenericityReport(
        n=n, window=window, tol=tol, labels=tuple(labels), violations=tuple(violations)
    )
