"""Dense complex operators on tensor powers of the 3-dimensional site space.

The tensor-product basis of (C^3)^(x n) is enumerated odometer-style: the
multi-index (a_1, ..., a_n) over {1, 2, 3} sits at linear index
sum_k (a_k - 1) * 3^(n-k), so the first site is the most significant digit.
For n = 2 this reproduces the ordered basis (v1 v1, v1 v2, v1 v3, v2 v1, ...).
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .symgroup import Perm, act, inverse as perm_inverse

DIM = 3

#: parity of the basis vectors v_1, v_2, v_3 (v_3 is the odd one)
PARITY = (0, 0, 1)

#: weights of v_1, v_2, v_3 in the Cartan coordinates (E11, E22, E33)
WEIGHTS = ((1, 0, 0), (0, 1, 0), (0, 0, -1))


def multi_indices(n: int) -> list[tuple[int, ...]]:
    """All multi-indices over {1, 2, 3} in basis order."""
    return list(itertools.product((1, 2, 3), repeat=n))


def tensor_index(alpha: Sequence[int]) -> int:
    """Linear basis index of the multi-index alpha."""
    idx = 0
    for a in alpha:
        idx = 3 * idx + (a - 1)
    return idx


def index_to_multi(idx: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        idx, rem = divmod(idx, 3)
        out.append(rem + 1)
    return tuple(reversed(out))


def identity_op(n: int) -> np.ndarray:
    return np.eye(DIM**n, dtype=complex)


def permutation_op() -> np.ndarray:
    """Flip operator P(u x w) = w x u on the two-site space."""
    p = np.zeros((DIM**2, DIM**2), dtype=complex)
    for a in range(DIM):
        for b in range(DIM):
            p[b * DIM + a, a * DIM + b] = 1.0
    return p


def graded_permutation_op() -> np.ndarray:
    """Graded flip P_g(u x w) = (-1)^{|u||w|} w x u on homogeneous vectors."""
    p = np.zeros((DIM**2, DIM**2), dtype=complex)
    for a in range(DIM):
        for b in range(DIM):
            p[b * DIM + a, a * DIM + b] = (-1.0) ** (PARITY[a] * PARITY[b])
    return p


def site_pair_op(op: np.ndarray, n: int, i: int) -> np.ndarray:
    """Embed a two-site operator on the adjacent legs (i, i+1), 1-based."""
    if not 1 <= i < n:
        raise ValueError(f"adjacent pair ({i}, {i + 1}) out of range for n={n}")
    left = np.eye(DIM ** (i - 1), dtype=complex)
    right = np.eye(DIM ** (n - i - 1), dtype=complex)
    return np.kron(np.kron(left, op), right)


def leg_permutation_op(w: Perm) -> np.ndarray:
    """Matrix of v_alpha -> v_{w . alpha} (legs moved by the permutation w)."""
    n = len(w)
    mat = np.zeros((DIM**n, DIM**n), dtype=complex)
    for alpha in multi_indices(n):
        mat[tensor_index(act(w, alpha)), tensor_index(alpha)] = 1.0
    return mat


def two_leg_op(op: np.ndarray, n: int, a: int, b: int) -> np.ndarray:
    """Embed a two-site operator on the (not necessarily adjacent) legs a < b."""
    if not 1 <= a < b <= n:
        raise ValueError(f"leg pair ({a}, {b}) out of range for n={n}")
    if b == a + 1:
        return site_pair_op(op, n, a)
    # relabel legs so (a, b) become (1, 2), act there, then undo
    rest = [k for k in range(1, n + 1) if k not in (a, b)]
    w_inv = (a, b, *rest)  # w^{-1} as images: w(a) = 1, w(b) = 2
    w = perm_inverse(w_inv)
    relabel = leg_permutation_op(w)
    core = site_pair_op(op, n, 1)
    return relabel.conj().T @ core @ relabel


def site_projector(n: int, leg: int, value: int) -> np.ndarray:
    """Diagonal projector onto multi-indices whose entry at ``leg`` equals ``value``."""
    diag = np.array(
        [1.0 if alpha[leg - 1] == value else 0.0 for alpha in multi_indices(n)],
        dtype=complex,
    )
    return np.diag(diag)


def frob(mat: np.ndarray) -> float:
    return float(np.linalg.norm(mat))


def rel_residual(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """Frobenius distance of two matrices over the larger of their norms."""
    scale = max(frob(lhs), frob(rhs))
    if scale == 0.0:
        return 0.0
    return frob(lhs - rhs) / scale
