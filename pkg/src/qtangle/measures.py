"""Entanglement measures: one-tangle, Wootters concurrence, three-tangle,
the mean residual tangle e_ms, and negativity.

All measures share one clamping policy: a result in (-1e-9, 0) is floating-point
noise and clamps to 0; anything at or below -1e-9 raises, because that signals a
bug rather than roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .states import (
    DensityMatrix,
    StateError,
    StateVector,
    check_subset,
    partial_trace,
    partial_transpose,
    trace_norm,
)

__all__ = [
    "MeasureValue",
    "one_tangle",
    "single_property",
    "concurrence",
    "three_tangle_pure",
    "e_ms",
    "negativity",
]

CLAMP_FLOOR = -1e-9

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(_SIGMA_Y, _SIGMA_Y)


@dataclass(frozen=True)
class MeasureValue:
    """A named measure result, with the partition it was taken on when relevant."""

    name: str
    value: float
    partition: tuple[int, ...] | None = None


def _clamp(value: float, what: str) -> float:
    if value < CLAMP_FLOOR:
        raise StateError(f"{what} = {value!r} is below the {CLAMP_FLOOR} noise floor")
    return 0.0 if value < 0.0 else value


def _purity(psi: StateVector, k: tuple[int, ...]) -> float:
    reduced = partial_trace(psi, k).matrix
    return float(np.einsum("ij,ji->", reduced, reduced).real)


def one_tangle(psi: StateVector, k: Iterable[int]) -> float:
    """Linear entropy 2(1 - tr rho_k^2) of the reduction onto subset ``k``.

    ``k`` must be a proper, nonempty subset of the register.
    """
    subset = check_subset(k, psi.n_qubits, allow_full=False)
    return 2.0 * (1.0 - _purity(psi, subset))


def single_property(psi: StateVector, k: Iterable[int]) -> float:
    """Complement 2 tr rho_k^2 - 1 of the one-tangle; the two sum to exactly 1."""
    subset = check_subset(k, psi.n_qubits, allow_full=False)
    return 2.0 * _purity(psi, subset) - 1.0


def _wootters_sqrt_eigs(rho: np.ndarray) -> np.ndarray:
    """Descending sqrt-eigenvalues of rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y).

    The product is non-Hermitian, so this takes a general eigenvalue solve and the
    real parts. Eigenvalues within 1e-12 of zero are clamped before the square
    root: rank-deficient inputs carry ~1e-16 noise whose sqrt would otherwise
    pollute the concurrence at the 1e-8 level.
    """
    flipped = _YY @ rho.conj() @ _YY
    lam = np.linalg.eigvals(rho @ flipped).real
    lam[np.abs(lam) < 1e-12] = 0.0
    lam[lam < 0.0] = 0.0
    return np.sqrt(np.sort(lam)[::-1])


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    if rho.n_qubits != 2:
        raise StateError(f"concurrence needs 2 qubits, got {rho.n_qubits}")
    lam = _wootters_sqrt_eigs(rho.matrix)
    # The eigenvalue difference goes genuinely negative on separable states;
    # the measure is its positive part, so no noise-floor check here.
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def three_tangle_pure(psi: StateVector) -> float:
    """Residual tangle tau_A - C_AB^2 - C_AC^2 of a three-qubit pure state.

    The monogamy relation keeps the residual in [0, 1] mathematically; float
    noise below is clamped, and the value does not depend on which qubit plays
    the role of A (tested to 1e-9).
    """
    if psi.n_qubits != 3:
        raise StateError(f"three_tangle_pure needs 3 qubits, got {psi.n_qubits}")
    tau = one_tangle(psi, (0,))
    c_ab = concurrence(partial_trace(psi, (0, 1)))
    c_ac = concurrence(partial_trace(psi, (0, 2)))
    residual = _clamp(tau - c_ab**2 - c_ac**2, "three-tangle residual")
    return min(residual, 1.0)


def e_ms(psi: StateVector) -> float:
    """Mean residual tangle [sum_k tau_k - 2 sum_{i<j} C_ij^2] / N.

    Averages, over the N qubits, how much each one-tangle exceeds the pairwise
    concurrences it feeds; zero exactly when all entanglement is pairwise. For
    N = 3 this equals the three-tangle.
    """
    n = psi.n_qubits
    if n < 3:
        raise StateError(f"e_ms needs at least 3 qubits, got {n}")
    tau_sum = sum(one_tangle(psi, (k,)) for k in range(n))
    c_sq_sum = sum(
        concurrence(partial_trace(psi, pair)) ** 2 for pair in combinations(range(n), 2)
    )
    return _clamp((tau_sum - 2.0 * c_sq_sum) / n, "e_ms")


def negativity(rho: DensityMatrix, subset: Iterable[int]) -> float:
    """(||rho^{T_subset}||_1 - 1) / 2 under the trace norm."""
    transposed = partial_transpose(rho, subset)
    return _clamp((trace_norm(transposed) - 1.0) / 2.0, "negativity")
