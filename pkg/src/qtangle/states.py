"""Core state containers and the linear-algebra primitives every other module builds on.

Convention used throughout the package: qubit 0 is the most significant bit of the
computational-basis index, so ``|q0 q1 ... q_{n-1}>`` maps to index
``q0*2**(n-1) + ... + q_{n-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "StateError",
    "StateVector",
    "DensityMatrix",
    "Spectrum",
    "tensor_product",
    "partial_trace",
    "partial_transpose",
    "trace_norm",
    "spectral_decomposition",
    "purify",
]

# Tolerances shared by the validation layer. Unit-norm / unit-trace / Hermiticity
# violations beyond 1e-10 are rejected; eigenvalues may dip to -1e-10 from float
# noise, anything lower is treated as a real bug in the caller.
UNIT_ATOL = 1e-10
HERMITIAN_ATOL = 1e-10
EIGENVALUE_FLOOR = -1e-10
RANK_CUTOFF = 1e-10


class StateError(ValueError):
    """Raised when a state container or operation receives invalid data."""


def _infer_n_qubits(dim: int, what: str) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise StateError(f"{what} dimension {dim} is not a power of two >= 2")
    return n


def check_subset(
    indices: Iterable[int],
    n_qubits: int,
    *,
    allow_empty: bool = False,
    allow_full: bool = True,
) -> tuple[int, ...]:
    """Validate a strictly increasing qubit subset and return it as a tuple."""
    subset = tuple(int(q) for q in indices)
    if any(subset[i] >= subset[i + 1] for i in range(len(subset) - 1)):
        raise StateError(f"qubit subset {subset} must be strictly increasing")
    if subset and (subset[0] < 0 or subset[-1] >= n_qubits):
        raise StateError(f"qubit subset {subset} out of range for {n_qubits} qubits")
    if not subset and not allow_empty:
        raise StateError("qubit subset must be nonempty")
    if len(subset) == n_qubits and not allow_full:
        raise StateError("qubit subset must be a proper subset of the register")
    return subset


@dataclass(frozen=True)
class StateVector:
    """A normalized pure state on ``n_qubits`` qubits.

    ``amplitudes[i]`` is the coefficient of the computational-basis vector whose
    bits spell ``i`` with qubit 0 as the most significant bit.
    """

    amplitudes: np.ndarray
    n_qubits: int

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1:
            raise StateError("amplitudes must be a 1-D array")
        n = _infer_n_qubits(amps.shape[0], "state vector")
        if n != self.n_qubits:
            raise StateError(f"length {amps.shape[0]} does not match n_qubits={self.n_qubits}")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > UNIT_ATOL:
            raise StateError(f"state vector norm**2 = {norm!r} is not 1 within {UNIT_ATOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex] | np.ndarray) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex)
        return cls(amps, _infer_n_qubits(amps.shape[0], "state vector"))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def density(self) -> "DensityMatrix":
        """The projector |psi><psi| as a DensityMatrix."""
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.n_qubits)


@dataclass(frozen=True)
class DensityMatrix:
    """A unit-trace, Hermitian, positive-semidefinite operator on ``n_qubits`` qubits."""

    matrix: np.ndarray
    n_qubits: int

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise StateError("density matrix must be square")
        n = _infer_n_qubits(mat.shape[0], "density matrix")
        if n != self.n_qubits:
            raise StateError(f"dimension {mat.shape[0]} does not match n_qubits={self.n_qubits}")
        if not np.allclose(mat, mat.conj().T, atol=HERMITIAN_ATOL, rtol=0.0):
            raise StateError("density matrix is not Hermitian within 1e-10")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > UNIT_ATOL:
            raise StateError(f"trace {trace!r} is not 1 within {UNIT_ATOL}")
        lowest = float(np.linalg.eigvalsh(mat)[0])
        if lowest < EIGENVALUE_FLOOR:
            raise StateError(f"eigenvalue {lowest!r} below {EIGENVALUE_FLOOR}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "DensityMatrix":
        mat = np.asarray(matrix, dtype=complex)
        return cls(mat, _infer_n_qubits(mat.shape[0], "density matrix"))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition with descending eigenvalues and orthonormal column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def tensor_product(a, b):
    """Kronecker composition; a's qubits come first in the combined register."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes), a.n_qubits + b.n_qubits)
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(np.kron(a.matrix, b.matrix), a.n_qubits + b.n_qubits)
    raise StateError("tensor_product needs two StateVectors or two DensityMatrices")


def _as_tensor(state) -> tuple[np.ndarray, int, bool]:
    if isinstance(state, StateVector):
        return state.amplitudes, state.n_qubits, True
    if isinstance(state, DensityMatrix):
        return state.matrix, state.n_qubits, False
    raise StateError(f"expected StateVector or DensityMatrix, got {type(state).__name__}")


def partial_trace(state, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the kept qubits, tracing out the rest.

    ``keep`` lists the qubit positions to retain, in increasing order; the result's
    qubit ordering follows it. Tracing out everything is rejected (the full trace is
    a scalar, not a state).
    """
    data, n, pure = _as_tensor(state)
    kept = check_subset(keep, n)
    dropped = [q for q in range(n) if q not in kept]
    dk = 2 ** len(kept)
    if pure:
        # For |psi>, build the (kept, dropped) reshape and contract the dropped side.
        psi = data.reshape([2] * n)
        psi = np.moveaxis(psi, list(kept) + dropped, range(n)).reshape(dk, -1)
        reduced = psi @ psi.conj().T
    else:
        rho = data.reshape([2] * (2 * n))
        order = list(kept) + dropped
        rho = np.moveaxis(rho, order + [n + q for q in order], range(2 * n))
        dd = 2 ** len(dropped)
        rho = rho.reshape(dk, dd, dk, dd)
        reduced = np.einsum("ikjk->ij", rho)
    reduced = 0.5 * (reduced + reduced.conj().T)  # scrub float asymmetry
    return DensityMatrix(reduced, len(kept))


def partial_transpose(rho: DensityMatrix, subset: Iterable[int]) -> np.ndarray:
    """Transpose the listed qubits' indices; returns a plain (possibly non-PSD) matrix."""
    chosen = check_subset(subset, rho.n_qubits)
    n = rho.n_qubits
    t = rho.matrix.reshape([2] * (2 * n))
    src: list[int] = []
    dst: list[int] = []
    for q in chosen:
        src += [q, n + q]
        dst += [n + q, q]
    t = np.moveaxis(t, src, dst)
    return np.ascontiguousarray(t.reshape(rho.dim, rho.dim))


def trace_norm(matrix: np.ndarray) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    mat = np.asarray(matrix, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise StateError("trace_norm expects a square matrix")
    if not np.allclose(mat, mat.conj().T, atol=HERMITIAN_ATOL, rtol=0.0):
        raise StateError("trace_norm input is not Hermitian within 1e-10")
    return float(np.sum(np.abs(np.linalg.eigvalsh(mat))))


def spectral_decomposition(rho: DensityMatrix, cutoff: float = RANK_CUTOFF) -> Spectrum:
    """Eigendecomposition restricted to eigenvalues above ``cutoff``.

    Eigenvalues come out descending. Each eigenvector's phase is fixed by making its
    largest-magnitude component real positive, so repeated calls (and different
    LAPACK builds) agree wherever the spectrum is nondegenerate.
    """
    vals, vecs = np.linalg.eigh(rho.matrix)
    order = np.argsort(vals)[::-1]
    vals, vecs = vals[order], vecs[:, order]
    rank = int(np.sum(vals > cutoff))
    if rank == 0:
        raise StateError("state has no eigenvalue above the rank cutoff")
    vals, vecs = vals[:rank].copy(), vecs[:, :rank].copy()
    for j in range(rank):
        k = int(np.argmax(np.abs(vecs[:, j])))
        phase = vecs[k, j] / abs(vecs[k, j])
        vecs[:, j] = vecs[:, j] / phase
    return Spectrum(vals, vecs)


def purify(rho: DensityMatrix) -> StateVector:
    """A pure state on system + environment whose system reduction is ``rho``.

    The environment is the smallest qubit register that fits the rank (a rank-1
    input still gets one environment qubit, left in |0>), appended after the system
    qubits. Environment basis states are assigned in descending-eigenvalue order.
    """
    spec = spectral_decomposition(rho)
    rank = spec.eigenvalues.shape[0]
    n_env = max(1, int(np.ceil(np.log2(rank))))
    dim_env = 2**n_env
    psi = np.zeros((rho.dim, dim_env), dtype=complex)
    psi[:, :rank] = spec.eigenvectors * np.sqrt(spec.eigenvalues)
    return StateVector(psi.reshape(-1), rho.n_qubits + n_env)
