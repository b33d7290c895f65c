"""CSV writing and reading for sweep tables and state files.

Numbers are serialized with 17 significant digits so every double round-trips
bit-identically. All files are UTF-8, comma-separated, with a mandatory header.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .states import DensityMatrix, StateError, StateVector

__all__ = ["format_number", "write_table", "save_state", "load_state"]


def format_number(x: float) -> str:
    return "%.17g" % x


def write_table(
    path: str | Path, header: Sequence[str], rows: Iterable[Sequence[float]]
) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_number(float(x)) for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def save_state(path: str | Path, state: StateVector | DensityMatrix) -> None:
    """Vector files carry index,re,im rows; matrix files row,col,re,im."""
    if isinstance(state, StateVector):
        header = ["index", "re", "im"]
        rows: list[list[float]] = [
            [float(i), z.real, z.imag] for i, z in enumerate(state.amplitudes)
        ]
    elif isinstance(state, DensityMatrix):
        header = ["row", "col", "re", "im"]
        dim = state.dim
        rows = [
            [float(r), float(c), state.matrix[r, c].real, state.matrix[r, c].imag]
            for r in range(dim)
            for c in range(dim)
        ]
    else:
        raise StateError(f"cannot serialize {type(state).__name__}")
    write_table(path, header, rows)


def load_state(path: str | Path) -> StateVector | DensityMatrix:
    text = Path(path).read_text(encoding="utf-8")
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise StateError(f"{path}: empty state file")
    header = lines[0].split(",")
    body = [[float(cell) for cell in line.split(",")] for line in lines[1:]]
    if header == ["index", "re", "im"]:
        amps = np.zeros(len(body), dtype=complex)
        for idx, re, im in body:
            amps[int(idx)] = complex(re, im)
        n = int(math.log2(len(amps)))
        return StateVector(amps, n)
    if header == ["row", "col", "re", "im"]:
        dim = int(math.isqrt(len(body)))
        if dim * dim != len(body):
            raise StateError(f"{path}: matrix file has {len(body)} entries, not a square")
        mat = np.zeros((dim, dim), dtype=complex)
        for r, c, re, im in body:
            mat[int(r), int(c)] = complex(re, im)
        return DensityMatrix(mat, int(math.log2(dim)))
    raise StateError(f"{path}: unrecognized state header {header!r}")
