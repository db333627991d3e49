"""Design-matrix data model: random generation, exchange moves, validation.

A Latin hypercube design (LHD) with n runs and k factors is an n x k integer
matrix in which every column is a permutation of 1..n.  Designs are plain
int64 NumPy arrays; functions that return a design mark it read-only, so a
design value never mutates after construction and is safe to share between
threads.  Row and column indices in this API are 0-based; levels are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import (
    IndexOutOfRangeError,
    IndivisibleRunsError,
    InvalidDimensionError,
    UnsupportedExponentError,
)
from .rng import RngStream, as_generator, permutation


def _freeze(X: np.ndarray) -> np.ndarray:
    X.setflags(write=False)
    return X


def random_lhd(n: int, k: int, rng: RngStream | np.random.Generator) -> np.ndarray:
    """Random LHD: each column an independent Fisher-Yates permutation of 1..n.

    Deterministic in the stream: the same (seed, stream) always yields the
    same design.  Columns are drawn left to right.
    """
    if n < 2 or k < 1:
        raise InvalidDimensionError(f"need n >= 2 and k >= 1, got n={n}, k={k}")
    gen = as_generator(rng)
    X = np.empty((n, k), dtype=np.int64)
    for c in range(k):
        X[:, c] = permutation(gen, n)
    return _freeze(X)


def exchange(design: np.ndarray, column: int, i: int, j: int) -> np.ndarray:
    """Copy of the design with rows i and j swapped within one column.

    The input is left unmodified; applying the same exchange twice restores
    the original design.
    """
    n, k = design.shape
    if not 0 <= column < k:
        raise IndexOutOfRangeError(f"column {column} outside 0..{k - 1}")
    if not (0 <= i < n and 0 <= j < n):
        raise IndexOutOfRangeError(f"rows ({i}, {j}) outside 0..{n - 1}")
    out = np.array(design, dtype=np.int64)
    out[i, column], out[j, column] = out[j, column], out[i, column]
    return _freeze(out)


def distance_matrix(design: np.ndarray, q: int = 1) -> np.ndarray:
    """Symmetric inter-row distance matrix, d_ij = (sum_l |x_il - x_jl|^q)^(1/q).

    q=1 is the rectangular metric, q=2 Euclidean; other exponents are
    rejected.
    """
    if q not in (1, 2):
        raise UnsupportedExponentError(f"distance exponent must be 1 or 2, got {q}")
    return _kernels.dist_matrix(np.ascontiguousarray(design, dtype=np.int64), q)


@dataclass
class ValidationReport:
    """Per-column outcome of the permutation invariant."""

    ok: bool
    n: int
    k: int
    column_ok: list[bool] = field(default_factory=list)
    problems: list[str] = field(default_factory=list)


def validate(design: np.ndarray) -> ValidationReport:
    """Check that every column is a permutation of 1..n (diagnostic, no raise)."""
    arr = np.asarray(design)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        return ValidationReport(False, 0, 0, [], ["matrix must be 2-D and non-empty"])
    n, k = arr.shape
    if n < 2:
        return ValidationReport(False, n, k, [False] * k, ["need at least 2 runs"])
    column_ok: list[bool] = []
    problems: list[str] = []
    want = np.arange(1, n + 1, dtype=np.int64)
    for c in range(k):
        col = arr[:, c]
        sorted_col = np.sort(col)
        if np.array_equal(sorted_col, want):
            column_ok.append(True)
            continue
        column_ok.append(False)
        if col.min() < 1 or col.max() > n:
            problems.append(f"column {c + 1}: levels not in 1..{n}")
        else:
            dup = int(sorted_col[np.nonzero(np.diff(sorted_col) == 0)[0][0]])
            problems.append(f"column {c + 1}: repeats level {dup}")
    return ValidationReport(all(column_ok), n, k, column_ok, problems)


@dataclass(frozen=True)
class SliceStructure:
    """Partition of n = m*t runs into t slices of m runs each.

    ``assignment`` maps each row to a slice id in 1..t.  A design is
    slice-valid when, for every column, the m entries of each slice fall in
    m distinct level bins ceil(x/t), covering 1..m exactly once -- i.e. each
    slice collapses to a valid m-run LHD.
    """

    t: int
    m: int
    assignment: np.ndarray

    @property
    def n(self) -> int:
        return self.t * self.m

    def rows_of(self, slice_id: int) -> np.ndarray:
        """Row indices (0-based) of the given slice id (1-based)."""
        return np.nonzero(self.assignment == slice_id)[0]


def make_slices(n: int, t: int) -> SliceStructure:
    """Contiguous slice structure: rows 0..m-1 form slice 1, and so on."""
    if t < 2:
        raise IndivisibleRunsError(f"need at least 2 slices, got t={t}")
    if n % t != 0:
        raise IndivisibleRunsError(f"run count {n} not divisible by t={t}")
    m = n // t
    if m < 2:
        raise IndivisibleRunsError(f"need at least 2 runs per slice, got m={m}")
    assignment = np.repeat(np.arange(1, t + 1, dtype=np.int64), m)
    assignment.setflags(write=False)
    return SliceStructure(t=t, m=m, assignment=assignment)


def is_slice_valid(design: np.ndarray, slices: SliceStructure) -> bool:
    """True when the design is a valid LHD and every slice collapses to one."""
    n, k = design.shape
    if n != slices.n or not validate(design).ok:
        return False
    bins = (np.asarray(design) + slices.t - 1) // slices.t
    want = np.arange(1, slices.m + 1, dtype=np.int64)
    for s in range(1, slices.t + 1):
        block = bins[slices.rows_of(s), :]
        for c in range(k):
            if not np.array_equal(np.sort(block[:, c]), want):
                return False
    return True
