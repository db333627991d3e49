"""Exact algebraic generators for orthogonal and OA-based LHDs.

The power-of-two families (:func:`olhd_ye1998`, :func:`olhd_cioppa2007`,
:func:`olhd_sun2010`) share one engine: index the rows of a half-block by the
binary vectors r in GF(2)^c and attach to every column a flip-set F and a
sign character.  Column F holds sign(r) * (rank of r xor F), where the sign
is the parity character chi_{L(F)}(r) with L = I + downshift over GF(2).
Pairwise inner products reduce to character sums that vanish exactly (in
integer arithmetic), and stacking [block; 0; -block] or [block; -block] turns
the half-block into a full design with exactly zero column correlations.

Every construction returns levels 1..n; the internal arithmetic is on
centered levels, translated on return (an affine map, so correlations are
unchanged).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from itertools import combinations

import numpy as np

from .criteria import max_abs_cor
from .design import validate
from .errors import (
    DimensionMismatchError,
    InvalidOAError,
    InvalidParameterError,
    UnknownNameError,
)
from .rng import RngStream, as_generator, permutation

# ---------------------------------------------------------------------------
# Orthogonal arrays
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrthogonalArray:
    """Symmetric orthogonal array: N runs, K columns, symbols 1..s, strength 2."""

    N: int
    K: int
    s: int
    strength: int
    cells: np.ndarray

    @property
    def reps(self) -> int:
        """Appearances of each symbol per column (N/s)."""
        return self.N // self.s


def validate_oa(cells: np.ndarray, s: int, strength: int = 2) -> None:
    """Raise InvalidOAError unless strength-2 balance holds exactly."""
    A = np.asarray(cells)
    if A.ndim != 2:
        raise InvalidOAError("array must be 2-D")
    N, K = A.shape
    if s < 2 or N % s != 0 or N % (s * s) != 0:
        raise InvalidOAError(f"run count {N} incompatible with s={s} at strength 2")
    if strength < 2:
        raise InvalidOAError("strength must be at least 2")
    want = np.arange(1, s + 1)
    for c in range(K):
        vals, counts = np.unique(A[:, c], return_counts=True)
        if not (np.array_equal(vals, want) and np.all(counts == N // s)):
            raise InvalidOAError(f"column {c + 1} is not balanced over symbols 1..{s}")
    lam = N // (s * s)
    for a, b in combinations(range(K), 2):
        pair_codes = (A[:, a] - 1) * s + (A[:, b] - 1)
        counts = np.bincount(pair_codes, minlength=s * s)
        if not np.all(counts == lam):
            raise InvalidOAError(f"columns {a + 1},{b + 1} violate strength-2 balance")


def make_oa(cells: np.ndarray, s: int, strength: int = 2) -> OrthogonalArray:
    """Build and verify an OrthogonalArray from raw cells with symbols 1..s."""
    A = np.array(cells, dtype=np.int64)
    validate_oa(A, s, strength)
    A.setflags(write=False)
    return OrthogonalArray(N=A.shape[0], K=A.shape[1], s=s, strength=strength, cells=A)


def _load_catalog_index() -> dict:
    with resources.files("lhdopt.data").joinpath("checksums.json").open("r") as f:
        return json.load(f)


def catalog_names() -> list[str]:
    """Names of the bundled, checksum-verified orthogonal arrays."""
    return sorted(_load_catalog_index().keys())


def good_oa_catalog(name: str) -> OrthogonalArray:
    """Load a bundled OA by name, e.g. "OA(9,4,3,2)".

    The file's SHA-256 is checked against the shipped manifest and the
    strength-2 balance invariant is re-verified at load time, so a corrupt
    data file can never flow into downstream constructions.
    """
    index = _load_catalog_index()
    if name not in index:
        raise UnknownNameError(f"unknown catalog OA {name!r}; have {sorted(index)}")
    entry = index[name]
    data = resources.files("lhdopt.data")
    raw = data.joinpath(entry["file"]).read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != entry["sha256"]:
        raise InvalidOAError(f"checksum mismatch for {entry['file']}")
    meta = json.loads(data.joinpath(entry["sidecar"]).read_text())
    cells = np.array(
        [[int(v) for v in line.split(",")] for line in raw.decode().strip().splitlines()],
        dtype=np.int64,
    )
    if cells.shape != (meta["N"], meta["K"]):
        raise InvalidOAError(f"{entry['file']}: shape disagrees with sidecar")
    return make_oa(cells, s=meta["s"], strength=meta["t"])


def oa_to_lhd(oa: OrthogonalArray, rng: RngStream | np.random.Generator | None = None) -> np.ndarray:
    """Expand an OA into an N-run LHD by replacing each symbol's positions
    with distinct fine levels (Tang-style expansion).

    In each column, the N/s positions holding symbol m become a permutation
    of {(m-1)N/s + 1, ..., mN/s}: ascending order when ``rng`` is None
    (deterministic mode), a random permutation per (column, symbol) otherwise
    (columns left to right, symbols ascending).  Collapsing the result via
    ceil(x*s/N) recovers the source array exactly.
    """
    validate_oa(oa.cells, oa.s, oa.strength)
    gen = None if rng is None else as_generator(rng)
    N, K, s = oa.N, oa.K, oa.s
    reps = N // s
    X = np.empty((N, K), dtype=np.int64)
    for c in range(K):
        for m in range(1, s + 1):
            pos = np.nonzero(oa.cells[:, c] == m)[0]
            fine = np.arange((m - 1) * reps + 1, m * reps + 1, dtype=np.int64)
            if gen is not None:
                fine = fine[permutation(gen, reps) - 1]
            X[pos, c] = fine
    X.setflags(write=False)
    return X


def collapse_to_oa(design: np.ndarray, s: int) -> np.ndarray:
    """Inverse of the expansion: map fine levels back to OA symbols 1..s."""
    N = design.shape[0]
    return (np.asarray(design, dtype=np.int64) * s + N - 1) // N


# ---------------------------------------------------------------------------
# Power-of-two orthogonal families
# ---------------------------------------------------------------------------


def _character_columns(c: int, flip_sets: list[int]) -> np.ndarray:
    """Half-block columns over rows GF(2)^c for the given flip-set bitmasks.

    Column F at row r holds chi(r) * (r xor F + 1) with chi the parity
    character of L(F) & r, L(F) = F xor (F >> 1).  Any two such columns have
    exactly zero inner product over the mirrored full design.
    """
    q = 1 << c
    r = np.arange(q, dtype=np.int64)
    cols = []
    for F in flip_sets:
        lf = F ^ (F >> 1)
        bits = np.bitwise_count(np.bitwise_and(r, lf)).astype(np.int64)
        sign = 1 - 2 * (bits & 1)
        cols.append(sign * ((r ^ F) + 1))
    return np.column_stack(cols)


def _mirror(top: np.ndarray, center_row: bool) -> np.ndarray:
    k = top.shape[1]
    if center_row:
        return np.vstack([top, np.zeros((1, k), dtype=np.int64), -top])
    return np.vstack([top, -top])


def _centered_to_levels(X: np.ndarray) -> np.ndarray:
    """Translate a symmetric centered design to levels 1..n.

    Odd n (levels -q..q): add q+1.  Even n (levels +-1..+-n/2 with a gap at
    zero): close the gap by half a step first; both maps are monotone and the
    even-case construction keeps correlations exactly zero under it.
    """
    n = X.shape[0]
    if n % 2 == 1:
        out = X + (n // 2 + 1)
    else:
        out = ((2 * X - np.sign(X)) + n + 1) // 2
    out = out.astype(np.int64)
    out.setflags(write=False)
    return out


def olhd_ye1998(m: int) -> np.ndarray:
    """Orthogonal LHD with n = 2^m + 1 runs and k = 2m - 2 factors (m >= 2).

    Columns: the identity permutation, the m-1 single-bit flips, and the m-2
    pair flips that involve the top bit.  The design is mirror-symmetric with
    a center row at level (n+1)/2 and has exactly zero column correlations.
    """
    if m < 2:
        raise InvalidParameterError(f"m must be at least 2, got {m}")
    c = m - 1
    flips = [0] + [1 << i for i in range(c)]
    flips += [(1 << i) | (1 << (c - 1)) for i in range(c - 1)]
    top = _character_columns(c, flips)
    return _centered_to_levels(_mirror(top, center_row=True))


def olhd_cioppa2007(m: int) -> np.ndarray:
    """Orthogonal LHD with n = 2^m + 1 runs and k = m + C(m-1, 2) factors.

    Same engine as :func:`olhd_ye1998` but with every pair flip included,
    which accommodates more factors at the same run count.
    """
    if m < 2:
        raise InvalidParameterError(f"m must be at least 2, got {m}")
    c = m - 1
    flips = [0] + [1 << i for i in range(c)]
    flips += [(1 << i) | (1 << j) for i, j in combinations(range(c), 2)]
    top = _character_columns(c, flips)
    return _centered_to_levels(_mirror(top, center_row=True))


def olhd_sun2010(c: int, r: int, plus_one: bool = False) -> np.ndarray:
    """Orthogonal LHD with n = r*2^(c+1) runs (+1 with a center row when
    ``plus_one``) and k = 2^c factors, for any positive integers c, r.

    Uses the full set of 2^c character columns as a base block T with sign
    pattern W = sign(T); stacking T + j*2^c*W for j = 0..r-1 and mirroring
    keeps all integer inner products exactly zero.
    """
    if c < 1 or r < 1:
        raise InvalidParameterError(f"need c >= 1 and r >= 1, got c={c}, r={r}")
    h = 1 << c
    T = _character_columns(c, list(range(h)))
    W = np.sign(T)
    A = np.vstack([T + j * h * W for j in range(r)])
    return _centered_to_levels(_mirror(A, center_row=plus_one))


# ---------------------------------------------------------------------------
# Williams-transformation constructions
# ---------------------------------------------------------------------------


def williams_transform(x: np.ndarray, n: int) -> np.ndarray:
    """Elementwise w(a) = 2a if 2a < n else 2(n-a)-1 on residues 0..n-1.

    Maps any permutation of 0..n-1 to another permutation of 0..n-1.
    """
    a = np.asarray(x, dtype=np.int64)
    if a.size and (a.min() < 0 or a.max() >= n):
        raise InvalidParameterError(f"entries must lie in 0..{n - 1}")
    return np.where(2 * a < n, 2 * a, 2 * (n - a) - 1)


def _is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _williams_column(n: int, g: int, shift: int) -> np.ndarray:
    i = np.arange(1, n + 1, dtype=np.int64)
    return williams_transform((g * i + shift) % n, n) + 1


def olhd_butler2001(n: int, k: int) -> np.ndarray:
    """Williams-transformed multiplicative-shift LHD for n an odd prime and
    k <= n-1: column g is w((g*i + s_g) mod n) with the shift s_g chosen
    deterministically (smallest minimizer, multipliers in order) to minimize
    the running maximum absolute column correlation.

    The result is exactly orthogonal whenever exact zero is reachable inside
    this family (for example k <= 2 at n = 5 and k <= 3 at n = 7) and nearly
    orthogonal otherwise.  Exact zero correlation for every pair is *not*
    attainable at k close to n-1: no 5-run LHD has even three mutually
    orthogonal columns (exhaustively checkable), so wide Williams designs are
    orthogonal in the trigonometric-model sense only.
    """
    if not _is_odd_prime(n):
        raise InvalidParameterError("n must be an odd prime")
    if not 1 <= k <= n - 1:
        raise InvalidParameterError(f"k must be in 1..{n - 1}, got {k}")
    cols = [_williams_column(n, 1, 0)]
    for g in range(2, k + 1):
        best_shift, best_val = 0, None
        for shift in range(n):
            cand = np.column_stack(cols + [_williams_column(n, g, shift)])
            val = max_abs_cor(cand)
            if best_val is None or val < best_val - 1e-15:
                best_val, best_shift = val, shift
        cols.append(_williams_column(n, g, best_shift))
    X = np.column_stack(cols)
    X.setflags(write=False)
    return X


# ---------------------------------------------------------------------------
# OLHD x OA coupling
# ---------------------------------------------------------------------------


def olhd_lin2009(olhd: np.ndarray, oa: OrthogonalArray) -> np.ndarray:
    """Couple an n x p (nearly) orthogonal LHD with a strength-2 OA(n^2, 2f, n)
    into an n^2-run LHD with 2fp factors.

    OA columns are taken in consecutive pairs; for pair (u, v) and each base
    column a (centered values a(1..n)), the rows r yield the rotated pair
        a(u_r) + n*a(v_r)   and   n*a(u_r) - a(v_r),
    each a permutation of the n^2 centered levels.  Strength-2 balance makes
    every cross inner product a multiple of the base design's centered Gram,
    so an orthogonal input gives an exactly orthogonal output.
    """
    base = np.asarray(olhd, dtype=np.int64)
    if base.ndim != 2:
        raise DimensionMismatchError("base design must be 2-D")
    n, p = base.shape
    if not validate(base).ok:
        raise DimensionMismatchError("base design must be a valid LHD")
    if oa.N != n * n:
        raise DimensionMismatchError(f"OA needs n^2 = {n * n} runs, has {oa.N}")
    if oa.s != n:
        raise DimensionMismatchError(f"OA needs {n} symbols, has {oa.s}")
    if oa.K % 2 != 0:
        raise DimensionMismatchError(f"OA needs an even column count, has {oa.K}")
    # doubled-centered base levels keep everything in exact integers
    Z = 2 * base - (n + 1)
    u_cols = oa.cells[:, 0::2] - 1
    v_cols = oa.cells[:, 1::2] - 1
    out = []
    for t in range(oa.K // 2):
        u = u_cols[:, t]
        v = v_cols[:, t]
        for a in range(p):
            za_u = Z[u, a]
            za_v = Z[v, a]
            out.append(za_u + n * za_v)
            out.append(n * za_u - za_v)
    D2 = np.column_stack(out)  # doubled-centered levels of the n^2-run design
    X = (D2 + n * n + 1) // 2
    if not validate(X).ok:
        raise DimensionMismatchError("coupling produced an invalid design")
    X.setflags(write=False)
    return X
