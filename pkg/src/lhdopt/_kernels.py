"""Hot numeric kernels, JIT-compiled with a pure-NumPy fallback.

The metaheuristic optimizers spend almost all their time in the pair-distance
and projection sums below, so those carry ``numba.njit`` implementations.
Setting the environment variable ``LHDOPT_DISABLE_NUMBA=1`` (or running
without numba installed) selects the vectorized NumPy path instead; both
paths implement identical arithmetic, and ``benchmarks/kernel_speed.py``
compares them.

Results of the two paths agree to floating-point roundoff but are not
guaranteed bit-identical (summation order differs), so seeded runs are
reproducible within a mode, not across modes.

All kernels take the design as an int64 array of levels 1..n and treat a
"swap" as exchanging rows ``i`` and ``j`` within column ``col``.  Delta
kernels are evaluated on the design *before* the swap.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("LHDOPT_DISABLE_NUMBA", "").strip().lower()
NUMBA_DISABLED = _FLAG not in ("", "0", "false")

try:
    if NUMBA_DISABLED:
        raise ImportError("numba disabled via LHDOPT_DISABLE_NUMBA")
    from numba import njit

    NUMBA_ENABLED = True
except ImportError:
    NUMBA_ENABLED = False


# ---------------------------------------------------------------------------
# NumPy implementations (always available; fallback path)
# ---------------------------------------------------------------------------

def dist_matrix_np(X: np.ndarray, q: int) -> np.ndarray:
    """Full n x n inter-row distance matrix, d_ij = (sum_l |x_il-x_jl|^q)^(1/q)."""
    diff = np.abs(X[:, None, :] - X[None, :, :]).astype(np.float64)
    if q == 1:
        return diff.sum(axis=2)
    return np.sqrt((diff * diff).sum(axis=2))


def phi_sum_np(X: np.ndarray, p: float, q: int) -> float:
    """Sum over row pairs of d_ij^(-p)."""
    n = X.shape[0]
    D = dist_matrix_np(X, q)
    iu = np.triu_indices(n, k=1)
    return float(np.sum(D[iu] ** (-p)))


def phi_stable_np(X: np.ndarray, p: float, q: int) -> float:
    """phi_p with the smallest distance factored out so large p cannot underflow."""
    n = X.shape[0]
    D = dist_matrix_np(X, q)
    d = D[np.triu_indices(n, k=1)]
    dmin = d.min()
    s = np.sum((dmin / d) ** p)
    return float(s ** (1.0 / p) / dmin)


def phi_delta_np(X: np.ndarray, col: int, i: int, j: int, p: float, q: int,
                 sp: float) -> float:
    """New pair sum of d^(-p) after swapping rows i, j in column col."""
    n = X.shape[0]
    mask = np.ones(n, dtype=bool)
    mask[i] = False
    mask[j] = False
    xi, xj = X[i, col], X[j, col]
    gcol = X[mask, col]
    gi = np.abs(xi - gcol).astype(np.float64)
    gj = np.abs(xj - gcol).astype(np.float64)
    di = np.abs(X[i] - X[mask]).astype(np.float64)
    dj = np.abs(X[j] - X[mask]).astype(np.float64)
    if q == 1:
        d_il = di.sum(axis=1)
        d_jl = dj.sum(axis=1)
        new_il = d_il - gi + gj
        new_jl = d_jl - gj + gi
        sp += np.sum(new_il ** (-p)) + np.sum(new_jl ** (-p))
        sp -= np.sum(d_il ** (-p)) + np.sum(d_jl ** (-p))
    else:
        d2_il = (di * di).sum(axis=1)
        d2_jl = (dj * dj).sum(axis=1)
        new_il = d2_il - gi * gi + gj * gj
        new_jl = d2_jl - gj * gj + gi * gi
        hp = p / 2.0
        sp += np.sum(new_il ** (-hp)) + np.sum(new_jl ** (-hp))
        sp -= np.sum(d2_il ** (-hp)) + np.sum(d2_jl ** (-hp))
    return float(sp)


def maxpro_sum_np(X: np.ndarray) -> float:
    """Sum over row pairs of 1 / prod_l (x_il - x_jl)^2; -1.0 if a gap is zero."""
    n = X.shape[0]
    diff = (X[:, None, :] - X[None, :, :]).astype(np.float64)
    prod = np.prod(diff * diff, axis=2)
    iu = np.triu_indices(n, k=1)
    pairs = prod[iu]
    if np.any(pairs == 0.0):
        return -1.0
    return float(np.sum(1.0 / pairs))


def maxpro_delta_np(X: np.ndarray, col: int, i: int, j: int, s: float) -> float:
    """New maxpro pair sum after swapping rows i, j in column col."""
    n = X.shape[0]
    mask = np.ones(n, dtype=bool)
    mask[i] = False
    mask[j] = False
    di = (X[i] - X[mask]).astype(np.float64)
    dj = (X[j] - X[mask]).astype(np.float64)
    prod_i = np.prod(di * di, axis=1)
    prod_j = np.prod(dj * dj, axis=1)
    gcol = X[mask, col]
    gi2 = (X[i, col] - gcol).astype(np.float64) ** 2
    gj2 = (X[j, col] - gcol).astype(np.float64) ** 2
    # the swap moves the column-col factor between the two affected rows
    new_i = prod_i / gi2 * gj2
    new_j = prod_j / gj2 * gi2
    s -= np.sum(1.0 / prod_i) + np.sum(1.0 / prod_j)
    s += np.sum(1.0 / new_i) + np.sum(1.0 / new_j)
    return float(s)


# ---------------------------------------------------------------------------
# Numba implementations
# ---------------------------------------------------------------------------

if NUMBA_ENABLED:

    @njit(cache=True)
    def _dist_matrix_nb(X, q):
        n, k = X.shape
        D = np.zeros((n, n), dtype=np.float64)
        for i in range(n):
            for j in range(i + 1, n):
                d = 0.0
                if q == 1:
                    for c in range(k):
                        d += abs(X[i, c] - X[j, c])
                else:
                    for c in range(k):
                        g = X[i, c] - X[j, c]
                        d += g * g
                    d = np.sqrt(d)
                D[i, j] = d
                D[j, i] = d
        return D

    @njit(cache=True)
    def _phi_sum_nb(X, p, q):
        n, k = X.shape
        s = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                d = 0.0
                if q == 1:
                    for c in range(k):
                        d += abs(X[i, c] - X[j, c])
                else:
                    for c in range(k):
                        g = X[i, c] - X[j, c]
                        d += g * g
                    d = np.sqrt(d)
                s += d ** (-p)
        return s

    @njit(cache=True)
    def _phi_stable_nb(X, p, q):
        n, k = X.shape
        m = n * (n - 1) // 2
        d = np.empty(m, dtype=np.float64)
        t = 0
        for i in range(n):
            for j in range(i + 1, n):
                v = 0.0
                if q == 1:
                    for c in range(k):
                        v += abs(X[i, c] - X[j, c])
                else:
                    for c in range(k):
                        g = X[i, c] - X[j, c]
                        v += g * g
                    v = np.sqrt(v)
                d[t] = v
                t += 1
        dmin = d[0]
        for t in range(1, m):
            if d[t] < dmin:
                dmin = d[t]
        s = 0.0
        for t in range(m):
            s += (dmin / d[t]) ** p
        return s ** (1.0 / p) / dmin

    @njit(cache=True)
    def _phi_delta_nb(X, col, i, j, p, q, sp):
        n, k = X.shape
        xi = X[i, col]
        xj = X[j, col]
        for l in range(n):
            if l == i or l == j:
                continue
            if q == 1:
                d_il = 0.0
                d_jl = 0.0
                for c in range(k):
                    d_il += abs(X[i, c] - X[l, c])
                    d_jl += abs(X[j, c] - X[l, c])
                gi = abs(xi - X[l, col])
                gj = abs(xj - X[l, col])
                sp -= d_il ** (-p) + d_jl ** (-p)
                sp += (d_il - gi + gj) ** (-p) + (d_jl - gj + gi) ** (-p)
            else:
                d2_il = 0.0
                d2_jl = 0.0
                for c in range(k):
                    g = X[i, c] - X[l, c]
                    d2_il += g * g
                    g = X[j, c] - X[l, c]
                    d2_jl += g * g
                gi = xi - X[l, col]
                gj = xj - X[l, col]
                hp = p / 2.0
                sp -= d2_il ** (-hp) + d2_jl ** (-hp)
                sp += (d2_il - gi * gi + gj * gj) ** (-hp)
                sp += (d2_jl - gj * gj + gi * gi) ** (-hp)
        return sp

    @njit(cache=True)
    def _maxpro_sum_nb(X):
        n, k = X.shape
        s = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                prod = 1.0
                for c in range(k):
                    g = X[i, c] - X[j, c]
                    prod *= g * g
                if prod == 0.0:
                    return -1.0
                s += 1.0 / prod
        return s

    @njit(cache=True)
    def _maxpro_delta_nb(X, col, i, j, s):
        n, k = X.shape
        xi = X[i, col]
        xj = X[j, col]
        for l in range(n):
            if l == i or l == j:
                continue
            prod_i = 1.0
            prod_j = 1.0
            for c in range(k):
                g = X[i, c] - X[l, c]
                prod_i *= g * g
                g = X[j, c] - X[l, c]
                prod_j *= g * g
            gi2 = float(xi - X[l, col]) ** 2
            gj2 = float(xj - X[l, col]) ** 2
            s -= 1.0 / prod_i + 1.0 / prod_j
            s += 1.0 / (prod_i / gi2 * gj2) + 1.0 / (prod_j / gj2 * gi2)
        return s

    dist_matrix = _dist_matrix_nb
    phi_sum = _phi_sum_nb
    phi_stable = _phi_stable_nb
    phi_delta = _phi_delta_nb
    maxpro_sum = _maxpro_sum_nb
    maxpro_delta = _maxpro_delta_nb
else:
    dist_matrix = dist_matrix_np
    phi_sum = phi_sum_np
    phi_stable = phi_stable_np
    phi_delta = phi_delta_np
    maxpro_sum = maxpro_sum_np
    maxpro_delta = maxpro_delta_np


def warm_up() -> None:
    """Force JIT compilation of every kernel on a toy design."""
    X = np.array([[1, 2], [2, 1], [3, 3]], dtype=np.int64)
    for q in (1, 2):
        dist_matrix(X, q)
        phi_sum(X, 15.0, q)
        phi_stable(X, 15.0, q)
        phi_delta(X, 0, 0, 1, 15.0, q, 1.0)
    maxpro_sum(X)
    maxpro_delta(X, 0, 0, 1, 1.0)


IMPLEMENTATIONS = {
    "numpy": {
        "dist_matrix": dist_matrix_np,
        "phi_sum": phi_sum_np,
        "phi_stable": phi_stable_np,
        "phi_delta": phi_delta_np,
        "maxpro_sum": maxpro_sum_np,
        "maxpro_delta": maxpro_delta_np,
    }
}
if NUMBA_ENABLED:
    IMPLEMENTATIONS["numba"] = {
        "dist_matrix": _dist_matrix_nb,
        "phi_sum": _phi_sum_nb,
        "phi_stable": _phi_stable_nb,
        "phi_delta": _phi_delta_nb,
        "maxpro_sum": _maxpro_sum_nb,
        "maxpro_delta": _maxpro_delta_nb,
    }

ACTIVE = "numba" if NUMBA_ENABLED else "numpy"
