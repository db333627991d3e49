"""Naive reference implementations used as independent oracles.

Everything here is deliberately written with plain Python loops and the math
module only -- no shared code with the library's fast paths -- so a test that
compares the two is a genuine cross-check.
"""

import math


def pair_distances(design, q=1):
    n = len(design)
    k = len(design[0])
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if q == 1:
                d = sum(abs(design[i][c] - design[j][c]) for c in range(k))
            else:
                d = math.sqrt(sum((design[i][c] - design[j][c]) ** 2 for c in range(k)))
            out.append(d)
    return out


def phi_p(design, p=15, q=1):
    return sum(d ** (-p) for d in pair_distances(design, q)) ** (1.0 / p)


def phi_from_distances(distances, p=15):
    return sum(d ** (-p) for d in distances) ** (1.0 / p)


def maxpro_psi(design):
    n = len(design)
    k = len(design[0])
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            prod = 1.0
            for c in range(k):
                prod *= (design[i][c] - design[j][c]) ** 2
            total += 1.0 / prod
    npairs = n * (n - 1) / 2
    return (total / npairs) ** (1.0 / k)


def pearson(x, y):
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    cov = sum((a - mx) * (b - my) for a, b in zip(x, y))
    vx = sum((a - mx) ** 2 for a in x)
    vy = sum((b - my) ** 2 for b in y)
    return cov / math.sqrt(vx * vy)


def correlations(design):
    n = len(design)
    k = len(design[0])
    cols = [[design[r][c] for r in range(n)] for c in range(k)]
    return [[pearson(cols[a], cols[b]) for b in range(k)] for a in range(k)]


def avg_abs_cor(design):
    k = len(design[0])
    C = correlations(design)
    vals = [abs(C[a][b]) for a in range(k) for b in range(a + 1, k)]
    return sum(vals) / len(vals)


def max_abs_cor(design):
    k = len(design[0])
    C = correlations(design)
    return max(abs(C[a][b]) for a in range(k) for b in range(a + 1, k))


def avg_sq_cor(design):
    k = len(design[0])
    C = correlations(design)
    vals = [C[a][b] ** 2 for a in range(k) for b in range(a + 1, k)]
    return sum(vals) / len(vals)
