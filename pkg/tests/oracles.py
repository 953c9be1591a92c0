"""Slow, obviously-correct reference implementations used by the tests."""

import math

import numpy as np


def pearson_loop(x, y):
    n = len(x)
    mx, my = sum(x) / n, sum(y) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    return sxy / math.sqrt(sxx * syy)


def orthomax_oracle(a, iters=2000, tol=1e-14):
    """Kaiser-normalized varimax via the SVD iteration."""
    h = np.sqrt((a**2).sum(axis=1))
    b = a / h[:, None]
    p, k = b.shape
    r = np.eye(k)
    d = 0.0
    for _ in range(iters):
        lam = b @ r
        u, s, vt = np.linalg.svd(b.T @ (lam**3 - lam @ np.diag((lam**2).sum(axis=0)) / p))
        r = u @ vt
        d_new = s.sum()
        if d_new < d * (1 + tol):
            break
        d = d_new
    return (b @ r) * h[:, None]


def pairwise(points):
    return np.sqrt(((points[:, None, :] - points[None, :, :]) ** 2).sum(axis=-1))


def coreness_by_deletion(adj):
    """Coreness from the definition: the largest k whose k-core holds the node.

    ``adj`` maps node -> set of neighbours.
    """
    core = {v: 0 for v in adj}
    k = 1
    while True:
        alive = set(adj)
        changed = True
        while changed:
            changed = False
            for v in sorted(alive):
                if len(adj[v] & alive) < k:
                    alive.discard(v)
                    changed = True
        if not alive:
            return core
        for v in alive:
            core[v] = k
        k += 1


def cosine_loop(rows):
    rows = [list(map(float, r)) for r in rows]
    n = len(rows)
    out = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            num = sum(a * b for a, b in zip(rows[i], rows[j]))
            den = math.sqrt(sum(a * a for a in rows[i])) * math.sqrt(sum(b * b for b in rows[j]))
            out[i][j] = num / den if den else 0.0
    return out


def co_occurrence_pairs(article_countries):
    """Pair counts by enumerating every article's country pairs."""
    counts = {}
    for cs in article_countries:
        cs = sorted(cs)
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                counts[(cs[i], cs[j])] = counts.get((cs[i], cs[j]), 0) + 1
    return counts
