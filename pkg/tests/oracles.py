"""Straight-line reference implementations used as test oracles.

These deliberately avoid the vectorized code paths: plain loops over agents,
pairs and individual games.
"""

import math
from collections import Counter


def wealth_by_transactions(adj, strategy, wealth, cost, stake):
    """Play every game one at a time, then charge the cost and floor at zero."""
    n = len(wealth)
    v = [float(w) for w in wealth]
    for i in range(n):
        for j in range(n):
            if i != j and adj[i][j]:
                # i dictates to j
                v[i] += (1 - strategy[i]) * stake
                v[j] += strategy[i] * stake
    return [max(v[i] - cost * stake, 0.0) for i in range(n)]


def delta_unrearranged(i, adj, v0, v1):
    """Status change written as own gain plus the change of the gaps to neighbours."""
    nbrs = [l for l in range(len(v0)) if l != i and adj[i][l]]
    total = v1[i] - v0[i]
    total += sum(v1[i] - v1[l] for l in nbrs)
    total -= sum(v0[i] - v0[l] for l in nbrs)
    return total


def ledger_step(utility, adj, strategy, v0, v1, gamma0, stake):
    """One ledger update for all ordered pairs, evaluated entry by entry."""
    n = len(v0)
    out = [[0.0] * n for _ in range(n)]
    for i in range(n):
        k_i = sum(1 for l in range(n) if l != i and adj[i][l])
        for j in range(n):
            if i == j:
                continue
            u_t = utility[i][j]
            if adj[i][j]:
                shared = sum(1 for l in range(n) if adj[i][l] and adj[j][l])
                u_t += (k_i - shared + 1) * strategy[j] * stake - (v1[j] - v0[j])
            if u_t >= gamma0:
                out[i][j] = u_t - gamma0
            elif u_t <= -gamma0:
                out[i][j] = u_t + gamma0
            else:
                out[i][j] = 0.0
    return out


def distances(adj):
    """Floyd-Warshall hop distances; None for unreachable pairs."""
    n = len(adj)
    inf = math.inf
    d = [[0 if i == j else (1 if adj[i][j] else inf) for j in range(n)] for i in range(n)]
    for m in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][m] + d[m][j] < d[i][j]:
                    d[i][j] = d[i][m] + d[m][j]
    return [[None if x == inf else x for x in row] for row in d]


def component_sizes(adj):
    d = distances(adj)
    n = len(adj)
    seen = set()
    sizes = []
    for i in range(n):
        if i in seen:
            continue
        comp = {j for j in range(n) if d[i][j] is not None}
        seen |= comp
        sizes.append(len(comp))
    return sorted(sizes, reverse=True)


def susceptibility(sizes):
    counts = Counter(sizes)
    counts[max(sizes)] -= 1
    num = sum(ns * s * s for s, ns in counts.items())
    den = sum(ns * s for s, ns in counts.items())
    return num / den if den else 0.0


def local_clustering(adj, i):
    n = len(adj)
    nbrs = [j for j in range(n) if adj[i][j]]
    k = len(nbrs)
    if k < 2:
        return 0.0
    links = sum(1 for a in nbrs for b in nbrs if a < b and adj[a][b])
    return 2 * links / (k * (k - 1))


def path_length(adj):
    d = distances(adj)
    n = len(adj)
    vals = [d[i][j] for i in range(n) for j in range(i + 1, n) if d[i][j] is not None]
    return sum(vals) / len(vals) if vals else 0.0


def second_neighbours(adj):
    d = distances(adj)
    n = len(adj)
    if n == 0:
        return 0.0
    return sum(1 for i in range(n) for j in range(n) if d[i][j] == 2) / n


def edge_pearson(adj, values):
    n = len(adj)
    xs, ys = [], []
    for i in range(n):
        for j in range(n):
            if adj[i][j]:
                xs.append(values[i])
                ys.append(values[j])
    if not xs or len(set(xs)) == 1:
        return None
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    return cov / math.sqrt(vx * vy)


def gini(values):
    n = len(values)
    total = sum(values)
    if total == 0:
        return 0.0
    return sum(abs(a - b) for a in values for b in values) / (2 * n * total)
