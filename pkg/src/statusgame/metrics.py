"""Network and wealth observables of a world snapshot.

Graphs are passed as symmetric boolean adjacency matrices. Coefficients that
are undefined for a snapshot (assortativity of a regular graph, homophily
with identical wealths) are returned as ``None``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields

import numba
import numpy as np

from ._bits import bitsets, popcount
from .core import World

HYPERGENEROUS = 0.5


@numba.njit(cache=True)
def _bfs_all(bits, n):
    """Bitset BFS from every node.

    Returns component labels, number of components, the summed distance
    over connected ordered pairs, the number of such ordered pairs and the
    total number of (node, node at distance 2) pairs.
    """
    words = bits.shape[1]
    labels = np.full(n, -1, np.int64)
    visited = np.empty(words, np.uint64)
    frontier = np.empty(words, np.uint64)
    nxt = np.empty(words, np.uint64)
    dist_sum = 0
    pairs = 0
    second = 0
    n_comp = 0
    one = np.uint64(1)
    for s in range(n):
        visited[:] = 0
        frontier[:] = 0
        visited[s >> 6] |= one << np.uint64(s & 63)
        frontier[s >> 6] |= one << np.uint64(s & 63)
        level = 0
        while True:
            level += 1
            nxt[:] = 0
            for w in range(words):
                f = frontier[w]
                while f:
                    low = f & (~f + one)
                    u = (w << 6) + int(popcount(low - one))
                    for v in range(words):
                        nxt[v] |= bits[u, v]
                    f ^= low
            found = 0
            for w in range(words):
                nxt[w] &= ~visited[w]
                visited[w] |= nxt[w]
                found += int(popcount(nxt[w]))
            if found == 0:
                break
            dist_sum += level * found
            pairs += found
            if level == 2:
                second += found
            for w in range(words):
                frontier[w] = nxt[w]
        if labels[s] < 0:
            for w in range(words):
                f = visited[w]
                while f:
                    low = f & (~f + one)
                    labels[(w << 6) + int(popcount(low - one))] = n_comp
                    f ^= low
            n_comp += 1
    return labels, n_comp, dist_sum, pairs, second


@numba.njit(cache=True)
def _neighbour_links(bits, n):
    """Per node, twice the number of links among its neighbours."""
    words = bits.shape[1]
    out = np.zeros(n, np.int64)
    one = np.uint64(1)
    for u in range(n):
        total = 0
        for w in range(words):
            f = bits[u, w]
            while f:
                low = f & (~f + one)
                v = (w << 6) + int(popcount(low - one))
                for x in range(words):
                    total += int(popcount(bits[u, x] & bits[v, x]))
                f ^= low
        out[u] = total
    return out


def _path_stats(adjacency):
    labels, n_comp, dist_sum, pairs, second = _bfs_all(bitsets(adjacency), len(adjacency))
    # ordered pairs were counted twice
    return labels, n_comp, dist_sum // 2, pairs // 2, second


def components(adjacency: np.ndarray, count_isolated: bool = True) -> list[int]:
    """Connected component sizes, largest first.

    Isolated agents form clusters of size one unless ``count_isolated`` is
    False, in which case they are dropped from the list.
    """
    n = len(adjacency)
    if n == 0:
        return []
    labels, n_comp, *_ = _path_stats(adjacency)
    sizes = np.bincount(labels, minlength=n_comp)
    if not count_isolated:
        sizes = sizes[sizes > 1]
    return sorted(sizes.tolist(), reverse=True)


def susceptibility(cluster_sizes) -> float:
    """Mean cluster size seen by a random node, ignoring one largest cluster."""
    sizes = sorted(cluster_sizes, reverse=True)[1:]
    if not sizes:
        return 0.0
    s = np.asarray(sizes, dtype=float)
    return float((s * s).sum() / s.sum())


def clustering_coefficients(adjacency: np.ndarray) -> np.ndarray:
    a = np.asarray(adjacency, dtype=float)
    k = a.sum(axis=1)
    links = ((a @ a) * a).sum(axis=1)  # twice the edges among neighbours
    denom = k * (k - 1)
    out = np.zeros(len(a))
    np.divide(links, denom, out=out, where=k >= 2)
    return out


def local_clustering(adjacency: np.ndarray, i: int) -> float:
    nbrs = np.flatnonzero(adjacency[i])
    k = len(nbrs)
    if k < 2:
        return 0.0
    among = np.count_nonzero(adjacency[np.ix_(nbrs, nbrs)]) // 2
    return 2.0 * among / (k * (k - 1))


def avg_clustering(adjacency: np.ndarray) -> float:
    if len(adjacency) == 0:
        return 0.0
    return float(clustering_coefficients(adjacency).mean())


def avg_path_length(adjacency: np.ndarray) -> float:
    """Mean distance over pairs that are connected at all."""
    if len(adjacency) == 0:
        return 0.0
    _, _, dist_sum, pairs, _ = _path_stats(adjacency)
    return dist_sum / pairs if pairs else 0.0


def mean_second_neighbours(adjacency: np.ndarray) -> float:
    n = len(adjacency)
    if n == 0:
        return 0.0
    *_, second = _path_stats(adjacency)
    return second / n


def _pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    if len(x) == 0 or np.ptp(x) == 0 or np.ptp(y) == 0:
        return None
    x = x - x.mean()
    y = y - y.mean()
    r = float(np.dot(x, y) / math.sqrt(np.dot(x, x) * np.dot(y, y)))
    return min(1.0, max(-1.0, r))


def _link_pearson(adj_f: np.ndarray, k: np.ndarray, values: np.ndarray) -> float | None:
    """Edge-list Pearson coefficient from node values without listing edges.

    Every link end carries weight one, so node i enters k_i times; the
    cross term is the quadratic form of the centred values with A.
    """
    ends = k.sum()
    if ends == 0:
        return None
    linked = values[k > 0]
    if np.ptp(linked) == 0:
        return None
    mu = np.dot(k, values) / ends
    c = values - mu
    var = np.dot(k, c * c)
    cov = np.dot(c, adj_f @ c)
    if var <= 0:
        return None
    return min(1.0, max(-1.0, float(cov / var)))


def assortativity(adjacency: np.ndarray) -> float | None:
    """Degree correlation across links; None when every link end has the same degree.

    Each undirected link enters in both orientations.
    """
    adj = np.asarray(adjacency, dtype=bool)
    src, dst = np.nonzero(adj)
    k = adj.sum(axis=1).astype(float)
    return _pearson(k[src], k[dst])


def homophily(adjacency: np.ndarray, wealth: np.ndarray) -> float | None:
    """Wealth correlation across links; None when undefined."""
    src, dst = np.nonzero(np.asarray(adjacency, dtype=bool))
    v = np.asarray(wealth, dtype=float)
    return _pearson(v[src], v[dst])


def gini(wealth) -> float:
    v = np.sort(np.asarray(wealth, dtype=float))
    if v.size and v[0] < 0:
        raise ValueError("gini is only defined for non-negative wealth")
    total = v.sum()
    if v.size == 0 or total == 0:
        return 0.0
    n = v.size
    rank = np.arange(1, n + 1)
    return float(((2 * rank - n - 1) * v).sum() / (n * total))


def strategy_stats(strategy) -> tuple[float, float]:
    """Mean division strategy and the share of agents giving away more than half."""
    x = np.asarray(strategy, dtype=float)
    if x.size == 0:
        return 0.0, 0.0
    return float(x.mean()), float(np.count_nonzero(x > HYPERGENEROUS) / x.size)


@dataclass(frozen=True)
class MetricsRecord:
    cycle: int
    avg_degree: float
    n_clusters: int
    max_cluster: int
    avg_cluster: float
    susceptibility: float
    avg_path_len: float
    avg_clustering: float
    n2: float
    assortativity: float | None
    homophily: float | None
    gini: float
    min_wealth: float
    avg_wealth: float
    max_wealth: float
    avg_strategy: float
    hypergenerosity: float

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def as_dict(self) -> dict:
        return asdict(self)


METRIC_NAMES = MetricsRecord.columns()[1:]
OPTIONAL_METRICS = ("assortativity", "homophily")


def collect(world: World, cycle: int | None = None, count_isolated: bool = True) -> MetricsRecord:
    """Every observable of ``world`` in one record."""
    adj = world.adjacency
    v = world.agents.wealth
    n = len(v)
    a = adj.astype(float)
    k = a.sum(axis=1)
    bits = bitsets(adj)

    labels, n_comp, dist_sum, pairs, second = _bfs_all(bits, n)
    dist_sum //= 2
    pairs //= 2
    sizes = np.bincount(labels, minlength=n_comp)
    if not count_isolated:
        sizes = sizes[sizes > 1]

    tri = _neighbour_links(bits, n).astype(float)
    local_c = np.zeros(n)
    np.divide(tri, k * (k - 1), out=local_c, where=k >= 2)

    avg_x, g_h = strategy_stats(world.agents.strategy)
    return MetricsRecord(
        cycle=world.cycle if cycle is None else cycle,
        avg_degree=float(k.mean()),
        n_clusters=int(len(sizes)),
        max_cluster=int(sizes.max()) if len(sizes) else 0,
        avg_cluster=float(sizes.mean()) if len(sizes) else 0.0,
        susceptibility=susceptibility(sizes.tolist()),
        avg_path_len=dist_sum / pairs if pairs else 0.0,
        avg_clustering=float(local_c.mean()),
        n2=second / n,
        assortativity=_link_pearson(a, k, k),
        homophily=_link_pearson(a, k, v),
        gini=gini(v),
        min_wealth=float(v.min()),
        avg_wealth=float(v.mean()),
        max_wealth=float(v.max()),
        avg_strategy=avg_x,
        hypergenerosity=g_h,
    )
