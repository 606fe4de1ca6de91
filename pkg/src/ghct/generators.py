"""Instance generators for the bench corpus.

Kept out of the graph core on purpose: only the CLI and tests need them.
All generators take an explicit RNG and produce integer labels 1..n so the
output round-trips through the DIMACS writer.
"""

from __future__ import annotations

from .graph import Graph


def _weight(rng, weights):
    lo, hi = weights
    return rng.randint(lo, hi)


def erdos_renyi(n: int, p: float, rng, weights=(1, 16)) -> Graph:
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < p:
                edges.append((u, v, _weight(rng, weights)))
    return Graph(range(1, n + 1), edges)


def erdos_renyi_m(n: int, m: int, rng, weights=(1, 16)) -> Graph:
    """Uniform graph with (approximately) m distinct edges."""
    pairs = set()
    cap = n * (n - 1) // 2
    m = min(m, cap)
    while len(pairs) < m:
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        if u != v:
            pairs.add((min(u, v), max(u, v)))
    edges = [(u, v, _weight(rng, weights)) for u, v in sorted(pairs)]
    return Graph(range(1, n + 1), edges)


def grid(rows: int, cols: int, rng, weights=(1, 16)) -> Graph:
    def node(r, c):
        return r * cols + c + 1

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((node(r, c), node(r, c + 1), _weight(rng, weights)))
            if r + 1 < rows:
                edges.append((node(r, c), node(r + 1, c), _weight(rng, weights)))
    return Graph(range(1, rows * cols + 1), edges)


def cycle(n: int, rng, weights=(1, 16)) -> Graph:
    edges = [(i, i + 1, _weight(rng, weights)) for i in range(1, n)]
    if n > 2:
        edges.append((1, n, _weight(rng, weights)))
    return Graph(range(1, n + 1), edges)


def star(n: int, rng, weights=(1, 16)) -> Graph:
    edges = [(1, i, _weight(rng, weights)) for i in range(2, n + 1)]
    return Graph(range(1, n + 1), edges)


def random_tree_plus_noise(n: int, extra: int, rng, weights=(1, 16)) -> Graph:
    edges = []
    present = set()
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        edges.append((u, v, _weight(rng, weights)))
        present.add((u, v))
    added = 0
    guard = 0
    while added < extra and guard < 50 * (extra + 1):
        guard += 1
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        key = (min(u, v), max(u, v))
        if u != v and key not in present:
            present.add(key)
            edges.append((key[0], key[1], _weight(rng, weights)))
            added += 1
    return Graph(range(1, n + 1), edges)


def default_corpus(rng) -> dict:
    """Name -> Graph map for the built-in bench families.

    The cycle family is included deliberately: it is the one shape where
    the ordered-cuts route is known not to beat the classic one.
    """
    instances = {}
    for n in (16, 32):
        instances[f"erdos-renyi_n{n}"] = erdos_renyi_m(n, 4 * n, rng)
    instances["grid_4x6"] = grid(4, 6, rng)
    instances["cycle_n24"] = cycle(24, rng)
    instances["star_n24"] = star(24, rng)
    instances["random-tree-plus-noise_n24"] = random_tree_plus_noise(24, 12, rng)
    return instances
