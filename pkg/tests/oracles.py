"""Brute-force reference implementations used only by the tests.

Nothing here imports the solver or the verifier; graphs are taken as
``(n, edges)`` so the oracles can be fed networkx graphs or starprod graphs
alike.
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np


def adjacency(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def all_p4s(n, edges):
    """Every path a-b-c-d on four distinct vertices (each path once per direction)."""
    adj = adjacency(n, edges)
    out = []
    for b in range(n):
        for c in adj[b]:
            for a in adj[b]:
                if a == c:
                    continue
                for d in adj[c]:
                    if d != a and d != b:
                        out.append((a, b, c, d))
    return out


def is_star_bruteforce(n, edges, colors) -> bool:
    if any(colors[u] == colors[v] for u, v in edges):
        return False
    return not any(colors[a] == colors[c] and colors[b] == colors[d]
                   for a, b, c, d in all_p4s(n, edges))


@lru_cache(maxsize=None)
def restricted_growth(n: int, k: int) -> np.ndarray:
    """All assignments of colors 0..k-1 to n vertices in which colors first
    appear in increasing order: one row per set partition into <= k blocks."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    rows = np.zeros((1, 1), dtype=np.int8)
    top = np.zeros(1, dtype=np.int8)
    for _ in range(1, n):
        parts, tops = [], []
        for c in range(k):
            sel = top + 1 >= c
            if not sel.any():
                continue
            parts.append(np.hstack([rows[sel], np.full((sel.sum(), 1), c, dtype=np.int8)]))
            tops.append(np.maximum(top[sel], c))
        rows = np.vstack(parts)
        top = np.concatenate(tops).astype(np.int8)
    return rows


def star_mask(n, edges, assignments: np.ndarray) -> np.ndarray:
    ok = np.ones(len(assignments), dtype=bool)
    A = assignments
    for u, v in edges:
        ok &= A[:, u] != A[:, v]
    for a, b, c, d in all_p4s(n, edges):
        if a < d:  # the reversed path is the same constraint
            ok &= ~((A[:, a] == A[:, c]) & (A[:, b] == A[:, d]))
    return ok


def chi_star_oracle(n, edges) -> int:
    """Smallest k for which some assignment is a star coloring."""
    if n == 0:
        return 0
    for k in range(1, n + 1):
        if star_mask(n, edges, restricted_growth(n, k)).any():
            return k
    raise AssertionError("unreachable: n colors always work")


def chi_star_product_oracle(n, edges) -> int:
    """The same quantity by scanning all k**n assignments; only for tiny n."""
    for k in range(1, n + 1):
        for col in itertools.product(range(k), repeat=n):
            if is_star_bruteforce(n, edges, col):
                return k
    return 0


def count_star_colorings(n, edges, k) -> int:
    """Number of star colorings with colors from {1..k} (not up to symmetry)."""
    return sum(is_star_bruteforce(n, edges, col) for col in itertools.product(range(k), repeat=n))


def random_graph(rng: random.Random, max_n: int, connected: bool = False):
    n = rng.randint(1, max_n)
    p = rng.uniform(0.15, 0.75)
    while True:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        if not connected or _connected(n, edges):
            return n, edges


def _connected(n, edges):
    adj = adjacency(n, edges)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def sylvester_scan(k, a, b):
    """All (alpha, beta) >= 0 with alpha*a + beta*b == k."""
    return [(x, (k - x * a) // b) for x in range(k // a + 1) if (k - x * a) % b == 0]
