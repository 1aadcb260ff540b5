"""Simple undirected graphs, the path/cycle/star families and their products.

Product graphs number their vertices row-major: vertex ``(i, j)`` of
``G x H`` gets index ``i * |V(H)| + j``.  Patterns, colorings and files all
rely on that order.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import BudgetExceeded, ParseError, SizeTooSmall

Edge = tuple[int, int]


class ProductVertex(NamedTuple):
    i: int
    j: int
    flat: int


def product_vertex(flat: int, n2: int) -> ProductVertex:
    return ProductVertex(flat // n2, flat % n2, flat)


def flat_index(i: int, j: int, n2: int) -> int:
    return i * n2 + j


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices`` (kept in the given order) and the
        map from new index to old index."""
        old = list(vertices)
        pos = {v: k for k, v in enumerate(old)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(old), tuple(edges), self.label), old

    def __repr__(self):
        tag = f" {self.label}" if self.label else ""
        return f"<Graph{tag} n={self.n} m={self.m}>"


# -- families ---------------------------------------------------------------

def path(n: int) -> Graph:
    if n < 1:
        raise SizeTooSmall(f"Path needs n >= 1, got {n}")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)), f"P{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise SizeTooSmall(f"Cycle needs n >= 3, got {n}")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)), f"C{n}")


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise SizeTooSmall(f"CompleteBipartite needs a, b >= 1, got {a}, {b}")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)), f"K{a},{b}")


def star(n: int) -> Graph:
    if n < 1:
        raise SizeTooSmall(f"Star needs n >= 1, got {n}")
    g = complete_bipartite(1, n)
    return Graph(g.n, g.edges, f"K1,{n}")


def complete(n: int) -> Graph:
    if n < 1:
        raise SizeTooSmall(f"Complete needs n >= 1, got {n}")
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)), f"K{n}")


_FAMILIES = {
    "path": path, "p": path,
    "cycle": cycle, "c": cycle,
    "star": star, "s": star,
    "complete": complete, "k": complete,
}


def build_family(kind: str, *sizes: int) -> Graph:
    """Build a named family member, e.g. ``build_family("cycle", 5)`` or
    ``build_family("complete_bipartite", 1, 4)``."""
    key = kind.lower().replace("-", "_")
    if key in ("complete_bipartite", "kb", "bipartite"):
        return complete_bipartite(*sizes)
    try:
        fn = _FAMILIES[key]
    except KeyError:
        raise ValueError(f"unknown family {kind!r}") from None
    return fn(*sizes)


# -- products ---------------------------------------------------------------

def tensor_product(g: Graph, h: Graph) -> Graph:
    n2 = h.n
    edges = []
    for u, u2 in g.edges:
        for v, v2 in h.edges:
            edges.append((u * n2 + v, u2 * n2 + v2))
            edges.append((u * n2 + v2, u2 * n2 + v))
    label = f"{g.label}x{h.label}" if g.label and h.label else "tensor"
    return Graph(g.n * h.n, tuple(edges), label)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    n2 = h.n
    edges = []
    for i in range(g.n):
        for v, v2 in h.edges:
            edges.append((i * n2 + v, i * n2 + v2))
    for u, u2 in g.edges:
        for j in range(n2):
            edges.append((u * n2 + j, u2 * n2 + j))
    label = f"{g.label}□{h.label}" if g.label and h.label else "cartesian"
    return Graph(g.n * h.n, tuple(edges), label)


def transpose_product(g: Graph, n1: int, n2: int) -> Graph:
    """Relabel a row-major ``n1 x n2`` product as the ``n2 x n1`` product."""
    perm = [0] * g.n
    for i in range(n1):
        for j in range(n2):
            perm[i * n2 + j] = j * n1 + i
    return Graph(g.n, tuple((perm[u], perm[v]) for u, v in g.edges), None)


# -- components ---------------------------------------------------------------

def bfs_order(g: Graph, start: int, seen: list[bool] | None = None) -> list[int]:
    if seen is None:
        seen = [False] * g.n
    seen[start] = True
    order = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if not seen[w]:
                seen[w] = True
                order.append(w)
                queue.append(w)
    return order


def component_vertex_sets(g: Graph) -> list[list[int]]:
    """Vertex lists of the components, each in BFS order from its lowest vertex."""
    seen = [False] * g.n
    comps = []
    for v in range(g.n):
        if not seen[v]:
            comps.append(bfs_order(g, v, seen))
    return comps


def connected_components(g: Graph) -> list[tuple[Graph, list[int]]]:
    """Induced components with their vertex maps (new index -> vertex of ``g``).

    Component vertices keep ascending original order so a component of a
    product is itself numbered row-major.
    """
    return [g.induced(sorted(vs)) for vs in component_vertex_sets(g)]


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(bfs_order(g, 0)) == g.n


def has_triangle(g: Graph) -> bool:
    sets = g.adj_sets
    for u, v in g.edges:
        if sets[u] & sets[v]:
            return True
    return False


# -- subgraph search ---------------------------------------------------------

def _gadget_order(gadget: Graph) -> list[int]:
    # Greedy: next vertex has the most already-placed neighbours, then highest degree.
    placed: list[int] = []
    inside = [False] * gadget.n
    while len(placed) < gadget.n:
        best, key = -1, None
        for v in range(gadget.n):
            if inside[v]:
                continue
            k = (sum(inside[w] for w in gadget.adj[v]), gadget.degree(v), -v)
            if key is None or k > key:
                best, key = v, k
        inside[best] = True
        placed.append(best)
    return placed


def contains_subgraph(host: Graph, gadget: Graph, node_budget: int = 1_000_000) -> dict[int, int] | None:
    """Find an injective map gadget -> host sending edges to edges.

    The subgraph need not be induced.  Returns ``None`` when the search is
    exhausted and raises :class:`BudgetExceeded` if ``node_budget`` runs out,
    which means "unknown", never "absent".
    """
    if gadget.n > host.n or gadget.m > host.m:
        return None
    if gadget.n == 0:
        return {}
    order = _gadget_order(gadget)
    pos = {v: k for k, v in enumerate(order)}
    back = [[w for w in gadget.adj[v] if pos[w] < pos[v]] for v in order]
    need = [gadget.degree(v) for v in order]
    hdeg = [host.degree(v) for v in range(host.n)]
    hsets = host.adj_sets
    mapping = [-1] * gadget.n
    used = [False] * host.n
    nodes = 0

    def candidates(t):
        prev = back[t]
        if prev:
            anchor = mapping[prev[0]]
            pool = host.adj[anchor]
        else:
            pool = range(host.n)
        for x in pool:
            if used[x] or hdeg[x] < need[t]:
                continue
            if all(x in hsets[mapping[w]] for w in prev):
                yield x

    def extend(t):
        nonlocal nodes
        if t == gadget.n:
            return True
        v = order[t]
        for x in candidates(t):
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded(f"subgraph search exceeded {node_budget} nodes")
            mapping[v] = x
            used[x] = True
            if extend(t + 1):
                return True
            used[x] = False
            mapping[v] = -1
        return False

    if extend(0):
        emb = {v: mapping[v] for v in range(gadget.n)}
        assert all(host.has_edge(emb[u], emb[v]) for u, v in gadget.edges)
        return emb
    return None


# -- file formats ---------------------------------------------------------------

def to_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                n = int(parts[2])
            elif parts[0] == "e":
                edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
            else:
                raise ParseError(f"line {lineno}: unexpected record {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: malformed {raw!r}") from None
    if n is None:
        raise ParseError("missing 'p edge' header")
    try:
        return Graph(n, tuple(edges))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def to_json(g: Graph) -> str:
    doc = {"n": g.n, "edges": [list(e) for e in g.edges], "label": g.label}
    return json.dumps(doc, sort_keys=True) + "\n"


def from_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
        return Graph(int(doc["n"]), tuple(tuple(e) for e in doc["edges"]), doc.get("label"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph JSON: {exc}") from None


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_dimacs(text)


def write_graph(g: Graph, path, fmt: str | None = None) -> None:
    fmt = fmt or ("json" if str(path).endswith(".json") else "dimacs")
    text = to_json(g) if fmt == "json" else to_dimacs(g)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
