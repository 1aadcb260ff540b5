"""Vertex colorings and the star-coloring verifier.

Colors are 1-based everywhere a user can see them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .errors import LengthMismatch, NotProper, ParseError
from .graph import Graph


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]

    def __post_init__(self):
        cols = tuple(int(c) for c in self.colors)
        if any(c < 1 for c in cols):
            raise ValueError("colors are 1-based; found an entry < 1")
        object.__setattr__(self, "colors", cols)

    @property
    def k(self) -> int:
        return len(set(self.colors))

    @property
    def max_color(self) -> int:
        return max(self.colors, default=0)

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, v):
        return self.colors[v]

    def restrict(self, vertices: Sequence[int]) -> "Coloring":
        return Coloring(tuple(self.colors[v] for v in vertices))


def as_coloring(c) -> Coloring:
    return c if isinstance(c, Coloring) else Coloring(tuple(c))


@dataclass(frozen=True)
class VerificationReport:
    proper_violation: tuple[int, int] | None = None
    star_violation: tuple[int, int, int, int] | None = None

    @property
    def is_star(self) -> bool:
        return self.proper_violation is None and self.star_violation is None

    @property
    def is_proper(self) -> bool:
        return self.proper_violation is None

    def to_dict(self) -> dict:
        return {
            "is_star": self.is_star,
            "proper_violation": list(self.proper_violation) if self.proper_violation else None,
            "star_violation": list(self.star_violation) if self.star_violation else None,
        }


def verify(g: Graph, c) -> VerificationReport:
    """Check properness and look for a bicolored path on four vertices.

    Witnesses are the first ones met in edge order, then neighbour order, so a
    failing coloring always reports the same violation.
    """
    c = as_coloring(c)
    if len(c) != g.n:
        raise LengthMismatch(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    col = c.colors
    proper = next(((u, v) for u, v in g.edges if col[u] == col[v]), None)
    adj = g.adj
    star = None
    for u, v in g.edges:
        cu, cv = col[u], col[v]
        if cu == cv:
            continue
        # one orientation per edge suffices: the reversed path has the same middle edge
        found = _bicolored_through(adj, col, u, v, cu, cv)
        if found:
            star = found
            break
    return VerificationReport(proper, star)


def _bicolored_through(adj, col, u, v, cu, cv):
    # path w-u-v-x with col[w] == cv and col[x] == cu
    for w in adj[u]:
        if w == v or col[w] != cv:
            continue
        for x in adj[v]:
            if x != u and x != w and col[x] == cu:
                return (w, u, v, x)
    return None


def is_star_coloring(g: Graph, c) -> bool:
    return verify(g, c).is_star


def verify_star_forest(g: Graph, c) -> bool:
    """Cross-check: every pair of color classes must induce a star forest."""
    c = as_coloring(c)
    if len(c) != g.n:
        raise LengthMismatch(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    col = c.colors
    for u, v in g.edges:
        if col[u] == col[v]:
            raise NotProper(f"edge ({u}, {v}) is monochromatic")
    palette = sorted(set(col))
    for a, b in combinations(palette, 2):
        members = [v for v in range(g.n) if col[v] in (a, b)]
        sub, _ = g.induced(members)
        deg = [sub.degree(v) for v in range(sub.n)]
        if any(deg[x] >= 2 and deg[y] >= 2 for x, y in sub.edges):
            return False
    return True


def canonical_form(c) -> Coloring:
    """Relabel colors 1, 2, ... in order of first appearance."""
    c = as_coloring(c)
    relabel: dict[int, int] = {}
    out = []
    for x in c.colors:
        if x not in relabel:
            relabel[x] = len(relabel) + 1
        out.append(relabel[x])
    return Coloring(tuple(out))


def compact(c) -> Coloring:
    """Relabel the used colors to 1..k keeping their relative order."""
    c = as_coloring(c)
    rank = {x: r for r, x in enumerate(sorted(set(c.colors)), 1)}
    return Coloring(tuple(rank[x] for x in c.colors))


def permute_colors(c, perm: Mapping[int, int]) -> Coloring:
    c = as_coloring(c)
    return Coloring(tuple(perm[x] for x in c.colors))


def coloring_to_json(c) -> str:
    c = as_coloring(c)
    return json.dumps({"colors": list(c.colors), "k": c.k}, sort_keys=True) + "\n"


def coloring_from_json(text: str) -> Coloring:
    try:
        doc = json.loads(text)
        c = Coloring(tuple(doc["colors"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad coloring JSON: {exc}") from None
    if "k" in doc and int(doc["k"]) != c.k:
        raise ParseError(f"declared k={doc['k']} but {c.k} colors are used")
    return c
