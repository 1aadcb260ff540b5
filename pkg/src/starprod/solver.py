"""Exact star-coloring search.

Backtracking over vertices in BFS order, one connected component at a time.
Each vertex keeps a count of its coloured neighbours per color.  A proper
coloring is star exactly when no edge ``uv`` has ``u`` seeing two neighbours
of ``v``'s color while ``v`` sees two of ``u``'s, so the checks made when a
vertex receives a color only touch its neighbourhood.

Color symmetry is broken by first occurrence: a vertex may only take a color
at most one larger than the largest color used before it.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coloring import Coloring, canonical_form, verify
from .errors import BudgetExceeded
from .graph import Graph, component_vertex_sets, contains_subgraph, has_triangle

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class SolverBudget:
    max_nodes: int = 10**9
    max_seconds: float | None = None

    def __post_init__(self):
        if self.max_nodes <= 0 or (self.max_seconds is not None and self.max_seconds <= 0):
            raise ValueError("budgets must be positive")


DEFAULT_BUDGET = SolverBudget()


@dataclass(frozen=True)
class Decision:
    status: str
    witness: Coloring | None = None
    nodes: int = 0

    def __bool__(self):
        return self.status == YES


@dataclass(frozen=True)
class ChiResult:
    """Either an exact value (``lo == hi``) or a certified range.

    ``witness`` colors the graph with ``hi`` colors when present.
    """
    lo: int
    hi: int | None
    witness: Coloring | None = None
    provenance: str = "solver"
    nodes: int = 0
    notes: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def exact(cls, k, witness=None, provenance="solver", nodes=0):
        return cls(k, k, witness, provenance, nodes)

    @property
    def is_exact(self) -> bool:
        return self.hi is not None and self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError(f"not exact: {self.lo}..{self.hi}")
        return self.lo

    def to_dict(self, with_witness: bool = False) -> dict:
        doc: dict = {"provenance": self.provenance, "lo": self.lo, "hi": self.hi}
        if self.is_exact:
            doc["kind"] = "exact"
            doc["exact"] = self.lo
        else:
            doc["kind"] = "range"
        if self.nodes:
            doc["nodes"] = self.nodes
        if with_witness and self.witness is not None:
            doc["witness"] = list(self.witness.colors)
        return doc


class _Clock:
    def __init__(self, budget: SolverBudget):
        self.budget = budget
        self.nodes = 0
        self.deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise BudgetExceeded(f"node budget {self.budget.max_nodes} exhausted")
        if self.deadline is not None and not self.nodes & 0xFFF and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time budget {self.budget.max_seconds}s exhausted")


def _search(g: Graph, order: Sequence[int], k: int, clock: _Clock, find_all: bool = False):
    """Yield star colorings of ``g`` (as dicts vertex -> color) with colors
    1..k, canonical with respect to ``order``.  Vertices outside ``order``
    are ignored; ``order`` should list whole components."""
    n = len(order)
    idx = {v: t for t, v in enumerate(order)}
    adj = [[idx[w] for w in g.adj[v] if w in idx] for v in order]
    back = [[u for u in adj[t] if u < t] for t in range(n)]
    color = [0] * n
    cnt = [[0] * (k + 2) for _ in range(n)]

    def ok(t, c):
        row = cnt[t]
        if row[c]:
            return False
        for u in back[t]:
            d = color[u]
            cu = cnt[u]
            if cu[c]:
                # u already has a c-coloured neighbour y: path t-u-y-? or ?-t-u-y
                if row[d] >= 2:
                    return False
                for y in adj[u]:
                    if y < t and color[y] == c and cnt[y][d] >= 2:
                        return False
        return True

    def rec(t, maxc):
        if t == n:
            yield {order[s]: color[s] for s in range(n)}
            return
        top = maxc + 1 if maxc < k else k
        nb = adj[t]
        for c in range(1, top + 1):
            clock.tick()
            if not ok(t, c):
                continue
            color[t] = c
            for u in nb:
                cnt[u][c] += 1
            yield from rec(t + 1, c if c > maxc else maxc)
            for u in nb:
                cnt[u][c] -= 1
            color[t] = 0

    if k < 1 and n:
        return
    yield from rec(0, 0)


def _component_orders(g: Graph) -> list[list[int]]:
    return component_vertex_sets(g)


def decide_k(g: Graph, k: int, budget: SolverBudget = DEFAULT_BUDGET) -> Decision:
    """Is there a star coloring of ``g`` with at most ``k`` colors?

    Returns ``yes`` with a verified witness, ``no`` after an exhaustive
    search, or ``unknown`` when the budget ran out first.
    """
    if k < 1:
        return Decision(NO if g.n else YES, Coloring(()) if not g.n else None)
    clock = _Clock(budget)
    colors = [0] * g.n
    unknown = False
    for comp in _component_orders(g):
        try:
            sol = next(_search(g, comp, k, clock), None)
        except BudgetExceeded:
            unknown = True
            continue
        if sol is None:
            return Decision(NO, None, clock.nodes)
        for v, c in sol.items():
            colors[v] = c
    if unknown:
        return Decision(UNKNOWN, None, clock.nodes)
    witness = Coloring(tuple(colors))
    report = verify(g, witness)
    if not report.is_star:  # pragma: no cover - guards the incremental checks
        raise AssertionError(f"solver produced an invalid coloring: {report}")
    return Decision(YES, witness, clock.nodes)


def lower_seed(g: Graph) -> int:
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    lo = 3 if has_triangle(g) else 2
    # a path on four vertices needs a third color
    if any(g.degree(u) >= 2 and g.degree(v) >= 2 for u, v in g.edges):
        lo = max(lo, 3)
    return lo


def chi_star(g: Graph, budget: SolverBudget = DEFAULT_BUDGET, lower: int = 0) -> ChiResult:
    """Star chromatic number by ascending search from a certified lower bound.

    ``lower`` must itself be certified (for instance by a subgraph whose value
    is known); the result is exact only when every smaller k was refuted.
    """
    lo = max(lower_seed(g), lower)
    if g.n == 0:
        return ChiResult.exact(0, Coloring(()))
    certain_lo = lo
    nodes = 0
    k = lo
    while True:
        dec = decide_k(g, k, budget)
        nodes += dec.nodes
        if dec.status == YES:
            if certain_lo == k:
                return ChiResult.exact(k, dec.witness, "solver", nodes)
            return ChiResult(certain_lo, k, dec.witness, "solver", nodes, (f"undecided below {k}",))
        if dec.status == NO and certain_lo == k:
            certain_lo = k + 1
        k += 1
        if k >= g.n:
            # every search so far ran out of budget; all-distinct colors always work
            witness = Coloring(tuple(range(1, g.n + 1)))
            if certain_lo == g.n:
                return ChiResult.exact(g.n, witness, "solver", nodes)
            return ChiResult(certain_lo, g.n, witness, "solver", nodes, (f"undecided below {g.n}",))


def enumerate_canonical(g: Graph, k: int, budget: SolverBudget = DEFAULT_BUDGET) -> list[Coloring]:
    """All star colorings with at most ``k`` colors, one per color-permutation
    class, in :func:`canonical_form` and sorted.

    Raises :class:`BudgetExceeded` with the colorings found so far attached
    as ``partial``.
    """
    order = [v for comp in _component_orders(g) for v in comp]
    clock = _Clock(budget)
    found = set()
    try:
        for sol in _search(g, order, k, clock, find_all=True):
            found.add(canonical_form(Coloring(tuple(sol[v] for v in range(g.n)))))
    except BudgetExceeded as exc:
        raise BudgetExceeded(str(exc), partial=sorted(found, key=lambda c: c.colors)) from None
    return sorted(found, key=lambda c: c.colors)


def chi_star_with_lower_bound_gadgets(
    g: Graph,
    gadgets: Iterable[tuple[Graph, int]],
    budget: SolverBudget = DEFAULT_BUDGET,
    embed_budget: int = 1_000_000,
) -> ChiResult:
    """Like :func:`chi_star`, seeding the lower bound with the largest known
    value among ``gadgets`` that embed in ``g`` as subgraphs."""
    lo = 0
    used = []
    for gadget, value in gadgets:
        if value <= lo:
            continue
        try:
            emb = contains_subgraph(g, gadget, embed_budget)
        except BudgetExceeded:
            continue
        if emb is not None:
            lo = value
            used.append(gadget.label or "gadget")
    res = chi_star(g, budget, lower=lo)
    if used:
        return ChiResult(res.lo, res.hi, res.witness, res.provenance, res.nodes,
                         res.notes + tuple(f"lower bound from {u}" for u in used))
    return res
