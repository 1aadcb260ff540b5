"""Closed-form star chromatic numbers of path/cycle tensor products and the
colorings that realise them.

``chi_formula`` answers from closed-form tables; the ``construct_*``
functions build colorings from the pattern bank (tiling, stitching, block
composition), restrict them to path factors, or fall back to solver-derived
witnesses.  Everything returned is re-verified.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .coloring import Coloring, as_coloring, verify
from .derived import derived_pattern
from .errors import InvalidInputColoring, ParseError, Unreachable, UnsupportedSpec
from .graph import Graph, cycle, path, tensor_product
from .patterns import (Pattern, StitchPlan, bank_pattern, block_compose, builtin_bank, hstitch,
                       relabel_compact, require_star, restrict, sylvester_represent, tile,
                       transpose, vstitch)
from .solver import ChiResult

PATH, CYCLE = "P", "C"

# Cells where exhaustive search (derived/certificates.json) beats the generic
# n in {4, 5} row: both products have 4-star colorings.
SOLVER_CORRECTIONS = {(5, 4): 4, (7, 4): 4}

# C3 x C13 and C3 x C17 are not sums of 4s and 7s; the C3 x C9 piece shares its
# first three columns with C3 x C4.
NAMED_PLANS = {
    13: StitchPlan("horizontal", (("C3xC4", 1), ("C3xC9", 1))),
    17: StitchPlan("horizontal", (("C3xC4", 2), ("C3xC9", 1))),
}


@dataclass(frozen=True)
class Factor:
    kind: str  # "P" or "C"
    n: int

    def __post_init__(self):
        if self.kind not in (PATH, CYCLE):
            raise UnsupportedSpec(f"unknown family {self.kind!r}")
        if self.kind == CYCLE and self.n < 3 or self.n < 1:
            raise UnsupportedSpec(f"{self.kind}{self.n} is below the family minimum")

    def graph(self) -> Graph:
        return cycle(self.n) if self.kind == CYCLE else path(self.n)

    def __str__(self):
        return f"{self.kind}{self.n}"


@dataclass(frozen=True)
class ProductSpec:
    left: Factor
    right: Factor

    def graph(self) -> Graph:
        return tensor_product(self.left.graph(), self.right.graph())

    def __str__(self):
        return f"{self.left}x{self.right}"


_SPEC_RE = re.compile(r"^\s*([PCpc])(\d+)\s*(?:[xX*]\s*([PCpc])(\d+))?\s*$")


def parse_spec(text: str) -> Factor | ProductSpec:
    """``"C3xC4"`` -> ProductSpec, ``"P7"`` -> Factor."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse {text!r}; expected e.g. C3xC4 or P7")
    a = Factor(m.group(1).upper(), int(m.group(2)))
    if m.group(3) is None:
        return a
    return ProductSpec(a, Factor(m.group(3).upper(), int(m.group(4))))


def _as_spec(spec) -> Factor | ProductSpec:
    if isinstance(spec, str):
        return parse_spec(spec)
    if isinstance(spec, (Factor, ProductSpec)):
        return spec
    raise UnsupportedSpec("arbitrary graphs have no formula; use the exact solver")


# -- formulas -------------------------------------------------------------------

def chi_path(n: int) -> int:
    if n == 1:
        return 1
    return 2 if n in (2, 3) else 3


def chi_cycle(n: int) -> int:
    return 4 if n == 5 else 3


def chi_pp(m: int, n: int) -> int:
    m, n = min(m, n), max(m, n)
    if m == 1:
        return 1
    if m == 2:
        return 2 if n <= 3 else 3
    if m == 3:
        return 3
    if m in (4, 5):
        return 4
    if m == 6:
        return 4 if n in (6, 7) else 5
    return 5


def chi_cc(m: int, n: int) -> int:
    m, n = min(m, n), max(m, n)
    return 6 if (m, n) in ((3, 3), (3, 5)) else 5


def chi_cp(m: int, n: int) -> tuple[int, int]:
    """``(lo, hi)`` for ``C_m x P_n``.

    The case rows overlap, so they are matched top-down:
    n <= 3, then multiples of three with n in {4, 5}, then the cycles whose
    value is settled individually (4, 5, 7), and only then the open range.
    """
    if n == 1:
        return 1, 1
    if n in (2, 3):
        return 3, 3
    if n in (4, 5):
        if (m, n) in SOLVER_CORRECTIONS:
            v = SOLVER_CORRECTIONS[m, n]
            return v, v
        if m % 3 == 0:
            return 4, 4
        if m in (4, 5, 7):
            return 5, 5
        return 4, 5
    return 5, 5


def chi_formula(spec) -> ChiResult:
    spec = _as_spec(spec)
    if isinstance(spec, Factor):
        v = chi_cycle(spec.n) if spec.kind == CYCLE else chi_path(spec.n)
        return ChiResult.exact(v, provenance="formula")
    a, b = spec.left, spec.right
    if a.kind == PATH and b.kind == PATH:
        return ChiResult.exact(chi_pp(a.n, b.n), provenance="formula")
    if a.kind == CYCLE and b.kind == CYCLE:
        return ChiResult.exact(chi_cc(a.n, b.n), provenance="formula")
    c, p = (a, b) if a.kind == CYCLE else (b, a)
    lo, hi = chi_cp(c.n, p.n)
    prov = "solver" if (c.n, p.n) in SOLVER_CORRECTIONS else "formula"
    return ChiResult(lo, hi, None, prov)


def chi_kmn(m: int, n: int) -> int:
    """Star chromatic number of ``K_{m,n}``."""
    if m < 1 or n < 1:
        raise ValueError("parts must be nonempty")
    return min(m, n) + 1


# -- constructions ----------------------------------------------------------------

def _bank():
    return builtin_bank()


def _hplan(pieces) -> StitchPlan:
    return StitchPlan("horizontal", tuple(pieces))


def _sylvester_plan(n: int, small: str, large: str, a: int, b: int) -> StitchPlan:
    alpha, beta = sylvester_represent(n, a, b)
    return _hplan(((small, alpha), (large, beta)))


@lru_cache(maxsize=None)
def cc_pattern(m: int, n: int) -> Pattern:
    """Minimum star coloring pattern of ``C_m x C_n``."""
    if m < 3 or n < 3:
        raise UnsupportedSpec("cycles need at least 3 vertices")
    if m > n:
        return transpose(cc_pattern(n, m))
    bank = _bank()
    bid = f"C{m}xC{n}"
    if (m, n) in ((3, 3), (3, 5)):
        p = derived_pattern(bid)
    elif bid in bank:
        p = bank_pattern(bank, bid)
    elif m == 3:
        plan = NAMED_PLANS.get(n) or _sylvester_plan(n, "C3xC4", "C3xC7", 4, 7)
        p = hstitch(plan, bank)
    elif m in (4, 5, 7):
        p = hstitch(_sylvester_plan(n, f"C{m}xC4", f"C{m}xC5", 4, 5), bank)
    elif m in (6, 9):
        p = tile(cc_pattern(3, n), m // 3, 1)
    elif m in (8, 10):
        p = tile(cc_pattern(m // 2, n), 2, 1)
    elif m == 11:
        alpha, beta = sylvester_represent(n, 4, 5)
        p = transpose(vstitch(StitchPlan("vertical", (("C4xC11", alpha), ("C5xC11", beta))), bank))
    elif m >= 12:
        p = block_compose(m, n, bank)
    else:  # pragma: no cover
        raise Unreachable(f"no C x C route for {m}, {n}")
    return require_star(p, f"C{m}xC{n} construction")


@lru_cache(maxsize=None)
def cp_pattern(m: int, n: int) -> Pattern:
    """Star coloring pattern of ``C_m x P_n`` with the table's upper value."""
    if m < 3 or n < 1:
        raise UnsupportedSpec("need m >= 3 and n >= 1")
    bank = _bank()
    if n == 1:
        p = Pattern(((1,),) * m, True, False)
    elif (m, n) in SOLVER_CORRECTIONS:
        p = derived_pattern(f"C{m}xP{n}")
    elif n == 2:
        p = restrict(cp_pattern(m, 3), m, 2, wrap_rows=True)
    elif n == 3:
        bid = f"C{m}xP3"
        if bid in bank:
            p = bank_pattern(bank, bid)
        elif m % 3 == 0:
            p = tile(bank_pattern(bank, "C3xP3"), m // 3, 1)
        else:
            alpha, beta = sylvester_represent(m, 4, 5)
            p = vstitch(StitchPlan("vertical", (("C4xP3", alpha), ("C5xP3", beta))), bank)
    elif n in (4, 5) and m % 3 == 0:
        p = tile(bank_pattern(bank, f"C3xP{n}"), m // 3, 1)
    else:
        # C_m x P_n sits inside C_m x C_n
        p = restrict(cc_pattern(m, n), m, n, wrap_rows=True)
    return require_star(relabel_compact(p), f"C{m}xP{n} construction")


@lru_cache(maxsize=None)
def pp_pattern(m: int, n: int) -> Pattern:
    """Minimum star coloring pattern of ``P_m x P_n``."""
    if m < 1 or n < 1:
        raise UnsupportedSpec("paths need at least 1 vertex")
    if m > n:
        return transpose(pp_pattern(n, m))
    if m == 1:
        p = Pattern(((1,) * n,), False, False)
    elif m == 2 and n <= 3 or m == 6 and n in (6, 7):
        p = derived_pattern(f"P{m}xP{n}")
    elif m in (2, 3):
        # P_m x P_n inside P_3 x C_n (n >= 4 here unless m == n == 3)
        p = restrict(transpose(cp_pattern(max(n, 3), 3)), m, n)
    elif m in (4, 5):
        # C_3 x P_m tiled along the cycle, read sideways
        q = -(-n // 3) * 3
        p = restrict(transpose(cp_pattern(q, m)), m, n)
    else:
        p = restrict(cc_pattern(m, n), m, n)
    return require_star(relabel_compact(p), f"P{m}xP{n} construction")


def _coloring(p: Pattern) -> Coloring:
    return Coloring(tuple(x for row in p.entries for x in row))


def construct_cc(m: int, n: int) -> Coloring:
    return _coloring(cc_pattern(m, n))


def construct_cp(m: int, n: int) -> Coloring:
    return _coloring(cp_pattern(m, n))


def construct_pp(m: int, n: int) -> Coloring:
    return _coloring(pp_pattern(m, n))


def construct_pattern(spec) -> Pattern:
    """Pattern for a product spec in the orientation the spec names."""
    spec = _as_spec(spec)
    if isinstance(spec, Factor):
        raise UnsupportedSpec("constructions are for products")
    a, b = spec.left, spec.right
    if a.kind == PATH and b.kind == PATH:
        return pp_pattern(a.n, b.n)
    if a.kind == CYCLE and b.kind == CYCLE:
        return cc_pattern(a.n, b.n)
    if a.kind == CYCLE:
        return cp_pattern(a.n, b.n)
    return transpose(cp_pattern(b.n, a.n))


def construct(spec) -> ChiResult:
    """Constructed coloring with its color count as the upper value; the
    lower value comes from :func:`chi_formula`."""
    p = construct_pattern(spec)
    formula = chi_formula(spec)
    return ChiResult(formula.lo, p.k, _coloring(p), "construction")


def clear_caches():
    for fn in (cc_pattern, cp_pattern, pp_pattern):
        fn.cache_clear()


# -- arbitrary products -----------------------------------------------------------

def product_upper_bound(g: Graph, h: Graph, fh, fg) -> Coloring:
    """Star coloring of ``g x h`` from star colorings of the factors.

    Vertex ``(u_i, v_j)`` gets the pair ``(i, fh(v_j))`` or, if that side is
    more expensive, ``(j, fg(u_i))``; pairs are numbered ``(i-1)*k + c``.
    """
    fh, fg = as_coloring(fh), as_coloring(fg)
    for name, graph, col in (("fh", h, fh), ("fg", g, fg)):
        if len(col) != graph.n or not verify(graph, col).is_star:
            raise InvalidInputColoring(f"{name} is not a star coloring of its factor")
    n1, n2 = g.n, h.n
    k1, k2 = fg.max_color, fh.max_color
    if n1 * k2 <= n2 * k1:
        colors = [i * k2 + fh[j] for i in range(n1) for j in range(n2)]
    else:
        colors = [j * k1 + fg[i] for i in range(n1) for j in range(n2)]
    out = Coloring(tuple(colors))
    report = verify(tensor_product(g, h), out)
    if not report.is_star:  # pragma: no cover - guaranteed by the argument above
        raise AssertionError(f"product coloring failed: {report}")
    return out


# -- tables -------------------------------------------------------------------------

def table_rows(which: str, m_range, n_range, solver_check_upto: int = 0, budget=None):
    """Rows ``(m, n, formula, constructed_k, verified, solver_checked)``.

    ``which`` is ``pp``, ``cc`` or ``cp``; for ``pp``/``cc`` only ``m <= n``
    cells are listed.  Products with at most ``solver_check_upto`` vertices
    are also solved exactly and compared with the formula.
    """
    from .solver import DEFAULT_BUDGET, chi_star

    budget = budget or DEFAULT_BUDGET
    rows = []
    kinds = {"pp": (PATH, PATH), "cc": (CYCLE, CYCLE), "cp": (CYCLE, PATH)}
    if which not in kinds:
        raise ValueError(f"unknown table {which!r}")
    ka, kb = kinds[which]
    for m in m_range:
        for n in n_range:
            if which != "cp" and n < m:
                continue
            spec = ProductSpec(Factor(ka, m), Factor(kb, n))
            formula = chi_formula(spec)
            p = construct_pattern(spec)
            g = spec.graph()
            verified = verify(g, _coloring(p)).is_star
            checked = ""
            if solver_check_upto and g.n <= solver_check_upto:
                res = chi_star(g, budget)
                if not res.is_exact:
                    checked = "unknown"
                elif formula.lo <= res.value <= formula.hi:
                    checked = "agree" if formula.is_exact else f"solver={res.value}"
                else:
                    checked = f"DISAGREE solver={res.value}"
            rows.append({
                "m": m,
                "n": n,
                "formula": str(formula.lo) if formula.is_exact else f"{formula.lo}..{formula.hi}",
                "constructed_k": p.k,
                "verified": verified,
                "solver_checked": checked,
            })
    return rows
