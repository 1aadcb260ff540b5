"""Coloring patterns for products of paths and cycles.

A pattern is an ``r x s`` matrix of 1-based colors.  Entry ``(i, j)`` colors
vertex ``(i, j)`` of ``X_r x Y_s`` where ``X`` is a cycle when ``wrap_rows``
is set and a path otherwise (likewise ``Y`` and ``wrap_cols``).

Tiled, stitched and block-composed patterns are always handed to the
verifier; agreement of boundary columns is only a precondition, not proof.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from math import gcd
from pathlib import Path
from typing import Mapping, Sequence

from .coloring import Coloring, VerificationReport, as_coloring, verify
from .errors import (NotRepresentable, ParseError, PrefixMismatch, VerificationFailed,
                     UnsupportedSpec, WrapTooSmall)
from .graph import Graph, cycle, path, tensor_product

BANK_ENV = "STARPROD_BANK"


@dataclass(frozen=True)
class Pattern:
    entries: tuple[tuple[int, ...], ...]
    wrap_rows: bool = True
    wrap_cols: bool = True
    source: str | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows or not rows[0]:
            raise ValueError("pattern needs at least one row and one column")
        if any(len(row) != len(rows[0]) for row in rows):
            raise ValueError("ragged pattern")
        if any(x < 1 for row in rows for x in row):
            raise ValueError("pattern colors are 1-based")
        if self.wrap_rows and len(rows) < 3:
            raise WrapTooSmall(f"wrapped rows need r >= 3, got {len(rows)}")
        if self.wrap_cols and len(rows[0]) < 3:
            raise WrapTooSmall(f"wrapped columns need s >= 3, got {len(rows[0])}")

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def s(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.r, self.s

    @property
    def k(self) -> int:
        return len({x for row in self.entries for x in row})

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    @property
    def name(self) -> str:
        return f"{'C' if self.wrap_rows else 'P'}{self.r}x{'C' if self.wrap_cols else 'P'}{self.s}"

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


def make_pattern(rows: Sequence[Sequence[int]], wrap_rows=True, wrap_cols=True, source=None) -> Pattern:
    return Pattern(tuple(tuple(r) for r in rows), wrap_rows, wrap_cols, source)


def product_graph(p: Pattern) -> Graph:
    left = cycle(p.r) if p.wrap_rows else path(p.r)
    right = cycle(p.s) if p.wrap_cols else path(p.s)
    return tensor_product(left, right)


def pattern_to_coloring(p: Pattern) -> tuple[Graph, Coloring]:
    return product_graph(p), Coloring(tuple(x for row in p.entries for x in row))


def coloring_to_pattern(c, r: int, s: int, wrap_rows=True, wrap_cols=True, source=None) -> Pattern:
    cols = as_coloring(c).colors
    if len(cols) != r * s:
        raise ValueError(f"{len(cols)} colors cannot fill a {r}x{s} pattern")
    return Pattern(tuple(cols[i * s:(i + 1) * s] for i in range(r)), wrap_rows, wrap_cols, source)


def verify_pattern(p: Pattern) -> VerificationReport:
    g, c = pattern_to_coloring(p)
    return verify(g, c)


def require_star(p: Pattern, what: str = "pattern") -> Pattern:
    report = verify_pattern(p)
    if not report.is_star:
        raise VerificationFailed(f"{what} ({p.name}) is not a star coloring: {report.to_dict()}", report)
    return p


def transpose(p: Pattern) -> Pattern:
    return Pattern(tuple(zip(*p.entries)), p.wrap_cols, p.wrap_rows, p.source)


def tile(p: Pattern, vert_copies: int, horiz_copies: int) -> Pattern:
    if vert_copies < 1 or horiz_copies < 1:
        raise ValueError("copies must be >= 1")
    # repeating a window is only a covering map along a cycle factor
    if vert_copies > 1 and not p.wrap_rows or horiz_copies > 1 and not p.wrap_cols:
        raise UnsupportedSpec("can only tile along wrapped (cycle) dimensions")
    rows = [row * horiz_copies for row in p.entries] * vert_copies
    return Pattern(tuple(rows), p.wrap_rows, p.wrap_cols, p.source)


def restrict(p: Pattern, rows: int, cols: int, wrap_rows=False, wrap_cols=False) -> Pattern:
    """Top-left ``rows x cols`` window.

    With the wrap flags off this colors ``P_rows x P_cols``, a subgraph of the
    product ``p`` colors, so a star pattern stays star.
    """
    if rows > p.r or cols > p.s:
        raise ValueError(f"cannot cut {rows}x{cols} out of {p.r}x{p.s}")
    return Pattern(tuple(row[:cols] for row in p.entries[:rows]), wrap_rows, wrap_cols, p.source)


def relabel_compact(p: Pattern) -> Pattern:
    used = sorted({x for row in p.entries for x in row})
    if used == list(range(1, len(used) + 1)):
        return p
    rank = {x: i for i, x in enumerate(used, 1)}
    return Pattern(tuple(tuple(rank[x] for x in row) for row in p.entries), p.wrap_rows, p.wrap_cols, p.source)


# -- CSV ---------------------------------------------------------------------

def pattern_to_csv(p: Pattern, amendments: Sequence[tuple[int, int, int, int]] = ()) -> str:
    head = f"# rows={p.r} cols={p.s} wrap_rows={int(p.wrap_rows)} wrap_cols={int(p.wrap_cols)}"
    if p.source:
        head += f" source={p.source}"
    lines = [head]
    lines += [f"# amended row={i} col={j} printed={old} used={new}" for i, j, old, new in amendments]
    lines += [",".join(str(x) for x in row) for row in p.entries]
    return "\n".join(lines) + "\n"


def _parse_header(line: str) -> dict[str, str]:
    fields = {}
    for tok in line.lstrip("#").split():
        if "=" not in tok:
            raise ParseError(f"bad header token {tok!r}")
        key, val = tok.split("=", 1)
        fields[key] = val
    return fields


def pattern_from_csv(text: str) -> tuple[Pattern, list[tuple[int, int, int, int]]]:
    """Parse a pattern file; returns the pattern and its amendment records."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ParseError("pattern file must start with a '# rows=... cols=...' header")
    head = _parse_header(lines[0])
    amendments = []
    rows = []
    try:
        r, s = int(head["rows"]), int(head["cols"])
        wrap_rows = head.get("wrap_rows", "1") == "1"
        wrap_cols = head.get("wrap_cols", "1") == "1"
        for ln in lines[1:]:
            if ln.startswith("#"):
                f = _parse_header(ln.replace("amended", "", 1))
                amendments.append((int(f["row"]), int(f["col"]), int(f["printed"]), int(f["used"])))
                continue
            rows.append(tuple(int(x) for x in ln.split(",")))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"malformed pattern file: {exc}") from None
    if len(rows) != r or any(len(row) != s for row in rows):
        raise ParseError(f"header says {r}x{s} but the body does not match")
    try:
        p = Pattern(tuple(rows), wrap_rows, wrap_cols, head.get("source"))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return p, amendments


def read_pattern(path) -> Pattern:
    return pattern_from_csv(Path(path).read_text(encoding="utf-8"))[0]


def write_pattern(p: Pattern, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(pattern_to_csv(p))


# -- bank ----------------------------------------------------------------------

@dataclass(frozen=True)
class PatternBankEntry:
    id: str
    pattern: Pattern
    source: str
    verified: bool
    amendments: tuple[tuple[int, int, int, int], ...] = ()

    def printed(self) -> Pattern:
        """The matrix before amendments were applied."""
        rows = [list(r) for r in self.pattern.entries]
        for i, j, old, _new in self.amendments:
            rows[i][j] = old
        return replace(self.pattern, entries=tuple(tuple(r) for r in rows))


def load_bank(path, check: bool = True) -> dict[str, PatternBankEntry]:
    """Read every ``*.csv`` pattern in a directory, keyed by file stem.

    With ``check`` on, each entry must star-verify on the product it names or
    :class:`VerificationFailed` is raised naming the entry and the witness.
    """
    bank = {}
    for f in sorted(Path(path).glob("*.csv")):
        p, amendments = pattern_from_csv(f.read_text(encoding="utf-8"))
        if p.name != f.stem:
            raise ParseError(f"{f.name}: header describes {p.name}")
        ok = False
        if check:
            report = verify_pattern(p)
            if not report.is_star:
                raise VerificationFailed(f"bank entry {f.stem} fails: {report.to_dict()}", report)
            ok = True
        bank[f.stem] = PatternBankEntry(f.stem, p, p.source or "", ok, tuple(amendments))
    return bank


def builtin_bank_path() -> Path:
    override = os.environ.get(BANK_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("starprod") / "data" / "bank"))


@lru_cache(maxsize=4)
def _cached_bank(path: str) -> Mapping[str, PatternBankEntry]:
    return load_bank(path)


def builtin_bank() -> Mapping[str, PatternBankEntry]:
    return _cached_bank(str(builtin_bank_path()))


def bank_pattern(bank, bid: str) -> Pattern:
    entry = bank[bid]
    return entry.pattern if isinstance(entry, PatternBankEntry) else entry


# -- stitching -----------------------------------------------------------------

@dataclass(frozen=True)
class StitchPlan:
    axis: str  # "horizontal" | "vertical"
    pieces: tuple[tuple[str, int], ...]
    overlap_width: int = 3

    def __post_init__(self):
        if self.axis not in ("horizontal", "vertical"):
            raise ValueError(f"axis must be horizontal or vertical, not {self.axis!r}")
        pieces = tuple((str(b), int(m)) for b, m in self.pieces)
        if any(m < 0 for _, m in pieces) or not any(m > 0 for _, m in pieces):
            raise ValueError("multiplicities must be >= 0 with at least one positive")
        object.__setattr__(self, "pieces", pieces)

    def sequence(self) -> list[str]:
        return [b for b, m in self.pieces for _ in range(m)]


def hstitch(plan: StitchPlan, bank, check: bool = True) -> Pattern:
    """Concatenate bank patterns left to right into a column-wrapped pattern.

    Every piece must start with the same ``overlap_width`` columns; a path on
    four vertices crosses at most three column boundaries, so each seam then
    looks locally like the wrap-around seam of a single piece.
    """
    if plan.axis != "horizontal":
        raise ValueError("hstitch needs a horizontal plan")
    seq = plan.sequence()
    pieces = [bank_pattern(bank, b) for b in seq]
    first = pieces[0]
    w = plan.overlap_width
    for bid, p in zip(seq, pieces):
        if p.r != first.r or p.wrap_rows != first.wrap_rows:
            raise ValueError(f"{bid} has {p.r} rows (wrap={p.wrap_rows}), expected {first.r} (wrap={first.wrap_rows})")
        if p.s < w or first.s < w:
            raise PrefixMismatch(f"{bid} is narrower than the overlap width {w}")
        for j in range(w):
            for i in range(p.r):
                if p.entries[i][j] != first.entries[i][j]:
                    raise PrefixMismatch(
                        f"{bid} differs from {seq[0]} at row {i}, column {j}", (bid, i, j))
    if len(pieces) == 1:
        out = first
    else:
        rows = tuple(tuple(x for p in pieces for x in p.entries[i]) for i in range(first.r))
        out = Pattern(rows, first.wrap_rows, True, "stitched")
    return require_star(out, "stitched pattern") if check else out


def vstitch(plan: StitchPlan, bank, check: bool = True) -> Pattern:
    """Row-wise analogue of :func:`hstitch`."""
    if plan.axis != "vertical":
        raise ValueError("vstitch needs a vertical plan")
    flipped = {b: transpose(bank_pattern(bank, b)) for b, _ in plan.pieces}
    try:
        out = transpose(hstitch(replace(plan, axis="horizontal"), flipped, check=False))
    except PrefixMismatch as exc:
        if exc.cell is None:
            raise
        bid, j, i = exc.cell
        raise PrefixMismatch(f"{bid} differs from {plan.sequence()[0]} at row {i}, column {j}",
                             (bid, i, j)) from None
    return require_star(out, "stitched pattern") if check else out


def sylvester_represent(k: int, a: int, b: int) -> tuple[int, int]:
    """Nonnegative ``(alpha, beta)`` with ``alpha*a + beta*b == k`` and the
    smallest possible ``alpha``.  Always exists once ``k >= (a-1)(b-1)``."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if gcd(a, b) != 1:
        raise ValueError(f"a={a} and b={b} are not coprime")
    # alpha is pinned mod b: alpha = k * a^-1 (mod b); the smallest residue wins
    alpha = k * pow(a, -1, b) % b if b > 1 else 0
    if k >= 0 and alpha * a <= k:
        return alpha, (k - alpha * a) // b
    raise NotRepresentable(f"{k} is not a nonnegative combination of {a} and {b}")


def block_compose(m: int, n: int, bank) -> Pattern:
    """5-color pattern for ``C_m x C_n`` (m, n >= 12) from 4x4, 4x5, 5x4 and
    5x5 blocks.

    Row bands of heights 4 and 5 are each stitched horizontally with the same
    column plan and then stacked.  The 4- and 5-row blocks agree on their first
    two rows and their last row, which is what makes the vertical seams safe.
    """
    if m < 12 or n < 12:
        raise ValueError("block composition needs m, n >= 12")
    ra, rb = sylvester_represent(m, 4, 5)
    ca, cb = sylvester_represent(n, 4, 5)
    bands = []
    for h in [4] * ra + [5] * rb:
        plan = StitchPlan("horizontal", ((f"C{h}xC4", ca), (f"C{h}xC5", cb)))
        bands.append(hstitch(plan, bank, check=False))
    rows = tuple(row for band in bands for row in band.entries)
    return require_star(Pattern(rows, True, True, "blocks"), f"block composition {m}x{n}")
