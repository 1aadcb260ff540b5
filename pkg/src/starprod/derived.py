"""Solver-derived witnesses shipped as data.

Each cached file holds a minimum star coloring found by the exact solver
together with the node count of the run that produced it, so a reviewer can
rerun ``starprod regen-derived`` and compare.  Certificates (exhaustive "no"
answers backing the lower bounds) are stored alongside.
"""
from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import BudgetExceeded
from .graph import cycle, path, tensor_product
from .patterns import Pattern, coloring_to_pattern, require_star
from .solver import NO, YES, SolverBudget, chi_star, decide_k

REGEN_BUDGET = SolverBudget(max_nodes=10**9)


@dataclass(frozen=True)
class DerivedItem:
    id: str
    left: tuple[str, int]
    right: tuple[str, int]

    def graph(self):
        return tensor_product(_factor(*self.left), _factor(*self.right))

    @property
    def shape(self):
        return self.left[1], self.right[1]

    @property
    def wraps(self):
        return self.left[0] == "C", self.right[0] == "C"


def _factor(kind, n):
    return cycle(n) if kind == "C" else path(n)


def _item(spec: str) -> DerivedItem:
    a, b = spec.split("x")
    return DerivedItem(spec, (a[0], int(a[1:])), (b[0], int(b[1:])))


# minimum-color witnesses the constructions cannot get from the bank
WITNESSES = tuple(_item(s) for s in (
    "C3xC3", "C3xC5", "P2xP2", "P2xP3", "P6xP6", "P6xP7", "C5xP4", "C7xP4",
))

# (graph, k): exhaustive searches reported as certificates
CERTIFICATES = tuple((_item(s), k) for s, k in (
    ("C3xC3", 5), ("C3xC5", 5), ("C4xP4", 4), ("C5xP4", 3), ("C5xP4", 4), ("C5xP5", 4),
    ("C6xP6", 4), ("C6xP7", 4), ("C7xP4", 3), ("C7xP4", 4), ("C7xP5", 4), ("C7xP6", 4),
    ("P4xP4", 3), ("P6xP6", 3), ("P6xP8", 4), ("P7xP7", 4),
))


def derived_dir() -> Path:
    return Path(str(resources.files("starprod") / "data" / "derived"))


def _witness_doc(item: DerivedItem, budget: SolverBudget) -> dict:
    res = chi_star(item.graph(), budget)
    if not res.is_exact:
        raise BudgetExceeded(f"{item.id}: only {res.lo}..{res.hi} within budget")
    r, s = item.shape
    p = coloring_to_pattern(res.witness, r, s, *item.wraps)
    return {
        "id": item.id,
        "k": res.value,
        "rows": r,
        "cols": s,
        "wrap_rows": int(item.wraps[0]),
        "wrap_cols": int(item.wraps[1]),
        "pattern": [list(row) for row in p.entries],
        "nodes": res.nodes,
        "max_nodes": budget.max_nodes,
    }


def _certificate_doc(item: DerivedItem, k: int, budget: SolverBudget) -> dict:
    dec = decide_k(item.graph(), k, budget)
    return {"graph": item.id, "k": k, "result": dec.status, "nodes": dec.nodes}


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def regenerate(out_dir=None, budget: SolverBudget = REGEN_BUDGET, certificates: bool = True) -> dict:
    """Recompute every derived witness (and optionally the certificates) into
    ``out_dir``.  Returns a manifest; items that hit the budget are listed
    under ``incomplete``."""
    out = Path(out_dir) if out_dir is not None else derived_dir()
    out.mkdir(parents=True, exist_ok=True)
    started = time.monotonic()
    incomplete = []
    digests = {}
    for item in WITNESSES:
        try:
            text = dumps(_witness_doc(item, budget))
        except BudgetExceeded:
            incomplete.append(item.id)
            continue
        (out / f"{item.id}.json").write_text(text, encoding="utf-8", newline="\n")
        digests[item.id] = hashlib.sha256(text.encode()).hexdigest()
    if certificates:
        certs = []
        for item, k in CERTIFICATES:
            doc = _certificate_doc(item, k, budget)
            if doc["result"] not in (YES, NO):
                incomplete.append(f"{item.id}@{k}")
            certs.append(doc)
        text = dumps(certs)
        (out / "certificates.json").write_text(text, encoding="utf-8", newline="\n")
        digests["certificates"] = hashlib.sha256(text.encode()).hexdigest()
    results_digest = hashlib.sha256(dumps(digests).encode()).hexdigest()
    return {
        "max_nodes": budget.max_nodes,
        "files": digests,
        "results_digest": results_digest,
        "incomplete": incomplete,
        "wall_seconds": round(time.monotonic() - started, 3),
    }


_memo: dict[str, Pattern] = {}


def derived_pattern(spec: str) -> Pattern:
    """Cached witness pattern for ``spec``; solved on the spot when the data
    file is missing."""
    if spec in _memo:
        return _memo[spec]
    f = derived_dir() / f"{spec}.json"
    if f.exists():
        doc = json.loads(f.read_text(encoding="utf-8"))
        p = Pattern(tuple(tuple(r) for r in doc["pattern"]), bool(doc["wrap_rows"]),
                    bool(doc["wrap_cols"]), "derived")
    else:
        doc = _witness_doc(_item(spec), REGEN_BUDGET)
        p = Pattern(tuple(tuple(r) for r in doc["pattern"]), bool(doc["wrap_rows"]),
                    bool(doc["wrap_cols"]), "derived")
    _memo[spec] = require_star(p, f"derived witness {spec}")
    return _memo[spec]


def load_certificates(directory=None) -> list[dict]:
    f = Path(directory or derived_dir()) / "certificates.json"
    return json.loads(f.read_text(encoding="utf-8")) if f.exists() else []
