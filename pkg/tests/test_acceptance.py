"""Acceptance criteria, one test each.

Tolerances are exact throughout; each test also enforces its time limit.
Run ``pytest tests/test_acceptance.py -v`` for a PASS/FAIL line per criterion
in the terminal summary.
"""
import random
import time
import warnings
from math import gcd

import pytest

from oracles import chi_star_oracle, random_graph, sylvester_scan
from starprod.coloring import canonical_form, verify
from starprod.constructions import chi_formula, construct_cc, product_upper_bound
from starprod.errors import NotRepresentable, UnsupportedSpec
from starprod.graph import Graph, cycle, path, tensor_product
from starprod.patterns import builtin_bank_path, load_bank, tile, verify_pattern, sylvester_represent
from starprod.solver import NO, UNKNOWN, YES, SolverBudget, chi_star, decide_k, enumerate_canonical

BIG = SolverBudget(max_nodes=10**9)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def test_criterion_01_base_families():
    with Timer() as t:
        for n in range(2, 13):
            assert chi_star(path(n)).value == (2 if n <= 3 else 3), n
        for n in range(3, 13):
            assert chi_star(cycle(n)).value == (4 if n == 5 else 3), n
    assert t.seconds < 1


@pytest.mark.parametrize("n", [3, 5])
def test_criterion_02_six_color_exceptions(n):
    g = tensor_product(cycle(3), cycle(n))
    with Timer() as t:
        no, yes = decide_k(g, 5, BIG), decide_k(g, 6, BIG)
    assert no.status == NO
    assert yes.status == YES and verify(g, yes.witness).is_star
    assert t.seconds < 60


def test_criterion_03_bank_verifies_at_load():
    with Timer() as t:
        bank = load_bank(builtin_bank_path())
    assert len(bank) >= 22
    assert all(e.verified for e in bank.values())
    assert t.seconds < 1


def test_criterion_04_tiling():
    with Timer() as t:
        bank = load_bank(builtin_bank_path())
        p = tile(bank["C3xC4"].pattern, 2, 2)
        assert p.shape == (6, 8) and p.k == 5 and verify_pattern(p).is_star
        for bid, e in bank.items():
            for a in (1, 2, 3):
                for b in (1, 2, 3):
                    if b > 1 and not e.pattern.wrap_cols:
                        # repetition along a path factor is not a tiling
                        with pytest.raises(UnsupportedSpec):
                            tile(e.pattern, a, b)
                        continue
                    assert verify_pattern(tile(e.pattern, a, b)).is_star, (bid, a, b)
    assert t.seconds < 5


def test_criterion_05_cc_sweep():
    with Timer() as t:
        for m in range(3, 41):
            for n in range(m, 41):
                c = construct_cc(m, n)
                assert c.k == (6 if (m, n) in ((3, 3), (3, 5)) else 5), (m, n)
                assert verify(tensor_product(cycle(m), cycle(n)), c).is_star, (m, n)
    assert t.seconds < 120


def _exact_or_flag(g, expected, what):
    res = chi_star(g, BIG)
    if not res.is_exact:
        # degrade: the witness side still has to hold
        assert res.hi == expected and verify(g, res.witness).is_star
        warnings.warn(f"{what}: only {res.lo}..{res.hi} within budget (flagged)")
        return
    assert res.value == expected, what


def test_criterion_06_pp_cross_check():
    with Timer() as t:
        for m in range(2, 6):
            for n in range(m, 6):
                assert chi_star(tensor_product(path(m), path(n)), BIG).value == chi_formula(f"P{m}xP{n}").value
        _exact_or_flag(tensor_product(path(4), path(4)), 4, "P4xP4")
        _exact_or_flag(tensor_product(path(6), path(6)), 4, "P6xP6")
        p6p8 = decide_k(tensor_product(path(6), path(8)), 4, BIG)
        if p6p8.status == UNKNOWN:
            warnings.warn("P6xP8 at k=4 undecided within budget (flagged)")
        else:
            assert p6p8.status == NO
    assert t.seconds < 600


def test_criterion_07_cp_exhaustive_claims():
    with Timer() as t:
        found = {}
        for m, n in ((5, 4), (7, 4), (6, 6)):
            res = chi_star(tensor_product(cycle(m), path(n)), BIG)
            found[f"C{m}xP{n}"] = res.value if res.is_exact else (res.lo, res.hi)
    assert found == {"C5xP4": 5, "C7xP4": 5, "C6xP6": 5}
    assert t.seconds < 1800


@pytest.mark.parametrize("n, k", [(3, 3), (5, 4)])
def test_criterion_08_uniqueness(n, k):
    with Timer() as t:
        found = enumerate_canonical(tensor_product(cycle(3), path(n)), k, BIG)
    assert len(found) == 1
    bank = load_bank(builtin_bank_path())
    p = bank[f"C3xP{n}"].pattern
    assert found[0] == canonical_form(sum(p.entries, ()))
    assert t.seconds < 60


def test_criterion_09_product_upper_bound(seed):
    rng = random.Random(seed)
    with Timer() as t:
        for _ in range(200):
            g = Graph(*(lambda n, e: (n, tuple(e)))(*random_graph(rng, 6, connected=True)))
            h = Graph(*(lambda n, e: (n, tuple(e)))(*random_graph(rng, 6, connected=True)))
            fg, fh = chi_star(g).witness, chi_star(h).witness
            out = product_upper_bound(g, h, fh, fg)
            assert verify(tensor_product(g, h), out).is_star
            assert out.k <= min(g.n * fh.max_color, h.n * fg.max_color)
    assert t.seconds < 30


def test_criterion_10_oracle_equivalence(seed):
    rng = random.Random(seed + 1)
    with Timer() as t:
        for _ in range(300):
            n, edges = random_graph(rng, 9)
            g = Graph(n, tuple(edges))
            assert chi_star(g).value == chi_star_oracle(n, edges), (n, edges)
    assert t.seconds < 300


def test_criterion_11_sylvester():
    cases = [(a, b) for a in range(1, 21) for b in range(1, 21) if gcd(a, b) == 1]
    expected = {(k, a, b): sylvester_scan(k, a, b) for a, b in cases for k in range(401)}
    with Timer() as t:
        got = {}
        for (k, a, b) in expected:
            try:
                got[k, a, b] = sylvester_represent(k, a, b)
            except NotRepresentable:
                got[k, a, b] = None
    for key, sols in expected.items():
        k, a, b = key
        assert got[key] == (min(sols) if sols else None), key
        if k >= (a - 1) * (b - 1):
            assert got[key] is not None, key
    assert t.seconds < 1
