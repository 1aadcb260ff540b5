import json

import pytest

from oracles import chi_star_oracle, is_star_bruteforce
from starprod.derived import CERTIFICATES, WITNESSES, derived_dir, derived_pattern, load_certificates
from starprod.patterns import pattern_to_coloring


@pytest.mark.parametrize("item", WITNESSES, ids=lambda it: it.id)
def test_cached_witness(item):
    doc = json.loads((derived_dir() / f"{item.id}.json").read_text())
    p = derived_pattern(item.id)
    g, c = pattern_to_coloring(p)
    assert g == item.graph()
    assert is_star_bruteforce(g.n, g.edges, c.colors)
    assert c.k == doc["k"] and doc["nodes"] > 0


def test_small_witnesses_are_minimum():
    for item in WITNESSES:
        g = item.graph()
        if g.n <= 9:
            assert chi_star_oracle(g.n, g.edges) == derived_pattern(item.id).k


def test_certificates_cover_list():
    certs = load_certificates()
    assert [(c["graph"], c["k"]) for c in certs] == [(it.id, k) for it, k in CERTIFICATES]
    assert all(c["result"] in ("yes", "no") for c in certs)
    yes = {(c["graph"], c["k"]) for c in certs if c["result"] == "yes"}
    assert yes == {("C5xP4", 4), ("C7xP4", 4)}
