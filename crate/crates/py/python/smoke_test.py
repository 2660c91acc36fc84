"""Quick check that the compiled `resgraph` module imports and answers correctly.

Build with `cargo build --release -p resgraph-py`, then copy
`target/release/libresgraph_py.so` to `resgraph.so` somewhere on `PYTHONPATH`.
"""

from fractions import Fraction

import resgraph


def main():
    c = resgraph.build("0>1,1>-", "full", "10010")
    assert c.graph.edges() == [(1, 2), (1, 3), (1, 5), (4, 5)], c.graph
    assert c.labels == "10010"
    assert c.cost == (5, 5, 0)

    m = resgraph.build("0>1,1>-", "modifiable", "00010", choices="ssssm")
    assert m.graph.edges() == [(1, 4), (2, 4), (3, 4), (4, 5)]

    c5 = resgraph.Graph.parse("C5")
    assert c5.automorphism_count() == 10
    assert resgraph.likelihood_exact(c5) == Fraction(1, 270)
    assert resgraph.likelihood_exact(resgraph.Graph.parse("K4")) == Fraction(1, 24)
    lo, hi = resgraph.likelihood_bounds(c5)
    assert lo <= Fraction(1, 270) <= hi
    est, err = resgraph.likelihood_mc(resgraph.Graph.parse("P3"), 20000, 1)
    assert abs(est - 1 / 3) < 4 * err

    p4 = resgraph.Graph(4, [(1, 2), (2, 3), (3, 4)])
    shuffled = resgraph.Graph(4, [(3, 1), (1, 4), (4, 2)])
    assert p4.is_isomorphic(shuffled)
    assert p4.canonical_form() == shuffled.canonical_form()
    assert p4.complement().is_isomorphic(p4)

    report = resgraph.verify_proposition("P2", 8)
    assert report["pass"] and report["cases"] == 2044, report
    assert resgraph.expressiveness_count("full", 4) == 11
    assert ("0>1,1>0", "1100", None) in resgraph.find_constructions(resgraph.Graph.parse("C4"), "full")

    assert [resgraph.randomness_cost_a(n) for n in (2, 3, 4, 5)] == [1, 4, 8, 14]

    parents = resgraph.sample_ua(20, 5)
    assert parents[:2] == [0, 0] and all(parents[t] < t for t in range(2, 21))
    tree = resgraph.tree_from_parents(parents)
    assert tree.is_tree() and len(tree) == 20
    assert resgraph.prufer_decode(resgraph.prufer_encode(tree)) == tree
    assert resgraph.ua_likelihood_exact(resgraph.Graph.parse("P3")) == 1

    g = resgraph.sample_vertex_addition(10, 42, "binomial:1/2")
    assert g == resgraph.sample_vertex_addition(10, 42, "binomial:1/2")
    assert resgraph.sample_gnp(6, "1", 0).edge_count() == 15

    try:
        resgraph.build("0>0,1>-", "none", "0")
    except ValueError:
        pass
    else:
        raise AssertionError("no-memory label join should be rejected")

    print("resgraph smoke test: ok")


if __name__ == "__main__":
    main()
