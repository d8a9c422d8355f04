import random

import pytest

from treeaug import apps, generators, oracle
from treeaug.graph import (GraphError, Multigraph, bfs_tree, find_bridges,
                           is_two_edge_connected, mst_tree,
                           subgraph_two_edge_connected)


def two_ec_instance(seed, nmax=30, wmax=20):
    rng = random.Random(seed)
    return generators.gen_random_2ec(rng.randint(3, nmax),
                                     rng.randint(0, nmax), seed,
                                     wmin=1, wmax=wmax)


def test_unweighted_subgraph_valid_and_small():
    for seed in range(80):
        g, _ = two_ec_instance(seed)
        edges, tree, aug, m = apps.two_ecss_unweighted(g)
        assert subgraph_two_edge_connected(g, edges), seed
        assert len(edges) <= 2 * (g.n - 1), seed
        assert tree.tree_edges <= edges
        assert m.max_tokens_edge_round <= 4


def test_unweighted_subgraph_two_approx_small():
    for seed in range(40):
        rng = random.Random(seed)
        g, _ = generators.gen_random_2ec(rng.randint(3, 6),
                                         rng.randint(0, 3), seed)
        if g.m > 12:
            continue
        edges, _, _, _ = apps.two_ecss_unweighted(g)
        opt = oracle.min_two_ecss_size(g)
        assert len(edges) <= 2 * opt, seed


def test_weighted_subgraph_valid_and_three_approx():
    for seed in range(40):
        g, _ = two_ec_instance(seed, nmax=12, wmax=9)
        edges, tree, aug, value, m = apps.two_ecss_weighted(g)
        assert subgraph_two_edge_connected(g, edges), seed
        assert value == sum(g.weight(e) for e in edges)
        # MST anchors the construction
        t2 = mst_tree(g, 0)
        assert (sum(g.weight(e) for e in tree.tree_edges)
                == sum(g.weight(e) for e in t2.tree_edges))
        if g.m <= 12:
            opt = oracle.min_two_ecss_weight(g)
            assert value <= 3 * opt, seed


def test_reinforcement_buys_only_new_edges():
    for seed in range(60):
        g, tree = two_ec_instance(seed, nmax=16, wmax=9)
        rng = random.Random(seed + 31)
        # H = the tree plus a few extra edges, always connected spanning
        h = set(tree.tree_edges)
        for e in range(g.m):
            if e not in h and rng.random() < 0.3:
                h.add(e)
        aug, htree, m = apps.augment_1_to_2(g, h)
        assert not (set(aug.edge_ids) & h)
        assert aug.weight == sum(g.weight(e) for e in aug.edge_ids)
        combined = h | set(aug.edge_ids)
        assert subgraph_two_edge_connected(g, combined), seed
        # reuse is free, so the buy is never beaten by a cheaper new-edge set
        if g.n <= 9 and g.m <= 16:
            g0, t0 = apps.recost_for_h(g, h)
            opt = oracle.opt_augmentation(g0, t0, weighted=True)
            assert aug.weight <= 2 * opt.weight, seed


def test_reinforcement_rejects_disconnected_h():
    g, tree = two_ec_instance(5, nmax=10)
    h = set(tree.tree_edges)
    h.discard(next(iter(h)))
    with pytest.raises(GraphError):
        apps.augment_1_to_2(g, h)


def test_verify_agrees_with_bridge_finder():
    for seed in range(150):
        rng = random.Random(seed)
        if rng.random() < 0.5:
            g, _ = two_ec_instance(seed, nmax=20)
        else:
            n = rng.randint(3, 20)
            g = Multigraph(n)
            for v in range(1, n):
                g.add_edge(v, rng.randrange(v), 1)
            for _ in range(rng.randint(0, n // 2)):
                u, v = rng.randrange(n), rng.randrange(n)
                if u != v:
                    g.add_edge(u, v, 1)
        verdict, bridge_vertices, m = apps.verify_2ec_distributed(g)
        assert verdict == is_two_edge_connected(g), seed
        tree = bfs_tree(g, 0)
        want = {tree.parent_edge[v] for v in bridge_vertices}
        assert want == find_bridges(g), seed
        assert m.max_tokens_edge_round <= 4


def test_verify_rejects_disconnected():
    g = Multigraph(4)
    g.add_edge(0, 1, 1)
    with pytest.raises(GraphError):
        apps.verify_2ec_distributed(g)


def test_round_count_scales_with_diameter():
    from treeaug.graph import diameter
    for seed in (0, 1, 2):
        g, _ = generators.gen_random_2ec(400, 200, seed)
        edges, tree, _, m = apps.two_ecss_unweighted(g)
        d = diameter(g)
        assert m.rounds <= 8 * max(d, 1) * 16  # loose sanity ceiling here
