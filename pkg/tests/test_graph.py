import random

import pytest

from treeaug import generators
from treeaug.graph import (GraphError, Multigraph, augmentation_covers,
                           bfs_tree, build_multigraph, covers_ref, diameter,
                           eccentricity, find_bridges, format_instance,
                           is_connected, is_two_edge_connected, mst_tree,
                           parse_instance, root_tree, tree_path_edges)


def bridges_by_removal(g):
    """Remove-one-edge reference for bridge finding."""
    out = set()
    for eid in range(g.m):
        h = Multigraph(g.n)
        for e2, (u, v, w) in enumerate(g.edges):
            if e2 != eid:
                h.add_edge(u, v, w)
        if is_connected(g) and not is_connected(h):
            out.add(eid)
    return out


def random_connected(rng, n, m_extra, parallel=True):
    g = Multigraph(n)
    perm = list(range(n))
    rng.shuffle(perm)
    for i in range(1, n):
        g.add_edge(perm[i], perm[rng.randrange(i)], rng.randint(1, 9))
    for _ in range(m_extra):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        if not parallel and any(o == v for _, o in g.adj[u]):
            continue
        g.add_edge(u, v, rng.randint(1, 9))
    return g


def test_bridges_match_removal_oracle():
    for seed in range(60):
        rng = random.Random(seed)
        g = random_connected(rng, rng.randint(2, 12), rng.randint(0, 8))
        assert find_bridges(g) == bridges_by_removal(g), seed


def test_parallel_edges_are_not_bridges():
    g = Multigraph(2)
    g.add_edge(0, 1, 1)
    g.add_edge(0, 1, 1)
    assert find_bridges(g) == set()
    assert is_two_edge_connected(g)


def test_self_loops_rejected():
    g = Multigraph(2)
    with pytest.raises(GraphError):
        g.add_edge(1, 1, 1)


def test_rooted_tree_structure():
    for seed in range(40):
        rng = random.Random(100 + seed)
        g, tree = generators.gen_random_2ec(rng.randint(3, 30),
                                            rng.randint(0, 10), seed)
        assert tree.root == 0
        assert tree.depth[0] == 0
        for v in range(1, g.n):
            p = tree.parent[v]
            assert tree.depth[v] == tree.depth[p] + 1
            u, w, _ = g.edges[tree.parent_edge[v]]
            assert {u, w} == {v, p}
            assert v in tree.children[p]
        # BFS order: parents precede children
        pos = {v: i for i, v in enumerate(tree.order)}
        for v in range(1, g.n):
            assert pos[tree.parent[v]] < pos[v]
        assert sorted(tree.post_order()) == list(range(g.n))


def test_bfs_tree_layers_and_parent_rule():
    for seed in range(30):
        rng = random.Random(seed)
        g = random_connected(rng, rng.randint(2, 20), rng.randint(0, 15))
        t = bfs_tree(g, 0)
        # depths are true BFS distances
        dist = [-1] * g.n
        dist[0] = 0
        frontier = [0]
        while frontier:
            nxt = []
            for v in frontier:
                for _, u in g.adj[v]:
                    if dist[u] < 0:
                        dist[u] = dist[v] + 1
                        nxt.append(u)
            frontier = nxt
        for v in range(g.n):
            assert t.depth[v] == dist[v]
        # parent = lowest-id neighbor one layer up, ties lowest edge id
        for v in range(1, g.n):
            cands = sorted((u, eid) for eid, u in g.adj[v] if dist[u] == dist[v] - 1)
            assert (t.parent[v], t.parent_edge[v]) == cands[0]


def test_mst_is_minimum():
    import itertools
    for seed in range(20):
        rng = random.Random(seed)
        n = rng.randint(3, 7)
        g = random_connected(rng, n, rng.randint(1, 4))
        t = mst_tree(g, 0)
        w = sum(g.weight(e) for e in t.tree_edges)
        best = min(sum(g.weight(e) for e in sub)
                   for sub in itertools.combinations(range(g.m), n - 1)
                   if len({e for e in sub}) == n - 1
                   and is_connected_sub(g, sub))
        assert w == best, seed


def is_connected_sub(g, edge_ids):
    h = Multigraph(g.n)
    for e in edge_ids:
        u, v, w = g.edges[e]
        h.add_edge(u, v, w)
    return is_connected(h)


def test_cover_reference_matches_path():
    for seed in range(30):
        rng = random.Random(seed)
        g, tree = generators.gen_random_2ec(rng.randint(3, 15),
                                            rng.randint(1, 8), seed)
        for eid in range(g.m):
            if eid in tree.tree_edges:
                continue
            u, v, _ = g.edges[eid]
            path = set(tree_path_edges(tree, u, v))
            for te in tree.tree_edges:
                assert covers_ref(g, tree, eid, te) == (te in path)


def test_augmentation_covers_matches_bridge_check():
    for seed in range(30):
        rng = random.Random(seed)
        g, tree = generators.gen_random_2ec(rng.randint(3, 12),
                                            rng.randint(1, 6), seed)
        nontree = [e for e in range(g.m) if e not in tree.tree_edges]
        for _ in range(5):
            sub = [e for e in nontree if rng.random() < 0.5]
            h = Multigraph(g.n)
            for e in sorted(set(sub) | tree.tree_edges):
                u, v, w = g.edges[e]
                h.add_edge(u, v, w)
            assert augmentation_covers(g, tree, sub) == is_two_edge_connected(h)


def test_instance_round_trip():
    for seed in range(20):
        rng = random.Random(seed)
        g, tree = generators.gen_random_2ec(rng.randint(3, 20),
                                            rng.randint(0, 10), seed,
                                            wmin=1, wmax=50)
        text = format_instance(g, tree)
        g2, tree2 = parse_instance(text)
        assert g2.n == g.n and g2.edges == g.edges
        assert tree2.tree_edges == tree.tree_edges
        assert tree2.root == 0
        assert format_instance(g2, tree2) == text


def test_instance_comments_and_missing_tree():
    g, _ = parse_instance("# hello\n2 1\n0 1 7  # weight seven\n")
    assert g.n == 2 and g.edges == [(0, 1, 7)]
    _, tree = parse_instance("2 1\n0 1 7\n")
    assert tree is None


def test_diameter_and_eccentricity():
    g, _ = generators.gen_cycle(8)
    assert diameter(g) == 4
    assert eccentricity(g, 0) == 4
