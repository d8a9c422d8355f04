import random

from treeaug import cover_scan, generators, labels as lbl, sim, unweighted
from treeaug import virtual_graph as vg
from treeaug.graph import covers_ref, find_bridges
from treeaug.labels import TreeView, assign_labels_sequential
from treeaug.oracle import opt_virtual_cover
from treeaug.virtual_graph import PlainScheme, covered_tree_edges


def instance(seed, nmax=14, allow_bridges=False):
    rng = random.Random(seed)
    if allow_bridges and rng.random() < 0.4:
        from treeaug.graph import Multigraph, bfs_tree
        n = rng.randint(3, nmax)
        g = Multigraph(n)
        for v in range(1, n):
            g.add_edge(v, rng.randrange(v), 1)
        for _ in range(rng.randint(0, n)):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                g.add_edge(u, v, 1)
        return g, bfs_tree(g, 0)
    return generators.gen_random_2ec(rng.randint(3, nmax),
                                     rng.randint(0, nmax), seed)


def test_distributed_equals_sequential():
    for seed in range(120):
        g, tree = instance(seed, allow_bridges=True)
        want = unweighted.sequential_virtual_optimal(g, tree)
        view = TreeView.of_tree(tree)
        labels = assign_labels_sequential(view)
        scheme = PlainScheme()
        inc = vg.build_incidence_sequential(g, tree, labels, scheme)
        got = cover_scan.distributed_cover_scan(
            g, view, labels, inc, [False] * g.n, scheme)
        assert sorted(got["bridges"]) == sorted(want["bridges"]), seed
        key = lambda ve: (ve.origin, scheme.key(ve.anc), scheme.key(ve.desc))
        assert sorted(got["added"], key=key) == sorted(want["added"], key=key)


def test_bridges_match_reference():
    for seed in range(80):
        g, tree = instance(seed, allow_bridges=True)
        res = unweighted.sequential_virtual_optimal(g, tree)
        real = find_bridges(g)
        # a scan bridge is a vertex whose parent edge is a real bridge
        got = {tree.parent_edge[v] for v in res["bridges"]}
        assert got == {e for e in real if e in tree.tree_edges}
        # tree edges are the only possible bridges once the tree spans g
        assert all(e in tree.tree_edges for e in real)


def test_cover_is_optimal_in_virtual_view():
    scheme = PlainScheme()
    for seed in range(100):
        g, tree = instance(seed, nmax=11)
        res = unweighted.sequential_virtual_optimal(g, tree)
        if res["bridges"]:
            continue
        covered = set()
        for ve in res["added"]:
            covered.update(covered_tree_edges(tree, ve, scheme))
        assert covered == set(tree.tree_edges), seed
        ves = sorted({ve for lst in res["incidence"] for ve in lst},
                     key=lambda e: (e.origin, scheme.key(e.anc)))
        if len(ves) > 20:
            continue
        val, _ = opt_virtual_cover(
            tree, ves, lambda ve: covered_tree_edges(tree, ve, scheme),
            weighted=False)
        assert len(res["added"]) == val, seed


def test_t0_flags_skip_precovered_edges():
    scheme = PlainScheme()
    for seed in range(60):
        g, tree = instance(seed, nmax=12)
        labels = assign_labels_sequential(TreeView.of_tree(tree))
        inc = vg.build_incidence_sequential(g, tree, labels, scheme)
        rng = random.Random(seed + 999)
        t0 = [rng.random() < 0.3 for _ in range(g.n)]
        t0[tree.root] = False
        nodes = {}
        for v in range(g.n):
            nodes[v] = cover_scan.ScanNode(
                v, labels[v], children=list(tree.children[v]),
                incoming=inc[v], t0=t0[v], root=(v == tree.root))
        res = cover_scan.sequential_cover_scan(nodes, scheme)
        if res["bridges"]:
            continue
        covered = set()
        for ve in res["added"]:
            covered.update(covered_tree_edges(tree, ve, scheme))
        need = {tree.parent_edge[v] for v in range(g.n)
                if v != tree.root and not t0[v]}
        assert need <= covered, seed
        # distributed run with the same flags agrees
        got = cover_scan.distributed_cover_scan(
            g, TreeView.of_tree(tree), labels, inc, t0, scheme)
        key = lambda ve: (ve.origin, scheme.key(ve.anc), scheme.key(ve.desc))
        assert sorted(got["added"], key=key) == sorted(res["added"], key=key)


def test_round_and_budget_bounds():
    for n in (16, 64, 256):
        g, tree = generators.gen_cycle(n)
        res = unweighted.cover_virtual_optimal(g, tree)
        m = res["metrics"]
        h = tree.height
        assert m.max_tokens_edge_round <= 4
        up = m.phase("cover_up").rounds
        down = m.phase("cover_down").rounds
        # frames are constant size here, so both passes are O(h)
        assert up <= 4 * h + 8 and down <= h + 2, (n, up, down)
