"""Sublinear-round augmentation: the tree is cut into O(sqrt(n)) fragments
of diameter O(sqrt(n)); ancestry queries use a (fragment, local label)
pair plus a globally broadcast directory of the fragment tree, and the
cover is built in three passes (tree-leaf edges, cross-fragment edges,
in-fragment edges), each a short in-fragment scan plus a broadcast over a
BFS tree. The result is an optimal-within-factor-2 cover of the
ancestor-descendant view, hence a 4-approximate augmentation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import cover_scan, labels as lbl, sim, virtual_graph as vg
from .graph import root_tree
from .sim import ACTIVE, HALT, IDLE, TokenStream
from .unweighted import BridgeDetected


# ---------------------------------------------------------------------------
# fragment decomposition (computed centrally and injected; charged as a
# nominal phase sized like its distributed counterpart, see augment_fast)

def fragment_decompose(tree, target: int | None = None):
    """Greedy bottom-up fragmentation: close a fragment once its residual
    size reaches target (default ceil(sqrt(n))); the tree root absorbs the
    leftover. Returns (frag_of, roots) with fragment id = its root vertex."""
    n = tree.n
    s = target if target is not None else max(1, math.isqrt(n - 1) + 1)
    resid = [1] * n
    is_root = [False] * n
    for v in reversed(tree.order):
        r = 1 + sum(resid[c] for c in tree.children[v])
        if v == tree.root or r >= s:
            is_root[v] = True
            resid[v] = 0
        else:
            resid[v] = r
    frag_of = [-1] * n
    roots = []
    for v in tree.order:
        if is_root[v]:
            frag_of[v] = v
            roots.append(v)
        else:
            frag_of[v] = frag_of[tree.parent[v]]
    return frag_of, roots


# ---------------------------------------------------------------------------
# split labels

@dataclass(frozen=True)
class SplitLabel:
    frag: int
    local: lbl.LcaLabel


class SplitScheme:
    """Ancestry algebra over (fragment, local label) pairs, backed by the
    broadcast directory of global edges.

    records: (child fragment, parent fragment, local label of the parent
    endpoint of the child's global edge) triples; root_frag is the fragment
    holding the tree root. The LCA of two vertices in different fragments
    is found inside the fragment-tree LCA fragment F as the local LCA of
    the two entry points of their root paths into F.
    """

    def __init__(self, records, root_frag: int):
        self.root_frag = root_frag
        self.tf_parent = {}
        self.entry_label = {}
        frags = {root_frag}
        for child, parent, plabel in records:
            self.tf_parent[child] = parent
            self.entry_label[child] = plabel
            frags.add(child)
            frags.add(parent)
        self.frags = sorted(frags)
        idx = {f: i for i, f in enumerate(self.frags)}
        # heavy-path labels on the fragment tree itself
        k = len(self.frags)
        pv = [-1] * k
        pe = [-1] * k
        children: list[list[tuple[int, int]]] = [[] for _ in range(k)]
        for child, parent in self.tf_parent.items():
            ci, pi = idx[child], idx[parent]
            pv[ci] = pi
            pe[ci] = ci  # edge ids are unused on this synthetic view
            children[pi].append((ci, ci))
        for c in children:
            c.sort()
        view = lbl.TreeView(k, pv, pe, children, [idx[root_frag]])
        tf_labels = lbl.assign_labels_sequential(view)
        self.tf_label = {f: tf_labels[idx[f]] for f in self.frags}
        self._frag_by_key = {lab.seq: f for f, lab in self.tf_label.items()}
        # depth in the full tree of each fragment root
        self.base_depth = {}
        for f in sorted(self.frags, key=lambda f: self.tf_label[f].depth):
            if f == root_frag:
                self.base_depth[f] = 0
            else:
                p = self.tf_parent[f]
                self.base_depth[f] = (self.base_depth[p]
                                      + self.entry_label[f].depth + 1)
        self._entry_cache = {}

    def depth(self, sl: SplitLabel) -> int:
        return self.base_depth[sl.frag] + sl.local.depth

    def vertex_of(self, sl: SplitLabel):
        return sl.local.vertex

    def key(self, sl: SplitLabel):
        return (sl.frag, sl.local.seq)

    def _entry_into(self, anc_frag: int, desc_frag: int) -> lbl.LcaLabel:
        """Local label (in anc_frag) of the parent endpoint of the global
        edge through which desc_frag's chain enters anc_frag."""
        key = (anc_frag, desc_frag)
        hit = self._entry_cache.get(key)
        if hit is not None:
            return hit
        f = desc_frag
        while self.tf_parent[f] != anc_frag:
            f = self.tf_parent[f]
        out = self.entry_label[f]
        self._entry_cache[key] = out
        return out

    def lca(self, a: SplitLabel, b: SplitLabel) -> SplitLabel:
        if a.frag == b.frag:
            return SplitLabel(a.frag, lbl.lca_query(a.local, b.local))
        gl = lbl.lca_query(self.tf_label[a.frag], self.tf_label[b.frag])
        f = self._frag_by_key[gl.seq]
        x = a.local if f == a.frag else self._entry_into(f, a.frag)
        y = b.local if f == b.frag else self._entry_into(f, b.frag)
        return SplitLabel(f, lbl.lca_query(x, y))

    def entry_point(self, frag: int, desc_frag: int):
        """Local label (in `frag`) of the deepest vertex of `frag` that is
        an ancestor of all of desc_frag; None unless frag is a proper
        fragment-tree ancestor of desc_frag."""
        if frag == desc_frag:
            return None
        ta, td = self.tf_label[frag], self.tf_label[desc_frag]
        if not lbl.is_ancestor(ta, td):
            return None
        return self._entry_into(frag, desc_frag)

    def is_ancestor(self, a: SplitLabel, d: SplitLabel) -> bool:
        t = self.lca(a, d)
        return t.frag == a.frag and t.local.seq == a.local.seq

    def tokens(self, sl: SplitLabel) -> tuple:
        return (("sf", sl.frag),) + lbl.label_tokens(sl.local)

    def parse(self, buf, i):
        if buf[i][0] != "sf":
            raise lbl.LabelError("expected fragment tag, got %r" % (buf[i],))
        frag = buf[i][1]
        local, j = lbl.parse_label(buf, i + 1)
        return SplitLabel(frag, local), j


def split_labels_sequential(tree, frag_of):
    """Local labels, global-edge records and the scheme, all centrally."""
    view = lbl.TreeView.of_fragments(tree, frag_of)
    local = lbl.assign_labels_sequential(view)
    records = []
    for v in view.roots:
        if v == tree.root:
            continue
        p = tree.parent[v]
        records.append((v, frag_of[p], local[p]))
    scheme = SplitScheme(records, frag_of[tree.root])
    split = [SplitLabel(frag_of[v], local[v]) for v in range(tree.n)]
    return split, scheme, records


# ---------------------------------------------------------------------------
# distributed BFS tree (carrier for the coordinator broadcasts)

class _BfsProgram:
    def __init__(self, g, root):
        self.g = g
        self.root = root

    def init_state(self, v):
        return {"v": v, "dist": 0 if v == self.root else None,
                "parent": (-1, -1), "fired": False}

    def step(self, st, rnd, inbox):
        if st["dist"] is None and inbox:
            best = None
            for eid, payload in inbox:
                u = payload[0][1]
                if best is None or (u, eid) < best:
                    best = (u, eid)
            st["dist"] = rnd  # first delivery round equals the BFS distance
            st["parent"] = best
        if st["dist"] is not None and not st["fired"]:
            st["fired"] = True
            return ([(eid, (("d", st["v"], st["dist"]),))
                     for eid, _ in self.g.adj[st["v"]]], HALT)
        return [], IDLE

    def output(self, st):
        return st["parent"]


def build_bfs_tree_distributed(g, root: int, budget: int = sim.DEFAULT_BUDGET,
                               phase: str = "bfs"):
    prog = _BfsProgram(g, root)
    outputs, metrics = sim.run(g, prog, budget=budget, phase=phase)
    tree_ids = [outputs[v][1] for v in range(g.n) if v != root]
    return root_tree(g, tree_ids, root), metrics


# ---------------------------------------------------------------------------
# parent-side label exchange across global edges

class _ParentLabelProgram:
    """Each vertex streams its local label to children in other fragments;
    fragment roots record the parent endpoint label of their global edge."""

    def __init__(self, tree, frag_of, local_labels, budget):
        self.tree = tree
        self.frag_of = frag_of
        self.labels = local_labels
        self.budget = budget

    def init_state(self, v):
        t = self.tree
        toks = lbl.label_tokens(self.labels[v]) + (("le",),)
        streams = []
        for c in t.children[v]:
            if self.frag_of[c] != self.frag_of[v]:
                s = TokenStream()
                s.push(toks)
                streams.append((t.parent_edge[c], s))
        streams.sort(key=lambda x: x[0])
        p = t.parent[v]
        expects = p >= 0 and self.frag_of[p] != self.frag_of[v]
        return {"streams": streams, "buf": [], "plabel": None,
                "expects": expects}

    def step(self, st, rnd, inbox):
        if inbox:
            for _, payload in inbox:
                st["buf"].extend(payload)
            if st["buf"] and st["buf"][-1] == ("le",):
                st["plabel"], _ = lbl.parse_label(st["buf"], 0)
        outbox = []
        busy = False
        for eid, s in st["streams"]:
            if s:
                outbox.append((eid, s.take(self.budget)))
                busy = busy or bool(s)
        if not busy and (st["plabel"] is not None or not st["expects"]):
            return outbox, HALT
        return outbox, ACTIVE if (outbox or busy) else IDLE

    def output(self, st):
        return st["plabel"]


# ---------------------------------------------------------------------------
# in-fragment maximal-edge scans (leaf pass and global pass share this)

def _edge_frame(ve, scheme):
    if ve is None:
        return (("none",),)
    return ((("edge",),) + scheme.tokens(ve.anc) + scheme.tokens(ve.desc)
            + (("eo", ve.origin),))


def _parse_edge_frames(buf, scheme):
    out = []
    while buf:
        if buf[0][0] == "none":
            out.append(None)
            del buf[:1]
            continue
        end = None
        for i in range(1, len(buf)):
            if isinstance(buf[i], tuple) and buf[i][0] == "eo":
                end = i
                break
        if end is None:
            break
        anc, j = scheme.parse(buf, 1)
        desc, j = scheme.parse(buf, j)
        if j != end:
            raise sim.SimError("malformed edge frame")
        out.append(vg.VirtualEdge(anc, desc, buf[end][1], 0))
        del buf[:end + 1]
    return out


class _FragmentMaxScan:
    """Bottom-up within each fragment: every non-root vertex sends one frame
    (the maximal edge covering its parent edge, or none) to its local
    parent; a fragment root's result is the maximal edge covering its
    global edge. own_cands(v) yields the vertex's own contributions."""

    def __init__(self, view, split_labels, scheme, own_cands, budget):
        self.view = view
        self.labels = split_labels
        self.scheme = scheme
        self.own_cands = own_cands
        self.budget = budget

    def init_state(self, v):
        ch = self.view.children[v]
        return {"v": v, "pe": self.view.parent_edge[v],
                "need": len(ch), "got": 0,
                "bufs": {eid: [] for _, eid in ch},
                "cands": [], "out": TokenStream(), "done": False,
                "result": None}

    def _decide(self, st):
        v = st["v"]
        scheme = self.scheme
        mydepth = scheme.depth(self.labels[v])
        best = None
        for ve in st["cands"]:
            if scheme.depth(ve.anc) < mydepth:
                best = vg.maximal_of(best, ve, scheme)
        for ve in self.own_cands(v):
            if scheme.depth(ve.anc) < mydepth:
                best = vg.maximal_of(best, ve, scheme)
        st["result"] = best
        st["done"] = True
        if st["pe"] >= 0:
            st["out"].push(_edge_frame(best, scheme))

    def step(self, st, rnd, inbox):
        if inbox:
            for eid, payload in inbox:
                buf = st["bufs"][eid]
                buf.extend(payload)
                for fr in _parse_edge_frames(buf, self.scheme):
                    st["got"] += 1
                    if fr is not None:
                        st["cands"].append(fr)
        if not st["done"] and st["got"] == st["need"]:
            self._decide(st)
        outbox = []
        if st["out"]:
            outbox.append((st["pe"], st["out"].take(self.budget)))
        if st["done"] and not st["out"]:
            return outbox, HALT
        return outbox, ACTIVE if (outbox or st["out"]) else IDLE

    def output(self, st):
        return st["result"]


def fragment_max_sequential(view, split_labels, scheme, own_cands):
    """Central shadow of _FragmentMaxScan; same recurrence, same ties."""
    order = []
    stack = list(view.roots)
    while stack:
        v = stack.pop()
        order.append(v)
        for c, _ in view.children[v]:
            stack.append(c)
    best = [None] * view.n
    for v in reversed(order):
        mydepth = scheme.depth(split_labels[v])
        b = None
        for c, _ in view.children[v]:
            ve = best[c]
            if ve is not None and scheme.depth(ve.anc) < mydepth:
                b = vg.maximal_of(b, ve, scheme)
        for ve in own_cands(v):
            if scheme.depth(ve.anc) < mydepth:
                b = vg.maximal_of(b, ve, scheme)
        best[v] = b
    return best


# ---------------------------------------------------------------------------
# pass logic shared by the engine driver and the sequential shadow

def covers_parent_edge(ve, v_label, scheme) -> bool:
    return (scheme.depth(ve.anc) < scheme.depth(v_label)
            and scheme.is_ancestor(v_label, ve.desc))


def leaf_adds(tree, incidence, split, scheme):
    """added[v] = maximal incoming edge at tree leaf v."""
    added = {}
    for v in range(tree.n):
        if tree.children[v]:
            continue
        best = None
        mydepth = scheme.depth(split[v])
        for ve in incidence[v]:
            if scheme.depth(ve.anc) < mydepth:
                best = vg.maximal_of(best, ve, scheme)
        if best is not None:
            added[v] = best
    return added


def _coverage_after_leaf_pass(tree, split, scheme, scan_results, bcast):
    """t0[v]: v's local parent edge (or global edge for a fragment root) is
    covered by a leaf-added edge; derived from the in-fragment scan result
    plus the broadcast per-fragment maximal edges."""
    t0 = [False] * tree.n
    for v in range(tree.n):
        if v == tree.root:
            continue
        if scan_results[v] is not None:
            t0[v] = True
        else:
            lab = split[v]
            t0[v] = any(covers_parent_edge(e, lab, scheme) for e in bcast)
    return t0


def fragment_tree_scan(tree, frag_roots, frag_of, split, scheme, frag_max, t0):
    """Covering scan on the contracted fragment tree: each fragment is one
    node, responsible for its global edge, with its maximal incoming edge
    as the only candidate. Pure local computation from broadcast data."""
    tf_children: dict[int, list] = {f: [] for f in frag_roots}
    for f in frag_roots:
        if f != tree.root:
            tf_children[frag_of[tree.parent[f]]].append(f)
    nodes = {}
    for f in frag_roots:
        nodes[f] = cover_scan.ScanNode(
            f, split[f], children=sorted(tf_children[f]),
            incoming=[frag_max[f]] if f in frag_max else [],
            t0=t0[f], root=(f == tree.root))
    return cover_scan.sequential_cover_scan(nodes, scheme)


def local_incoming(view, incidence, split, scheme, extras):
    """Per-vertex candidates for the in-fragment pass: own incidence, plus
    broadcast fragment-maximal edges, each injected at the vertex where the
    chain from its descendant's fragment enters this fragment."""
    out = []
    for v in range(view.n):
        cands = list(incidence[v])
        lab = split[v]
        for e in extras:
            ep = scheme.entry_point(lab.frag, e.desc.frag)
            if ep is not None and ep.seq == lab.local.seq:
                cands.append(e)
        cands.sort(key=lambda e: e.origin)
        out.append(cands)
    return out


def _apply_cover(t0, added, split, scheme, tree):
    for v in range(tree.n):
        if v == tree.root or t0[v]:
            continue
        lab = split[v]
        if any(covers_parent_edge(e, lab, scheme) for e in added):
            t0[v] = True


def _dedup_cover(parts, scheme):
    seen = set()
    cover = []
    for ve in parts:
        key = (scheme.key(ve.anc), scheme.key(ve.desc), ve.origin)
        if key not in seen:
            seen.add(key)
            cover.append(ve)
    return cover


# ---------------------------------------------------------------------------
# engine driver

def fast_cover_distributed(g, tree, budget: int = sim.DEFAULT_BUDGET,
                           target: int | None = None):
    """All passes on the engine. Returns a dict with the virtual cover, the
    per-pass pieces, bridges, labels and Metrics."""
    frag_of, frag_roots = fragment_decompose(tree, target)
    view = lbl.TreeView.of_fragments(tree, frag_of)
    metrics = sim.Metrics([])
    n = g.n
    s = max(1, math.isqrt(n - 1) + 1)

    bfs, m = build_bfs_tree_distributed(g, tree.root, budget=budget)
    metrics.merge(m)
    # the injected decomposition stands in for a convergecast along the BFS
    # tree plus a sqrt(n)-deep local pass; charge it accordingly
    metrics.phases.append(sim.PhaseMetrics(
        "fragmentation", rounds=metrics.phase("bfs").rounds + s))

    local_labels, m = lbl.assign_labels_distributed(
        g, view, budget=budget, phase_prefix="labels_local")
    metrics.merge(m)

    exch = _ParentLabelProgram(tree, frag_of, local_labels, budget)
    exch_out, m = sim.run(g, exch, budget=budget, phase="labels_global_exchange")
    metrics.merge(m)
    msgs = []
    for v in frag_roots:
        if v == tree.root:
            continue
        msgs.append((v, (("gr", v, frag_of[tree.parent[v]]),)
                     + lbl.label_tokens(exch_out[v])))
    delivered, m = sim.broadcast_upcast(g, bfs, msgs, budget=budget,
                                        phase="labels_global_bcast")
    metrics.merge(m)
    records = []
    for msg in delivered:
        plabel, _ = lbl.parse_label(list(msg), 1)
        records.append((msg[0][1], msg[0][2], plabel))
    scheme = SplitScheme(records, frag_of[tree.root])
    split = [SplitLabel(frag_of[v], local_labels[v]) for v in range(n)]

    incidence, m = vg.build_incidence_distributed(
        g, tree, split, scheme, budget=budget, phase="exchange")
    metrics.merge(m)

    # pass 1: tree leaves add their maximal incoming edges
    added_leaf = leaf_adds(tree, incidence, split, scheme)

    def leaf_cands(v):
        ve = added_leaf.get(v)
        return [ve] if ve is not None else []

    scan1 = _FragmentMaxScan(view, split, scheme, leaf_cands, budget)
    res1, m = sim.run(g, scan1, budget=budget, phase="leaf_cover")
    metrics.merge(m)
    msgs = [(v, (("lc", res1[v].origin),) + scheme.tokens(res1[v].anc)
             + scheme.tokens(res1[v].desc))
            for v in frag_roots if v != tree.root and res1[v] is not None]
    bc1, m = sim.broadcast_upcast(g, bfs, msgs, budget=budget, phase="leaf_bcast")
    metrics.merge(m)
    bcast1 = []
    for msg in bc1:
        buf = list(msg)
        anc, i = scheme.parse(buf, 1)
        desc, _ = scheme.parse(buf, i)
        bcast1.append(vg.VirtualEdge(anc, desc, buf[0][1], 0))
    t0 = _coverage_after_leaf_pass(tree, split, scheme, res1, bcast1)

    # pass 2: per-fragment maximal incoming edges, broadcast, and the
    # contracted-tree scan replayed at every vertex
    scan2 = _FragmentMaxScan(view, split, scheme,
                             lambda v: incidence[v], budget)
    res2, m = sim.run(g, scan2, budget=budget, phase="global_cover")
    metrics.merge(m)
    msgs = [(v, (("gc", v, res2[v].origin),) + scheme.tokens(res2[v].anc)
             + scheme.tokens(res2[v].desc))
            for v in frag_roots if v != tree.root and res2[v] is not None]
    bc2, m = sim.broadcast_upcast(g, bfs, msgs, budget=budget, phase="global_bcast")
    metrics.merge(m)
    frag_max = {}
    for msg in bc2:
        buf = list(msg)
        anc, i = scheme.parse(buf, 1)
        desc, _ = scheme.parse(buf, i)
        frag_max[msg[0][1]] = vg.VirtualEdge(anc, desc, msg[0][2], 0)
    glob_t0 = {f: t0[f] for f in frag_roots}
    tf_res = fragment_tree_scan(tree, frag_roots, frag_of, split, scheme,
                                frag_max, glob_t0)
    added_global = tf_res["added"]
    _apply_cover(t0, added_global, split, scheme, tree)

    # pass 3: in-fragment covering scan with the fragment-maximal edges as
    # extra leaf candidates
    extras = sorted(frag_max.values(), key=lambda e: e.origin)
    incoming = local_incoming(view, incidence, split, scheme, extras)
    res3 = cover_scan.distributed_cover_scan(
        g, view, split, incoming, t0, scheme,
        budget=budget, phase_prefix="local_cover")
    metrics.merge(res3["metrics"])
    added_local = res3["added"]

    # owners of cross-fragment selections announce them
    msgs = []
    for v in range(n):
        for ve in res3["adds_by_vertex"][v]:
            dv = scheme.vertex_of(ve.desc)
            if dv is None or frag_of[dv] != frag_of[v]:
                msgs.append((v, (("fs", ve.origin),)))
    fin, m = sim.broadcast_upcast(g, bfs, msgs, budget=budget,
                                  phase="final_broadcast")
    metrics.merge(m)

    cover = _dedup_cover(
        sorted(added_leaf.values(), key=lambda e: e.origin)
        + sorted(added_global, key=lambda e: e.origin)
        + sorted(added_local, key=lambda e: e.origin), scheme)
    bridges = sorted(set(tf_res["bridges"]) | set(res3["bridges"]))
    return {
        "cover": cover, "bridges": bridges,
        "leaf_added": added_leaf, "global_added": added_global,
        "local_added": added_local, "frag_max": frag_max,
        "frag_of": frag_of, "frag_roots": frag_roots,
        "labels": split, "scheme": scheme, "incidence": incidence,
        "final_announced": sorted(t[0][1] for t in fin),
        "metrics": metrics,
    }


def sequential_fast_cover(g, tree, target: int | None = None):
    """Central shadow of fast_cover_distributed: same passes, same ties."""
    frag_of, frag_roots = fragment_decompose(tree, target)
    view = lbl.TreeView.of_fragments(tree, frag_of)
    split, scheme, _ = split_labels_sequential(tree, frag_of)
    incidence = vg.build_incidence_sequential(g, tree, split, scheme)

    added_leaf = leaf_adds(tree, incidence, split, scheme)

    def leaf_cands(v):
        ve = added_leaf.get(v)
        return [ve] if ve is not None else []

    res1 = fragment_max_sequential(view, split, scheme, leaf_cands)
    bcast1 = [res1[v] for v in frag_roots
              if v != tree.root and res1[v] is not None]
    t0 = _coverage_after_leaf_pass(tree, split, scheme, res1, bcast1)

    res2 = fragment_max_sequential(view, split, scheme,
                                   lambda v: incidence[v])
    frag_max = {v: res2[v] for v in frag_roots
                if v != tree.root and res2[v] is not None}
    glob_t0 = {f: t0[f] for f in frag_roots}
    tf_res = fragment_tree_scan(tree, frag_roots, frag_of, split, scheme,
                                frag_max, glob_t0)
    added_global = tf_res["added"]
    _apply_cover(t0, added_global, split, scheme, tree)

    extras = sorted(frag_max.values(), key=lambda e: e.origin)
    incoming = local_incoming(view, incidence, split, scheme, extras)
    nodes = {}
    for v in range(g.n):
        nodes[v] = cover_scan.ScanNode(
            v, split[v],
            children=[c for c, _ in view.children[v]],
            incoming=incoming[v], t0=t0[v],
            root=view.parent_edge[v] < 0)
    res3 = cover_scan.sequential_cover_scan(nodes, scheme)

    cover = _dedup_cover(
        sorted(added_leaf.values(), key=lambda e: e.origin)
        + sorted(added_global, key=lambda e: e.origin)
        + sorted(res3["added"], key=lambda e: e.origin), scheme)
    bridges = sorted(set(tf_res["bridges"]) | set(res3["bridges"]))
    return {"cover": cover, "bridges": bridges, "labels": split,
            "scheme": scheme, "frag_of": frag_of, "frag_roots": frag_roots}


def augment_fast(g, tree, budget: int = sim.DEFAULT_BUDGET,
                 target: int | None = None):
    """4-approximate augmentation with O(D + sqrt(n)) style round count.

    Returns (Augmentation, virtual cover, Metrics)."""
    res = fast_cover_distributed(g, tree, budget=budget, target=target)
    if res["bridges"]:
        raise BridgeDetected(res["bridges"])
    aug = vg.project_augmentation(g, tree, res["labels"], res["cover"],
                                  res["scheme"])
    aug.meta["virtual_cover_size"] = len(res["cover"])
    aug.meta["fragments"] = len(res["frag_roots"])
    return aug, res["cover"], res["metrics"]
