"""Weighted tree augmentation via altered weights.

Upward phase: every vertex v keeps, for each ancestor u, the cheapest way
w_v(u) to cover the path v..u using edges incoming to its subtree, after
subtracting min_v = w_v(parent(v)) (the cost charged to v's own tree
edge). Values flow to the parent as (ancestorId, alteredWeight) pairs,
exactly one pair per tree edge per round, deepest ancestor first, so the
whole phase is pipelined. Downward phase: each vertex either starts a
cover for its own tree edge or relays the ancestor's choice to the
recorded cheapest sender; the vertex at the end of a chain adds its own
incoming edge.

The per-tree-edge charges c(t) = min_v sum exactly to the weight of the
produced cover, and no augmentation can cost less than their sum.
"""
from __future__ import annotations

from . import labels as lbl, sim, virtual_graph as vg
from .graph import Augmentation
from .sim import ACTIVE, HALT, IDLE, TokenStream
from .unweighted import BridgeDetected

INF = 1 << 62

_LE = ("le",)


# ---------------------------------------------------------------------------
# ancestor directories: every vertex learns (id, label) of all its ancestors.

class _AncestorProgram:
    def __init__(self, view, all_labels, budget):
        self.view = view
        self.labels = all_labels
        self.budget = budget

    def init_state(self, v):
        ch = self.view.children[v]
        streams = []
        rec = lbl.label_tokens(self.labels[v]) + (("le",),)
        for c, eid in ch:
            s = TokenStream()
            s.push(rec)
            streams.append((eid, s))
        return {"streams": streams, "all": [], "got": 0,
                "need": self.labels[v].depth}

    def step(self, st, rnd, inbox):
        if inbox:
            # relayed records are verbatim copies, so incoming tokens go to
            # the child streams untouched; labels are parsed once at output
            for _, payload in inbox:
                st["all"].extend(payload)
                st["got"] += payload.count(_LE)
                for _, s in st["streams"]:
                    s.buf.extend(payload)
        outbox = []
        busy = False
        for eid, s in st["streams"]:
            if s:
                outbox.append((eid, s.take(self.budget)))
                busy = busy or bool(s)
        if st["got"] == st["need"] and not busy:
            return outbox, HALT
        return outbox, ACTIVE if (outbox or busy) else IDLE

    def output(self, st):
        # ancestors indexed by depth 0..depth(v)-1
        out = [None] * st["need"]
        buf = st["all"]
        i = 0
        while i < len(buf):
            label, i = lbl.parse_label(buf, i)
            if buf[i] != _LE:
                raise sim.SimError("malformed ancestor record")
            i += 1
            out[label.depth] = label
        if any(a is None for a in out):
            raise sim.SimError("incomplete ancestor directory")
        return out


def disseminate_ancestors(g, tree, all_labels, budget: int = sim.DEFAULT_BUDGET,
                          phase: str = "ancestors"):
    view = lbl.TreeView.of_tree(tree)
    prog = _AncestorProgram(view, all_labels, budget)
    return sim.run(g, prog, budget=budget, phase=phase)


# ---------------------------------------------------------------------------
# upward phase

def _own_table(incoming, depth, scheme):
    """best_w[j] / best_edge[j]: cheapest own incoming edge covering v..u for
    the ancestor u at depth j (ties by lowest edge id)."""
    best_w = [INF] * depth
    best_edge = [None] * depth
    by_depth = sorted(incoming, key=lambda e: (scheme.depth(e.anc), e.weight, e.origin))
    i = 0
    cur_w, cur_e = INF, None
    for j in range(depth):
        while i < len(by_depth) and scheme.depth(by_depth[i].anc) <= j:
            e = by_depth[i]
            if e.weight < cur_w or (e.weight == cur_w and cur_e is not None
                                    and e.origin < cur_e.origin):
                cur_w, cur_e = e.weight, e
            i += 1
        best_w[j] = cur_w
        best_edge[j] = cur_e
    return best_w, best_edge


class WeightedUpProgram:
    """One (ancestorId, alteredWeight) pair per tree edge per round, for
    ancestors other than the parent, deepest first."""

    def __init__(self, view, incidence, directories, scheme):
        self.view = view
        self.incidence = incidence
        self.dirs = directories  # v -> [ancestor labels by depth]
        self.scheme = scheme

    def init_state(self, v):
        ancs = self.dirs[v]
        d = len(ancs)
        anc_ids = [a.vertex for a in ancs]
        best_w, best_edge = _own_table(self.incidence[v], d, self.scheme)
        ch = self.view.children[v]
        st = {
            "v": v, "d": d, "pe": self.view.parent_edge[v],
            "anc_idx": {vid: j for j, vid in enumerate(anc_ids)},
            "anc_ids": anc_ids,
            "best_w": best_w, "best_src": [-1] * d, "best_edge": best_edge,
            "recv_cnt": [0] * d, "recv_total": 0,
            "expected": len(ch) * d, "nchild": len(ch),
            "child_of_edge": {eid: c for c, eid in ch},
            "next_j": d - 2, "min_v": None,
        }
        if st["nchild"] == 0 and d > 0:
            st["min_v"] = best_w[d - 1]
        return st

    def step(self, st, rnd, inbox):
        if inbox:
            idx = st["anc_idx"]
            bw, bs = st["best_w"], st["best_src"]
            for eid, payload in inbox:
                u_id, w = payload
                j = idx[u_id]
                c = st["child_of_edge"][eid]
                if w < bw[j] or (w == bw[j] and (bs[j] == -1 or c < bs[j])):
                    bw[j] = w
                    bs[j] = c
                    st["best_edge"][j] = None
                st["recv_cnt"][j] += 1
                st["recv_total"] += 1
            if (st["min_v"] is None and st["d"] > 0
                    and st["recv_cnt"][st["d"] - 1] == st["nchild"]):
                st["min_v"] = bw[st["d"] - 1]
        outbox = []
        j = st["next_j"]
        if j >= 0 and st["min_v"] is not None and st["recv_cnt"][j] == st["nchild"]:
            w = st["best_w"][j]
            if w >= INF:
                alt = INF
            else:
                alt = w - st["min_v"]
                if alt < 0:
                    raise sim.SimError("negative altered weight at vertex %d" % st["v"])
            outbox.append((st["pe"], (st["anc_ids"][j], alt)))
            st["next_j"] = j - 1
        if st["next_j"] < 0 and st["recv_total"] == st["expected"]:
            return outbox, HALT
        j = st["next_j"]
        ready = (j >= 0 and st["min_v"] is not None
                 and st["recv_cnt"][j] == st["nchild"])
        return outbox, ACTIVE if ready else IDLE

    def output(self, st):
        return {"min": st["min_v"], "best_w": st["best_w"],
                "best_src": st["best_src"], "best_edge": st["best_edge"],
                "anc_ids": st["anc_ids"]}


class WeightedDownProgram:
    """Relay (topAncestorId, deciderId) along the recorded cheapest-sender
    chain; the chain end adds its own incoming edge."""

    def __init__(self, view, tables):
        self.view = view
        self.tables = tables

    def init_state(self, v):
        ch = self.view.children[v]
        return {"v": v, "pe": self.view.parent_edge[v],
                "child_edges": [(c, eid) for c, eid in ch],
                "added": [], "bridge": False,
                "is_root_child": (self.view.parent_edge[v] >= 0
                                  and self.tables[v]["min"] is not None
                                  and len(self.tables[v]["anc_ids"]) == 1)}

    def _act(self, st, m):
        tab = self.tables[st["v"]]
        v = st["v"]
        outbox = []
        chain_child = None
        if m is None:
            if tab["min"] is None or tab["min"] >= INF:
                st["bridge"] = tab["min"] is not None and tab["min"] >= INF
                u = dec = None
            else:
                j = len(tab["anc_ids"]) - 1
                u, dec = tab["anc_ids"][j], v
        else:
            u, dec = m
            j = {vid: i for i, vid in enumerate(tab["anc_ids"])}[u]
        if m is not None or (tab["min"] is not None and tab["min"] < INF):
            src = tab["best_src"][j]
            if src == -1:
                e = tab["best_edge"][j]
                st["added"].append((e, u, dec))
            else:
                chain_child = src
        for c, eid in st["child_edges"]:
            if c == chain_child:
                outbox.append((eid, (u, dec)))
            else:
                outbox.append((eid, ("bot",)))
        return outbox

    def step(self, st, rnd, inbox):
        if st["pe"] < 0:
            # root: children act on their own; nothing to send
            return [], HALT
        if rnd == 0 and st["is_root_child"]:
            return self._act(st, None), HALT
        if inbox:
            payload = inbox[0][1]
            m = None if payload[0] == "bot" else (payload[0], payload[1])
            return self._act(st, m), HALT
        return [], IDLE

    def output(self, st):
        return {"added": st["added"], "bridge": st["bridge"]}


def weighted_cover_distributed(g, tree, budget: int = sim.DEFAULT_BUDGET):
    """Full distributed run. Returns dict with "added" [(ve, top, decider)],
    "costs" {tree edge id: charge}, "bridges", "labels", "metrics"."""
    view = lbl.TreeView.of_tree(tree)
    all_labels, metrics = lbl.assign_labels_distributed(g, view, budget=budget)
    scheme = vg.PlainScheme()
    incidence, m2 = vg.build_incidence_distributed(g, tree, all_labels,
                                                   scheme, budget=budget)
    metrics.merge(m2)
    dirs, m3 = disseminate_ancestors(g, tree, all_labels, budget=budget)
    metrics.merge(m3)
    up = WeightedUpProgram(view, incidence, dirs, scheme)
    tables, m4 = sim.run(g, up, budget=budget, phase="weighted_up")
    metrics.merge(m4)
    down = WeightedDownProgram(view, tables)
    outs, m5 = sim.run(g, down, budget=budget, phase="weighted_down")
    metrics.merge(m5)
    added = []
    bridges = []
    costs = {}
    for v in range(g.n):
        if v != tree.root:
            costs[tree.parent_edge[v]] = tables[v]["min"]
        added.extend(outs[v]["added"])
        if outs[v]["bridge"]:
            bridges.append(v)
    return {"added": added, "costs": costs, "bridges": bridges,
            "labels": all_labels, "tables": tables, "metrics": metrics}


def sequential_weighted_cover(g, tree):
    """Central reference of the same computation (shadow for tests)."""
    view = lbl.TreeView.of_tree(tree)
    all_labels = lbl.assign_labels_sequential(view)
    scheme = vg.PlainScheme()
    incidence = vg.build_incidence_sequential(g, tree, all_labels, scheme)
    n = g.n
    depth = tree.depth
    anc_ids = [None] * n
    for v in tree.order:
        p = tree.parent[v]
        anc_ids[v] = [] if p < 0 else anc_ids[p] + [p]
    best_w = [None] * n
    best_src = [None] * n
    best_edge = [None] * n
    min_v = [None] * n
    for v in reversed(tree.order):
        d = depth[v]
        bw, be = _own_table(incidence[v], d, scheme)
        bs = [-1] * d
        for c in tree.children[v]:
            mc = min_v[c]
            for j in range(d):
                w = best_w[c][j]
                alt = INF if w >= INF else w - mc
                if alt < bw[j] or (alt == bw[j] and (bs[j] == -1 or c < bs[j])):
                    bw[j] = alt
                    bs[j] = c
                    be[j] = None
        best_w[v], best_src[v], best_edge[v] = bw, bs, be
        if d > 0:
            min_v[v] = bw[d - 1]
    added = []
    bridges = []
    msg = {v: None for v in range(n)}
    for v in tree.order:
        if v == tree.root:
            continue
        m = msg[v]
        if m is None:
            if min_v[v] is None or min_v[v] >= INF:
                if min_v[v] is not None and min_v[v] >= INF:
                    bridges.append(v)
                continue
            j = depth[v] - 1
            u, dec = anc_ids[v][j], v
        else:
            u, dec = m
            j = anc_ids[v].index(u)
        src = best_src[v][j]
        if src == -1:
            added.append((best_edge[v][j], u, dec))
        else:
            msg[src] = (u, dec)
    costs = {tree.parent_edge[v]: min_v[v] for v in range(n) if v != tree.root}
    return {"added": added, "costs": costs, "bridges": bridges,
            "labels": all_labels, "incidence": incidence}


def augment_weighted(g, tree, budget: int = sim.DEFAULT_BUDGET):
    """2-approximate minimum-weight augmentation of tree within g.

    Returns (Augmentation, cover records, costs, Metrics). The cover
    records are (virtual edge, top ancestor id, decider id) triples; the
    covered tree path of each edge runs from its descendant endpoint up to
    the top ancestor, and those paths partition the covered tree edges.
    """
    res = weighted_cover_distributed(g, tree, budget=budget)
    if res["bridges"]:
        raise BridgeDetected(res["bridges"])
    ves = [e for e, _, _ in res["added"]]
    aug = vg.project_augmentation(g, tree, res["labels"], ves)
    aug.meta["virtual_cover_weight"] = sum(e.weight for e in ves)
    return aug, res["added"], res["costs"], res["metrics"]
