"""Ancestor-descendant view of non-tree edges.

Every non-tree edge {u, v} of G maps to edges whose endpoints are related
by ancestry: the edge itself if one endpoint is an ancestor of the other,
else the two edges {t, u} and {t, v} with t = lca(u, v), each inheriting
the original weight and edge id. A cover of all tree edges in this view
projects back to an augmentation of G at most twice the size/weight.

Label handling is abstracted behind a scheme object so the same machinery
runs on whole-tree labels and on fragment (split) labels.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import labels as lbl
from . import sim
from .graph import Augmentation, GraphError
from .sim import ACTIVE, HALT, IDLE, TokenStream


class VirtualGraphError(Exception):
    pass


@dataclass(frozen=True)
class VirtualEdge:
    anc: object   # label of the endpoint closer to the root
    desc: object  # label of the deeper endpoint
    origin: int   # G edge id this edge derives from
    weight: int


class PlainScheme:
    """Whole-tree labels: anc/desc are LcaLabel values."""

    def depth(self, label) -> int:
        return label.depth

    def vertex_of(self, label):
        return label.vertex

    def key(self, label):
        return label.seq

    def lca(self, a, b):
        return lbl.lca_query(a, b)

    def is_ancestor(self, a, d) -> bool:
        return lbl.is_ancestor(a, d)

    def tokens(self, label) -> tuple:
        return lbl.label_tokens(label)

    def parse(self, buf, i):
        return lbl.parse_label(buf, i)


def classify_incoming(self_label, other_label, eid, w, scheme) -> VirtualEdge | None:
    """The virtual edge incoming at the `self` endpoint, if any."""
    t = scheme.lca(self_label, other_label)
    tk = scheme.key(t)
    if tk == scheme.key(self_label):
        return None  # self is the ancestor endpoint
    if tk == scheme.key(other_label):
        anc = other_label
    else:
        anc = t
    return VirtualEdge(anc, self_label, eid, w)


def edge_covers(ve: VirtualEdge, v_label, scheme) -> bool:
    """Does ve cover the tree edge between v and its parent?"""
    return (scheme.depth(ve.anc) < scheme.depth(v_label)
            and scheme.is_ancestor(v_label, ve.desc))


def maximal_of(e1: VirtualEdge | None, e2: VirtualEdge | None, scheme) -> VirtualEdge | None:
    """The edge whose ancestor endpoint is closer to the root; ties by
    lowest origin id. Incomparable ancestors are a caller bug."""
    if e1 is None:
        return e2
    if e2 is None:
        return e1
    d1, d2 = scheme.depth(e1.anc), scheme.depth(e2.anc)
    if d1 == d2:
        if scheme.key(e1.anc) != scheme.key(e2.anc):
            raise VirtualGraphError("incomparable ancestor endpoints")
        return e1 if e1.origin <= e2.origin else e2
    hi, lo = (e1, e2) if d1 < d2 else (e2, e1)
    if not scheme.is_ancestor(hi.anc, lo.anc):
        raise VirtualGraphError("incomparable ancestor endpoints")
    return hi


def covered_tree_edges(tree, ve: VirtualEdge, scheme) -> list[int]:
    """Tree edge ids covered by ve: the path from its descendant endpoint up
    to its ancestor endpoint."""
    v = scheme.vertex_of(ve.desc)
    if v is None:
        raise VirtualGraphError("descendant endpoint has no resolved vertex")
    stop = scheme.depth(ve.anc)
    out = []
    while tree.depth[v] > stop:
        out.append(tree.parent_edge[v])
        v = tree.parent[v]
    return out


def virtual_edges_of(g, tree, all_labels, eid, scheme) -> list[VirtualEdge]:
    u, v, w = g.edges[eid]
    out = []
    ve = classify_incoming(all_labels[u], all_labels[v], eid, w, scheme)
    if ve is not None:
        out.append(ve)
    ve = classify_incoming(all_labels[v], all_labels[u], eid, w, scheme)
    if ve is not None:
        out.append(ve)
    if not out:
        raise VirtualGraphError("edge %d maps to no virtual edge" % eid)
    return out


def build_incidence_sequential(g, tree, all_labels, scheme=None):
    """incidence[v] = virtual edges with descendant endpoint v, by origin id."""
    scheme = scheme or PlainScheme()
    incidence: list[list[VirtualEdge]] = [[] for _ in range(g.n)]
    for eid in range(g.m):
        if eid in tree.tree_edges:
            continue
        for ve in virtual_edges_of(g, tree, all_labels, eid, scheme):
            incidence[scheme.vertex_of(ve.desc)].append(ve)
    for lst in incidence:
        lst.sort(key=lambda e: e.origin)
    return incidence


class _ExchangeProgram:
    """Stream own label over every incident non-tree edge, then classify."""

    def __init__(self, g, tree, all_labels, scheme, budget):
        self.g = g
        self.tree = tree
        self.labels = all_labels
        self.scheme = scheme
        self.budget = budget

    def init_state(self, v):
        nt = [(eid, u) for eid, u in self.g.adj[v] if eid not in self.tree.tree_edges]
        nt.sort()
        toks = self.scheme.tokens(self.labels[v]) + (("le",),)
        streams = []
        for eid, _ in nt:
            s = TokenStream()
            s.push(toks)
            streams.append((eid, s))
        return {"v": v, "nt": nt, "streams": streams,
                "bufs": {eid: [] for eid, _ in nt}, "peer": {}}

    def step(self, st, rnd, inbox):
        if inbox:
            for eid, payload in inbox:
                buf = st["bufs"][eid]
                buf.extend(payload)
                if buf and buf[-1] == ("le",):
                    st["peer"][eid], _ = self.scheme.parse(buf, 0)
        outbox = []
        busy = False
        for eid, s in st["streams"]:
            if s:
                outbox.append((eid, s.take(self.budget)))
                busy = busy or bool(s)
        if len(st["peer"]) == len(st["nt"]) and not busy:
            return outbox, HALT
        return outbox, ACTIVE if (outbox or busy) else IDLE

    def output(self, st):
        v = st["v"]
        out = []
        for eid, _ in st["nt"]:
            ve = classify_incoming(self.labels[v], st["peer"][eid], eid,
                                   self.g.weight(eid), self.scheme)
            if ve is not None:
                out.append(ve)
        out.sort(key=lambda e: e.origin)
        return out


def build_incidence_distributed(g, tree, all_labels, scheme=None,
                                budget: int = sim.DEFAULT_BUDGET,
                                phase: str = "exchange"):
    scheme = scheme or PlainScheme()
    prog = _ExchangeProgram(g, tree, all_labels, scheme, budget)
    outputs, metrics = sim.run(g, prog, budget=budget, phase=phase)
    return outputs, metrics


def project_augmentation(g, tree, all_labels, virt_edges, scheme=None) -> Augmentation:
    """Map a cover in the virtual view back to G edges: for each virtual
    edge take the minimum-weight origin among parallel edges inducing the
    same endpoints, ties by lowest edge id."""
    scheme = scheme or PlainScheme()
    groups: dict = {}
    for eid in range(g.m):
        if eid in tree.tree_edges:
            continue
        for ve in virtual_edges_of(g, tree, all_labels, eid, scheme):
            key = (scheme.key(ve.anc), scheme.key(ve.desc))
            cand = (ve.weight, ve.origin)
            if key not in groups or cand < groups[key]:
                groups[key] = cand
    chosen = set()
    weight = 0
    for ve in virt_edges:
        key = (scheme.key(ve.anc), scheme.key(ve.desc))
        if key not in groups:
            raise VirtualGraphError("virtual edge %r has no origin" % (ve,))
        w, eid = groups[key]
        if eid not in chosen:
            chosen.add(eid)
            weight += w
    return Augmentation(frozenset(chosen), weight)
