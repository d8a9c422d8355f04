"""Round-synchronous message-passing engine with per-edge token budgets.

One token stands for one O(log n)-bit quantity (a vertex id, edge id,
weight, label word, or control flag). Each edge carries at most `budget`
tokens per direction per round; a violation aborts the run.

Programs are per-vertex state machines:

    state = program.init_state(v)
    outbox, status = program.step(state, rnd, inbox)
    localOutput = program.output(state)

`inbox` is a list of (edge_id, payload) sorted by edge id; `outbox` is a
list of (edge_id, payload) with payload a tuple of tokens. `status` is
ACTIVE (step me next round even without mail), IDLE (wake me on mail), or
HALT (done; later mail is dropped). Vertices are stepped in ascending id
order but may only interact through messages, so evaluation order is
unobservable; the transcript-equality test pins that down.
"""
from __future__ import annotations

from dataclasses import dataclass, field

ACTIVE = 0
IDLE = 1
HALT = 2

DEFAULT_BUDGET = 4
DEFAULT_MAX_ROUNDS = 1 << 20

# when set (a list), every run() without an explicit transcript appends its
# delivery log here; the command line tool uses this to capture whole
# multi-phase pipelines
TRANSCRIPT_SINK: list | None = None


class SimError(Exception):
    pass


class BudgetExceeded(SimError):
    def __init__(self, vertex, edge, rnd, tokens, budget):
        super().__init__(
            "vertex %d sent %d tokens on edge %d in round %d (budget %d)"
            % (vertex, tokens, edge, rnd, budget))
        self.vertex = vertex
        self.edge = edge
        self.round = rnd
        self.tokens = tokens


class RoundLimitExceeded(SimError):
    def __init__(self, max_rounds, metrics):
        super().__init__("no quiescence after %d rounds" % max_rounds)
        self.metrics = metrics


@dataclass
class PhaseMetrics:
    phase: str
    rounds: int = 0
    messages: int = 0
    tokens: int = 0
    max_tokens_edge_round: int = 0


@dataclass
class Metrics:
    """Per-phase and aggregate communication accounting."""

    phases: list[PhaseMetrics] = field(default_factory=list)
    # optional per-(edge, direction) token totals; direction = sender vertex
    edge_tokens: dict = field(default_factory=dict)

    @property
    def rounds(self) -> int:
        return sum(p.rounds for p in self.phases)

    @property
    def messages(self) -> int:
        return sum(p.messages for p in self.phases)

    @property
    def tokens(self) -> int:
        return sum(p.tokens for p in self.phases)

    @property
    def max_tokens_edge_round(self) -> int:
        return max((p.max_tokens_edge_round for p in self.phases), default=0)

    def phase(self, name: str) -> PhaseMetrics:
        for p in self.phases:
            if p.phase == name:
                return p
        raise KeyError(name)

    def merge(self, other: "Metrics"):
        self.phases.extend(other.phases)
        for k, v in other.edge_tokens.items():
            self.edge_tokens[k] = self.edge_tokens.get(k, 0) + v
        return self

    def to_csv(self) -> str:
        out = ["phase,rounds,messages,tokens,max_tokens_edge_round"]
        for p in self.phases:
            out.append("%s,%d,%d,%d,%d"
                       % (p.phase, p.rounds, p.messages, p.tokens, p.max_tokens_edge_round))
        out.append("total,%d,%d,%d,%d"
                   % (self.rounds, self.messages, self.tokens, self.max_tokens_edge_round))
        return "\n".join(out) + "\n"


def run(g, program, budget: int = DEFAULT_BUDGET, max_rounds: int | None = None,
        phase: str = "main", transcript: list | None = None,
        eval_order=None, track_edge_tokens: bool = False):
    """Drive `program` on multigraph `g` to quiescence.

    Returns (outputs, Metrics) where outputs[v] = program.output(state_v).
    `transcript` (if a list) receives one "round,src,dst,edge,tokens,payload"
    line per delivered message. `eval_order` overrides the per-round vertex
    evaluation order (testing hook; results must not depend on it).
    """
    if max_rounds is None:
        max_rounds = DEFAULT_MAX_ROUNDS
    if transcript is None:
        transcript = TRANSCRIPT_SINK
    if transcript is not None:
        transcript.append("# phase %s" % phase)
    n = g.n
    edges = g.edges
    states = [program.init_state(v) for v in range(n)]
    halted = [False] * n
    awake = set(range(n))
    inbox_map: dict[int, list] = {}
    pm = PhaseMetrics(phase)
    metrics = Metrics([pm])
    edge_tok = metrics.edge_tokens
    last_comm_round = -1

    rnd = 0
    while True:
        if not awake and not inbox_map:
            break
        if rnd >= max_rounds:
            pm.rounds = rnd
            raise RoundLimitExceeded(max_rounds, metrics)
        if eval_order is None:
            actives = sorted(awake | set(inbox_map))
        else:
            pend = awake | set(inbox_map)
            actives = [v for v in eval_order if v in pend]
        next_inbox: dict[int, list] = {}
        round_lines: list[str] | None = [] if transcript is not None else None
        sent_any = False
        n_msgs = 0
        n_toks = 0
        max_tok = pm.max_tokens_edge_round
        step = program.step
        for v in actives:
            inbox = inbox_map.get(v)
            if inbox is not None:
                inbox.sort()
            if halted[v]:
                continue  # late mail to a halted vertex is dropped
            outbox, status = program.step(states[v], rnd, inbox)
            if outbox:
                sent_any = True
                if len(outbox) > 1:
                    eids = [e for e, _ in outbox]
                    if len(set(eids)) != len(eids):
                        raise SimError("vertex %d sent twice on an edge in round %d"
                                       % (v, rnd))
                for eid, payload in outbox:
                    ntok = len(payload)
                    if ntok > budget:
                        raise BudgetExceeded(v, eid, rnd, ntok, budget)
                    if ntok == 0:
                        raise SimError("empty message on edge %d" % eid)
                    eu, ev, _ = edges[eid]
                    dst = eu + ev - v
                    if dst != eu and dst != ev:
                        raise SimError("vertex %d not incident to edge %d" % (v, eid))
                    n_msgs += 1
                    n_toks += ntok
                    if ntok > max_tok:
                        max_tok = ntok
                    if track_edge_tokens:
                        key = (eid, v)
                        edge_tok[key] = edge_tok.get(key, 0) + ntok
                    if round_lines is not None:
                        round_lines.append("%d,%d,%d,%d,%d,%s"
                                           % (rnd, v, dst, eid, ntok, _fmt_payload(payload)))
                    bucket = next_inbox.get(dst)
                    if bucket is None:
                        next_inbox[dst] = [(eid, payload)]
                    else:
                        bucket.append((eid, payload))
            if status == ACTIVE:
                awake.add(v)
            elif status == IDLE:
                awake.discard(v)
            else:
                halted[v] = True
                awake.discard(v)
        pm.messages += n_msgs
        pm.tokens += n_toks
        pm.max_tokens_edge_round = max_tok
        if round_lines:
            # canonical order, independent of the vertex evaluation order
            round_lines.sort(key=lambda s: tuple(int(x) for x in s.split(",")[:4]))
            transcript.extend(round_lines)
            round_lines = []
        if sent_any:
            last_comm_round = rnd
        inbox_map = next_inbox
        rnd += 1

    pm.rounds = last_comm_round + 1
    outputs = [program.output(s) for s in states]
    return outputs, metrics


def _fmt_payload(payload) -> str:
    parts = []
    for tok in payload:
        if isinstance(tok, tuple):
            parts.append(":".join(str(x) for x in tok))
        else:
            parts.append(str(tok))
    return ";".join(parts)


class TokenStream:
    """Per-edge outgoing token queue; drained at most `budget` tokens a round."""

    __slots__ = ("buf",)

    def __init__(self):
        self.buf = []

    def push(self, tokens):
        self.buf.extend(tokens)

    def take(self, budget):
        if not self.buf:
            return None
        out = tuple(self.buf[:budget])
        del self.buf[:budget]
        return out

    def __bool__(self):
        return bool(self.buf)


# ---------------------------------------------------------------------------
# broadcast/upcast utility: deliver k source messages to every vertex over a
# rooted (BFS) tree. Each message is a tuple of tokens; on the wire it is
# framed with a (tag, length) token and streamed under the budget.

def broadcast_upcast(g, tree, sources, budget: int = DEFAULT_BUDGET,
                     max_rounds: int | None = None, phase: str = "broadcast"):
    """Deliver k messages (each a token tuple) from their source vertices to
    every vertex, by upcast to the tree root then broadcast down.

    `sources` is a list of (vertex, message) pairs. Returns (delivered,
    Metrics) where delivered is the list of k messages in the order the root
    collected them (identical at every vertex).
    """
    by_vertex: dict[int, list] = {}
    for v, msg in sources:
        if not (0 <= v < g.n):
            raise SimError("source vertex %d not in graph" % v)
        by_vertex.setdefault(v, []).append(tuple(msg))
    k = sum(len(v) for v in by_vertex.values())
    if k == 0:
        return [], Metrics([PhaseMetrics(phase)])
    prog = _UpDownProgram(g, tree, by_vertex, k, budget)
    outputs, metrics = run(g, prog, budget=budget, max_rounds=max_rounds, phase=phase)
    delivered = outputs[tree.root]
    for v in range(g.n):
        if outputs[v] != delivered:
            raise SimError("broadcast outputs disagree at vertex %d" % v)
    return delivered, metrics


class _UpDownProgram:
    """Upcast frames tagged ('um', len); broadcast frames tagged ('dm', len)."""

    def __init__(self, g, tree, sources_by_vertex, k, budget):
        self.tree = tree
        self.sources = sources_by_vertex
        self.k = k
        self.budget = budget

    def init_state(self, v):
        t = self.tree
        st = {
            "pe": t.parent_edge[v],
            "child_edges": sorted(t.parent_edge[c] for c in t.children[v]),
            "up": TokenStream(),
            "down": {},
            "got": [],
            "bufs": {},  # per-edge parse buffers; streams must not interleave
            "fired": False,
            "root": t.parent[v] < 0,
        }
        for eid in st["child_edges"]:
            st["down"][eid] = TokenStream()
            st["bufs"][eid] = []
        if st["pe"] >= 0:
            st["bufs"][st["pe"]] = []
        for msg in self.sources.get(v, []):
            if st["root"]:
                st["got"].append(msg)
            else:
                st["up"].push((("um", len(msg)),) + msg)
        return st

    def step(self, st, rnd, inbox):
        if inbox:
            for in_eid, payload in inbox:
                buf = st["bufs"][in_eid]
                buf.extend(payload)
                while buf:
                    tag, ln = buf[0]
                    if len(buf) < 1 + ln:
                        break
                    msg = tuple(buf[1:1 + ln])
                    del buf[:1 + ln]
                    if tag == "um":
                        if st["root"]:
                            st["got"].append(msg)
                        else:
                            st["up"].push((("um", ln),) + msg)
                    else:
                        st["got"].append(msg)
                        frame = (("dm", ln),) + msg
                        for s in st["down"].values():
                            s.push(frame)
        if st["root"] and not st["fired"] and len(st["got"]) == self.k:
            st["fired"] = True
            for msg in st["got"]:
                frame = (("dm", len(msg)),) + msg
                for s in st["down"].values():
                    s.push(frame)
        outbox = []
        if st["up"] and st["pe"] >= 0:
            outbox.append((st["pe"], st["up"].take(self.budget)))
        for eid in st["child_edges"]:
            s = st["down"][eid]
            if s:
                outbox.append((eid, s.take(self.budget)))
        busy = (bool(st["up"]) or any(st["bufs"].values()) or
                any(bool(s) for s in st["down"].values()))
        if outbox or busy:
            return outbox, ACTIVE
        if len(st["got"]) == self.k:
            return outbox, HALT
        return outbox, IDLE

    def output(self, st):
        return list(st["got"])
