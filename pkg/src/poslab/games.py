"""Two-player games on finite labelled arenas, checked against algebra objectives.

The universal/existential play check runs on the product of the arena with
the objective algebra: a lasso's membership only depends on the prefix
image s and the cycle image t with s.t = s, evaluated as s.t^w.  Solvers
enumerate positional strategies by backtracking over choices at owned
nodes that are actually reachable, with a step budget instead of a naive
product-of-out-degrees bound.

Edges may carry ``letter=None`` (silent); silent edges advance the graph
without consuming an objective letter.  They exist for the turn-based
expansion of concurrent game structures, where only half of each round
emits a trace letter.  A cycle consisting solely of silent edges is
rejected.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .algebra import ID, WilkeAlgebra
from .words import Alphabet

DEFAULT_BUDGET = 1_000_000


class EnumerationCapExceeded(RuntimeError):
    """Strategy enumeration exceeded its step budget."""


@dataclass(frozen=True)
class Edge:
    src: str
    letter: str | None
    tgt: str


@dataclass(frozen=True)
class EdgeArena:
    nodes: tuple[str, ...]
    owner: dict             # node -> 1 | 2
    edges: tuple[Edge, ...]

    def out(self) -> dict:
        out = {v: [] for v in self.nodes}
        for e in self.edges:
            out[e.src].append(e)
        return out


@dataclass(frozen=True)
class StateArena:
    nodes: tuple[str, ...]
    owner: dict             # node -> 1 | 2
    edges: tuple[tuple[str, str], ...]
    label: dict             # node -> letter
    transparent: frozenset = frozenset()   # nodes whose label is not emitted

    def out(self) -> dict:
        out = {v: [] for v in self.nodes}
        for s, t in self.edges:
            out[s].append(t)
        return out


def validate_arena(a) -> list[str]:
    """Well-formedness and totality; returns human-readable violations."""
    out = []
    nodes = set(a.nodes)
    if len(nodes) != len(a.nodes):
        out.append("duplicate node ids")
    for v in a.nodes:
        if a.owner.get(v) not in (1, 2):
            out.append("node %r has no owner in {1,2}" % v)
    has_out = set()
    for e in a.edges:
        if isinstance(a, EdgeArena):
            s, t = e.src, e.tgt
        else:
            s, t = e
        if s not in nodes or t not in nodes:
            out.append("edge %r-%r leaves the node set" % (s, t))
            continue
        has_out.add(s)
    for v in a.nodes:
        if v not in has_out:
            out.append("node %r has no outgoing edge (totality)" % v)
    if isinstance(a, StateArena):
        for v in a.nodes:
            if v not in a.label and v not in a.transparent:
                out.append("state %r has no label" % v)
    return out


def state_view(S: StateArena) -> EdgeArena:
    """Edge-arena view of a state arena: each edge emits its source's label,
    so edge traces coincide with state traces.  Transparent nodes emit
    nothing (silent edges)."""
    edges = tuple(Edge(s, None if s in S.transparent else S.label[s], t)
                  for s, t in S.edges)
    return EdgeArena(S.nodes, dict(S.owner), edges)


def state_to_edge(S: StateArena, winning_candidates) -> EdgeArena:
    """The reduction used to transfer previous-label memory to state arenas:
    each state edge becomes an edge labelled with its *target's* label, and
    a fresh Player-2 node ``*`` fans out to every candidate start."""
    candidates = list(winning_candidates)
    if not candidates:
        raise ValueError("winning_candidates must be non-empty (totality of *)")
    edges = [Edge(s, S.label[t], t) for s, t in S.edges]
    for w in candidates:
        edges.append(Edge("*", S.label[w], w))
    owner = dict(S.owner)
    owner["*"] = 2
    return EdgeArena(S.nodes + ("*",), owner, tuple(edges))


def edge_to_state(E: EdgeArena) -> StateArena:
    """States are (letter, target) pairs of the original edges; the label of
    (c, v) is c; transitions follow the original graph."""
    pairs = sorted({(e.letter, e.tgt) for e in E.edges})
    name = {p: "%s:%s" % p for p in pairs}
    out = E.out()
    edges = []
    for (c, v) in pairs:
        for e in out[v]:
            edges.append((name[(c, v)], name[(e.letter, e.tgt)]))
    owner = {name[(c, v)]: E.owner[v] for (c, v) in pairs}
    label = {name[p]: p[0] for p in pairs}
    return StateArena(tuple(name[p] for p in pairs), owner, tuple(edges), label)


@dataclass(frozen=True)
class PositionalStrategy:
    owner: int
    moves: dict             # node -> Edge

    def __post_init__(self):
        for v, e in self.moves.items():
            if e.src != v:
                raise ValueError("move at %r does not start there" % v)


@dataclass(frozen=True)
class Monitor:
    """A deterministic letter-reading memory structure."""

    states: tuple
    initial: object
    update: dict            # (mstate, letter) -> mstate


def previous_label_monitor(alphabet: Alphabet) -> Monitor:
    states = ("#",) + alphabet.letters
    update = {(m, c): c for m in states for c in alphabet.letters}
    return Monitor(states, "#", update)


def step_monitor(k: int, alphabet: Alphabet) -> Monitor:
    states = tuple(range(k))
    update = {(m, c): (m + 1) % k for m in states for c in alphabet.letters}
    return Monitor(states, 0, update)


def trivial_monitor(alphabet: Alphabet) -> Monitor:
    return Monitor((0,), 0, {(0, c): 0 for c in alphabet.letters})


@dataclass(frozen=True)
class MonitorMemoryStrategy:
    owner: int
    monitor: Monitor
    moves: dict             # (node, mstate) -> Edge


@dataclass(frozen=True)
class LassoPlay:
    prefix: tuple[Edge, ...]
    loop: tuple[Edge, ...]

    def __post_init__(self):
        if not self.loop:
            raise ValueError("loop must be non-empty")
        seq = list(self.prefix) + list(self.loop)
        for e1, e2 in zip(seq, seq[1:]):
            if e1.tgt != e2.src:
                raise ValueError("edges do not chain at %r -> %r" % (e1.tgt, e2.src))
        if self.loop[-1].tgt != self.loop[0].src:
            raise ValueError("loop does not close")
        if self.prefix and self.prefix[-1].tgt != self.loop[0].src:
            raise ValueError("prefix does not reach the loop")

    def trace(self) -> tuple[tuple, tuple]:
        """(prefix letters, loop letters), silent edges omitted."""
        pre = tuple(e.letter for e in self.prefix if e.letter is not None)
        loop = tuple(e.letter for e in self.loop if e.letter is not None)
        return pre, loop


def _adjacency(arena_or_adj) -> dict:
    if isinstance(arena_or_adj, EdgeArena):
        return arena_or_adj.out()
    if isinstance(arena_or_adj, StateArena):
        return state_view(arena_or_adj).out()
    return arena_or_adj


def check_plays(arena, A: WilkeAlgebra, start: str, quantifier: str):
    """Quantify the objective over all infinite plays of a (restricted) graph.

    all_in: every play's trace lies in the language; on failure the witness
    is a violating lasso.  exists_in: some play's trace lies in the
    language; on success the witness is such a lasso.  Exactness rests on
    ultimately periodic words determining omega-regular languages.

    Returns (verdict, LassoPlay | None).
    """
    if quantifier not in ("all_in", "exists_in"):
        raise ValueError("quantifier must be all_in or exists_in")
    adj = _adjacency(arena)
    if start not in adj:
        raise KeyError("start node %r not in the arena" % start)
    img = {}
    for edges in adj.values():
        for e in edges:
            if e.letter is not None and e.letter not in img:
                img[e.letter] = A.letter_image[A.alphabet.index(e.letter)]

    def step(s, e):
        return s if e.letter is None else A.mul(s, img[e.letter])

    want_member = quantifier == "exists_in"

    # reachable product nodes (node, prefix image), with parents for witnesses
    parent = {(start, ID): None}
    order = [(start, ID)]
    qq = deque(order)
    while qq:
        v, s = qq.popleft()
        for e in adj[v]:
            nxt = (e.tgt, step(s, e))
            if nxt not in parent:
                parent[nxt] = ((v, s), e)
                order.append(nxt)
                qq.append(nxt)

    for (v, s) in order:
        # cycle images at (v, s): BFS over (node, accumulated image)
        cparent = {}
        corder = []
        for e in adj[v]:
            key = (e.tgt, step(ID, e))
            if key not in cparent:
                cparent[key] = (None, e)
                corder.append(key)
        i = 0
        while i < len(corder):
            v2, t = corder[i]
            i += 1
            if v2 == v and A.mul(s, t) == s:
                if t is ID:
                    raise ValueError("cycle with no emitted letters at %r" % v)
                member = A.mix(s, A.omega[t]) in A.accepting
                if member == want_member:
                    loop = _rebuild(cparent, (v2, t))
                    prefix = _rebuild_prefix(parent, (v, s))
                    return (want_member, LassoPlay(tuple(prefix), tuple(loop)))
            # keep extending: composite cycles can differ from their parts
            for e in adj[v2]:
                key = (e.tgt, step(t, e))
                if key not in cparent:
                    cparent[key] = ((v2, t), e)
                    corder.append(key)
    return (not want_member, None)


def _rebuild(parents, key):
    out = []
    while key is not None:
        prev, e = parents[key]
        out.append(e)
        key = prev
    out.reverse()
    return out


def _rebuild_prefix(parents, key):
    out = []
    while parents[key] is not None:
        prev, e = parents[key]
        out.append(e)
        key = prev
    out.reverse()
    return out


class _Budget:
    def __init__(self, n):
        self.left = n

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise EnumerationCapExceeded(
                "strategy enumeration exceeded its step budget; raise the cap "
                "(POSLAB_CAP or the budget argument) for larger instances")


def _search(adj, owner, player, starts, evaluate, budget: _Budget):
    """Backtrack over the enumerating player's choices at nodes reachable
    under the partial strategy; evaluate closed restrictions.
    Returns the successful assignment dict or None."""
    assign = {}

    def closure():
        seen = set()
        open_node = None
        stack = deque(starts)
        while stack:
            v = stack.popleft()
            if v in seen:
                continue
            seen.add(v)
            if owner[v] == player:
                e = assign.get(v)
                if e is None:
                    if open_node is None:
                        open_node = v
                    continue
                stack.append(e.tgt)
            else:
                stack.extend(e.tgt for e in adj[v])
        return seen, open_node

    def restricted(seen):
        return {v: ([assign[v]] if owner[v] == player else list(adj[v]))
                for v in seen}

    def rec():
        seen, open_node = closure()
        if open_node is None:
            return evaluate(restricted(seen))
        for e in adj[open_node]:
            budget.spend()
            assign[open_node] = e
            if rec():
                return True
            del assign[open_node]
        return False

    return dict(assign) if rec() else None


def _complete(adj, owner, player, assign):
    moves = dict(assign)
    for v, edges in adj.items():
        if owner[v] == player and v not in moves:
            moves[v] = edges[0]
    return moves


def solve_positional(arena, A: WilkeAlgebra, player: int,
                     budget: int = DEFAULT_BUDGET, nodes=None) -> dict:
    """Per-node positional solving for the given player.

    Player 1 wins at q iff some positional strategy keeps every play from q
    inside the language; Player 2 wins iff some positional strategy keeps
    every play outside it.  Returned strategies are re-verified.
    ``nodes`` restricts which start nodes are solved (default: all).
    """
    adj = _adjacency(arena)
    owner = arena.owner
    out = {}
    for q in (arena.nodes if nodes is None else nodes):
        b = _Budget(budget)

        def evaluate(restricted):
            if player == 1:
                return check_plays(restricted, A, q, "all_in")[0]
            return not check_plays(restricted, A, q, "exists_in")[0]

        assign = _search(adj, owner, player, (q,), evaluate, b)
        if assign is None:
            out[q] = (False, None)
        else:
            moves = _complete(adj, owner, player, assign)
            restricted = {v: ([moves[v]] if owner[v] == player else list(adj[v]))
                          for v in adj}
            assert evaluate({v: restricted[v] for v in _reach(restricted, (q,))}), \
                "strategy failed re-verification"
            out[q] = (True, PositionalStrategy(player, moves))
    return out


def _reach(adj, starts):
    seen = set()
    stack = deque(starts)
    while stack:
        v = stack.popleft()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(e.tgt for e in adj[v])
    return seen


def solve_uniform_positional(arena, A: WilkeAlgebra, Q,
                             budget: int = DEFAULT_BUDGET):
    """A single Player-1 positional strategy winning from every node of Q,
    or None when no such strategy exists."""
    adj = _adjacency(arena)
    starts = tuple(Q)
    b = _Budget(budget)

    def evaluate(restricted):
        return all(check_plays(restricted, A, q, "all_in")[0] for q in starts)

    assign = _search(adj, arena.owner, 1, starts, evaluate, b)
    if assign is None:
        return None
    return PositionalStrategy(1, _complete(adj, arena.owner, 1, assign))


def monitor_product(arena, monitor: Monitor):
    """Product of an edge arena with a monitor; returns (EdgeArena, name_fn)
    where name_fn maps (node, mstate) to the product node id."""
    if isinstance(arena, StateArena):
        arena = state_view(arena)
    adj = arena.out()

    def name(v, m):
        return "%s@%s" % (v, m)

    nodes, owner, edges = [], {}, []
    for v in arena.nodes:
        for m in monitor.states:
            nodes.append(name(v, m))
            owner[name(v, m)] = arena.owner[v]
            for e in adj[v]:
                m2 = m if e.letter is None else monitor.update[(m, e.letter)]
                edges.append(Edge(name(v, m), e.letter, name(e.tgt, m2)))
    return EdgeArena(tuple(nodes), owner, tuple(edges)), name


def solve_monitor_memory(arena, A: WilkeAlgebra, monitor: Monitor, player: int = 1,
                         budget: int = DEFAULT_BUDGET) -> dict:
    """Solve positionally on the arena x monitor product and fold back to the
    original nodes at the monitor's initial state."""
    product, name = monitor_product(arena, monitor)
    sol = solve_positional(product, A, player, budget,
                           nodes=[name(v, monitor.initial) for v in arena.nodes])
    out = {}
    for v in arena.nodes:
        wins, strat = sol[name(v, monitor.initial)]
        if not wins:
            out[v] = (False, None)
            continue
        moves = {}
        for pv, e in strat.moves.items():
            base, m = pv.rsplit("@", 1)
            mstate = _find_mstate(monitor, m)
            tgt_base, _ = e.tgt.rsplit("@", 1)
            moves[(base, mstate)] = Edge(base, e.letter, tgt_base)
        out[v] = (True, MonitorMemoryStrategy(player, monitor, moves))
    return out


def _find_mstate(monitor, text):
    for m in monitor.states:
        if str(m) == text:
            return m
    raise KeyError(text)


# --- gadget constructors ------------------------------------------------


class _Builder:
    def __init__(self):
        self.nodes = []
        self.owner = {}
        self.edges = []
        self.fresh = 0

    def node(self, name, owner):
        if name not in self.owner:
            self.nodes.append(name)
            self.owner[name] = owner
        return name

    def word_path(self, src, text, tgt):
        """Edge path spelling a non-empty word, with fresh P1 intermediates."""
        if not text:
            raise ValueError("word edges must be non-empty")
        cur = src
        for i, c in enumerate(text):
            if i == len(text) - 1:
                nxt = tgt
            else:
                self.fresh += 1
                nxt = self.node("i%d" % self.fresh, 1)
            self.edges.append(Edge(cur, c, nxt))
            cur = nxt

    def build(self):
        return EdgeArena(tuple(self.nodes), self.owner, tuple(self.edges))


def build_gadget(kind: str, params: dict):
    """Construct one of the appendix proof arenas.

    cond1:  u-path into a v-self-loop node, w-exit into an x-loop.
    cond2:  u, v into a node carrying a w-loop and an x-return.
    omega_cf:  adversary picks x^(j-1) or x^(k-1), the player answers with
               nothing, x, or x^(k-j), then w returns (requires 2 <= j < k).
    residual_order:  entries u and v merge before an x/y branch into loops.

    params carries letter-string words (and integers j, k for omega_cf).
    Returns (EdgeArena, starts) with the designated start node(s).
    """
    b = _Builder()
    p = dict(params)

    def req(key, allow_empty=False):
        w = p.get(key, "")
        if not w and not allow_empty:
            raise ValueError("gadget %r needs a non-empty word %r" % (kind, key))
        return w

    if kind == "cond1":
        u, v, w, x = req("u", True), req("v"), req("w"), req("x")
        nv = b.node("loop_v", 1)
        nx = b.node("loop_x", 1)
        b.word_path(nv, v, nv)
        b.word_path(nv, w, nx)
        b.word_path(nx, x, nx)
        start = nv
        if u:
            start = b.node("start", 1)
            b.word_path(start, u, nv)
        return b.build(), (start,)

    if kind == "cond2":
        u, v, w, x = req("u", True), req("v"), req("w"), req("x")
        nret = b.node("ret", 1)
        nw = b.node("loop_w", 1)
        b.word_path(nret, v, nw)
        b.word_path(nw, w, nw)
        b.word_path(nw, x, nret)
        start = nret
        if u:
            start = b.node("start", 1)
            b.word_path(start, u, nret)
        return b.build(), (start,)

    if kind == "omega_cf":
        u, v, w, x = req("u", True), req("v"), req("w"), req("x")
        j, k = int(p["j"]), int(p["k"])
        if not 2 <= j < k:
            raise ValueError("omega_cf needs 2 <= j < k")
        base = b.node("base", 1)
        choice = b.node("choice", 2)
        mid = b.node("mid", 1)
        b.word_path(base, v, choice)
        b.word_path(choice, x * (j - 1), mid)
        b.word_path(choice, x * (k - 1), mid)
        for extra in sorted({"", x, x * (k - j)}):
            b.word_path(mid, extra + w, base)
        start = base
        if u:
            start = b.node("start", 1)
            b.word_path(start, u, base)
        return b.build(), (start,)

    if kind == "residual_order":
        u, v, x, y = req("u"), req("v"), req("x"), req("y")
        merge = b.node("merge", 1)
        eu = b.node("entry_u", 1)
        ev = b.node("entry_v", 1)
        lx = b.node("loop_x", 1)
        ly = b.node("loop_y", 1)
        b.word_path(eu, u, merge)
        b.word_path(ev, v, merge)
        b.word_path(merge, x, lx)
        b.word_path(lx, x, lx)
        b.word_path(merge, y, ly)
        b.word_path(ly, y, ly)
        return b.build(), (eu, ev)

    raise ValueError("unknown gadget kind %r" % kind)
