"""Concurrent game structures and the positional coalition-logic fragments.

State formulas are atoms, negation, disjunction, and coalition modalities;
the path formulas under a coalition are drawn from a fixed list of shapes
whose trace languages are positional: Next, Until, Release, GF&FG,
GF&FG&G, G(U), and G(x or Xx).  Boolean combinations of path formulas are
deliberately not expressible.

Model checking labels states bottom-up; a coalition modality is decided by
enumerating positional coalition strategies on the turn-based expansion
and checking every resulting play against the template's algebra.
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass

from .algebra import ID, WilkeAlgebra
from .automata import dpa, dpa_to_wilke
from .games import (DEFAULT_BUDGET, Edge, EnumerationCapExceeded, StateArena,
                    _Budget, _search, check_plays, state_view)
from .words import Alphabet, UPWord, up_normalize


# --- formulas -------------------------------------------------------------


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


def And(left: Formula, right: Formula) -> Formula:
    return Not(Or(Not(left), Not(right)))


@dataclass(frozen=True)
class PathTemplate:
    @property
    def args(self) -> tuple[Formula, ...]:
        return tuple(getattr(self, f) for f in self.__dataclass_fields__)

    @property
    def shape(self) -> str:
        return type(self).__name__.lower()


@dataclass(frozen=True)
class Next(PathTemplate):
    arg: Formula


@dataclass(frozen=True)
class Until(PathTemplate):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(PathTemplate):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class GFFG(PathTemplate):
    """GF(first) and FG(second)."""

    inf: Formula
    tail: Formula


@dataclass(frozen=True)
class GFFGG(PathTemplate):
    """GF(first) and FG(second) and G(third)."""

    inf: Formula
    tail: Formula
    always: Formula


@dataclass(frozen=True)
class GU(PathTemplate):
    """G(first U second)."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class GXOr(PathTemplate):
    """G(arg or X arg)."""

    arg: Formula


@dataclass(frozen=True)
class Coalition(Formula):
    agents: tuple[str, ...]
    template: PathTemplate


_ARITY = {"next": 1, "until": 2, "release": 2, "gffg": 2, "gffgg": 3,
          "gu": 2, "gxor": 1}


# --- concurrent game structures -------------------------------------------


@dataclass(frozen=True)
class CGS:
    states: tuple[str, ...]
    agents: tuple[str, ...]
    actions: dict           # (state, agent) -> tuple of action names
    transition: dict        # (state, profile tuple in agent order) -> state
    labeling: dict          # state -> frozenset of proposition names


def validate_cgs(G: CGS) -> list[str]:
    out = []
    states = set(G.states)
    for s in G.states:
        for ag in G.agents:
            acts = G.actions.get((s, ag))
            if not acts:
                out.append("state %r, agent %r has no actions" % (s, ag))
        if s not in G.labeling:
            out.append("state %r has no labeling entry" % s)
    for s in G.states:
        pools = [G.actions.get((s, ag)) or () for ag in G.agents]
        for profile in itertools.product(*pools):
            tgt = G.transition.get((s, profile))
            if tgt is None:
                out.append("missing transition at (%r, %r)" % (s, profile))
            elif tgt not in states:
                out.append("transition at (%r, %r) leaves the state set" % (s, profile))
    return out


def ts_to_cgs(states, edges, labeling, agent: str = "1") -> CGS:
    """Single-agent CGS from a plain transition system; the agent picks the
    successor."""
    succ = {s: [] for s in states}
    for s, t in edges:
        succ[s].append(t)
    actions, transition = {}, {}
    for s in states:
        if not succ[s]:
            raise ValueError("state %r has no successor" % s)
        acts = tuple("m%d" % i for i in range(len(succ[s])))
        actions[(s, agent)] = acts
        for a, t in zip(acts, succ[s]):
            transition[(s, (a,))] = t
    return CGS(tuple(states), (agent,), actions, transition,
               {s: frozenset(labeling.get(s, ())) for s in states})


def coalition_game(G: CGS, C, truth_vectors: dict) -> StateArena:
    """Turn-based expansion: Player 1 (the coalition) picks its action tuple
    at a CGS state, Player 2 completes the profile at an intermediate node.
    Intermediate nodes are transparent: trace letters come from CGS states
    only."""
    C = tuple(a for a in G.agents if a in set(C))
    rest = tuple(a for a in G.agents if a not in set(C))
    nodes, owner, edges, label = [], {}, [], {}
    transparent = set()
    for s in G.states:
        nodes.append(s)
        owner[s] = 1
        label[s] = truth_vectors[s]
        c_pools = [G.actions[(s, ag)] for ag in C]
        for ct in itertools.product(*c_pools):
            mid = "%s|%s" % (s, ",".join(ct))
            nodes.append(mid)
            owner[mid] = 2
            transparent.add(mid)
            edges.append((s, mid))
            r_pools = [G.actions[(s, ag)] for ag in rest]
            for rt in itertools.product(*r_pools):
                by_agent = dict(zip(C, ct)) | dict(zip(rest, rt))
                profile = tuple(by_agent[ag] for ag in G.agents)
                edges.append((mid, G.transition[(s, profile)]))
    return StateArena(tuple(nodes), owner, tuple(edges), label,
                      frozenset(transparent))


# --- lasso evaluation ------------------------------------------------------


def vector_alphabet(width: int) -> Alphabet:
    return Alphabet(tuple("".join(bits) for bits in itertools.product("01", repeat=width)))


def eval_path_on_lasso(t: PathTemplate, w: UPWord) -> bool:
    """Standard LTL semantics of the template shape on an ultimately periodic
    word over the truth-vector alphabet (bit i of a letter is argument i)."""
    shape = t.shape
    arity = _ARITY[shape]
    for letter in w.alphabet.letters:
        if len(letter) != arity:
            raise ValueError("vector width %d does not match arity %d of %s"
                             % (len(letter), arity, shape))
    w = up_normalize(w)
    pl, pd = len(w.prefix), len(w.period)

    def bit(i: int, k: int) -> bool:
        c = w.prefix.symbols[i] if i < pl else w.period.symbols[(i - pl) % pd]
        return w.alphabet.letters[c][k] == "1"

    horizon = pl + pd

    def until_from(i: int, k1: int, k2: int, neg: bool = False) -> bool:
        # scan one full period past max(i, pl); beyond that nothing new occurs
        for j in range(i, pl + 2 * pd):
            if bit(j, k2) != neg:
                return all(bit(m, k1) != neg for m in range(i, j))
        return False

    if shape == "next":
        return bit(1, 0)
    if shape == "until":
        return until_from(0, 0, 1)
    if shape == "release":
        return not until_from(0, 0, 1, neg=True)
    if shape == "gffg":
        return (any(bit(pl + i, 0) for i in range(pd))
                and all(bit(pl + i, 1) for i in range(pd)))
    if shape == "gffgg":
        return (any(bit(pl + i, 0) for i in range(pd))
                and all(bit(pl + i, 1) for i in range(pd))
                and all(bit(i, 2) for i in range(horizon)))
    if shape == "gu":
        return all(until_from(i, 0, 1) for i in range(horizon))
    if shape == "gxor":
        return all(bit(i, 0) or bit(i + 1, 0) for i in range(horizon))
    raise ValueError("unknown template %r" % shape)


_TEMPLATE_ALGEBRAS: dict[str, WilkeAlgebra] = {}


def template_algebra(t) -> WilkeAlgebra:
    """Wilke algebra of the template's trace language over the truth-vector
    alphabet, compiled from a hand-built parity automaton."""
    shape = t if isinstance(t, str) else t.shape
    if shape in _TEMPLATE_ALGEBRAS:
        return _TEMPLATE_ALGEBRAS[shape]
    alpha = vector_alphabet(_ARITY[shape])

    def b(letter, i):
        return letter[i] == "1"

    table = {}
    if shape == "next":
        states, init = ("s0", "s1", "T", "F"), "s0"
        for c in alpha:
            table[("s0", c)] = ("s1", 1)
            table[("s1", c)] = ("T", 2) if b(c, 0) else ("F", 1)
            table[("T", c)] = ("T", 2)
            table[("F", c)] = ("F", 1)
    elif shape == "until":
        states, init = ("W", "T", "F"), "W"
        for c in alpha:
            if b(c, 1):
                table[("W", c)] = ("T", 2)
            elif b(c, 0):
                table[("W", c)] = ("W", 1)
            else:
                table[("W", c)] = ("F", 1)
            table[("T", c)] = ("T", 2)
            table[("F", c)] = ("F", 1)
    elif shape == "release":
        states, init = ("W", "T", "F"), "W"
        for c in alpha:
            if not b(c, 1):
                table[("W", c)] = ("F", 1)
            elif b(c, 0):
                table[("W", c)] = ("T", 2)
            else:
                table[("W", c)] = ("W", 2)
            table[("T", c)] = ("T", 2)
            table[("F", c)] = ("F", 1)
    elif shape == "gffg":
        states, init = ("q",), "q"
        for c in alpha:
            if not b(c, 1):
                table[("q", c)] = ("q", 3)
            elif b(c, 0):
                table[("q", c)] = ("q", 2)
            else:
                table[("q", c)] = ("q", 1)
    elif shape == "gffgg":
        states, init = ("ok", "dead"), "ok"
        for c in alpha:
            if not b(c, 2):
                table[("ok", c)] = ("dead", 1)
            elif not b(c, 1):
                table[("ok", c)] = ("ok", 3)
            elif b(c, 0):
                table[("ok", c)] = ("ok", 2)
            else:
                table[("ok", c)] = ("ok", 1)
            table[("dead", c)] = ("dead", 1)
    elif shape == "gu":
        states, init = ("ok", "dead"), "ok"
        for c in alpha:
            if b(c, 1):
                table[("ok", c)] = ("ok", 2)
            elif b(c, 0):
                table[("ok", c)] = ("ok", 1)
            else:
                table[("ok", c)] = ("dead", 1)
            table[("dead", c)] = ("dead", 1)
    elif shape == "gxor":
        states, init = ("P", "N", "dead"), "P"
        for c in alpha:
            table[("P", c)] = ("P", 2) if b(c, 0) else ("N", 2)
            table[("N", c)] = ("P", 2) if b(c, 0) else ("dead", 1)
            table[("dead", c)] = ("dead", 1)
    else:
        raise ValueError("unknown template %r" % shape)

    A = dpa_to_wilke(dpa(states, init, alpha, table))
    _TEMPLATE_ALGEBRAS[shape] = A
    return A


# --- model checking --------------------------------------------------------


def _adjacency_of(S: StateArena) -> dict:
    return state_view(S).out()


def _even_image(A: WilkeAlgebra, letters_imgs, edges, start_idx):
    s = ID
    for e in edges[start_idx:]:
        if e.letter is not None:
            s = A.mul(s, letters_imgs[e.letter])
    return s


def _fast_lasso_exists(adj, A: WilkeAlgebra, q: str) -> bool:
    """Full-coalition fast path: every node has its choice on the current
    path, so positional plays are exactly simple-stem simple-cycle lassos."""
    imgs = {}
    for es in adj.values():
        for e in es:
            if e.letter is not None and e.letter not in imgs:
                imgs[e.letter] = A.letter_image[A.alphabet.index(e.letter)]
    F, om = A.accepting, A.omega
    path_pos = {q: 0}
    edges: list[Edge] = []
    pre_imgs = [ID]

    def rec(v) -> bool:
        for e in adj[v]:
            nxt = e.tgt
            if nxt in path_pos:
                i = path_pos[nxt]
                t = _even_image(A, imgs, edges + [e], i)
                if t is not ID and A.mix(pre_imgs[i], om[t]) in F:
                    return True
                continue
            path_pos[nxt] = len(edges) + 1
            edges.append(e)
            img = pre_imgs[-1] if e.letter is None else A.mul(pre_imgs[-1], imgs[e.letter])
            pre_imgs.append(img)
            if rec(nxt):
                return True
            pre_imgs.pop()
            edges.pop()
            del path_pos[nxt]
        return False

    return rec(q)


def _all_positional_adversary_plays_in(restricted, owner, A: WilkeAlgebra, q: str) -> bool:
    """Bipositional inner check: the adversary also plays a function of the
    node, so each adversary assignment yields a single lasso."""
    imgs = {}
    for es in restricted.values():
        for e in es:
            if e.letter is not None and e.letter not in imgs:
                imgs[e.letter] = A.letter_image[A.alphabet.index(e.letter)]
    F, om = A.accepting, A.omega

    def play_ok(assign) -> bool:
        v = q
        pos = {q: 0}
        edges = []
        while True:
            opts = restricted[v]
            if owner[v] == 2 and len(opts) > 1:
                e = assign.get(v)
                if e is None:
                    return all(play_ok({**assign, v: cand}) for cand in opts)
            else:
                e = opts[0] if owner[v] != 2 else assign.get(v, opts[0])
            if e is None:
                e = opts[0]
            edges.append(e)
            v = e.tgt
            if v in pos:
                i = pos[v]
                s = _even_image(A, imgs, edges[:i], 0)
                t = _even_image(A, imgs, edges, i)
                if t is ID:
                    raise ValueError("cycle with no emitted letters at %r" % v)
                return A.mix(s, om[t]) in F
            pos[v] = len(edges)

    return play_ok({})


def _coalition_wins(arena: StateArena, A: WilkeAlgebra, q: str, semantics: str,
                    budget: int) -> bool:
    adj = _adjacency_of(arena)
    owner = arena.owner
    max_adv = max((len(adj[v]) for v in arena.nodes if owner[v] == 2), default=0)
    if max_adv <= 1:
        # no adversary choice: both semantics reduce to a positional lasso hunt
        return _fast_lasso_exists(adj, A, q)
    b = _Budget(budget)

    def evaluate(restricted):
        if semantics == "positional":
            return check_plays(restricted, A, q, "all_in")[0]
        return _all_positional_adversary_plays_in(restricted, owner, A, q)

    return _search(adj, owner, 1, (q,), evaluate, b) is not None


def model_check(G: CGS, f: Formula, semantics: str = "positional",
                budget: int = DEFAULT_BUDGET, states=None) -> frozenset:
    """Set of states satisfying the formula, by bottom-up labeling.

    ``states`` restricts which states are decided for coalition modalities
    at the top level of the recursion (subformulas are always evaluated
    everywhere); None means all states.
    """
    if semantics not in ("positional", "bipositional"):
        raise ValueError("semantics must be positional or bipositional")
    problems = validate_cgs(G)
    if problems:
        raise ValueError("invalid CGS: " + "; ".join(problems))
    targets = tuple(G.states) if states is None else tuple(states)

    def ev(formula: Formula, targets) -> frozenset:
        if isinstance(formula, Atom):
            return frozenset(s for s in G.states if formula.name in G.labeling[s])
        if isinstance(formula, Top):
            return frozenset(G.states)
        if isinstance(formula, Bottom):
            return frozenset()
        if isinstance(formula, Not):
            return frozenset(G.states) - ev(formula.arg, G.states)
        if isinstance(formula, Or):
            return ev(formula.left, G.states) | ev(formula.right, G.states)
        if isinstance(formula, Coalition):
            for ag in formula.agents:
                if ag not in G.agents:
                    raise ValueError("unknown agent %r" % ag)
            args = [ev(a, G.states) for a in formula.template.args]
            vec = {s: "".join("1" if s in sat else "0" for sat in args)
                   for s in G.states}
            arena = coalition_game(G, formula.agents, vec)
            A = template_algebra(formula.template)
            return frozenset(q for q in targets
                             if _coalition_wins(arena, A, q, semantics, budget))
        raise TypeError("not a state formula: %r" % (formula,))

    return ev(f, targets)


# --- rewrites and encodings -------------------------------------------------


def rewrite(f: Formula, direction: str) -> Formula:
    """Translate between the GF&FG&G and G(U) coalition fragments.

    gffgg_to_gu unfolds <C>(GFa & FGb & Gc) into
    <C>(c U <C>G((b&c) U (a&b&c))); a GFFG template is handled as GFFGG
    with a true G-part.  gu_to_gffgg maps <C>G(a U b) to
    <C>(GFb & FG true & G(a or b)).
    """
    if direction not in ("gffgg_to_gu", "gu_to_gffgg"):
        raise ValueError("unknown direction %r" % direction)

    def go(formula: Formula) -> Formula:
        if isinstance(formula, (Atom, Top, Bottom)):
            return formula
        if isinstance(formula, Not):
            return Not(go(formula.arg))
        if isinstance(formula, Or):
            return Or(go(formula.left), go(formula.right))
        if isinstance(formula, Coalition):
            t = formula.template
            args = tuple(go(a) for a in t.args)
            if direction == "gffgg_to_gu":
                if isinstance(t, GFFG):
                    a, bb, cc = args[0], args[1], Top()
                elif isinstance(t, GFFGG):
                    a, bb, cc = args
                else:
                    raise ValueError("formula outside the GF&FG(&G) fragment: %r" % (t,))
                inner = Coalition(formula.agents, GU(And(bb, cc), And(a, And(bb, cc))))
                return Coalition(formula.agents, Until(cc, inner))
            if not isinstance(t, GU):
                raise ValueError("formula outside the G(U) fragment: %r" % (t,))
            a, bb = args
            return Coalition(formula.agents, GFFGG(bb, Top(), Or(a, bb)))
        raise TypeError("not a state formula: %r" % (formula,))

    return go(f)


def encode_rabin(pairs, safety, C, agents=None) -> list[Formula]:
    """One coalition formula per Rabin pair; their disjunction encodes the
    condition under path-quantifier distributivity (single-agent CTL*-style
    structures).  ``pairs`` holds proposition-name pairs (u_i, v_i) where
    v_i is expected to label the complement of the avoided set.
    """
    if agents is not None and len(pairs) > 1 and set(C) != set(agents):
        warnings.warn("disjunction may not distribute over a strict coalition "
                      "modality; the encoding is only claimed for full-path "
                      "quantification")
    out = []
    for u, v in pairs:
        if safety is None:
            out.append(Coalition(tuple(C), GFFG(Atom(u), Atom(v))))
        else:
            out.append(Coalition(tuple(C), GFFGG(Atom(u), Atom(v), Atom(safety))))
    return out


# --- separator model families ----------------------------------------------


@dataclass(frozen=True)
class SeparatorEntry:
    name: str
    cgs: CGS
    root: str
    expected: bool


@dataclass(frozen=True)
class SeparatorFixture:
    kind: str
    depth: int
    formula: Formula | None
    entries: tuple[SeparatorEntry, ...]


def _gffg_structure(kind: str, depth: int):
    states, edges, labels = [], [], {}
    for j in range(1, depth + 1):
        a, bnode, c = "a%d" % j, "b%d" % j, "c%d" % j
        states += [a, bnode, c]
        labels[a] = {"a", "b"}
        labels[bnode] = set()
        labels[c] = {"b"}
        edges += [(a, bnode), (a, c), (bnode, a), (bnode, bnode), (c, c)]
        top_is_m = kind == "M" and j == depth
        if top_is_m:
            edges.append((c, a))
        if j > 1:
            edges += [(bnode, "a%d" % (j - 1)), (c, "a%d" % (j - 1))]
    return ts_to_cgs(states, edges, labels), "a%d" % depth


def _gfgf_structure(kind: str, depth: int):
    states, edges, labels = [], [], {}
    for j in range(1, depth + 1):
        a, bnode = "a%d" % j, "b%d" % j
        states += [a, bnode]
        labels[a] = {"p"}
        labels[bnode] = {"q"}
        edges += [(a, bnode), (a, a), (bnode, bnode)]
        top_is_n = kind == "N" and j == depth
        if top_is_n:
            edges.append((bnode, a))
        if j > 1:
            edges.append((bnode, "a%d" % (j - 1)))
    return ts_to_cgs(states, edges, labels), "a%d" % depth


_PROP_SETS = (frozenset(), frozenset({"p"}), frozenset({"q"}), frozenset({"p", "q"}))


def _finite_puq(seq) -> bool:
    for props in seq:
        if "q" in props:
            return True
        if "p" not in props:
            return False
    return False


def _gu_structure(depth: int):
    states, edges, labels = [], [], {}

    def add(s, props):
        states.append(s)
        labels[s] = props

    def chain(tag, srcs, seq, tgt):
        prev = None
        for k, props in enumerate(seq):
            n = "%s_%d" % (tag, k)
            add(n, props)
            if prev is None:
                for s in srcs:
                    edges.append((s, n))
            else:
                edges.append((prev, n))
            prev = n
        edges.append((prev, tgt))

    add("s0", {"p"})
    edges.append(("s0", "s0"))
    for j in range(1, depth + 1):
        sj, spj, lj = "s%d" % j, "sp%d" % j, "l%d" % j
        add(sj, {"p"})
        add(spj, {"p"})
        add(lj, frozenset())
        edges += [(sj, lj), (lj, spj)]
        idx = 0
        for ln in range(1, j + 1):
            for seq in itertools.product(_PROP_SETS, repeat=ln):
                idx += 1
                chain("sig%d_%d" % (j, idx), [spj], seq, spj)   # sigma': all paths
                if _finite_puq(seq):
                    chain("w%d_%d" % (j, idx), [sj, spj], seq, "s%d" % (j - 1))
                else:
                    chain("sg%d_%d" % (j, idx), [sj], seq, sj)  # sigma: pUq-violating
    return ts_to_cgs(states, edges, labels)


def build_separator(kind: str, depth: int) -> SeparatorFixture:
    """Model families separating the coalition-logic fragments, as drawn in
    the appendix figures, with their expected root verdicts.

    gffg: M/N pairs for <1>(GF a & FG b), depths 1..4 supported.
    gu:   a single chain structure where sp_i satisfies <1>G(p U q) and s_i
          does not, depths 1..4 (3 and beyond grow quickly).
    gfgf: M/N pairs for the exists-path GFp & GFq check (outside the
          positional fragments; verified by a reachable-cycle analysis).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if kind == "gffg":
        if depth > 4:
            raise ValueError("gffg separators supported for depth <= 4")
        f = Coalition(("1",), GFFG(Atom("a"), Atom("b")))
        m_cgs, m_root = _gffg_structure("M", depth)
        n_cgs, n_root = _gffg_structure("N", depth)
        return SeparatorFixture(kind, depth, f, (
            SeparatorEntry("M", m_cgs, m_root, True),
            SeparatorEntry("N", n_cgs, n_root, False)))
    if kind == "gfgf":
        if depth > 4:
            raise ValueError("gfgf separators supported for depth <= 4")
        m_cgs, m_root = _gfgf_structure("M", depth)
        n_cgs, n_root = _gfgf_structure("N", depth)
        return SeparatorFixture(kind, depth, None, (
            SeparatorEntry("N", n_cgs, n_root, True),
            SeparatorEntry("M", m_cgs, m_root, False)))
    if kind == "gu":
        if depth > 4:
            raise ValueError("gu separators supported for depth <= 4 "
                             "(path-set blowup)")
        f = Coalition(("1",), GU(Atom("p"), Atom("q")))
        cgs = _gu_structure(depth)
        return SeparatorFixture(kind, depth, f, (
            SeparatorEntry("s'", cgs, "sp%d" % depth, True),
            SeparatorEntry("s", cgs, "s%d" % depth, False)))
    raise ValueError("unknown separator kind %r" % kind)


def exists_gf_and_gf(G: CGS, root: str, p: str, q: str) -> bool:
    """Whether some path from root visits a p-state and a q-state infinitely
    often: some reachable strongly connected subgraph contains both."""
    succ = {s: set() for s in G.states}
    for (s, _profile), t in G.transition.items():
        succ[s].add(t)
    reach = {root}
    frontier = deque([root])
    while frontier:
        v = frontier.popleft()
        for t in succ[v]:
            if t not in reach:
                reach.add(t)
                frontier.append(t)
    # Tarjan over the reachable part
    index, low, onstack, stack = {}, {}, set(), []
    sccs = []
    counter = itertools.count()

    def strongconnect(v):
        work = [(v, iter(sorted(succ[v] & reach)))]
        index[v] = low[v] = next(counter)
        stack.append(v)
        onstack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for t in it:
                if t not in index:
                    index[t] = low[t] = next(counter)
                    stack.append(t)
                    onstack.add(t)
                    work.append((t, iter(sorted(succ[t] & reach))))
                    advanced = True
                    break
                if t in onstack:
                    low[node] = min(low[node], index[t])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[node])
            if low[node] == index[node]:
                comp = set()
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp.add(w)
                    if w == node:
                        break
                sccs.append(comp)

    for v in sorted(reach):
        if v not in index:
            strongconnect(v)
    for comp in sccs:
        has_cycle = len(comp) > 1 or any(v in succ[v] for v in comp)
        if not has_cycle:
            continue
        if any(p in G.labeling[v] for v in comp) and any(q in G.labeling[v] for v in comp):
            return True
    return False


# --- surface syntax ---------------------------------------------------------


def parse_formula(text: str) -> Formula:
    """S-expression surface syntax, e.g. ``(coal (1 2) (gu p q))`` or
    ``(not (coal () (until p q)))``.  Boolean combinations of path formulas
    are rejected: the grammar is exactly the positional fragment."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()

    def parse(pos):
        if pos >= len(tokens):
            raise ValueError("unexpected end of formula")
        tok = tokens[pos]
        if tok == "(":
            out = []
            pos += 1
            while pos < len(tokens) and tokens[pos] != ")":
                node, pos = parse(pos)
                out.append(node)
            if pos >= len(tokens):
                raise ValueError("missing ')'")
            return out, pos + 1
        if tok == ")":
            raise ValueError("unexpected ')'")
        return tok, pos + 1

    sexp, end = parse(0)
    if end != len(tokens):
        raise ValueError("trailing tokens after formula")

    def state(node) -> Formula:
        if isinstance(node, str):
            if node == "true":
                return Top()
            if node == "false":
                return Bottom()
            return Atom(node)
        if not node:
            raise ValueError("empty form")
        head = node[0]
        if head == "not":
            if len(node) != 2:
                raise ValueError("(not f)")
            return Not(state(node[1]))
        if head == "or":
            if len(node) != 3:
                raise ValueError("(or f g)")
            return Or(state(node[1]), state(node[2]))
        if head == "coal":
            if len(node) != 3 or not isinstance(node[1], list):
                raise ValueError("(coal (agents...) path)")
            agents = tuple(str(a) for a in node[1])
            return Coalition(agents, path(node[2]))
        raise ValueError("unknown state-formula head %r" % head)

    def path(node) -> PathTemplate:
        if isinstance(node, str) or not node:
            raise ValueError("path formula must be one of the template forms")
        head, rest = node[0], node[1:]
        if head not in _ARITY:
            raise ValueError("unknown path template %r (boolean combinations "
                             "of path formulas are not part of the fragment)" % head)
        if len(rest) != _ARITY[head]:
            raise ValueError("%s takes %d arguments" % (head, _ARITY[head]))
        args = [state(a) for a in rest]
        cls = {"next": Next, "until": Until, "release": Release, "gffg": GFFG,
               "gffgg": GFFGG, "gu": GU, "gxor": GXOr}[head]
        return cls(*args)

    return state(sexp)


def serialize_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Not):
        return "(not %s)" % serialize_formula(f.arg)
    if isinstance(f, Or):
        return "(or %s %s)" % (serialize_formula(f.left), serialize_formula(f.right))
    if isinstance(f, Coalition):
        t = f.template
        inner = " ".join(serialize_formula(a) for a in t.args)
        return "(coal (%s) (%s %s))" % (" ".join(f.agents), t.shape, inner)
    raise TypeError("not a formula: %r" % (f,))
