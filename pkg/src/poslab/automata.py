"""Deterministic parity automata with transition-based priorities.

Acceptance convention: a run accepts iff the maximum priority seen
infinitely often is even.  Transition-based priorities compose under
word concatenation by taking the maximum, which is what makes the
transition-monoid compilation into a Wilke algebra direct.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .algebra import WilkeAlgebra
from .words import Alphabet, UPWord, up_normalize


class GenerationCapExceeded(RuntimeError):
    """The transition monoid grew past the configured element cap."""


@dataclass(frozen=True)
class DPA:
    states: tuple[str, ...]
    initial: str
    alphabet: Alphabet
    transition: dict      # (state, letter) -> state
    priority: dict        # (state, letter) -> int

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError("initial state %r is not a state" % self.initial)
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state names")
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in self.transition:
                    raise ValueError("partial transition function: missing (%r, %r)" % (q, a))
                if (q, a) not in self.priority:
                    raise ValueError("missing priority for (%r, %r)" % (q, a))
                if self.transition[(q, a)] not in self.states:
                    raise ValueError("transition (%r, %r) leaves the state set" % (q, a))
        for (q, a), p in self.priority.items():
            if not (isinstance(p, int) and p >= 0):
                raise ValueError("priority at (%r, %r) must be a natural number" % (q, a))

    @property
    def max_priority(self) -> int:
        return max(self.priority.values())


def dpa(states, initial, alphabet: Alphabet, table) -> DPA:
    """Convenience constructor; table maps (state, letter) -> (tgt, priority)."""
    transition = {k: v[0] for k, v in table.items()}
    priority = {k: v[1] for k, v in table.items()}
    return DPA(tuple(states), initial, alphabet, transition, priority)


def dpa_serialize(D: DPA) -> str:
    doc = {
        "format_version": 1,
        "states": list(D.states),
        "initial": D.initial,
        "transitions": [
            {"src": q, "letter": a, "tgt": D.transition[(q, a)],
             "priority": D.priority[(q, a)]}
            for q in D.states for a in D.alphabet.letters
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def dpa_parse(text: str) -> DPA:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError("malformed DPA JSON: %s" % e)
    for key in ("states", "initial", "transitions"):
        if key not in doc:
            raise ValueError("DPA JSON missing field %r" % key)
    states = tuple(doc["states"])
    letters = sorted({t["letter"] for t in doc["transitions"]})
    if not letters:
        raise ValueError("DPA has no transitions")
    alphabet = Alphabet(tuple(letters))
    transition, priority = {}, {}
    for t in doc["transitions"]:
        key = (t["src"], t["letter"])
        if key in transition:
            raise ValueError("duplicate transition at (%r, %r)" % key)
        transition[key] = t["tgt"]
        priority[key] = t["priority"]
    return DPA(states, doc["initial"], alphabet, transition, priority)


def dpa_run(D: DPA, state: str, symbols) -> tuple[str, int]:
    """Run a finite letter-index sequence; return (end state, max priority seen).

    The max over an empty sequence is reported as -1 (below every priority).
    """
    best = -1
    for c in symbols:
        a = D.alphabet.letters[c]
        best = max(best, D.priority[(state, a)])
        state = D.transition[(state, a)]
    return state, best


def dpa_up_membership(D: DPA, w: UPWord) -> bool:
    """Run the prefix, iterate the period until a state repeats, accept iff
    the maximum priority on the detected cycle is even."""
    w = up_normalize(w)
    state, _ = dpa_run(D, D.initial, w.prefix.symbols)
    seen = {state: 0}
    trail = [state]
    maxes = []
    while True:
        state, m = dpa_run(D, state, w.period.symbols)
        maxes.append(m)
        if state in seen:
            start = seen[state]
            cycle_max = max(maxes[start:])
            return cycle_max % 2 == 0
        seen[state] = len(trail)
        trail.append(state)


def dpa_complement(D: DPA) -> DPA:
    """Shift all priorities by one; recognises the complement language."""
    return DPA(D.states, D.initial, D.alphabet, dict(D.transition),
               {k: v + 1 for k, v in D.priority.items()})


def _compose(e1, e2):
    return tuple((e2[q][0], p if p >= e2[q][1] else e2[q][1]) for q, p in e1)


def _idempotent_power(e, cache):
    powers = [e]
    seen = {e: 0}
    cur = e
    while True:
        cur = _compose(cur, e)
        if cur in seen:
            start = seen[cur]
            for f in powers[start:]:
                if _compose(f, f) == f:
                    return f
            raise AssertionError("no idempotent in the power cycle")
        seen[cur] = len(powers)
        powers.append(cur)


def dpa_to_wilke(D: DPA, cap: int = 20000) -> WilkeAlgebra:
    """Compile the automaton into a Wilke algebra via its transition monoid.

    S+ elements are maps state -> (target, max priority along the path);
    the omega power of s evaluates, per start state, the parity of the
    cycle eventually entered under iteration of s; Sw elements are the
    resulting per-state acceptance-bit vectors closed under mixed products.
    Acceptance reads the initial state's bit.

    Raises GenerationCapExceeded when S+ grows past ``cap``.
    """
    n_states = len(D.states)
    state_idx = {q: i for i, q in enumerate(D.states)}
    letters = D.alphabet.letters
    gens = []
    for a in letters:
        gens.append(tuple((state_idx[D.transition[(q, a)]], D.priority[(q, a)])
                          for q in D.states))

    elems: dict[tuple, int] = {}
    names: list[str] = []
    order: list[tuple] = []

    def intern(e, name):
        if e not in elems:
            elems[e] = len(order)
            order.append(e)
            names.append(name)
            if len(order) > cap:
                raise GenerationCapExceeded(
                    "transition monoid exceeded %d elements" % cap)
        return elems[e]

    frontier = deque()
    for a, g in zip(letters, gens):
        i = intern(g, a)
        frontier.append(i)
    done = set()
    while frontier:
        i = frontier.popleft()
        if i in done:
            continue
        done.add(i)
        for a, g in zip(letters, gens):
            j = intern(_compose(order[i], g), names[i] + a)
            if j not in done:
                frontier.append(j)

    n = len(order)
    product = tuple(tuple(elems[_compose(order[i], order[j])] for j in range(n))
                    for i in range(n))

    def omega_vec(e):
        f = _idempotent_power(e, None)
        bits = []
        for q in range(n_states):
            r = f[q][0]
            bits.append(f[r][1] % 2 == 0)
        return tuple(bits)

    wvecs: dict[tuple, int] = {}
    worder: list[tuple] = []
    wnames: list[str] = []

    def wintern(v, name):
        if v not in wvecs:
            wvecs[v] = len(worder)
            worder.append(v)
            wnames.append(name)
        return wvecs[v]

    omega_of = []
    for i in range(n):
        v = omega_vec(order[i])
        omega_of.append(wintern(v, "(%s)^w" % names[i]))
    for i in range(n):
        e = order[i]
        for v in list(worder):
            mixed_v = tuple(v[e[q][0]] for q in range(n_states))
            wintern(mixed_v, "%s.%s" % (names[i], wnames[wvecs[v]]))

    nw = len(worder)
    mixed = tuple(tuple(wvecs[tuple(worder[x][order[i][q][0]] for q in range(n_states))]
                        for x in range(nw)) for i in range(n))
    init = state_idx[D.initial]
    return WilkeAlgebra(
        alphabet=D.alphabet,
        splus=tuple(names),
        somega=tuple(wnames),
        product=product,
        mixed=mixed,
        omega=tuple(omega_of),
        letter_image=tuple(elems[g] for g in gens),
        accepting=frozenset(x for x in range(nw) if worder[x][init]),
    )
