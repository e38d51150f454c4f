"""Concrete positional prefix-independent language families.

Two constructions: languages of the shape  Sigma* (S R)^w  where S is a
set of letters seen infinitely often and R is a subword-closed language
(given by its anti-dictionary) constraining the blocks between them; and
finite unions of "eventually only letters from A_i" languages.
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass

from .algebra import WilkeAlgebra, boolean_combine
from .automata import DPA, dpa_to_wilke
from .words import Alphabet, FiniteWord, UPWord, subword_leq, up_normalize, word


def _minimize(words_: frozenset[FiniteWord]) -> frozenset[FiniteWord]:
    out = set()
    for w in words_:
        if any(subword_leq(v, w) for v in words_ if v != w):
            continue
        out.add(w)
    return frozenset(out)


@dataclass(frozen=True)
class AntiDictionary:
    """A finite antichain of forbidden subwords (non-empty, auto-minimized)."""

    alphabet: Alphabet
    words: frozenset[FiniteWord]

    def __post_init__(self):
        ws = frozenset(self.words)
        for w in ws:
            if len(w) == 0:
                raise ValueError("anti-dictionary words must be non-empty")
            if w.alphabet != self.alphabet:
                raise ValueError("anti-dictionary word over a different alphabet")
        mini = _minimize(ws)
        if mini != ws:
            warnings.warn("anti-dictionary was not minimal; dominated words dropped")
        object.__setattr__(self, "words", mini)

    def sorted_words(self) -> list[FiniteWord]:
        return sorted(self.words, key=lambda w: (len(w), w.symbols))


def antidict(alphabet: Alphabet, texts) -> AntiDictionary:
    return AntiDictionary(alphabet, frozenset(word(alphabet, t) for t in texts))


def antidict_totally_ordered(D: AntiDictionary):
    """Whether the subword-closed language with anti-dictionary D has totally
    ordered residuals: for every pair of splits xy, uv of dictionary words,
    some d embeds into xv or into uy.

    Returns (ordered, witness) with witness = (x, y, u, v) texts on failure.
    """
    ws = D.sorted_words()
    for d1, d2 in itertools.product(ws, ws):
        for i in range(len(d1) + 1):
            x = FiniteWord(D.alphabet, d1.symbols[:i])
            y = FiniteWord(D.alphabet, d1.symbols[i:])
            for j in range(len(d2) + 1):
                u = FiniteWord(D.alphabet, d2.symbols[:j])
                v = FiniteWord(D.alphabet, d2.symbols[j:])
                xv, uy = x + v, u + y
                if not any(subword_leq(d, xv) or subword_leq(d, uy) for d in ws):
                    return False, (x.text(), y.text(), u.text(), v.text())
    return True, None


def antidict_extend_letter(D: AntiDictionary, letter: str) -> AntiDictionary:
    """D u {letter}, re-minimized (words containing the letter are absorbed)."""
    w = word(D.alphabet, [letter])
    return AntiDictionary(D.alphabet, D.words | {w})


@dataclass(frozen=True)
class DFA:
    """A complete deterministic automaton on finite words."""

    alphabet: Alphabet
    n_states: int
    initial: int
    transition: tuple[tuple[int, ...], ...]   # state x letter -> state
    accepting: frozenset[int]

    def accepts(self, w: FiniteWord) -> bool:
        q = self.initial
        for c in w.symbols:
            q = self.transition[q][c]
        return q in self.accepting


def subseq_dfa(D: AntiDictionary) -> DFA:
    """DFA for the subword-closed language avoiding every word of D as a
    subsequence.  States are vectors of per-word matched-prefix counters,
    with an absorbing reject once any counter completes."""
    ws = D.sorted_words()
    start = tuple(0 for _ in ws)
    dead = "dead"

    def step(state, c):
        nxt = []
        for k, w in zip(state, ws):
            if k < len(w) and w.symbols[k] == c:
                k += 1
                if k == len(w):
                    return dead
            nxt.append(k)
        return tuple(nxt)

    interned = {start: 0}
    order = [start]
    frontier = deque([start])
    while frontier:
        st = frontier.popleft()
        if st == dead:
            continue
        for c in range(len(D.alphabet)):
            nx = step(st, c)
            if nx not in interned:
                interned[nx] = len(order)
                order.append(nx)
                frontier.append(nx)
    if dead in interned:
        di = interned[dead]
    else:
        di = None
    transition = []
    for st in order:
        if st == dead:
            transition.append(tuple(di for _ in range(len(D.alphabet))))
        else:
            transition.append(tuple(interned[step(st, c)] for c in range(len(D.alphabet))))
    accepting = frozenset(i for i, st in enumerate(order) if st != dead)
    return DFA(D.alphabet, len(order), 0, tuple(transition), accepting)


def dfa_language_included(M: DFA, p: int, q: int) -> bool:
    """L(p) subset of L(q), by product reachability with the complement."""
    seen = {(p, q)}
    frontier = deque([(p, q)])
    while frontier:
        x, y = frontier.popleft()
        if x in M.accepting and y not in M.accepting:
            return False
        for c in range(len(M.alphabet)):
            nxt = (M.transition[x][c], M.transition[y][c])
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return True


def dfa_residual_order(M: DFA) -> bool:
    """Whether the languages of M's reachable states form an inclusion chain."""
    reach = {M.initial}
    frontier = deque([M.initial])
    while frontier:
        q = frontier.popleft()
        for c in range(len(M.alphabet)):
            t = M.transition[q][c]
            if t not in reach:
                reach.add(t)
                frontier.append(t)
    states = sorted(reach)
    for p, q in itertools.combinations(states, 2):
        if not (dfa_language_included(M, p, q) or dfa_language_included(M, q, p)):
            return False
    return True


@dataclass(frozen=True)
class SRFamily:
    """The language  Sigma* (S R)^w : letters of s_letters appear infinitely
    often and every block between consecutive occurrences lies in the
    subword-closed language of the anti-dictionary (over the other letters)."""

    alphabet: Alphabet
    s_letters: frozenset[str]
    antidict: AntiDictionary

    def __post_init__(self):
        if not self.s_letters:
            raise ValueError("s_letters must be non-empty")
        for a in self.s_letters:
            self.alphabet.index(a)
        rest = tuple(a for a in self.alphabet.letters if a not in self.s_letters)
        if tuple(self.antidict.alphabet.letters) != rest:
            raise ValueError("anti-dictionary must be over the non-S letters %r" % (rest,))


def sr_family(alphabet: Alphabet, s_letters, forbidden) -> SRFamily:
    rest = Alphabet(tuple(a for a in alphabet.letters if a not in set(s_letters)))
    return SRFamily(alphabet, frozenset(s_letters), antidict(rest, forbidden))


def _block_in_r(fam: SRFamily, block: list[int]) -> bool:
    rest = fam.antidict.alphabet
    w = word(rest, [fam.alphabet.letters[c] for c in block])
    return not any(subword_leq(d, w) for d in fam.antidict.words)


def sr_membership(fam: SRFamily, w: UPWord) -> bool:
    """Normative semantics of the family on ultimately periodic words.

    The period is rotated to end on an s-letter, so every inter-S block of
    the tail (including the wrap-around one) is a segment of one rotation.
    The prefix never matters: the language is prefix-independent.
    """
    w = up_normalize(w)
    s_idx = {fam.alphabet.index(a) for a in fam.s_letters}
    period = list(w.period.symbols)
    hits = [i for i, c in enumerate(period) if c in s_idx]
    if not hits:
        return False
    i = hits[-1]
    rotated = period[i + 1:] + period[:i + 1]
    block: list[int] = []
    for c in rotated:
        if c in s_idx:
            if not _block_in_r(fam, block):
                return False
            block = []
        else:
            block.append(c)
    return True


def sr_to_dpa(fam: SRFamily) -> DPA:
    """Parity automaton for the family, tracking the pending block in the
    subsequence DFA.  Priorities: an s-letter closing a live block emits 2,
    an s-letter after a block that fell out of R emits 3, every other
    letter emits 1.  Agreement with sr_membership is the correctness bar.
    """
    M = subseq_dfa(fam.antidict)
    rest_idx = {a: i for i, a in enumerate(fam.antidict.alphabet.letters)}
    states = tuple("b%d" % i for i in range(M.n_states))
    table = {}
    for i in range(M.n_states):
        alive = i in M.accepting
        for a in fam.alphabet.letters:
            if a in fam.s_letters:
                table[(states[i], a)] = (states[M.initial], 2 if alive else 3)
            else:
                t = M.transition[i][rest_idx[a]]
                table[(states[i], a)] = (states[t], 1)
    from .automata import dpa as mk
    return mk(states, states[M.initial], fam.alphabet, table)


def rabin_family(alphabet: Alphabet, pairs) -> WilkeAlgebra:
    """Union over pairs (U_i, V_i) of the SR encodings of 'some letter of
    U_i infinitely often and no letter of V_i infinitely often'.

    A pair with U_i contained in V_i is unsatisfiable and contributes the
    empty language.
    """
    if not pairs:
        raise ValueError("need at least one Rabin pair")
    algebras = []
    for U, V in pairs:
        s = frozenset(U) - frozenset(V)
        if not s:
            algebras.append(_empty_language_algebra(alphabet))
            continue
        fam = sr_family(alphabet, s, [[v] for v in sorted(set(V))])
        algebras.append(dpa_to_wilke(sr_to_dpa(fam)))
    out = algebras[0]
    for b in algebras[1:]:
        out = boolean_combine(out, b, "union")
    return out


def _empty_language_algebra(alphabet: Alphabet) -> WilkeAlgebra:
    return WilkeAlgebra(
        alphabet=alphabet, splus=("s",), somega=("x",),
        product=((0,),), mixed=((0,),), omega=(0,),
        letter_image=tuple(0 for _ in alphabet.letters),
        accepting=frozenset())


@dataclass(frozen=True)
class FGFamily:
    """Finite union of 'eventually only letters from A_i' languages."""

    alphabet: Alphabet
    sets: tuple[frozenset[str], ...]

    def __post_init__(self):
        for s in self.sets:
            for a in s:
                self.alphabet.index(a)
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))


def fg_membership(fam: FGFamily, w: UPWord) -> bool:
    """After normalization the period letters must all lie in some A_i."""
    w = up_normalize(w)
    letters = {fam.alphabet.letters[c] for c in w.period.symbols}
    return any(letters <= s for s in fam.sets)


def fg_intersect(f1: FGFamily, f2: FGFamily) -> FGFamily:
    if f1.alphabet != f2.alphabet:
        raise ValueError("alphabet mismatch")
    return FGFamily(f1.alphabet, tuple(a & b for a in f1.sets for b in f2.sets))


def fg_union(f1: FGFamily, f2: FGFamily) -> FGFamily:
    if f1.alphabet != f2.alphabet:
        raise ValueError("alphabet mismatch")
    return FGFamily(f1.alphabet, f1.sets + f2.sets)


def fg_inverse_image(fam: FGFamily, h: dict, source: Alphabet) -> FGFamily:
    """Preimage under the letter-to-word substitution h (values non-empty).

    A source letter survives into the preimage of A_i iff all letters of
    its image lie in A_i.
    """
    images = {}
    for a in source.letters:
        w = h[a]
        if len(w) == 0:
            raise ValueError("substitution must map letters to non-empty words")
        images[a] = {w.alphabet.letters[c] for c in w.symbols}
    sets = tuple(frozenset(a for a in source.letters if images[a] <= s) for s in fam.sets)
    return FGFamily(source, sets)


def fg_to_algebra(fam: FGFamily) -> WilkeAlgebra:
    """Compile the family through one-state parity automata joined by union."""
    out = None
    for s in fam.sets:
        table = {("q", a): ("q", 0 if a in s else 1) for a in fam.alphabet.letters}
        from .automata import dpa as mk
        alg = dpa_to_wilke(mk(("q",), "q", fam.alphabet, table))
        out = alg if out is None else boolean_combine(out, alg, "union")
    if out is None:
        out = _empty_language_algebra(fam.alphabet)
    return out
