"""Independent brute-force oracles.

These deliberately avoid the algebra-level quantifier loops and the
product-based play check: the word-level condition oracle enumerates
concrete short words and tests memberships one by one, and the lasso
oracle enumerates concrete plays.  They exist to cross-examine the fast
paths, so they must stay structurally independent of them.
"""

from __future__ import annotations

import itertools

from .algebra import WilkeAlgebra, up_membership
from .games import EdgeArena, LassoPlay
from .words import FiniteWord, UPWord


def _words_upto(alphabet, n, include_empty=True):
    out = []
    for ln in range(0 if include_empty else 1, n + 1):
        for symbols in itertools.product(range(len(alphabet)), repeat=ln):
            out.append(FiniteWord(alphabet, symbols))
    return out


def closure_conditions_by_words(A: WilkeAlgebra, max_len: int = 3):
    """Word-level verdicts for the two closure conditions, enumerating
    u, y over words of length <= max_len and v, w, x over non-empty ones.

    Membership queries go through up_membership only; no table reasoning.
    """
    alpha = A.alphabet
    star = _words_upto(alpha, max_len)
    plus = [w for w in star if len(w) > 0]

    def member(prefix: FiniteWord, period: FiniteWord) -> bool:
        return up_membership(A, UPWord(prefix, period))

    cond1 = True
    for u, v, w, x in itertools.product(star, plus, plus, plus):
        if member(u + v + w, x):
            if not (member(u, v) or member(u + w, x)):
                cond1 = False
                break
    cond2 = True
    for u, v, w, y in itertools.product(star, plus, plus, star):
        if member(u, v + w + y):
            if not (member(u + v, w) or (len(v + y) > 0 and member(u, v + y))):
                cond2 = False
                break
    return cond1, cond2


def state_closure_conditions_by_words(A: WilkeAlgebra, max_len: int = 3,
                                      variant: str = "state_alt"):
    """Word-level verdicts for the state-labelled conditions: v and w are
    restricted to words beginning with the same letter; variant picks the
    second disjunct of condition (2): u(vy)^w (state) or u(wy)^w (state_alt)."""
    alpha = A.alphabet
    star = _words_upto(alpha, max_len)
    plus = [w for w in star if len(w) > 0]

    def member(prefix, period):
        return up_membership(A, UPWord(prefix, period))

    cond1 = True
    for u, v, w, x in itertools.product(star, plus, plus, plus):
        if v.symbols[0] != w.symbols[0]:
            continue
        if member(u + v + w, x) and not (member(u, v) or member(u + w, x)):
            cond1 = False
            break
    cond2 = True
    for u, v, w, y in itertools.product(star, plus, plus, star):
        if v.symbols[0] != w.symbols[0]:
            continue
        if member(u, v + w + y):
            alt = (w + y) if variant == "state_alt" else (v + y)
            if not (member(u + v, w) or (len(alt) > 0 and member(u, alt))):
                cond2 = False
                break
    return cond1, cond2


def enumerate_lassos(arena: EdgeArena, start: str, max_prefix: int, max_loop: int):
    """Every lasso from start with bounded prefix and loop lengths."""
    adj = arena.out()

    def extend_prefix(path, length):
        yield path
        if length == 0:
            return
        v = path[-1].tgt if path else start
        for e in adj[v]:
            yield from extend_prefix(path + [e], length - 1)

    for prefix in extend_prefix([], max_prefix):
        anchor = prefix[-1].tgt if prefix else start

        def extend_loop(path, length):
            v = path[-1].tgt if path else anchor
            for e in adj[v]:
                if e.tgt == anchor:
                    yield path + [e]
                if length > 1:
                    yield from extend_loop(path + [e], length - 1)

        for loop in extend_loop([], max_loop):
            yield LassoPlay(tuple(prefix), tuple(loop))


def lasso_trace_member(A: WilkeAlgebra, lasso: LassoPlay) -> bool:
    pre, loop = lasso.trace()
    if not loop:
        raise ValueError("lasso loop emits no letters")
    alpha = A.alphabet
    prefix = FiniteWord(alpha, tuple(alpha.index(c) for c in pre))
    period = FiniteWord(alpha, tuple(alpha.index(c) for c in loop))
    return up_membership(A, UPWord(prefix, period))


def all_plays_in_by_enumeration(arena: EdgeArena, A: WilkeAlgebra, start: str,
                                max_prefix: int, max_loop: int) -> bool:
    """Exhaustive-lasso version of the universal play check."""
    return all(lasso_trace_member(A, l)
               for l in enumerate_lassos(arena, start, max_prefix, max_loop))


def exists_play_in_by_enumeration(arena: EdgeArena, A: WilkeAlgebra, start: str,
                                  max_prefix: int, max_loop: int) -> bool:
    return any(lasso_trace_member(A, l)
               for l in enumerate_lassos(arena, start, max_prefix, max_loop))
