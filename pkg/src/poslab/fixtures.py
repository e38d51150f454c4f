"""Named corpus objectives and seeded random generators used across the suite.

Hand-built algebras carry the semantic content of the worked examples; the
random generators produce valid-by-construction objects (algebras come from
random parity automata, so trimness and the Wilke identities hold).
"""

from __future__ import annotations

import random

from .algebra import WilkeAlgebra, boolean_combine
from .automata import DPA, dpa, dpa_to_wilke
from .games import Edge, EdgeArena, StateArena
from .words import Alphabet, FiniteWord, UPWord

AB = Alphabet(("a", "b"))
ABC = Alphabet(("a", "b", "c"))
PN = Alphabet(("p", "n"))
VEC2 = Alphabet(("00", "01", "10", "11"))


def trivial_algebra(alphabet: Alphabet = AB) -> WilkeAlgebra:
    return WilkeAlgebra(alphabet, ("s",), ("x",), ((0,),), ((0,),), (0,),
                        tuple(0 for _ in alphabet.letters), frozenset({0}))


def gfa_algebra() -> WilkeAlgebra:
    """Infinitely many a's, over {a, b}."""
    return WilkeAlgebra(
        alphabet=AB, splus=("A", "B"), somega=("acc", "rej"),
        product=((0, 0), (0, 1)),       # "contains a" absorbs
        mixed=((0, 1), (0, 1)),         # prefix-independent: right projection
        omega=(0, 1),
        letter_image=(0, 1), accepting=frozenset({0}))


def gfb_algebra() -> WilkeAlgebra:
    """Infinitely many b's: the letter-swapped copy of gfa_algebra."""
    A = gfa_algebra()
    return WilkeAlgebra(A.alphabet, A.splus, A.somega, A.product, A.mixed,
                        A.omega, (1, 0), A.accepting)


def gfa_gfb_algebra() -> WilkeAlgebra:
    """Infinitely many a's and infinitely many b's (tracks letters seen)."""
    return WilkeAlgebra(
        alphabet=AB, splus=("A", "B", "AB"), somega=("acc", "rej"),
        product=((0, 2, 2), (2, 1, 2), (2, 2, 2)),
        mixed=((0, 1), (0, 1), (0, 1)),
        omega=(1, 1, 0),
        letter_image=(0, 1), accepting=frozenset({0}))


def fa_fb_algebra() -> WilkeAlgebra:
    """At least one a and at least one b (not prefix-independent)."""
    return WilkeAlgebra(
        alphabet=AB, splus=("A", "B", "AB"), somega=("xa", "xb", "xab"),
        product=((0, 2, 2), (2, 1, 2), (2, 2, 2)),
        mixed=((0, 2, 2), (2, 1, 2), (2, 2, 2)),
        omega=(0, 1, 2),
        letter_image=(0, 1), accepting=frozenset({2}))


def fin_bb_algebra() -> WilkeAlgebra:
    """The substring bb occurs finitely often, over {a, b}.

    Elements track (first letter, last letter, contains-bb); the omega power
    also accounts for the junction when the period wraps.
    """
    elems = [(f, l, k) for f in "ab" for l in "ab" for k in (0, 1)]
    idx = {e: i for i, e in enumerate(elems)}

    def mul(e1, e2):
        f1, l1, k1 = e1
        f2, l2, k2 = e2
        return (f1, l2, k1 | k2 | (1 if (l1 == "b" and f2 == "b") else 0))

    def om(e):
        f, l, k = e
        bad = k or (l == "b" and f == "b")
        return 1 if bad else 0

    return WilkeAlgebra(
        alphabet=AB,
        splus=tuple("%s%s%s" % (f, l, "!" if k else "") for f, l, k in elems),
        somega=("acc", "rej"),
        product=tuple(tuple(idx[mul(e1, e2)] for e2 in elems) for e1 in elems),
        mixed=tuple(((0, 1)) for _ in elems),
        omega=tuple(om(e) for e in elems),
        letter_image=(idx[("a", "a", 0)], idx[("b", "b", 0)]),
        accepting=frozenset({0}))


def abc_cycle_algebra() -> WilkeAlgebra:
    """The singleton language (abc)^w, over {a, b, c}.

    Elements are phase pairs (i, j): a valid factor of the cycle starting at
    phase i and expecting phase j next; everything else is dead.
    """
    pairs = [(i, j) for i in range(3) for j in range(3)]
    elems = pairs + ["dead"]
    idx = {e: i for i, e in enumerate(elems)}

    def mul(e1, e2):
        if e1 == "dead" or e2 == "dead":
            return "dead"
        return (e1[0], e2[1]) if e1[1] == e2[0] else "dead"

    womega = ["T0", "T1", "T2", "DW"]

    def om(e):
        if e == "dead" or e[0] != e[1]:
            return 3
        return e[0]

    def mix(e, x):
        if e == "dead" or x == 3:
            return 3
        return e[0] if e[1] == x else 3

    return WilkeAlgebra(
        alphabet=ABC,
        splus=tuple("p%d%d" % e if e != "dead" else "dead" for e in elems),
        somega=tuple(womega),
        product=tuple(tuple(idx[mul(e1, e2)] for e2 in elems) for e1 in elems),
        mixed=tuple(tuple(mix(e, x) for x in range(4)) for e in elems),
        omega=tuple(om(e) for e in elems),
        letter_image=(idx[(0, 1)], idx[(1, 2)], idx[(2, 0)]),
        accepting=frozenset({0}))


def aw_or_bw_dpa() -> DPA:
    """a^w or b^w: all letters equal from the start."""
    t = {("i", "a"): ("qa", 2), ("i", "b"): ("qb", 2),
         ("qa", "a"): ("qa", 2), ("qa", "b"): ("d", 1),
         ("qb", "b"): ("qb", 2), ("qb", "a"): ("d", 1),
         ("d", "a"): ("d", 1), ("d", "b"): ("d", 1)}
    return dpa(("i", "qa", "qb", "d"), "i", AB, t)


def aw_or_bw_algebra() -> WilkeAlgebra:
    return dpa_to_wilke(aw_or_bw_dpa())


def gpxp_dpa() -> DPA:
    """G(p or Xp) over letters p / n: no two consecutive n's."""
    t = {("P", "p"): ("P", 2), ("P", "n"): ("N", 2),
         ("N", "p"): ("P", 2), ("N", "n"): ("D", 1),
         ("D", "p"): ("D", 1), ("D", "n"): ("D", 1)}
    return dpa(("P", "N", "D"), "P", PN, t)


def gpxp_algebra() -> WilkeAlgebra:
    return dpa_to_wilke(gpxp_dpa())


def gfa_fgb_algebra() -> WilkeAlgebra:
    """GF a and FG b over truth vectors (bit 0 = a, bit 1 = b)."""
    pri = {"00": 3, "01": 1, "10": 3, "11": 2}
    t = {("q", c): ("q", pri[c]) for c in VEC2.letters}
    return dpa_to_wilke(dpa(("q",), "q", VEC2, t))


def gfa_dpa() -> DPA:
    t = {("q", "a"): ("q", 2), ("q", "b"): ("q", 1)}
    return dpa(("q",), "q", AB, t)


def abc_cycle_dpa() -> DPA:
    t = {("0", "a"): ("1", 2), ("0", "b"): ("d", 1), ("0", "c"): ("d", 1),
         ("1", "b"): ("2", 2), ("1", "a"): ("d", 1), ("1", "c"): ("d", 1),
         ("2", "c"): ("0", 2), ("2", "a"): ("d", 1), ("2", "b"): ("d", 1),
         ("d", "a"): ("d", 1), ("d", "b"): ("d", 1), ("d", "c"): ("d", 1)}
    return dpa(("0", "1", "2", "d"), "0", ABC, t)


def even_a_gaps_dpa() -> DPA:
    """Infinitely many b's and, eventually, an even number of a's between
    consecutive b's.  Not aperiodic (counts modulo 2), hence not positional."""
    t = {("E", "a"): ("O", 1), ("O", "a"): ("E", 1),
         ("E", "b"): ("E", 2), ("O", "b"): ("E", 3)}
    return dpa(("E", "O"), "E", AB, t)


def even_a_gaps_algebra() -> WilkeAlgebra:
    return dpa_to_wilke(even_a_gaps_dpa())


def two_elt_group_algebra() -> WilkeAlgebra:
    """Z/2 in S+ (letter a is the generator); the omega sort is trivial."""
    return WilkeAlgebra(
        alphabet=AB, splus=("e", "g"), somega=("x",),
        product=((0, 1), (1, 0)),
        mixed=((0,), (0,)),
        omega=(0, 0),
        letter_image=(1, 0), accepting=frozenset({0}))


def gfa_redundant_algebra() -> WilkeAlgebra:
    """GF a with a duplicated 'contains a' element (the letter image);
    the syntactic quotient merges it away."""
    return WilkeAlgebra(
        alphabet=AB, splus=("A", "A2", "B"), somega=("acc", "rej"),
        product=((0, 0, 0), (0, 0, 0), (0, 0, 2)),
        mixed=((0, 1), (0, 1), (0, 1)),
        omega=(0, 0, 1),
        letter_image=(1, 2), accepting=frozenset({0}))


def gpxp_ab_dpa() -> DPA:
    """G(a or Xa) over {a, b}: the gpxp language with plain letter names."""
    t = {("P", "a"): ("P", 2), ("P", "b"): ("N", 2),
         ("N", "a"): ("P", 2), ("N", "b"): ("D", 1),
         ("D", "a"): ("D", 1), ("D", "b"): ("D", 1)}
    return dpa(("P", "N", "D"), "P", AB, t)


def gpxp_ab_algebra() -> WilkeAlgebra:
    return dpa_to_wilke(gpxp_ab_dpa())


def sr_corpus() -> list:
    """Thirty SR families whose anti-dictionaries all have totally ordered
    residuals (singletons, letter extensions, or empty)."""
    from .families import sr_family
    specs = [
        (AB, ("a",), ()), (AB, ("a",), ("b",)), (AB, ("a",), ("bb",)),
        (AB, ("a",), ("bbb",)), (AB, ("a",), ("bbbb",)),
        (AB, ("b",), ()), (AB, ("b",), ("a",)), (AB, ("b",), ("aa",)),
        (AB, ("b",), ("aaa",)),
        (ABC, ("a",), ("b",)), (ABC, ("a",), ("c",)), (ABC, ("a",), ("bb",)),
        (ABC, ("a",), ("bc",)), (ABC, ("a",), ("cb",)), (ABC, ("a",), ("cc",)),
        (ABC, ("a",), ("bcb",)), (ABC, ("a",), ("ccc",)),
        (ABC, ("a",), ("bb", "c")), (ABC, ("a",), ("cc", "b")),
        (ABC, ("a",), ("bcb", "c")),
        (ABC, ("a", "b"), ()), (ABC, ("a", "b"), ("c",)),
        (ABC, ("a", "b"), ("cc",)), (ABC, ("a", "b"), ("ccc",)),
        (ABC, ("a", "c"), ("bb",)), (ABC, ("a", "c"), ("bbb",)),
        (ABC, ("c",), ("ab",)), (ABC, ("c",), ("ba",)),
        (ABC, ("c",), ("aab",)), (ABC, ("c",), ("abb",)),
    ]
    return [sr_family(alpha, s, d) for alpha, s, d in specs]


def positional_ab_algebras() -> dict:
    """Edge-positional fixtures over {a, b} (used by union-closure checks)."""
    from .families import sr_to_dpa
    out = {"gfa": gfa_algebra(), "fin_bb": fin_bb_algebra(),
           "gpxp_ab": gpxp_ab_algebra(), "trivial": trivial_algebra()}
    for i, fam in enumerate(sr_corpus()):
        if fam.alphabet == AB:
            out["sr%d" % i] = dpa_to_wilke(sr_to_dpa(fam))
    return out


def corpus() -> dict:
    """The named classification corpus (see the fixture table tests)."""
    return {
        "gfa": gfa_algebra(),
        "gfa_fgb": gfa_fgb_algebra(),
        "gfa_gfb": gfa_gfb_algebra(),
        "fa_fb": fa_fb_algebra(),
        "gpxp": gpxp_algebra(),
        "fin_bb": fin_bb_algebra(),
        "abc_cycle": abc_cycle_algebra(),
        "aw_or_bw": aw_or_bw_algebra(),
        "even_a_gaps": even_a_gaps_algebra(),
        "trivial": trivial_algebra(),
    }


# --- random generators ------------------------------------------------------


def random_up_word(rng: random.Random, alphabet: Alphabet,
                   max_prefix: int = 6, max_period: int = 6) -> UPWord:
    npre = rng.randrange(max_prefix + 1)
    nper = rng.randrange(1, max_period + 1)
    pre = tuple(rng.randrange(len(alphabet)) for _ in range(npre))
    per = tuple(rng.randrange(len(alphabet)) for _ in range(nper))
    return UPWord(FiniteWord(alphabet, pre), FiniteWord(alphabet, per))


def random_dpa(rng: random.Random, max_states: int = 4,
               alphabet: Alphabet = AB, max_priority: int = 3) -> DPA:
    n = rng.randrange(1, max_states + 1)
    states = tuple("q%d" % i for i in range(n))
    t = {}
    for q in states:
        for a in alphabet.letters:
            t[(q, a)] = (states[rng.randrange(n)], rng.randrange(max_priority + 1))
    return dpa(states, states[0], alphabet, t)


def random_trim_algebra(rng: random.Random, max_splus: int = 6,
                        alphabet: Alphabet = AB) -> WilkeAlgebra:
    """Valid trim algebra with a bounded S+, sampled through random automata."""
    while True:
        D = random_dpa(rng, max_states=3, alphabet=alphabet, max_priority=3)
        A = dpa_to_wilke(D, cap=4000)
        if len(A.splus) <= max_splus:
            return A


def random_algebra_with_size(target: int, base_seed: int = 0,
                             max_tries: int = 20000,
                             min_somega: int = 2) -> tuple[WilkeAlgebra, int]:
    """Search seeds for a random automaton whose transition monoid has exactly
    ``target`` S+ elements and a non-degenerate omega sort; returns
    (algebra, seed)."""
    for k in range(max_tries):
        rng = random.Random(base_seed + k)
        D = random_dpa(rng, max_states=5, alphabet=ABC, max_priority=2)
        try:
            A = dpa_to_wilke(D, cap=target * 40)
        except Exception:
            continue
        if len(A.splus) == target and len(A.somega) >= min_somega:
            return A, base_seed + k
    raise RuntimeError("no random algebra of size %d within %d seeds"
                       % (target, max_tries))


def random_edge_arena(rng: random.Random, max_nodes: int = 5,
                      alphabet: Alphabet = AB, max_out: int = 2) -> EdgeArena:
    n = rng.randrange(1, max_nodes + 1)
    nodes = tuple("n%d" % i for i in range(n))
    owner = {v: rng.choice((1, 2)) for v in nodes}
    edges = []
    for v in nodes:
        for _ in range(rng.randrange(1, max_out + 1)):
            edges.append(Edge(v, rng.choice(alphabet.letters),
                              nodes[rng.randrange(n)]))
    return EdgeArena(nodes, owner, tuple(edges))


def random_state_arena(rng: random.Random, max_nodes: int = 5,
                       alphabet: Alphabet = AB, max_out: int = 2) -> StateArena:
    n = rng.randrange(1, max_nodes + 1)
    nodes = tuple("n%d" % i for i in range(n))
    owner = {v: rng.choice((1, 2)) for v in nodes}
    label = {v: rng.choice(alphabet.letters) for v in nodes}
    edges = set()
    for v in nodes:
        for _ in range(rng.randrange(1, max_out + 1)):
            edges.add((v, nodes[rng.randrange(n)]))
    return StateArena(nodes, owner, tuple(sorted(edges)), label)


def random_cgs(rng: random.Random, max_states: int = 5, agents=("1", "2"),
               max_actions: int = 2, props=("p", "q", "r")) -> "CGS":
    from .atl import CGS
    n = rng.randrange(1, max_states + 1)
    states = tuple("s%d" % i for i in range(n))
    actions, transition, labeling = {}, {}, {}
    import itertools as it
    for s in states:
        for ag in agents:
            k = rng.randrange(1, max_actions + 1)
            actions[(s, ag)] = tuple("c%d" % i for i in range(k))
    for s in states:
        pools = [actions[(s, ag)] for ag in agents]
        for profile in it.product(*pools):
            transition[(s, profile)] = states[rng.randrange(n)]
        labeling[s] = frozenset(p for p in props if rng.random() < 0.5)
    return CGS(states, tuple(agents), actions, transition, labeling)
