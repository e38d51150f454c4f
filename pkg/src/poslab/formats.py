"""JSON interchange formats (format_version 1).

Algebra:  {letters, splus, somega, product, mixed, omega,
           letter_image: {letter: index}, accepting: [indices]}
Arena:    {nodes: [{id, owner, label?}], edges: [{src, letter?, tgt}],
           kind: "edge" | "state"}
DPA:      {states, initial, transitions: [{src, letter, tgt, priority}]}
CGS:      {states: [{id, props}], agents, actions: {state: {agent: [...]}},
           transitions: [{state, profile, tgt}]}
SR family:    {letters, s_letters, antidictionary: [words]}
FG family:    {letters, sets: [[letters]]}
Rabin pairs:  {letters, pairs: [{u: [letters], v: [letters]}]}

Serialization is deterministic (sorted keys, two-space indent), so one
parse/serialize pass is a normal form.
"""

from __future__ import annotations

import json

from .algebra import WilkeAlgebra
from .atl import CGS
from .families import AntiDictionary, FGFamily, SRFamily, antidict
from .games import Edge, EdgeArena, StateArena
from .words import Alphabet


class SchemaError(ValueError):
    pass


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("malformed JSON: %s" % e)
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object")
    return doc


def _need(doc, *keys):
    for k in keys:
        if k not in doc:
            raise SchemaError("missing field %r" % k)


def algebra_to_json(A: WilkeAlgebra) -> str:
    return _dump({
        "format_version": 1,
        "letters": list(A.alphabet.letters),
        "splus": list(A.splus),
        "somega": list(A.somega),
        "product": [list(r) for r in A.product],
        "mixed": [list(r) for r in A.mixed],
        "omega": list(A.omega),
        "letter_image": {a: A.letter_image[i] for i, a in enumerate(A.alphabet.letters)},
        "accepting": sorted(A.accepting),
    })


def algebra_from_json(text: str) -> WilkeAlgebra:
    doc = _load(text)
    _need(doc, "letters", "splus", "somega", "product", "mixed", "omega",
          "letter_image", "accepting")
    alpha = Alphabet(tuple(doc["letters"]))
    try:
        letter_image = tuple(doc["letter_image"][a] for a in alpha.letters)
    except KeyError as e:
        raise SchemaError("letter_image missing letter %s" % e)
    return WilkeAlgebra(
        alphabet=alpha,
        splus=tuple(doc["splus"]),
        somega=tuple(doc["somega"]),
        product=tuple(tuple(r) for r in doc["product"]),
        mixed=tuple(tuple(r) for r in doc["mixed"]),
        omega=tuple(doc["omega"]),
        letter_image=letter_image,
        accepting=frozenset(doc["accepting"]))


def arena_to_json(a) -> str:
    if isinstance(a, EdgeArena):
        nodes = [{"id": v, "owner": a.owner[v]} for v in a.nodes]
        edges = []
        for e in a.edges:
            item = {"src": e.src, "tgt": e.tgt}
            if e.letter is not None:
                item["letter"] = e.letter
            edges.append(item)
        return _dump({"format_version": 1, "kind": "edge",
                      "nodes": nodes, "edges": edges})
    if isinstance(a, StateArena):
        nodes = []
        for v in a.nodes:
            item = {"id": v, "owner": a.owner[v]}
            if v not in a.transparent:
                item["label"] = a.label[v]
            nodes.append(item)
        edges = [{"src": s, "tgt": t} for s, t in a.edges]
        return _dump({"format_version": 1, "kind": "state",
                      "nodes": nodes, "edges": edges})
    raise TypeError("not an arena: %r" % (a,))


def arena_from_json(text: str):
    doc = _load(text)
    _need(doc, "kind", "nodes", "edges")
    ids = tuple(n["id"] for n in doc["nodes"])
    owner = {n["id"]: n["owner"] for n in doc["nodes"]}
    if doc["kind"] == "edge":
        edges = tuple(Edge(e["src"], e.get("letter"), e["tgt"]) for e in doc["edges"])
        return EdgeArena(ids, owner, edges)
    if doc["kind"] == "state":
        label = {n["id"]: n["label"] for n in doc["nodes"] if "label" in n}
        transparent = frozenset(n["id"] for n in doc["nodes"] if "label" not in n)
        edges = tuple((e["src"], e["tgt"]) for e in doc["edges"])
        return StateArena(ids, owner, edges, label, transparent)
    raise SchemaError("arena kind must be 'edge' or 'state'")


def cgs_to_json(G: CGS) -> str:
    actions = {}
    for s in G.states:
        actions[s] = {ag: list(G.actions[(s, ag)]) for ag in G.agents}
    transitions = [{"state": s, "profile": list(profile), "tgt": tgt}
                   for (s, profile), tgt in sorted(G.transition.items())]
    return _dump({
        "format_version": 1,
        "states": [{"id": s, "props": sorted(G.labeling[s])} for s in G.states],
        "agents": list(G.agents),
        "actions": actions,
        "transitions": transitions,
    })


def cgs_from_json(text: str) -> CGS:
    doc = _load(text)
    _need(doc, "states", "agents", "actions", "transitions")
    states = tuple(s["id"] for s in doc["states"])
    agents = tuple(doc["agents"])
    labeling = {s["id"]: frozenset(s.get("props", ())) for s in doc["states"]}
    actions = {}
    for s in states:
        per_state = doc["actions"].get(s)
        if per_state is None:
            raise SchemaError("actions missing state %r" % s)
        for ag in agents:
            if ag not in per_state:
                raise SchemaError("actions missing agent %r at state %r" % (ag, s))
            actions[(s, ag)] = tuple(per_state[ag])
    transition = {}
    for t in doc["transitions"]:
        transition[(t["state"], tuple(t["profile"]))] = t["tgt"]
    return CGS(states, agents, actions, transition, labeling)


def sr_family_to_json(fam: SRFamily) -> str:
    return _dump({
        "format_version": 1,
        "letters": list(fam.alphabet.letters),
        "s_letters": sorted(fam.s_letters),
        "antidictionary": sorted(w.text() for w in fam.antidict.words),
    })


def sr_family_from_json(text: str) -> SRFamily:
    doc = _load(text)
    _need(doc, "letters", "s_letters", "antidictionary")
    alpha = Alphabet(tuple(doc["letters"]))
    from .families import sr_family
    return sr_family(alpha, doc["s_letters"], doc["antidictionary"])


def antidict_to_json(D: AntiDictionary) -> str:
    return _dump({
        "format_version": 1,
        "letters": list(D.alphabet.letters),
        "words": sorted(w.text() for w in D.words),
    })


def antidict_from_json(text: str) -> AntiDictionary:
    doc = _load(text)
    _need(doc, "letters", "words")
    return antidict(Alphabet(tuple(doc["letters"])), doc["words"])


def fg_family_to_json(fam: FGFamily) -> str:
    return _dump({
        "format_version": 1,
        "letters": list(fam.alphabet.letters),
        "sets": [sorted(s) for s in fam.sets],
    })


def fg_family_from_json(text: str) -> FGFamily:
    doc = _load(text)
    _need(doc, "letters", "sets")
    return FGFamily(Alphabet(tuple(doc["letters"])),
                    tuple(frozenset(s) for s in doc["sets"]))


def rabin_pairs_from_json(text: str):
    doc = _load(text)
    _need(doc, "letters", "pairs")
    alpha = Alphabet(tuple(doc["letters"]))
    pairs = [(tuple(p["u"]), tuple(p["v"])) for p in doc["pairs"]]
    return alpha, pairs
