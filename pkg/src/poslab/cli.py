"""Command-line front-end.

Subcommands: classify, compile (dpa|sr|rabin|fg), antidict (check|extend),
solve, mc, gadget, separator, oracle.  Exit codes: 0 success, 1 when a
check reports property violations, 2 on input errors (bad schema, unknown
subcommand, enumeration cap exceeded).

The environment variable POSLAB_CAP overrides the strategy-enumeration
budget; --seed fixes the oracle's random sampling; --threads is accepted
for forward compatibility (evaluation is currently single-threaded).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import algebra as alg
from . import atl, families, fixtures, formats, games
from .automata import (GenerationCapExceeded, dpa_parse, dpa_serialize,
                       dpa_to_wilke, dpa_up_membership)
from .words import Alphabet

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_INPUT = 2


def _budget() -> int:
    cap = os.environ.get("POSLAB_CAP")
    if cap is None:
        return games.DEFAULT_BUDGET
    try:
        return int(cap)
    except ValueError:
        raise formats.SchemaError("POSLAB_CAP must be an integer, got %r" % cap)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise formats.SchemaError("cannot read %r: %s" % (path, e))


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _load_objective(path: str) -> alg.WilkeAlgebra:
    text = _read(path)
    doc = json.loads(text)
    if "splus" in doc:
        return formats.algebra_from_json(text)
    if "transitions" in doc and "states" in doc:
        return dpa_to_wilke(dpa_parse(text))
    raise formats.SchemaError("%r is neither an algebra nor a DPA document" % path)


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, frozenset):
        return sorted(_jsonable(v) for v in value)
    return value


def cmd_classify(args) -> int:
    A = _load_objective(args.input)
    violations = alg.validate_algebra(A)
    if violations:
        _emit(_dump({"valid": False, "violations": violations}), args.output)
        return EXIT_FINDINGS
    report = alg.classify(A)
    doc = {"valid": True, "classification": report.summary(),
           "counterexamples": _jsonable(report.counterexamples)}
    _emit(_dump(doc), args.output)
    return EXIT_OK


def cmd_compile(args) -> int:
    if args.what == "dpa":
        A = dpa_to_wilke(dpa_parse(_read(args.input)))
        _emit(formats.algebra_to_json(A), args.output)
        return EXIT_OK
    if args.what == "sr":
        fam = formats.sr_family_from_json(_read(args.input))
        D = families.sr_to_dpa(fam)
        if args.to == "algebra":
            _emit(formats.algebra_to_json(dpa_to_wilke(D)), args.output)
        else:
            _emit(dpa_serialize(D), args.output)
        return EXIT_OK
    if args.what == "rabin":
        alpha, pairs = formats.rabin_pairs_from_json(_read(args.input))
        _emit(formats.algebra_to_json(families.rabin_family(alpha, pairs)),
              args.output)
        return EXIT_OK
    if args.what == "fg":
        fam = formats.fg_family_from_json(_read(args.input))
        _emit(formats.algebra_to_json(families.fg_to_algebra(fam)), args.output)
        return EXIT_OK
    raise formats.SchemaError("unknown compile target %r" % args.what)


def cmd_antidict(args) -> int:
    D = formats.antidict_from_json(_read(args.input))
    if args.action == "check":
        ordered, witness = families.antidict_totally_ordered(D)
        _emit(_dump({"minimal_words": sorted(w.text() for w in D.words),
                     "totally_ordered": ordered,
                     "witness": _jsonable(witness)}), args.output)
        return EXIT_OK
    if args.action == "extend":
        out = families.antidict_extend_letter(D, args.letter)
        _emit(formats.antidict_to_json(out), args.output)
        return EXIT_OK
    raise formats.SchemaError("unknown antidict action %r" % args.action)


def _edge_doc(e: games.Edge) -> dict:
    doc = {"src": e.src, "tgt": e.tgt}
    if e.letter is not None:
        doc["letter"] = e.letter
    return doc


def _monitor_from_spec(spec: str, alphabet: Alphabet) -> games.Monitor:
    if spec == "prev":
        return games.previous_label_monitor(alphabet)
    if spec.startswith("step:"):
        return games.step_monitor(int(spec.split(":", 1)[1]), alphabet)
    raise formats.SchemaError("unknown monitor spec %r (use prev or step:<k>)" % spec)


def cmd_solve(args) -> int:
    arena = formats.arena_from_json(_read(args.arena))
    problems = games.validate_arena(arena)
    if problems:
        _emit(_dump({"valid": False, "violations": problems}), args.output)
        return EXIT_FINDINGS
    A = _load_objective(args.objective)
    budget = _budget()
    doc = {"mode": args.mode, "players": {}}
    if args.mode == "positional":
        for player in (1, 2):
            sol = games.solve_positional(arena, A, player, budget)
            doc["players"][str(player)] = {
                v: {"wins": wins,
                    "strategy": ({n: _edge_doc(e) for n, e in strat.moves.items()}
                                 if strat else None)}
                for v, (wins, strat) in sol.items()}
    else:
        monitor = _monitor_from_spec(args.mode.split(":", 1)[1], A.alphabet)
        sol = games.solve_monitor_memory(arena, A, monitor, player=1, budget=budget)
        doc["players"]["1"] = {
            v: {"wins": wins,
                "strategy": ({"%s@%s" % (n, m): _edge_doc(e)
                              for (n, m), e in strat.moves.items()}
                             if strat else None)}
            for v, (wins, strat) in sol.items()}
    _emit(_dump(doc), args.output)
    return EXIT_OK


def cmd_mc(args) -> int:
    G = formats.cgs_from_json(_read(args.cgs))
    f = atl.parse_formula(args.formula)
    states = args.states.split(",") if args.states else None
    sat = atl.model_check(G, f, semantics=args.semantics, budget=_budget(),
                          states=states)
    _emit(_dump({"semantics": args.semantics, "satisfying": sorted(sat)}),
          args.output)
    return EXIT_OK


def cmd_gadget(args) -> int:
    params = {}
    for item in args.set or []:
        if "=" not in item:
            raise formats.SchemaError("--set expects key=value, got %r" % item)
        k, v = item.split("=", 1)
        params[k] = v
    for k in ("j", "k"):
        if k in params:
            params[k] = int(params[k])
    arena, starts = games.build_gadget(args.kind, params)
    doc = json.loads(formats.arena_to_json(arena))
    doc["starts"] = list(starts)
    _emit(_dump(doc), args.output)
    return EXIT_OK


def cmd_separator(args) -> int:
    fix = atl.build_separator(args.kind, args.depth)
    entries = []
    for entry in fix.entries:
        entries.append({
            "name": entry.name,
            "root": entry.root,
            "expected": entry.expected,
            "cgs": json.loads(formats.cgs_to_json(entry.cgs)),
        })
    doc = {"format_version": 1, "kind": fix.kind, "depth": fix.depth,
           "formula": atl.serialize_formula(fix.formula) if fix.formula else None,
           "entries": entries}
    _emit(_dump(doc), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    """Brute-force cross-checks over the shipped fixture corpus."""
    from .oracles import closure_conditions_by_words

    rng = random.Random(args.seed)
    findings = []

    for name, A in fixtures.corpus().items():
        if len(A.alphabet) != 2:
            continue
        for mode in ("edge",):
            got = alg.check_closure_conditions(A, mode)[:2]
            want = closure_conditions_by_words(A, max_len=3)
            if tuple(got) != want:
                findings.append("closure conditions disagree on %s: algebra=%s words=%s"
                                % (name, got, want))

    for name, D in (("gfa", fixtures.gfa_dpa()),
                    ("aw_or_bw", fixtures.aw_or_bw_dpa()),
                    ("abc_cycle", fixtures.abc_cycle_dpa())):
        A = dpa_to_wilke(D)
        for _ in range(200):
            w = fixtures.random_up_word(rng, D.alphabet)
            if dpa_up_membership(D, w) != alg.up_membership(A, w):
                findings.append("dpa/algebra membership disagree on %s at %r" % (name, w))
                break

    fam = families.sr_family(fixtures.AB, ("a",), ("bb",))
    D = families.sr_to_dpa(fam)
    for _ in range(300):
        w = fixtures.random_up_word(rng, fixtures.AB)
        if dpa_up_membership(D, w) != families.sr_membership(fam, w):
            findings.append("sr automaton disagrees with sr membership at %r" % (w,))
            break

    doc = {"seed": args.seed, "checks_failed": findings}
    _emit(_dump(doc), args.output)
    return EXIT_OK if not findings else EXIT_FINDINGS


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="poslab")
    p.add_argument("--threads", type=int, default=1,
                   help="reserved; evaluation is single-threaded")
    p.add_argument("-o", "--output", default=None, help="write output to a file")
    sub = p.add_subparsers(dest="command")

    c = sub.add_parser("classify", help="positionality report for an algebra or DPA")
    c.add_argument("input")

    c = sub.add_parser("compile", help="compile dpa|sr|rabin|fg into algebra/DPA JSON")
    c.add_argument("what", choices=["dpa", "sr", "rabin", "fg"])
    c.add_argument("input")
    c.add_argument("--to", choices=["dpa", "algebra"], default="dpa",
                   help="output form for 'compile sr'")

    c = sub.add_parser("antidict", help="check or extend an anti-dictionary")
    c.add_argument("action", choices=["check", "extend"])
    c.add_argument("input")
    c.add_argument("letter", nargs="?", default=None)

    c = sub.add_parser("solve", help="solve an arena against an objective")
    c.add_argument("arena")
    c.add_argument("--objective", required=True)
    c.add_argument("--mode", default="positional",
                   help="positional | monitor:prev | monitor:step:<k>")

    c = sub.add_parser("mc", help="model-check a coalition formula on a CGS")
    c.add_argument("cgs")
    c.add_argument("formula")
    c.add_argument("--semantics", choices=["positional", "bipositional"],
                   default="positional")
    c.add_argument("--states", default=None,
                   help="comma-separated states to decide (default: all)")

    c = sub.add_parser("gadget", help="emit an appendix gadget arena")
    c.add_argument("kind", choices=["cond1", "cond2", "omega_cf", "residual_order"])
    c.add_argument("--set", action="append",
                   help="word or integer parameter, e.g. --set v=a --set j=2")

    c = sub.add_parser("separator", help="emit a separator model family")
    c.add_argument("kind", choices=["gffg", "gu", "gfgf"])
    c.add_argument("depth", type=int)

    c = sub.add_parser("oracle", help="run brute-force cross-checks on the corpus")
    c.add_argument("--seed", type=int, default=0)
    return p


def dispatch(argv) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        sys.stderr.write("error: --threads must be positive\n")
        return EXIT_INPUT
    handlers = {
        "classify": cmd_classify,
        "compile": cmd_compile,
        "antidict": cmd_antidict,
        "solve": cmd_solve,
        "mc": cmd_mc,
        "gadget": cmd_gadget,
        "separator": cmd_separator,
        "oracle": cmd_oracle,
    }
    if args.command is None:
        parser.print_help()
        return EXIT_INPUT
    if args.command == "antidict" and args.action == "extend" and not args.letter:
        sys.stderr.write("error: antidict extend needs a letter argument\n")
        return EXIT_INPUT
    try:
        return handlers[args.command](args)
    except (formats.SchemaError, ValueError, KeyError) as e:
        sys.stderr.write("input error: %s\n" % e)
        return EXIT_INPUT
    except GenerationCapExceeded as e:
        sys.stderr.write("cap exceeded: %s\n" % e)
        return EXIT_INPUT
    except games.EnumerationCapExceeded as e:
        sys.stderr.write("cap exceeded: %s\n" % e)
        return EXIT_INPUT


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
