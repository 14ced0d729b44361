"""Command-line front door.

Exit codes: 0 success / positive verdict, 1 negative verdict on yes-no
queries, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys

from . import bd, definability, laws, matrix as mx, presets, proof, syntax
from .errors import FdekitError

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _get_matrix(spec: str) -> mx.Matrix:
    if spec in presets.PRESET_NAMES:
        return presets.preset(spec)
    if os.path.exists(spec):
        return mx.load_matrix(spec)
    raise FdekitError(
        f"{spec!r} is neither a preset ({', '.join(presets.PRESET_NAMES)}) "
        "nor a matrix file")


def _parse_formula(text: str, m: mx.Matrix) -> syntax.Formula:
    return syntax.parse(text, m.signature)


def _parse_side(text: str, m: mx.Matrix) -> list:
    text = text.strip()
    if not text:
        return []
    return [_parse_formula(part, m) for part in text.split(",")]


def _parse_sequent(text: str, m: mx.Matrix):
    if "|-" not in text:
        raise FdekitError("sequent syntax is 'Gamma |- Delta'")
    left, right = text.split("|-", 1)
    return _parse_side(left, m), _parse_side(right, m)


def _fmt_assignment(a: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in sorted(a.items()))


def _emit(args, data: dict, text: str) -> None:
    print(json.dumps(data) if args.json else text)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_parse(args) -> int:
    m = _get_matrix(args.matrix)
    f = _parse_formula(args.formula, m)
    printed = syntax.print_formula(f)
    _emit(args, {"formula": printed}, printed)
    return EXIT_OK


def cmd_eval(args) -> int:
    m = _get_matrix(args.matrix)
    f = _parse_formula(args.formula, m)
    assignment = {}
    for item in args.assign or []:
        name, _, value = item.partition("=")
        if value not in m.values:
            raise FdekitError(f"{value!r} is not a truth value of the matrix")
        assignment[name] = value
    value = mx.evaluate(m, f, assignment)
    _emit(args, {"value": value}, value)
    return EXIT_OK


def cmd_entails(args) -> int:
    m = _get_matrix(args.matrix)
    gamma, delta = _parse_sequent(args.sequent, m)
    counter = mx.consequence_countermodel(m, gamma, delta)
    if counter is None:
        _emit(args, {"entails": True}, "YES")
        return EXIT_OK
    _emit(args, {"entails": False, "countermodel": counter},
          f"NO  countermodel: {_fmt_assignment(counter)}")
    return EXIT_NO


def cmd_equiv(args) -> int:
    m = _get_matrix(args.matrix)
    a = _parse_formula(args.lhs, m)
    b = _parse_formula(args.rhs, m)
    counter = mx.equivalence_countermodel(m, a, b)
    if counter is None:
        _emit(args, {"equivalent": True}, "YES")
        return EXIT_OK
    _emit(args, {"equivalent": False, "countermodel": counter},
          f"NO  countermodel: {_fmt_assignment(counter)}")
    return EXIT_NO


def cmd_synonymous(args) -> int:
    m = _get_matrix(args.matrix)
    a = _parse_formula(args.lhs, m)
    b = _parse_formula(args.rhs, m)
    verdict = definability.synonymous(m, a, b)
    _emit(args, {"synonymous": verdict}, "YES" if verdict else "NO")
    return EXIT_OK if verdict else EXIT_NO


def cmd_definable(args) -> int:
    m = _get_matrix(args.matrix)
    allowed = args.using.split(",") if args.using else []
    verdict = definability.definable(m, args.target, allowed)
    if verdict.definable:
        witness = syntax.print_formula(verdict.witness)
        _emit(args, {"definable": True, "witness": witness},
              f"DEFINABLE  witness: {witness}")
        return EXIT_OK
    _emit(args, {"definable": False, "reason": verdict.reason},
          "NOT DEFINABLE")
    return EXIT_NO


def cmd_interdef(args) -> int:
    common = _get_matrix(args.common)
    a = presets.handle(args.a, common)
    b = presets.handle(args.b, common)
    verdict = definability.interdefinable(a, b, common)
    _emit(args, {"interdefinable": verdict},
          "INTERDEFINABLE" if verdict else "NOT INTERDEFINABLE")
    return EXIT_OK if verdict else EXIT_NO


def cmd_clone(args) -> int:
    m = _get_matrix(args.matrix)
    gens = args.using.split(",") if args.using else list(
        m.signature.connectives)
    funcs = sorted(
        mx.term_functions(m, args.arity, gens),
        key=lambda tf: tf.table,
    )
    if args.json:
        print(json.dumps([
            {"table": list(tf.table),
             "witness": syntax.print_formula(tf.witness)}
            for tf in funcs
        ]))
    else:
        print(f"{len(funcs)} term functions of arity {args.arity}")
        for tf in funcs:
            print(f"  {','.join(tf.table)}  <-  "
                  f"{syntax.print_formula(tf.witness)}")
    return EXIT_OK


def cmd_prove(args) -> int:
    m = presets.preset("bd-impl-bot")
    gamma, delta = _parse_sequent(args.sequent, m)
    seq = proof.Sequent.of(gamma, delta)
    d = proof.prove(seq, args.system)
    if d is None:
        _emit(args, {"proved": False}, "NOT PROVED")
        return EXIT_NO
    if args.json:
        print(json.dumps(proof.derivation_to_json(d, args.system)))
    else:
        print("PROVED")
        _print_derivation(d)
    return EXIT_OK


def _print_derivation(d: proof.Derivation, indent: int = 0) -> None:
    pad = "  " * indent
    principal = ("" if d.principal is None
                 else f"  [{syntax.print_formula(d.principal)}]")
    print(f"{pad}{d.rule}{principal}: {d.conclusion}")
    for p in d.premises:
        _print_derivation(p, indent + 1)


def cmd_check(args) -> int:
    m = presets.preset("bd-impl-bot")
    with open(args.file) if args.file != "-" else sys.stdin as fh:
        data = json.load(fh)
    d, system = proof.derivation_from_json(
        data, lambda s: _parse_formula(s, m))
    ok, path = proof.check_with_path(d, system)
    if ok:
        _emit(args, {"valid": True}, "VALID")
        return EXIT_OK
    _emit(args, {"valid": False, "path": path},
          f"INVALID  first offending node at path {path}")
    return EXIT_NO


def cmd_derived_rule(args) -> int:
    verdict = proof.derived_rule_check(args.rule, args.system)
    _emit(args, {"derived": verdict}, "DERIVED" if verdict else "NOT DERIVED")
    return EXIT_OK if verdict else EXIT_NO


def cmd_count_sr(args) -> int:
    count = bd.count_strongly_regular()
    _emit(args, {"count": count}, str(count))
    return EXIT_OK


def cmd_sr_decode(args) -> int:
    m = bd.sr_decode(args.index)
    print(json.dumps(mx.matrix_to_json(m), indent=None if args.json else 2))
    return EXIT_OK


def cmd_sr_encode(args) -> int:
    m = mx.load_matrix(args.file)
    index = bd.sr_encode(m)
    _emit(args, {"index": index}, str(index))
    return EXIT_OK


def cmd_laws_filter(args) -> int:
    selected = ([laws.law_by_name(name) for name in args.law]
                if args.law else list(laws.TABLE2_LAWS))
    result = laws.filter_strongly_regular(selected)
    if result.is_all:
        _emit(args, {"all": True, "count": result.count}, "all")
        return EXIT_OK
    if args.json:
        payload: dict = {"all": False, "count": result.count}
        if result.count <= 4096:
            payload["indices"] = list(result.indices())
        print(json.dumps(payload))
    else:
        print(f"{result.count} surviving matrices")
        if result.count <= 64:
            for index in result.indices():
                print(f"  {index}")
        if result.count == 1:
            (index,) = result.indices()
            print(json.dumps(mx.matrix_to_json(bd.sr_decode(index)), indent=2))
    return EXIT_OK


# ---------------------------------------------------------------------------
# repro: the full checklist of reproducible claims


def _repro_items():
    from .syntax import parse

    def syn(matrix_name, lhs, rhs):
        m = presets.preset(matrix_name)
        return definability.synonymous(
            m, parse(lhs, m.signature), parse(rhs, m.signature))

    yield ("synonymity: delta p == ~(p -> bot) [bd-impl-bot-delta]",
           lambda: syn("bd-impl-bot-delta", "delta p", "~(p -> bot)"))
    yield ("synonymity: circ p == ((p & ~p) -> bot) & ~((p | ~p) -> bot) "
           "[bd-impl-bot-circ]",
           lambda: syn("bd-impl-bot-circ", "circ p",
                       "((p & ~p) -> bot) & ~((p | ~p) -> bot)"))
    yield ("synonymity: cons p == (p & ~p) -> bot [bd-impl-bot-cons]",
           lambda: syn("bd-impl-bot-cons", "cons p", "(p & ~p) -> bot"))
    yield ("synonymity: det p == ~((p | ~p) -> bot) [bd-impl-bot-det]",
           lambda: syn("bd-impl-bot-det", "det p", "~((p | ~p) -> bot)"))
    yield ("synonymity: p1 -> p2 == ~(delta p1) | p2 [bd-impl-bot-delta]",
           lambda: syn("bd-impl-bot-delta", "p1 -> p2", "~(delta p1) | p2"))
    yield ("synonymity: bot == delta p & ~(delta p) [bd-impl-bot-delta]",
           lambda: syn("bd-impl-bot-delta", "bot", "delta p & ~(delta p)"))
    yield ("synonymity: cons p == ~(delta (p & ~p)) [bd-delta-cons-det]",
           lambda: syn("bd-delta-cons-det", "cons p", "~(delta (p & ~p))"))
    yield ("synonymity: det p == delta (p | ~p) [bd-delta-cons-det]",
           lambda: syn("bd-delta-cons-det", "det p", "delta (p | ~p)"))
    yield ("synonymity: delta p == (p | ~(cons p)) & det p "
           "[bd-delta-cons-det]",
           lambda: syn("bd-delta-cons-det", "delta p",
                       "(p | ~(cons p)) & det p"))
    yield ("synonymity: circ p == cons p & det p [bd-cons-det-circ]",
           lambda: syn("bd-cons-det-circ", "circ p", "cons p & det p"))
    yield ("synonymity: bot == B & N [bd-impl-b-n-bot]",
           lambda: syn("bd-impl-b-n-bot", "bot", "B & N"))

    classical = ["not", "and", "or", "impl", "bot"]
    yield ("conflation not definable from the classical connectives",
           lambda: not definability.definable(
               presets.preset("bd-impl-bot-confl"), "confl",
               classical).definable)
    yield ("preservation criterion rejects conflation",
           lambda: not definability.bd_preservation_criterion(bd.CONFL))
    yield ("preservation criterion accepts circ and the whole heart family",
           lambda: definability.bd_preservation_criterion(bd.CIRC) and all(
               definability.bd_preservation_criterion(bd.heart(v))
               for r in range(5)
               for v in itertools.combinations(bd.VALUES, r)))

    def interdef(a, b, common):
        m = presets.preset(common)
        return definability.interdefinable(
            presets.handle(a, m), presets.handle(b, m), m)

    def one_way(a, b, common):
        m = presets.preset(common)
        return definability.logic_definable_in(
            presets.handle(a, m), presets.handle(b, m), m)

    yield ("interdefinable: bd-impl-bot ~ bd-delta",
           lambda: interdef("bd-impl-bot", "bd-delta", "bd-impl-bot-delta"))
    yield ("interdefinable: bd-delta ~ bd-cons-det",
           lambda: interdef("bd-delta", "bd-cons-det", "bd-delta-cons-det"))
    yield ("not interdefinable: bd-cons-det !~ bd-circ",
           lambda: not interdef("bd-cons-det", "bd-circ", "bd-cons-det-circ"))
    yield ("not interdefinable: bd-impl-bot !~ bd-confl",
           lambda: not interdef("bd-impl-bot", "bd-confl",
                                "bd-impl-bot-confl"))
    yield ("bd-circ definable in bd-impl-bot",
           lambda: one_way("bd-circ", "bd-impl-bot", "bd-impl-bot-circ"))
    yield ("bd-impl-bot definable in bd-b-n",
           lambda: one_way("bd-impl-bot", "bd-b-n", "bd-impl-b-n-bot"))

    yield ("strongly regular family counts 2^38",
           lambda: bd.count_strongly_regular() == 2 ** 38)
    yield ("bd-impl-bot is strongly regular and encode/decode round-trips",
           lambda: bd.sr_decode(bd.sr_encode(presets.preset("bd-impl-bot")))
           == presets.preset("bd-impl-bot"))

    def sampled_regular():
        rng = random.Random(7)
        p = syntax.Var("p")
        for _ in range(100):
            m = bd.sr_decode(rng.randrange(2 ** 38))
            if not bd.is_strongly_regular(m):
                return False
            if mx.consequence(m, [p], [syntax.neg(p)]):
                return False
            if mx.consequence(m, [syntax.neg(p)], [p]):
                return False
        return True

    yield ("100 sampled indices decode to strongly regular matrices "
           "refuting p |- ~p and ~p |- p", sampled_regular)

    yield ("all 13 distinguishing laws hold in bd-impl-bot",
           lambda: all(laws.holds(presets.preset("bd-impl-bot"), law)
                       for law in laws.TABLE2_LAWS))
    yield ("neg-as-impl, and-contradiction, or-excluded-middle fail in "
           "bd-impl-bot (countermodel A=b)",
           lambda: all(
               laws.holds_countermodel(presets.preset("bd-impl-bot"), law)
               == {"A": "b"} for law in laws.FAILING_CLASSICAL_LAWS))
    yield ("false-implies and true-implies hold even in bd-impl-bot",
           lambda: all(laws.holds(presets.preset("bd-impl-bot"), law)
                       for law in laws.HOLDING_CLASSICAL_LAWS))

    def filter_result():
        res = laws.filter_strongly_regular(laws.TABLE2_LAWS)
        idx = bd.sr_encode(presets.preset("bd-impl-bot"))
        return res.count == 81 and idx in res

    yield ("law filter leaves 81 family members, bd-impl-bot among them "
           "(the two implication laws leave impl's b/n rows underdetermined)",
           filter_result)

    def sequents():
        m = presets.preset("bd-impl-bot")
        p = syntax.Var("p")
        absurd = proof.Sequent.of([p, syntax.neg(p)], [syntax.BOT])
        trivial = proof.Sequent.of([], [syntax.disj(p, syntax.neg(p))])
        return (
            proof.prove(absurd, proof.BD) is None
            and proof.prove(trivial, proof.BD) is None
            and proof.prove(absurd, proof.CL) is not None
            and proof.prove(trivial, proof.CL) is not None
            and mx.consequence_countermodel(
                m, [p, syntax.neg(p)], [syntax.BOT]) == {"p": "b"}
            and mx.consequence_countermodel(
                m, [], [syntax.disj(p, syntax.neg(p))]) == {"p": "n"}
        )

    yield ("absurdity and triviality fail in BD (countermodels b, n) "
           "and hold classically", sequents)
    yield ("all negation-prefixed rules are derived rules classically",
           lambda: all(
               proof.derived_rule_check(r, proof.CL)
               for r in ("not-bot-R", "not-not-L", "not-not-R", "not-and-L",
                         "not-and-R", "not-or-L", "not-or-R", "not-impl-L",
                         "not-impl-R")))

    def submatrices():
        base = presets.preset("bd")
        p = syntax.Var("p")
        q = syntax.Var("q")
        em = syntax.disj(p, syntax.neg(p))
        contradiction = [p, syntax.neg(p)]
        lp, k3, cl = (presets.preset(n) for n in ("lp", "k3", "cl"))
        return (
            mx.is_simple(base)
            and not mx.consequence(base, [], [em])
            and mx.consequence(lp, [], [em])
            and not mx.consequence(k3, [], [em])
            and mx.consequence(cl, [], [em])
            and not mx.consequence(lp, contradiction, [q])
            and mx.consequence(k3, contradiction, [q])
            and mx.consequence(cl, contradiction, [q])
        )

    yield ("bd is simple; LP/K3/CL submatrices witness the strict "
           "consequence inclusions", submatrices)


def cmd_repro(args) -> int:
    results = []
    for name, thunk in _repro_items():
        ok = bool(thunk())
        results.append({"item": name, "pass": ok})
        if not args.json:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
    if args.json:
        print(json.dumps(results))
    return EXIT_OK if all(r["pass"] for r in results) else EXIT_NO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdekit",
        description="Workbench for Belnap-Dunn logic and its expansions")
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("parse", cmd_parse, help="parse and reprint a formula")
    p.add_argument("--matrix", default="bd-impl-bot")
    p.add_argument("formula")

    p = add("eval", cmd_eval, help="evaluate a formula under an assignment")
    p.add_argument("--matrix", default="bd-impl-bot")
    p.add_argument("--assign", action="append", metavar="VAR=VALUE")
    p.add_argument("formula")

    p = add("entails", cmd_entails, help="decide a consequence query")
    p.add_argument("--matrix", default="bd-impl-bot")
    p.add_argument("sequent", help="'Gamma |- Delta', comma-separated")

    p = add("equiv", cmd_equiv, help="decide induced equivalence")
    p.add_argument("--matrix", default="bd-impl-bot")
    p.add_argument("lhs")
    p.add_argument("rhs")

    p = add("synonymous", cmd_synonymous, help="decide synonymity")
    p.add_argument("--matrix", default="bd-impl-bot")
    p.add_argument("lhs")
    p.add_argument("rhs")

    p = add("definable", cmd_definable,
            help="is a connective definable from others?")
    p.add_argument("--matrix", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--using", required=True, metavar="NAMES")

    p = add("interdef", cmd_interdef, help="interdefinability of two logics")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--common", required=True)

    p = add("clone", cmd_clone, help="list term functions of an arity")
    p.add_argument("--matrix", required=True)
    p.add_argument("--arity", type=int, default=1)
    p.add_argument("--using", metavar="NAMES")

    p = add("prove", cmd_prove, help="backward proof search")
    p.add_argument("--system", choices=[proof.BD, proof.CL], default=proof.BD)
    p.add_argument("sequent")

    p = add("check", cmd_check, help="check a derivation JSON file")
    p.add_argument("file", help="path or - for stdin")

    p = add("derived-rule", cmd_derived_rule,
            help="is a negation rule derivable?")
    p.add_argument("--system", choices=[proof.BD, proof.CL], default=proof.CL)
    p.add_argument("rule")

    add("count-sr", cmd_count_sr, help="size of the strongly regular family")

    p = add("sr-decode", cmd_sr_decode, help="family index to matrix JSON")
    p.add_argument("index", type=int)

    p = add("sr-encode", cmd_sr_encode, help="matrix JSON file to family index")
    p.add_argument("file")

    p = add("laws-filter", cmd_laws_filter,
            help="family members satisfying the chosen laws")
    p.add_argument("--law", action="append",
                   help="law name; repeatable; default: all 13")

    add("repro", cmd_repro, help="run the full reproducibility checklist")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    try:
        return args.fn(args)
    except (FdekitError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
