"""Sequent calculus for the implication-falsity expansion, with the
two-rule classical extension, a derivation checker, and cut-free backward
proof search.

Sequents are pairs of finite formula sets over {not, and, or, impl, bot}.
Backward search keeps the principal formula in the context, so premises
only ever grow within the subformula-and-single-negation closure of the
goal; termination follows without any depth bound.  The checker also
accepts derivations that drop the principal formula, and accepts Cut.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import UnknownNameError
from .syntax import App, Formula, Var, formula_key, neg, print_formula

BD = "BD"
CL = "CL"

RULE_IDS = (
    "Id", "Cut",
    "and-L", "and-R", "or-L", "or-R", "impl-L", "impl-R",
    "bot-L", "not-bot-R",
    "not-not-L", "not-not-R", "not-and-L", "not-and-R",
    "not-or-L", "not-or-R", "not-impl-L", "not-impl-R",
    "not-L", "not-R",
)

CLASSICAL_ONLY_RULES = ("not-L", "not-R")

_BOT = App("bot", ())
_NOT_BOT = App("not", (_BOT,))


@dataclass(frozen=True)
class Sequent:
    left: frozenset
    right: frozenset

    @staticmethod
    def of(left: Iterable[Formula], right: Iterable[Formula]) -> "Sequent":
        return Sequent(frozenset(left), frozenset(right))

    def key(self):
        return (
            tuple(sorted(self.left, key=formula_key)),
            tuple(sorted(self.right, key=formula_key)),
        )

    def __str__(self):
        fmt = lambda side: ", ".join(
            print_formula(f) for f in sorted(side, key=formula_key))
        return f"{fmt(self.left)} |- {fmt(self.right)}"


@dataclass(frozen=True)
class Derivation:
    conclusion: Sequent
    rule: str
    principal: Optional[Formula] = None
    premises: tuple["Derivation", ...] = field(default=())


def _match(f: Formula, conn: str) -> Optional[tuple]:
    if isinstance(f, App) and f.conn == conn:
        return f.args
    return None


def _neg_match(f: Formula, conn: str) -> Optional[tuple]:
    inner = _match(f, "not")
    if inner is not None:
        return _match(inner[0], conn)
    return None


def _axiom(seq: Sequent, system: str) -> Optional[Derivation]:
    common = seq.left & seq.right
    if common:
        principal = min(common, key=formula_key)
        return Derivation(seq, "Id", principal)
    if _BOT in seq.left:
        return Derivation(seq, "bot-L")
    if _NOT_BOT in seq.right:
        return Derivation(seq, "not-bot-R")
    return None


def _applications(seq: Sequent, system: str) -> Iterator[tuple]:
    """Backward rule applications (rule, principal, premises), keeping the
    principal in the context; single-premise rules first."""
    left = sorted(seq.left, key=formula_key)
    right = sorted(seq.right, key=formula_key)
    l, r = seq.left, seq.right

    def s(new_left=None, new_right=None):
        return Sequent(
            l | frozenset(new_left or ()), r | frozenset(new_right or ()))

    single: list[tuple] = []
    double: list[tuple] = []
    for p in left:
        if (args := _match(p, "and")) is not None:
            single.append(("and-L", p, (s(new_left=args),)))
        elif (args := _match(p, "or")) is not None:
            double.append(("or-L", p,
                           (s(new_left=(args[0],)), s(new_left=(args[1],)))))
        elif (args := _match(p, "impl")) is not None:
            double.append(("impl-L", p,
                           (s(new_right=(args[0],)), s(new_left=(args[1],)))))
        elif (args := _neg_match(p, "not")) is not None:
            single.append(("not-not-L", p, (s(new_left=args),)))
        elif (args := _neg_match(p, "and")) is not None:
            double.append(("not-and-L", p,
                           (s(new_left=(neg(args[0]),)),
                            s(new_left=(neg(args[1]),)))))
        elif (args := _neg_match(p, "or")) is not None:
            single.append(("not-or-L", p,
                           (s(new_left=(neg(args[0]), neg(args[1]))),)))
        elif (args := _neg_match(p, "impl")) is not None:
            single.append(("not-impl-L", p,
                           (s(new_left=(args[0], neg(args[1]))),)))
    for p in right:
        if (args := _match(p, "and")) is not None:
            double.append(("and-R", p,
                           (s(new_right=(args[0],)), s(new_right=(args[1],)))))
        elif (args := _match(p, "or")) is not None:
            single.append(("or-R", p, (s(new_right=args),)))
        elif (args := _match(p, "impl")) is not None:
            single.append(("impl-R", p,
                           (s(new_left=(args[0],), new_right=(args[1],)),)))
        elif (args := _neg_match(p, "not")) is not None:
            single.append(("not-not-R", p, (s(new_right=args),)))
        elif (args := _neg_match(p, "and")) is not None:
            single.append(("not-and-R", p,
                           (s(new_right=(neg(args[0]), neg(args[1]))),)))
        elif (args := _neg_match(p, "or")) is not None:
            double.append(("not-or-R", p,
                           (s(new_right=(neg(args[0]),)),
                            s(new_right=(neg(args[1]),)))))
        elif (args := _neg_match(p, "impl")) is not None:
            double.append(("not-impl-R", p,
                           (s(new_right=(args[0],)),
                            s(new_right=(neg(args[1]),)))))
    classical: list[tuple] = []
    if system == CL:
        # applicable to every negation, including ones the negation-prefixed
        # rules also handle; tried last so they only matter when those rules
        # are unavailable (restricted searches) or fail
        for p in left:
            if (args := _match(p, "not")) is not None:
                classical.append(("not-L", p, (s(new_right=args),)))
        for p in right:
            if (args := _match(p, "not")) is not None:
                classical.append(("not-R", p, (s(new_left=args),)))
    yield from single
    yield from double
    yield from classical


class Prover:
    """Backward proof search with a persistent provability memo.

    Failures are sound to memoize globally because the search is a pure
    function of the sequent; successes are memoized as booleans and the
    derivation is rebuilt on demand.
    """

    def __init__(self, system: str, extra_axioms: Iterable[Sequent] = (),
                 enabled_rules: Optional[frozenset] = None):
        if system not in (BD, CL):
            raise UnknownNameError(f"unknown proof system {system!r}")
        self.system = system
        self.extra_axioms = tuple(extra_axioms)
        self.enabled_rules = enabled_rules
        self.memo: dict = {}

    def _closes(self, seq: Sequent) -> Optional[Derivation]:
        d = _axiom(seq, self.system)
        if d is not None and self._enabled(d.rule):
            return d
        for ax in self.extra_axioms:
            if ax.left <= seq.left and ax.right <= seq.right:
                return Derivation(seq, "Axiom")
        return None

    def _enabled(self, rule: str) -> bool:
        return self.enabled_rules is None or rule in self.enabled_rules

    def _axiom_cuts(self, seq: Sequent) -> Iterator[tuple]:
        # An extra axiom G0 |- D0 yields the goal once every member of G0
        # is provable on the right and every member of D0 on the left
        # (a multicut against the weakened axiom).
        for ax in self.extra_axioms:
            premises = tuple(
                [Sequent(seq.left, seq.right | {a}) for a in ax.left]
                + [Sequent(seq.left | {b}, seq.right) for b in ax.right]
            )
            if premises:
                yield ("Axiom", None, premises)

    def provable(self, seq: Sequent) -> bool:
        key = seq.key()
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if self._closes(seq) is not None:
            self.memo[key] = True
            return True
        result = False
        apps = list(_applications(seq, self.system))
        apps.extend(self._axiom_cuts(seq))
        for rule, _principal, premises in apps:
            if not self._enabled(rule) and rule != "Axiom":
                continue
            if any(p == seq for p in premises):
                continue
            if all(self.provable(p) for p in premises):
                result = True
                break
        self.memo[key] = result
        return result

    def derivation(self, seq: Sequent) -> Optional[Derivation]:
        if not self.provable(seq):
            return None
        d = self._closes(seq)
        if d is not None:
            return d
        apps = list(_applications(seq, self.system))
        apps.extend(self._axiom_cuts(seq))
        for rule, principal, premises in apps:
            if not self._enabled(rule) and rule != "Axiom":
                continue
            if any(p == seq for p in premises):
                continue
            if all(self.provable(p) for p in premises):
                return Derivation(
                    seq, rule, principal,
                    tuple(self.derivation(p) for p in premises))
        raise AssertionError("provable sequent lost its proof")


def prove(seq: Sequent, system: str) -> Optional[Derivation]:
    """Cut-free backward search; None when the search space is exhausted."""
    return Prover(system).derivation(seq)


# ---------------------------------------------------------------------------
# Derivation checking

def _rule_spec(rule: str, principal: Formula):
    """Per-premise additions (left-adds, right-adds) for a logical rule."""
    args = principal.args if isinstance(principal, App) else ()
    inner = args[0].args if args and isinstance(args[0], App) else ()
    if rule == "and-L":
        return "left", [(tuple(args), ())]
    if rule == "and-R":
        return "right", [((), (args[0],)), ((), (args[1],))]
    if rule == "or-L":
        return "left", [((args[0],), ()), ((args[1],), ())]
    if rule == "or-R":
        return "right", [((), tuple(args))]
    if rule == "impl-L":
        return "left", [((), (args[0],)), ((args[1],), ())]
    if rule == "impl-R":
        return "right", [((args[0],), (args[1],))]
    if rule == "not-not-L":
        return "left", [(tuple(inner), ())]
    if rule == "not-not-R":
        return "right", [((), tuple(inner))]
    if rule == "not-and-L":
        return "left", [((neg(inner[0]),), ()), ((neg(inner[1]),), ())]
    if rule == "not-and-R":
        return "right", [((), (neg(inner[0]), neg(inner[1])))]
    if rule == "not-or-L":
        return "left", [((neg(inner[0]), neg(inner[1])), ())]
    if rule == "not-or-R":
        return "right", [((), (neg(inner[0]),)), ((), (neg(inner[1]),))]
    if rule == "not-impl-L":
        return "left", [((inner[0], neg(inner[1])), ())]
    if rule == "not-impl-R":
        return "right", [((), (inner[0],)), ((), (neg(inner[1]),))]
    if rule == "not-L":
        return "left", [((), tuple(args))]
    if rule == "not-R":
        return "right", [(tuple(args), ())]
    raise UnknownNameError(f"unknown rule {rule!r}")


def _shape_ok(rule: str, principal: Formula) -> bool:
    checks = {
        "and-L": ("and", False), "and-R": ("and", False),
        "or-L": ("or", False), "or-R": ("or", False),
        "impl-L": ("impl", False), "impl-R": ("impl", False),
        "not-not-L": ("not", True), "not-not-R": ("not", True),
        "not-and-L": ("and", True), "not-and-R": ("and", True),
        "not-or-L": ("or", True), "not-or-R": ("or", True),
        "not-impl-L": ("impl", True), "not-impl-R": ("impl", True),
        "not-L": ("not", False), "not-R": ("not", False),
    }
    conn, negated = checks[rule]
    if negated:
        return _neg_match(principal, conn) is not None
    return _match(principal, conn) is not None


def _check_node(d: Derivation, system: str) -> bool:
    seq, rule, p = d.conclusion, d.rule, d.principal
    if rule in CLASSICAL_ONLY_RULES and system != CL:
        return False
    if rule == "Id":
        ok = (p in seq.left and p in seq.right) if p is not None \
            else bool(seq.left & seq.right)
        return ok and not d.premises
    if rule == "bot-L":
        return _BOT in seq.left and not d.premises
    if rule == "not-bot-R":
        return _NOT_BOT in seq.right and not d.premises
    if rule == "Cut":
        if p is None or len(d.premises) != 2:
            return False
        p1, p2 = (x.conclusion for x in d.premises)
        if p not in p1.right or p not in p2.left:
            return False
        left_ok = seq.left in (
            p1.left | p2.left, p1.left | (p2.left - {p}))
        right_ok = seq.right in (
            p1.right | p2.right, (p1.right - {p}) | p2.right)
        return left_ok and right_ok
    if rule not in RULE_IDS:
        return False
    if p is None or not _shape_ok(rule, p):
        return False
    side, premise_adds = _rule_spec(rule, p)
    if side == "left" and p not in seq.left:
        return False
    if side == "right" and p not in seq.right:
        return False
    if len(d.premises) != len(premise_adds):
        return False
    for sub, (ladd, radd) in zip(d.premises, premise_adds):
        keep = Sequent(seq.left | frozenset(ladd), seq.right | frozenset(radd))
        if side == "left":
            drop = Sequent((seq.left - {p}) | frozenset(ladd),
                           seq.right | frozenset(radd))
        else:
            drop = Sequent(seq.left | frozenset(ladd),
                           (seq.right - {p}) | frozenset(radd))
        if sub.conclusion not in (keep, drop):
            return False
    return True


def check_with_path(d: Derivation, system: str):
    """(ok, path) where path locates the first offending node as a list of
    premise indices from the root."""
    if not _check_node(d, system):
        return False, []
    for i, sub in enumerate(d.premises):
        ok, path = check_with_path(sub, system)
        if not ok:
            return False, [i] + path
    return True, None


def check(d: Derivation, system: str) -> bool:
    return check_with_path(d, system)[0]


# ---------------------------------------------------------------------------
# Derived rules

_A1 = Var("a1")
_A2 = Var("a2")


def _rule_instance(rule: str):
    """Schematic instance (premises, conclusion) with empty contexts."""
    empty = frozenset()

    def seq(left=(), right=()):
        return Sequent(frozenset(left), frozenset(right))

    instances = {
        "not-bot-R": ([], seq(right=[_NOT_BOT])),
        "not-not-L": ([seq(left=[_A1])], seq(left=[neg(neg(_A1))])),
        "not-not-R": ([seq(right=[_A1])], seq(right=[neg(neg(_A1))])),
        "not-and-L": ([seq(left=[neg(_A1)]), seq(left=[neg(_A2)])],
                      seq(left=[neg(App("and", (_A1, _A2)))])),
        "not-and-R": ([seq(right=[neg(_A1), neg(_A2)])],
                      seq(right=[neg(App("and", (_A1, _A2)))])),
        "not-or-L": ([seq(left=[neg(_A1), neg(_A2)])],
                     seq(left=[neg(App("or", (_A1, _A2)))])),
        "not-or-R": ([seq(right=[neg(_A1)]), seq(right=[neg(_A2)])],
                     seq(right=[neg(App("or", (_A1, _A2)))])),
        "not-impl-L": ([seq(left=[_A1, neg(_A2)])],
                       seq(left=[neg(App("impl", (_A1, _A2)))])),
        "not-impl-R": ([seq(right=[_A1]), seq(right=[neg(_A2)])],
                       seq(right=[neg(App("impl", (_A1, _A2)))])),
        "not-L": ([seq(right=[_A1])], seq(left=[neg(_A1)])),
        "not-R": ([seq(left=[_A1])], seq(right=[neg(_A1)])),
    }
    if rule not in instances:
        raise UnknownNameError(f"rule {rule!r} has no negation prefix")
    return instances[rule]


_BASE_RULES = frozenset(
    ["Id", "bot-L", "and-L", "and-R", "or-L", "or-R", "impl-L", "impl-R"])


def derived_rule_check(rule: str, system: str = CL) -> bool:
    """Is the rule's conclusion provable from its premises using only the
    positive rules (plus not-L/not-R in the classical system)?"""
    premises, conclusion = _rule_instance(rule)
    enabled = _BASE_RULES | (frozenset(CLASSICAL_ONLY_RULES)
                             if system == CL else frozenset())
    prover = Prover(system, extra_axioms=premises, enabled_rules=enabled)
    return prover.provable(conclusion)


# ---------------------------------------------------------------------------
# JSON interchange

def derivation_to_json(d: Derivation, system: str) -> dict:
    def node(x: Derivation) -> dict:
        return {
            "rule": x.rule,
            "conclusion": {
                "left": [print_formula(f)
                         for f in sorted(x.conclusion.left, key=formula_key)],
                "right": [print_formula(f)
                          for f in sorted(x.conclusion.right, key=formula_key)],
            },
            "principal": None if x.principal is None
            else print_formula(x.principal),
            "premises": [node(p) for p in x.premises],
        }

    return {"system": system, **node(d)}


def derivation_from_json(data: dict, parse_formula) -> tuple[Derivation, str]:
    system = data.get("system", BD)

    def node(x: dict) -> Derivation:
        seq = Sequent(
            frozenset(parse_formula(s) for s in x["conclusion"]["left"]),
            frozenset(parse_formula(s) for s in x["conclusion"]["right"]),
        )
        principal = x.get("principal")
        return Derivation(
            seq, x["rule"],
            None if principal is None else parse_formula(principal),
            tuple(node(p) for p in x.get("premises", [])),
        )

    return node(data), system
