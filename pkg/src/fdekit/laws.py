"""Equivalence-law evaluation over the strongly regular family.

Each law is a schema in metavariables A, A1, A2.  Because evaluation is
compositional and consequence structural, a schema holds for all formulas
iff it holds with the metavariables read as distinct fresh propositional
variables, which is how `holds` decides it.  The family filter propagates
the value-level constraints of the chosen laws over the 38 free table
cells and only branches where propagation stalls, then re-verifies every
surviving candidate (or a sample, when the survivors are too many to
materialize) with `holds`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .bd import FREE_CELLS, SR_BITS, VALUES, count_strongly_regular, sr_decode
from .bd import _classical, _nonclassical, _sr_designated  # family cell shapes
from .errors import SignatureMismatchError, UnknownNameError
from .matrix import Matrix, equivalent
from .syntax import App, Formula, Var, neg, variables

_A = Var("A")
_A1 = Var("A1")
_A2 = Var("A2")
_BOT = App("bot", ())
_TOP = neg(_BOT)


def _and(x, y):
    return App("and", (x, y))


def _or(x, y):
    return App("or", (x, y))


def _impl(x, y):
    return App("impl", (x, y))


@dataclass(frozen=True)
class Law:
    name: str
    lhs: Formula
    rhs: Formula


TABLE2_LAWS: tuple[Law, ...] = (
    Law("and-false", _and(_A, _BOT), _BOT),
    Law("and-true", _and(_A, _TOP), _A),
    Law("and-idempotent", _and(_A, _A), _A),
    Law("and-commutative", _and(_A1, _A2), _and(_A2, _A1)),
    Law("de-morgan-and", neg(_and(_A1, _A2)), _or(neg(_A1), neg(_A2))),
    Law("double-negation", neg(neg(_A)), _A),
    Law("contradiction-implies",
        _impl(_and(_A1, _impl(_A1, _BOT)), _A2), _TOP),
    Law("or-true", _or(_A, _TOP), _TOP),
    Law("or-false", _or(_A, _BOT), _A),
    Law("or-idempotent", _or(_A, _A), _A),
    Law("or-commutative", _or(_A1, _A2), _or(_A2, _A1)),
    Law("de-morgan-or", neg(_or(_A1, _A2)), _and(neg(_A1), neg(_A2))),
    Law("excluded-middle-implies",
        _impl(_or(_A1, _impl(_A1, _BOT)), _A2), _A2),
)

# Classical laws from which the two implication laws of the table above
# classically follow.  Only the first three fail in the implication-falsity
# expansion (countermodel A -> b in each case); the last two hold there as
# well, since bot -> A evaluates to t everywhere and ~bot -> A evaluates
# to A everywhere.
CLASSICAL_ONLY_LAWS: tuple[Law, ...] = (
    Law("neg-as-impl", neg(_A), _impl(_A, _BOT)),
    Law("and-contradiction", _and(_A, neg(_A)), _BOT),
    Law("or-excluded-middle", _or(_A, neg(_A)), _TOP),
    Law("false-implies", _impl(_BOT, _A), _TOP),
    Law("true-implies", _impl(_TOP, _A), _A),
)

FAILING_CLASSICAL_LAWS: tuple[Law, ...] = CLASSICAL_ONLY_LAWS[:3]
HOLDING_CLASSICAL_LAWS: tuple[Law, ...] = CLASSICAL_ONLY_LAWS[3:]

_ALL_LAWS = {law.name: law for law in TABLE2_LAWS + CLASSICAL_ONLY_LAWS}


def law_by_name(name: str) -> Law:
    try:
        return _ALL_LAWS[name]
    except KeyError:
        raise UnknownNameError(f"unknown law {name!r}") from None


def holds(m: Matrix, law: Law) -> bool:
    for conn in ("not", "and", "or", "impl", "bot"):
        if conn not in m.signature:
            raise SignatureMismatchError(
                f"law evaluation needs connective {conn!r}")
    return equivalent(m, law.lhs, law.rhs)


def holds_countermodel(m: Matrix, law: Law) -> Optional[dict]:
    from .matrix import equivalence_countermodel

    return equivalence_countermodel(m, law.lhs, law.rhs)


# ---------------------------------------------------------------------------
# Family filter

_CELL_INDEX = {cell: i for i, cell in enumerate(FREE_CELLS)}

_FORCED: dict[tuple[str, tuple[str, ...]], str] = {("bot", ()): "f"}
_FORCED[("not", ("t",))] = "f"
_FORCED[("not", ("f",))] = "t"
for _conn in ("and", "or", "impl"):
    for _args in itertools.product(("t", "f"), repeat=2):
        _FORCED[(_conn, _args)] = _classical(_sr_designated(_conn, _args))


def _cell_options(cell) -> tuple[str, str]:
    conn, args = cell
    d = _sr_designated(conn, args)
    return _classical(d), _nonclassical(d)


def _eval_partial(f: Formula, env: dict, bits: list):
    """(value or None, blocking free-cell indices) under a partial family
    member."""
    if isinstance(f, Var):
        return env[f.name], frozenset()
    vals = []
    blockers = frozenset()
    for a in f.args:
        v, bl = _eval_partial(a, env, bits)
        blockers |= bl
        vals.append(v)
    if any(v is None for v in vals):
        return None, blockers
    key = (f.conn, tuple(vals))
    if key in _FORCED:
        return _FORCED[key], blockers
    idx = _CELL_INDEX[key]
    if bits[idx] is None:
        return None, blockers | {idx}
    return _cell_options(key)[bits[idx]], blockers


@dataclass(frozen=True)
class _Constraint:
    lhs: Formula
    rhs: Formula
    env: dict

    def status(self, bits: list):
        lv, lb = _eval_partial(self.lhs, self.env, bits)
        rv, rb = _eval_partial(self.rhs, self.env, bits)
        if lv is not None and rv is not None:
            return ("sat" if lv == rv else "violated"), frozenset()
        return "unknown", lb | rb


def _compile_constraints(laws: Iterable[Law]) -> list[_Constraint]:
    out = []
    for law in laws:
        metavars = sorted(variables(law.lhs) | variables(law.rhs))
        for combo in itertools.product(VALUES, repeat=len(metavars)):
            out.append(_Constraint(law.lhs, law.rhs, dict(zip(metavars, combo))))
    return out


class FilterResult:
    """Disjoint cubes of family indices surviving a law set."""

    def __init__(self, cubes: list):
        self.cubes = cubes

    @property
    def count(self) -> int:
        return sum(2 ** sum(1 for b in cube if b is None)
                   for cube in self.cubes)

    @property
    def is_all(self) -> bool:
        return self.count == count_strongly_regular()

    def indices(self) -> Iterator[int]:
        for cube in sorted(self.cubes,
                           key=lambda c: [(-1 if b is None else b) for b in c]):
            free = [i for i, b in enumerate(cube) if b is None]
            base = sum(b << i for i, b in enumerate(cube) if b)
            for combo in itertools.product((0, 1), repeat=len(free)):
                yield base + sum(v << free[i] for i, v in enumerate(combo))

    def __contains__(self, index: int) -> bool:
        for cube in self.cubes:
            if all(b is None or ((index >> i) & 1) == b
                   for i, b in enumerate(cube)):
                return True
        return False

    def sample(self, k: int, seed: int = 0) -> list[int]:
        rng = random.Random(seed)
        totals = [2 ** sum(1 for b in cube if b is None) for cube in self.cubes]
        grand = sum(totals)
        out = []
        for _ in range(min(k, grand)):
            cube = rng.choices(self.cubes, weights=totals)[0]
            idx = 0
            for i, b in enumerate(cube):
                bit = rng.getrandbits(1) if b is None else b
                idx |= bit << i
            out.append(idx)
        return out


def _propagate(constraints: list[_Constraint], bits: list) -> bool:
    changed = True
    while changed:
        changed = False
        for c in constraints:
            status, blockers = c.status(bits)
            if status == "violated":
                return False
            if status == "unknown" and len(blockers) == 1:
                (cell,) = blockers
                feasible = []
                for v in (0, 1):
                    bits[cell] = v
                    if c.status(bits)[0] != "violated":
                        feasible.append(v)
                bits[cell] = None
                if not feasible:
                    return False
                if len(feasible) == 1:
                    bits[cell] = feasible[0]
                    changed = True
    return True


def filter_strongly_regular(laws: Iterable[Law],
                            verify_limit: int = 4096,
                            sample_size: int = 64) -> FilterResult:
    """Family members satisfying every law.

    Propagation pins or branches free cells; the result is re-verified
    candidate by candidate with `holds` (exhaustively when the survivor
    count is at most `verify_limit`, otherwise on a deterministic sample).
    """
    laws = list(laws)
    constraints = _compile_constraints(laws)
    cubes: list = []

    def solve(bits: list):
        if not _propagate(constraints, bits):
            return
        for c in constraints:
            status, blockers = c.status(bits)
            if status == "unknown":
                cell = min(blockers)
                for v in (0, 1):
                    child = list(bits)
                    child[cell] = v
                    solve(child)
                return
        cubes.append(tuple(bits))

    solve([None] * SR_BITS)
    result = FilterResult(cubes)
    survivors = (list(result.indices()) if result.count <= verify_limit
                 else result.sample(sample_size))
    for index in survivors:
        m = sr_decode(index)
        if not all(holds(m, law) for law in laws):
            raise AssertionError(
                f"propagation kept index {index} that fails verification")
    return result
