import itertools
import random

import pytest

from fdekit import bd, presets
from fdekit.definability import (
    LogicHandle,
    bd_preservation_criterion,
    definable,
    interdefinable,
    logic_definable_in,
    synonymity_via_consequence,
    synonymous,
)
from fdekit.errors import (
    NotBdExpansionError,
    NotCommonExpansionError,
    NotSimpleError,
)
from fdekit.matrix import Matrix, equivalent, evaluate, unary_term_functions
from fdekit.syntax import App, Signature, Var, parse

p = Var("p")

# (matrix preset, lhs, rhs) for every displayed synonymity
SYNONYMITIES = [
    ("bd-impl-bot-delta", "delta p", "~(p -> bot)"),
    ("bd-impl-bot-circ", "circ p", "((p & ~p) -> bot) & ~((p | ~p) -> bot)"),
    ("bd-impl-bot-cons", "cons p", "(p & ~p) -> bot"),
    ("bd-impl-bot-det", "det p", "~((p | ~p) -> bot)"),
    ("bd-impl-bot-delta", "p1 -> p2", "~(delta p1) | p2"),
    ("bd-impl-bot-delta", "bot", "delta p & ~(delta p)"),
    ("bd-delta-cons-det", "cons p", "~(delta (p & ~p))"),
    ("bd-delta-cons-det", "det p", "delta (p | ~p)"),
    ("bd-delta-cons-det", "delta p", "(p | ~(cons p)) & det p"),
    ("bd-cons-det-circ", "circ p", "cons p & det p"),
    ("bd-impl-b-n-bot", "bot", "B & N"),
]


class TestSynonymity:
    @pytest.mark.parametrize("preset_name,lhs,rhs", SYNONYMITIES)
    def test_displayed_synonymities(self, preset_name, lhs, rhs):
        m = presets.preset(preset_name)
        assert synonymous(m, parse(lhs, m.signature), parse(rhs, m.signature))

    def test_negative_example(self):
        m = presets.preset("bd-impl-bot")
        assert not synonymous(
            m, parse("~p", m.signature), parse("p -> bot", m.signature))

    def test_rejects_non_simple_matrix(self):
        m = Matrix(
            ("x", "y", "z"), frozenset(["x"]), Signature({"f1": 1}),
            {"f1": {("x",): "x", ("y",): "y", ("z",): "y"}})
        with pytest.raises(NotSimpleError):
            synonymous(m, Var("p"), App("f1", (Var("p"),)))

    def test_via_consequence_agrees(self):
        m = presets.preset("bd")
        a = parse("~(p & q)", m.signature)
        b = parse("~p | ~q", m.signature)
        assert synonymity_via_consequence(m, a, b)
        assert not synonymity_via_consequence(m, parse("p", m.signature),
                                              parse("p | ~p", m.signature))

    def test_via_consequence_needs_bd_expansion(self):
        with pytest.raises(NotBdExpansionError):
            synonymity_via_consequence(presets.preset("lp"), p, p)


class TestDefinable:
    def test_delta_from_classical(self):
        m = presets.preset("bd-impl-bot-delta")
        verdict = definable(m, "delta", ["not", "impl", "bot"])
        assert verdict.definable
        for a in m.values:
            assert evaluate(m, verdict.witness, {"p1": a}) == \
                m.tables["delta"][(a,)]

    def test_conflation_not_definable(self):
        m = presets.preset("bd-impl-bot-confl")
        verdict = definable(m, "confl", ["not", "and", "or", "impl", "bot"])
        assert not verdict.definable
        assert verdict.witness is None

    def test_nullary_via_constant_unary_term(self):
        # bot is definable from delta, not, and through delta p & ~(delta p)
        m = presets.preset("bd-impl-bot-delta")
        verdict = definable(m, "bot", ["not", "and", "delta"])
        assert verdict.definable
        for a in m.values:
            assert evaluate(m, verdict.witness, {"p": a}) == "f"

    def test_target_validation(self):
        m = presets.preset("bd-impl-bot")
        with pytest.raises(ValueError):
            definable(m, "delta", ["not"])
        with pytest.raises(ValueError):
            definable(m, "impl", ["impl", "bot"])


class TestPreservationCriterion:
    def test_named_connectives(self):
        assert bd_preservation_criterion(bd.DELTA)
        assert bd_preservation_criterion(bd.CIRC)
        assert bd_preservation_criterion(bd.CONS)
        assert bd_preservation_criterion(bd.DET)
        assert not bd_preservation_criterion(bd.CONFL)
        assert not bd_preservation_criterion(bd.B_CONST)
        assert not bd_preservation_criterion(bd.N_CONST)

    def test_heart_family_all_pass(self):
        for r in range(5):
            for v in itertools.combinations(bd.VALUES, r):
                assert bd_preservation_criterion(bd.heart(v))

    def test_binary_connectives(self):
        assert bd_preservation_criterion(bd.AND)
        assert bd_preservation_criterion(bd.OR)
        assert bd_preservation_criterion(bd.IMPL)


class TestCircBlindness:
    def test_unary_circ_clone_structure(self):
        # every unary term over {not, and, or, circ} either fixes b and n
        # or sends both to the same classical value
        m = bd.expand(bd.bd_matrix(), bd.CIRC)
        for tf in unary_term_functions(m, m.signature.connectives):
            gb, gn = tf.apply(m, ("b",)), tf.apply(m, ("n",))
            assert (gb == "b" and gn == "n") or (gb == gn and gb in ("t", "f"))


class TestReplacementSoundness:
    def _contexts(self, sig, depth):
        hole = Var("hole")
        atoms = [hole, Var("r"), Var("s"), App("bot", ())]
        layers = [atoms]
        seen = set(atoms)
        for _ in range(depth):
            new = [App("not", (g,)) for g in layers[-1]]
            for conn in ("and", "or", "impl"):
                new.extend(App(conn, (g, h))
                           for g in layers[-1] for h in atoms)
                new.extend(App(conn, (g, h))
                           for g in atoms for h in layers[-1])
            fresh = []
            for f in new:
                if f not in seen:
                    seen.add(f)
                    fresh.append(f)
            layers.append(fresh)
        return [f for layer in layers for f in layer]

    def test_synonyms_are_intersubstitutable(self):
        m = presets.preset("bd-impl-bot-delta")
        a = parse("delta p", m.signature)
        b = parse("~(p -> bot)", m.signature)
        assert synonymous(m, a, b)
        # exhaustive to depth 2, a deterministic sample of depth 3
        shallow = self._contexts(m.signature, 2)
        deep = [c for c in self._contexts(m.signature, 3)
                if c not in set(shallow)]
        contexts = shallow + random.Random(5).sample(deep, 600)
        assert len(contexts) > 1000
        from fdekit.syntax import substitute
        for c in contexts:
            assert equivalent(m, substitute(c, {"hole": a}),
                              substitute(c, {"hole": b}))


def _handle(name, common):
    return LogicHandle(common, frozenset(
        presets.preset(name).signature.connectives))


class TestInterdefinability:
    def test_impl_bot_and_delta(self):
        common = presets.preset("bd-impl-bot-delta")
        assert interdefinable(_handle("bd-impl-bot", common),
                              _handle("bd-delta", common), common)

    def test_delta_and_cons_det(self):
        common = presets.preset("bd-delta-cons-det")
        assert interdefinable(_handle("bd-delta", common),
                              _handle("bd-cons-det", common), common)

    def test_cons_det_not_with_circ(self):
        common = presets.preset("bd-cons-det-circ")
        assert not interdefinable(_handle("bd-cons-det", common),
                                  _handle("bd-circ", common), common)

    def test_impl_bot_not_with_conflation(self):
        common = presets.preset("bd-impl-bot-confl")
        assert not interdefinable(_handle("bd-impl-bot", common),
                                  _handle("bd-confl", common), common)

    def test_circ_definable_in_impl_bot(self):
        common = presets.preset("bd-impl-bot-circ")
        assert logic_definable_in(_handle("bd-circ", common),
                                  _handle("bd-impl-bot", common), common)
        assert not logic_definable_in(_handle("bd-impl-bot", common),
                                      _handle("bd-circ", common), common)

    def test_impl_bot_definable_in_b_n(self):
        common = presets.preset("bd-impl-b-n-bot")
        assert logic_definable_in(_handle("bd-impl-bot", common),
                                  _handle("bd-b-n", common), common)

    def test_reflexive_and_symmetric(self):
        common = presets.preset("bd-impl-bot-delta")
        a = _handle("bd-impl-bot", common)
        b = _handle("bd-delta", common)
        assert interdefinable(a, a, common)
        assert interdefinable(a, b, common) == interdefinable(b, a, common)

    def test_common_matrix_validated(self):
        common = presets.preset("bd-impl-bot-delta")
        with pytest.raises(NotCommonExpansionError):
            lp = presets.preset("lp")
            logic_definable_in(LogicHandle(lp, frozenset(["not"])),
                               _handle("bd-delta", common), common)


class TestRandomizedConsequenceAxioms:
    def test_overlap_dilution_cut_structurality(self):
        m = presets.preset("bd")
        sig = m.signature
        rng = random.Random(99)
        pool = [parse(s, sig) for s in (
            "p", "q", "~p", "~q", "p & q", "p | ~q", "~(p & q)",
            "~p | ~q", "p & ~p", "q | ~q")]
        from fdekit.matrix import consequence
        from fdekit.syntax import substitute
        for _ in range(10_000):
            gamma = rng.sample(pool, rng.randrange(0, 4))
            delta = rng.sample(pool, rng.randrange(0, 4))
            if set(gamma) & set(delta):  # overlap
                assert consequence(m, gamma, delta)
            if consequence(m, gamma, delta):
                extra = rng.choice(pool)
                # dilution
                assert consequence(m, gamma + [extra], delta)
                assert consequence(m, gamma, delta + [extra])
                # structurality
                sub = {"p": rng.choice(pool), "q": rng.choice(pool)}
                assert consequence(
                    m, [substitute(g, sub) for g in gamma],
                    [substitute(d, sub) for d in delta])
            # cut
            a = rng.choice(pool)
            if consequence(m, gamma, delta + [a]) and \
                    consequence(m, gamma + [a], delta):
                assert consequence(m, gamma, delta)
