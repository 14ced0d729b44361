import json

import pytest

from fdekit import bd, presets
from fdekit.cli import main
from fdekit.matrix import evaluate, matrix_to_json
from fdekit.proof import BD, Sequent, derivation_to_json, prove
from fdekit.syntax import parse


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestBasics:
    def test_parse(self, capsys):
        code, out = run(capsys, "parse", "~ (p&q) ->r")
        assert code == 0
        assert out.strip() == "~(p & q) -> r"

    def test_parse_error_exit_code(self, capsys):
        assert main(["parse", "p &"]) == 2
        assert main(["parse", "delta p"]) == 2  # not in the default signature

    def test_usage_error(self, capsys):
        assert main(["no-such-command"]) == 2

    def test_eval(self, capsys):
        code, out = run(capsys, "eval", "--assign", "p=b", "--assign", "q=f",
                        "p -> q")
        assert code == 0 and out.strip() == "f"

    def test_eval_bad_value(self, capsys):
        assert main(["eval", "--assign", "p=x", "p"]) == 2


class TestVerdicts:
    def test_entails_yes(self, capsys):
        code, out = run(capsys, "entails", "p & q |- p")
        assert code == 0 and out.strip() == "YES"

    def test_entails_no_with_countermodel(self, capsys):
        code, out = run(capsys, "entails", "p, ~p |- bot")
        assert code == 1
        assert "p=b" in out

    def test_entails_json(self, capsys):
        code, out = run(capsys, "--json", "entails", "|- p | ~p")
        assert code == 1
        data = json.loads(out)
        assert data == {"entails": False, "countermodel": {"p": "n"}}

    def test_equiv(self, capsys):
        assert run(capsys, "equiv", "~(p & q)", "~p | ~q")[0] == 0
        assert run(capsys, "equiv", "~p", "p -> bot")[0] == 1

    def test_synonymous(self, capsys):
        code, out = run(capsys, "synonymous", "--matrix", "bd-impl-bot-delta",
                        "delta p", "~(p -> bot)")
        assert code == 0 and out.strip() == "YES"

    def test_definable(self, capsys):
        code, out = run(capsys, "--json", "definable",
                        "--matrix", "bd-impl-bot-delta", "--target", "delta",
                        "--using", "not,impl,bot")
        assert code == 0
        data = json.loads(out)
        assert data["definable"] is True
        m = presets.preset("bd-impl-bot-delta")
        witness = parse(data["witness"], m.signature)
        for a in m.values:
            assert evaluate(m, witness, {"p1": a}) == m.tables["delta"][(a,)]

    def test_not_definable(self, capsys):
        code, out = run(capsys, "definable", "--matrix", "bd-impl-bot-confl",
                        "--target", "confl",
                        "--using", "not,and,or,impl,bot")
        assert code == 1

    def test_interdef(self, capsys):
        code, _ = run(capsys, "interdef", "--a", "bd-impl-bot",
                      "--b", "bd-delta", "--common", "bd-impl-bot-delta")
        assert code == 0
        code, _ = run(capsys, "interdef", "--a", "bd-impl-bot",
                      "--b", "bd-confl", "--common", "bd-impl-bot-confl")
        assert code == 1


class TestProofCommands:
    def test_prove_and_exit_codes(self, capsys):
        assert run(capsys, "prove", "|- p -> p")[0] == 0
        assert run(capsys, "prove", "|- p | ~p")[0] == 1
        assert run(capsys, "prove", "--system", "CL", "|- p | ~p")[0] == 0

    def test_prove_json_checks(self, capsys, tmp_path):
        code, out = run(capsys, "--json", "prove", "~(p & q) |- ~p | ~q")
        assert code == 0
        path = tmp_path / "derivation.json"
        path.write_text(out)
        code, out = run(capsys, "check", str(path))
        assert code == 0 and out.strip() == "VALID"

    def test_check_invalid(self, capsys, tmp_path):
        sig = presets.preset("bd-impl-bot").signature
        d = prove(Sequent.of([], [parse("p -> p", sig)]), BD)
        data = derivation_to_json(d, BD)
        data["rule"] = "or-R"
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        code, out = run(capsys, "check", str(path))
        assert code == 1 and "INVALID" in out

    def test_derived_rule(self, capsys):
        assert run(capsys, "derived-rule", "not-and-R")[0] == 0
        assert run(capsys, "derived-rule", "--system", "BD", "not-and-R")[0] == 1


class TestFamilyCommands:
    def test_count(self, capsys):
        code, out = run(capsys, "count-sr")
        assert code == 0 and out.strip() == "274877906944"

    def test_decode_encode_round_trip(self, capsys, tmp_path):
        code, out = run(capsys, "--json", "sr-decode", "13129950543")
        assert code == 0
        path = tmp_path / "m.json"
        path.write_text(out)
        code, out = run(capsys, "sr-encode", str(path))
        assert code == 0 and out.strip() == "13129950543"

    def test_decode_matches_library(self, capsys):
        code, out = run(capsys, "--json", "sr-decode", "0")
        assert json.loads(out) == matrix_to_json(bd.sr_decode(0))

    def test_decode_out_of_range(self, capsys):
        assert main(["sr-decode", "-1"]) == 2

    def test_laws_filter_json(self, capsys):
        code, out = run(capsys, "--json", "laws-filter")
        assert code == 0
        data = json.loads(out)
        assert data["count"] == 81
        assert 13129950543 in data["indices"]

    def test_laws_filter_single_law(self, capsys):
        code, out = run(capsys, "--json", "laws-filter",
                        "--law", "double-negation")
        assert code == 0
        assert json.loads(out)["count"] == 2 ** 36


class TestRepro:
    def test_repro_all_pass(self, capsys):
        code, out = run(capsys, "--json", "repro")
        assert code == 0
        results = json.loads(out)
        assert len(results) >= 25
        assert all(r["pass"] for r in results)
