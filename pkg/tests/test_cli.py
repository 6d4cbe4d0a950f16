"""Game document parsing/serialization and the command-line surface."""

import json
from fractions import Fraction as F

import pytest

from divgame.cli import emit_game, main, parse_game, parse_rational
from divgame.game_core import unanimity
from divgame.genfix import FIXTURE_NAMES, GeneratorSpec, fixture_game, random_game

MINIMAL = """
{
  "players": ["a", "b"],
  "blocks": [["a"], ["b"]],
  "d": [1, 1],
  "worths": {"a,b": "1"}
}
"""


def doc_of(**overrides):
    doc = json.loads(MINIMAL)
    doc.update(overrides)
    return json.dumps(doc)


def test_parse_minimal_document():
    g = parse_game(MINIMAL)
    assert g.names == ("a", "b")
    assert g.game == unanimity(2, 0b11, ("a", "b"))
    assert g.structure.blocks == (0b01, 0b10)
    assert g.quotas == (1, 1)


def test_parse_rational_literals():
    assert parse_rational("1/3") == F(1, 3)
    assert parse_rational("-4/6") == F(-2, 3)
    assert parse_rational(7) == F(7)
    for bad in ("0.5", "1e3", "", "a", True, 1.5, "1/0"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_parse_rejects_quota_out_of_range():
    with pytest.raises(ValueError, match="quota"):
        parse_game(doc_of(d=[2, 1]))


def test_parse_rejects_unknown_player_in_key():
    with pytest.raises(ValueError, match="unknown player"):
        parse_game(doc_of(worths={"a,c": "1"}))


def test_parse_rejects_empty_coalition_key():
    with pytest.raises(ValueError, match="empty coalition"):
        parse_game(doc_of(worths={"": "1"}))


def test_parse_rejects_duplicate_coalition_keys():
    with pytest.raises(ValueError, match="duplicates"):
        parse_game(doc_of(worths={"a,b": "1", "b,a": "2"}))


def test_parse_rejects_non_partition_blocks():
    with pytest.raises(ValueError, match="overlap"):
        parse_game(doc_of(blocks=[["a", "b"], ["b"]]))
    with pytest.raises(ValueError, match="cover"):
        parse_game(doc_of(blocks=[["a"]], d=[1]))


def test_parse_rejects_extra_or_missing_fields():
    doc = json.loads(MINIMAL)
    doc["extra"] = 1
    with pytest.raises(ValueError, match="unknown fields"):
        parse_game(json.dumps(doc))
    del doc["extra"]
    del doc["worths"]
    with pytest.raises(ValueError, match="missing fields"):
        parse_game(json.dumps(doc))


def test_parse_accepts_keys_in_any_name_order():
    g = parse_game(doc_of(worths={"b,a": "1"}))
    assert g.game.worth[0b11] == 1


def test_round_trip_on_fixtures_and_generated_games():
    for name in FIXTURE_NAMES:
        g = fixture_game(name)
        assert parse_game(emit_game(g)) == g
    for seed in range(10):
        g = random_game(
            GeneratorSpec(n=5, block_sizes=(2, 3), quotas=(1, 2), density=0.5, seed=seed)
        )
        assert parse_game(emit_game(g)) == g


def test_emitted_document_is_canonical():
    g = fixture_game("veto_demo")
    doc = json.loads(emit_game(g))
    assert list(doc) == ["players", "blocks", "d", "worths"]
    assert all(isinstance(v, str) for v in doc["worths"].values())
    assert emit_game(parse_game(emit_game(g))) == emit_game(g)


@pytest.fixture
def veto_file(tmp_path):
    path = tmp_path / "veto.json"
    path.write_text(emit_game(fixture_game("veto_demo")), encoding="utf-8")
    return str(path)


def test_cmd_value_table_and_records(veto_file, capsys):
    assert main(["value", veto_file, "--rule", "dowen"]) == 0
    out = capsys.readouterr().out
    assert "p1     1/4" in out
    assert "total  1" in out
    assert main(["value", veto_file, "--rule", "dowen", "--format", "records"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["p1=1/4", "p2=1/4", "p3=1/2"]
    assert main(["value", veto_file, "--rule", "shapley_raw", "--format", "records"]) == 0
    assert capsys.readouterr().out.splitlines() == ["p1=0", "p2=0", "p3=1"]


def test_cmd_value_restricted_matches_restricted_rule(veto_file, capsys):
    assert main(["value", veto_file, "--rule", "shapley_raw", "--restricted",
                 "--format", "records"]) == 0
    restricted = capsys.readouterr().out
    assert main(["value", veto_file, "--rule", "shapley_restricted",
                 "--format", "records"]) == 0
    assert capsys.readouterr().out == restricted


def test_cmd_dividends(veto_file, capsys):
    assert main(["dividends", veto_file, "--restricted"]) == 0
    out = capsys.readouterr().out
    assert "p1,p3  1" in out
    assert "p2,p3  1" in out
    assert "p1,p2,p3  -1" in out
    assert "support size: 3" in out
    assert "universal players: p3" in out
    assert main(["dividends", veto_file]) == 0
    out = capsys.readouterr().out
    assert out.splitlines() == ["p3  1"]


def test_cmd_info_counterexample2(tmp_path, capsys):
    path = tmp_path / "ce2.json"
    path.write_text(emit_game(fixture_game("counterexample2")), encoding="utf-8")
    assert main(["info", str(path)]) == 0
    out = capsys.readouterr().out
    assert "players (4): i, j, k, l" in out
    assert "out players: i, j, k" in out
    assert "l" not in out.split("out players: ")[1].strip().split(", ")[3:]


def test_cmd_restrict_round_trips(veto_file, capsys):
    assert main(["restrict", veto_file]) == 0
    restricted_doc = capsys.readouterr().out
    g = parse_game(restricted_doc)
    assert g.game.worth[0b100] == 0
    assert g.game.worth[0b101] == 1
    # Restricting again changes nothing.
    assert emit_game(g) == restricted_doc


def test_cmd_gen_emits_parseable_deterministic_documents(capsys):
    args = ["gen", "--players", "5", "--blocks", "3,2", "--d", "1,1",
            "--density", "0.5", "--seed", "42"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    g = parse_game(first)
    assert g.n == 5 and g.quotas == (1, 1)


def test_cmd_fixtures_matches_library_fixture(capsys):
    assert main(["fixtures", "counterexample1"]) == 0
    doc = capsys.readouterr().out
    assert parse_game(doc) == fixture_game("counterexample1")


def test_cmd_check_exit_codes(veto_file, capsys):
    assert main(["check", veto_file, "--rule", "dowen", "--axioms", "E,ED",
                 "--trials", "4", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "E" in out and "PASS" in out
    assert main(["check", veto_file, "--rule", "eqdiv", "--axioms", "ND",
                 "--trials", "4", "--seed", "3"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "witness" in out


def test_cmd_check_empty_axiom_list(veto_file, capsys):
    assert main(["check", veto_file, "--rule", "dowen", "--axioms", "none",
                 "--trials", "4", "--seed", "3"]) == 0
    assert capsys.readouterr().out == ""


def test_cmd_check_unknown_axiom(veto_file, capsys):
    assert main(["check", veto_file, "--rule", "dowen", "--axioms", "bogus"]) == 2


def test_usage_and_parse_errors_exit_2(tmp_path, capsys):
    assert main([]) == 2
    assert main(["value", "--rule", "dowen"]) == 2  # missing file argument
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert main(["info", str(bad)]) == 2
    assert main(["fixtures", "missing"]) == 2
    assert main(["info", str(tmp_path / "absent.json")]) == 2


def test_stdin_input(veto_file, capsys, monkeypatch):
    import io

    text = open(veto_file, encoding="utf-8").read()
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert main(["info", "-"]) == 0
    assert "players (3)" in capsys.readouterr().out
