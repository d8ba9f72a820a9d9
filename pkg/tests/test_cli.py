import json
from pathlib import Path

import pytest

from quiverdg import cli

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"

FIXTURES = (
    ("circle_pair", "koszul-dual"),
    ("annulus_pair", "gentle"),
    ("a2_preprojective", "cy"),
    ("one_loop_ginzburg", "ginzburg"),
    ("r3_pair", "koszul-dual"),
    ("disk_gentle", "gentle"),
)


def run_cli(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_selftest_is_green_and_byte_stable(capsys):
    code_one, out_one, _ = run_cli(["selftest"], capsys)
    code_two, out_two, _ = run_cli(["selftest"], capsys)
    assert code_one == code_two == 0
    assert out_one == out_two
    assert out_one.splitlines()[-1] == "selftest: 6 checks passed"
    assert all(line.startswith("ok - ") for line in out_one.splitlines()[:-1])


@pytest.mark.parametrize("name,command", FIXTURES)
def test_golden_reports(name, command, capsys, tmp_path):
    document = str(DATA / ("%s.json" % name))
    target = tmp_path / "report.json"
    code, out_one, err = run_cli([command, document, "--json", str(target)],
                                 capsys)
    assert code == 0, err
    produced = target.read_bytes()
    assert produced == (GOLDEN / ("%s.report.json" % name)).read_bytes()
    # run again: text and JSON must not move by a byte
    again = tmp_path / "again.json"
    code, out_two, _ = run_cli([command, document, "--json", str(again)],
                               capsys)
    assert code == 0
    assert out_one == out_two
    assert again.read_bytes() == produced


def test_reports_are_schema_tagged():
    for name, _ in FIXTURES:
        report = json.loads((GOLDEN / ("%s.report.json" % name)).read_text())
        assert report["schema"] == "report-v1"
        assert report["command"]
        assert isinstance(report["characteristic"], str)


def test_unknown_verdict_still_exits_zero(capsys, tmp_path):
    document = tmp_path / "family.json"
    document.write_text(json.dumps({
        "characteristic": 0,
        "object": {"kind": "family", "family": "polynomial",
                   "degree": 2, "variables": 3},
    }))
    code, out, _ = run_cli(["reflexive", str(document)], capsys)
    assert code == 0
    assert "verdict: Unknown" in out


def test_input_errors_name_their_location(capsys, tmp_path):
    # wrong object kind for the command
    ungated = tmp_path / "quiver.json"
    ungated.write_text(json.dumps({
        "characteristic": 0,
        "object": {"kind": "quiver", "vertices": ["1"], "arrows": []},
        "bounds": {"window": [-2, 0], "words": 4, "paths": 4},
    }))
    code, _, err = run_cli(["ginzburg", str(ungated)], capsys)
    assert code == 1
    assert "document.object.kind" in err

    # bounds are mandatory, never defaulted
    document = tmp_path / "nobounds.json"
    document.write_text(json.dumps({
        "characteristic": 0,
        "object": {"kind": "quiver", "vertices": ["1"], "arrows": []},
        "n": 2,
    }))
    code, _, err = run_cli(["cy", str(document)], capsys)
    assert code == 1
    assert "document.bounds.window" in err

    # malformed JSON points at line and column
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run_cli(["reflexive", str(broken)], capsys)
    assert code == 1
    assert "broken.json:1" in err

    # a non-prime characteristic is rejected
    bad_char = tmp_path / "badchar.json"
    bad_char.write_text(json.dumps({
        "characteristic": 6,
        "object": {"kind": "family", "family": "laurent"},
    }))
    code, _, err = run_cli(["reflexive", str(bad_char)], capsys)
    assert code == 1
    assert "document.characteristic" in err


def test_document_command_gating(capsys):
    code, _, err = run_cli(
        ["complete", str(DATA / "r3_pair.json")], capsys)
    assert code == 1
    assert "does not request" in err


def test_flags_override_document_bounds(capsys):
    document = str(DATA / "r3_pair.json")
    code, out, _ = run_cli(
        ["koszul-dual", document, "--window", "0..6"], capsys)
    assert code == 0
    assert "dual H dims 0..6: 0:1 1:0 2:0 3:1 4:0 5:0 6:1" in out


def test_quiet_suppresses_text_but_not_json(capsys, tmp_path):
    target = tmp_path / "quiet.json"
    code, out, _ = run_cli(
        ["reflexive", str(DATA / "annulus_pair.json"), "--quiet",
         "--json", str(target)], capsys)
    assert code == 0
    assert out == ""
    report = json.loads(target.read_text())
    assert report["verdict"] == "Reflexive"
    assert report["criterion"] == "no-fully-marked-component-of-winding-zero"


def test_reflexive_on_every_golden_document(capsys):
    # each fixture document that requests it gets a reflexivity verdict
    expected = {
        "circle_pair": "Reflexive",
        "annulus_pair": "Reflexive",
        "a2_preprojective": "Reflexive",
        "one_loop_ginzburg": "Reflexive",
        "disk_gentle": "Reflexive",
    }
    for name, verdict in sorted(expected.items()):
        document = json.loads((DATA / ("%s.json" % name)).read_text())
        if "reflexive" not in document.get("commands", []):
            continue
        code, out, err = run_cli(
            ["reflexive", str(DATA / ("%s.json" % name))], capsys)
        assert code == 0, err
        assert "verdict: %s" % verdict in out


def test_broken_certificate_is_an_internal_failure(capsys, monkeypatch):
    monkeypatch.setattr(cli, "replay_certificate",
                        lambda certificate: ["stale hypothesis"])
    code, _, err = run_cli(
        ["reflexive", str(DATA / "disk_gentle.json")], capsys)
    assert code == 2
    assert "does not replay" in err


def test_surface_validation_errors_exit_one(capsys, tmp_path):
    document = tmp_path / "badsurface.json"
    document.write_text(json.dumps({
        "characteristic": 0,
        "object": {
            "kind": "surface",
            "components": [
                {"name": "C", "fully_marked": False, "intervals": [["p"]]},
            ],
            "arcs": {"g": ["p", "p"]},
        },
    }))
    code, _, err = run_cli(["gentle", str(document)], capsys)
    assert code == 1
    assert "input error" in err
