import json
import pathlib
import subprocess
import sys

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from satake_fans import cli
from satake_fans import serialize as ser
from satake_fans.fans import build_fan_Ft
from satake_fans.rootsys import build_root_datum
from satake_fans.seminorms import DiagSeminorm, LogAffineSequence, classify_sequence
from satake_fans.weights import HighestWeight, cone_CY, weight_system

SCHEMAS = pathlib.Path(__file__).resolve().parents[1] / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_schemas_are_valid_documents():
    names = sorted(p.name for p in SCHEMAS.glob("*.schema.json"))
    assert len(names) >= 9
    for p in SCHEMAS.glob("*.schema.json"):
        jsonschema.Draft202012Validator.check_schema(json.loads(p.read_text()))


@pytest.mark.parametrize("t,total", [("", 13), ("2", 7)])
def test_fan_command_a2(capsys, t, total):
    code, rep, _ = run_json(capsys, "fan", "--root-system", "A2", "--type", t)
    assert code == 0 and rep["num_cones"] == total
    jsonschema.validate(rep, schema("fan_report"))
    assert all(rep["axioms"][k] for k in ("pairwise_faces", "complete", "coverage"))
    fan = build_fan_Ft(build_root_datum("A2"), cli.parse_nodes(t))
    parsed = {ser.cone_from_json(c).key for c in rep["cones"]}
    assert parsed == fan.key_set()
    assert len(rep["relevancy_index"]) == total


def test_fan_command_degenerate(capsys):
    code, rep, err = run_json(capsys, "fan", "--root-system", "A1", "--type", "1")
    assert code == 0 and rep["num_cones"] == 1 and rep["degenerate"]
    assert "warning" in err


@pytest.mark.parametrize("argv", [
    ["fan", "--root-system", "E8"],
    ["fan", "--root-system", "A2", "--type", "3"],
    ["fan", "--root-system", "A2", "--type", "x"],
    ["fan"],
    ["bogus"],
    ["weights", "--root-system", "A2", "--highest-weight", "1,-1"],
    ["weights", "--root-system", "A2", "--highest-weight", "1"],
    ["classify-seq", "--sequence", '{"a": [0'],
    ["classify-seq", "--sequence", '{"a": [0], "b": [0, 1]}'],
    ["classify-seq", "--sequence", '{"a": ["-inf"], "b": [0]}'],
    ["classify-seq"],
    ["seminorm", "--exps", '["-inf", "-inf"]'],
    ["seminorm", "--exps", '["a"]'],
    ["seminorm", "--exps", '[0, 1]', "--m", "5"],
    ["verify", "--only", "nope"],
    ["verify", "--inject-fault", "nope"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(cli.main(argv))
    assert exc.value.code == 2


@pytest.mark.parametrize("payload,index_set,limit", [
    ({"a": [0, 0, 0], "b": [2, 2, 1]}, [0, 1], ["0", "0", "-inf"]),
    ({"a": [0], "b": [0]}, [0], ["0"]),
    ({"a": [5, 0], "b": [1, 1]}, [0, 1], ["0", "-5"]),
])
def test_classify_seq_examples(capsys, payload, index_set, limit):
    code, rep, _ = run_json(capsys, "classify-seq", "--sequence", json.dumps(payload))
    assert code == 0 and rep["index_set_I"] == index_set and rep["limit"] == limit
    jsonschema.validate(rep, schema("limit_report"))
    seq = ser.sequence_from_json(rep["sequence"])
    assert seq == LogAffineSequence(tuple(payload["a"]), tuple(payload["b"]))
    assert ser.limit_report_from_json(rep) == classify_sequence(seq)


def test_classify_seq_from_file(capsys, tmp_path):
    path = tmp_path / "seq.json"
    path.write_text(json.dumps({"a": ["1/2", 0], "b": [0, 0]}))
    code, rep, _ = run_json(capsys, "classify-seq", "--input", str(path))
    assert code == 0 and rep["limit"] == ["0", "-1/2"]
    code, _, _ = run(capsys, "classify-seq", "--input", str(tmp_path / "missing.json"))
    assert code == 2


def test_seminorm_command(capsys):
    code, rep, _ = run_json(capsys, "seminorm", "--exps", '[0, 2, "-inf"]')
    assert code == 0
    jsonschema.validate(rep, schema("seminorm_report"))
    jsonschema.validate(rep["seminorm"], schema("seminorm"))
    assert rep["canonical"]["exps"] == ["1", "-1", "-inf"]
    assert rep["kernel"] == [2]
    assert ser.seminorm_from_json(rep["seminorm"]) == DiagSeminorm((0, 2, float("-inf")))
    code, rep, _ = run_json(capsys, "seminorm", "--exps", "[3, 1, 0]", "--m", "2")
    assert rep["exterior"] == {"2": "4"}


def test_weights_and_admissible(capsys):
    code, rep, _ = run_json(capsys, "weights", "--root-system", "A2", "--highest-weight", "1,0")
    assert code == 0 and rep["Z"] == [2] and len(rep["weights"]) == 3
    assert [1, 0] in rep["weights"]
    jsonschema.validate(rep, schema("weights"))
    code, rep, _ = run_json(capsys, "admissible", "--root-system", "A2", "--highest-weight", "1,0")
    jsonschema.validate(rep, schema("admissibility"))
    flags = {tuple(r["Y"]): r["admissible"] for r in rep["reports"]}
    assert flags == {(): True, (1,): True, (2,): False, (1, 2): True}
    rd = build_root_datum("A2")
    ws = weight_system(rd, HighestWeight.from_fundamental(rd, (1, 0)))
    for r in rep["reports"]:
        if r["admissible"]:
            y = frozenset(i - 1 for i in r["Y"])
            assert ser.cone_from_json(r["cone"]) == cone_CY(rd, ws, y)
    code, rep, _ = run_json(capsys, "admissible", "--root-system", "A2",
                            "--highest-weight", "1,0", "--type", "2")
    assert [r["Y"] for r in rep["reports"]] == [[2]]


def test_relevant_command(capsys):
    code, rep, _ = run_json(capsys, "relevant", "--root-system", "A2", "--type", "2")
    jsonschema.validate(rep, schema("relevant_report"))
    assert rep["relevant_parabolics"] == 7 and rep["relevant_standard"] == 3


def test_embed_command(capsys):
    code, rep, _ = run_json(capsys, "embed", "--root-system", "B2", "--highest-weight", "1,0",
                            "--point", "1,1/2")
    assert code == 0 and rep["fan_match"] and rep["counterexamples"] == []
    jsonschema.validate(rep, schema("embedding"))
    assert len(rep["weights"]) == 5 and ["0", "0"] in rep["weights"]


def test_verify_subset_and_fault(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--only", "cone-equality", "--only", "domination",
                     "--output", str(out))
    rep = json.loads(out.read_text())
    assert code == 0 and rep["passed"]
    assert [c["name"] for c in rep["checks"]] == ["cone-equality", "domination"]
    jsonschema.validate(rep, schema("verify_report"))
    code, rep, _ = run_json(capsys, "verify", "--only", "pullback-fan",
                            "--inject-fault", "pullback-fan")
    assert code == 1 and not rep["passed"] and rep["checks"][0]["counterexamples"]


def test_table_output(capsys):
    code, out, _ = run(capsys, "fan", "--root-system", "A2", "--type", "2", "--table")
    assert code == 0 and "7 cones" in out
    code, out, _ = run(capsys, "verify", "--only", "canonical-window", "--table", "--timings")
    assert out.startswith("PASS") and "s" in out


def test_subprocess_entry_point_and_determinism(tmp_path):
    argv = [sys.executable, "-m", "satake_fans", "verify", "--only", "sequence-limits",
            "--only", "injectivity", "--seed", "3"]
    first = subprocess.run(argv, capture_output=True, check=False)
    second = subprocess.run(argv, capture_output=True, check=False,
                            env={**__import__("os").environ, "SATAKE_FANS_THREADS": "3"})
    assert first.returncode == 0
    assert first.stdout == second.stdout
    bad = subprocess.run([sys.executable, "-m", "satake_fans", "fan", "--root-system", "Q7"],
                         capture_output=True, check=False)
    assert bad.returncode == 2


@settings(max_examples=25)
@given(st.lists(st.fractions(-9, 9, max_denominator=5), min_size=1, max_size=4).flatmap(
    lambda a: st.tuples(st.just(a), st.lists(st.fractions(-3, 3, max_denominator=3),
                                             min_size=len(a), max_size=len(a)))))
def test_sequence_json_round_trip(ab):
    a, b = ab
    s = LogAffineSequence(tuple(a), tuple(b))
    assert ser.sequence_from_json(json.loads(ser.dumps(ser.sequence_to_json(s)))) == s
    rep = classify_sequence(s)
    assert ser.limit_report_from_json(json.loads(ser.dumps(ser.limit_report_to_json(rep)))) == rep


@settings(max_examples=25)
@given(st.lists(st.one_of(st.fractions(-9, 9, max_denominator=5), st.just(float("-inf"))),
                min_size=1, max_size=5).filter(lambda e: any(x != float("-inf") for x in e)))
def test_seminorm_json_round_trip(exps):
    x = DiagSeminorm(tuple(exps))
    assert ser.seminorm_from_json(json.loads(ser.dumps(ser.seminorm_to_json(x)))) == x
