import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from arthur_packets.cli import DocError, doc_param, dump_doc, main, parse_query
from arthur_packets.families import parameters
from arthur_packets.general import so9_example
from arthur_packets.params import HalfInt, TRIVIAL, all_sign_chars

DEMO = Path(__file__).resolve().parents[1] / "demos" / "data" / "so9.json"


def write(tmp_path, doc, name="p.json"):
    f = tmp_path / name
    f.write_text(json.dumps(doc))
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.strip()


def test_validate_accepts_demo(capsys):
    code, out = run(capsys, "validate", str(DEMO))
    assert code == 0 and out == "ok (discrete, not diagonal-discrete)"


def test_validate_rejects_duplicate_blocks(tmp_path, capsys):
    b = {"A": "1", "B": "1", "zeta": "+"}
    f = write(tmp_path, {"blocks": [b, b], "epsilon": ["+", "+"]})
    code, out = run(capsys, "validate", f)
    assert code == 1 and out.startswith("error:")


def test_general_on_demo_is_zero(capsys):
    code, out = run(capsys, "general", str(DEMO))
    assert code == 0
    assert out.splitlines()[-1] == "value: 0"


def test_packet_and_jac_on_demo(capsys):
    assert run(capsys, "packet", str(DEMO)) == (0, "0")
    assert run(capsys, "jac", str(DEMO), "1:3/2") == (0, "0")


def test_packet_explicit_needs_diagonal_discrete(capsys):
    code, out = run(capsys, "packet", str(DEMO), "--mode", "explicit")
    assert code == 2 and "diagonal-discrete" in out


def test_machine_readable_output(tmp_path, capsys):
    p, e = so9_example()
    f = write(tmp_path, dump_doc(p, e))
    code, out = run(capsys, "--format", "machine-readable", "general", f)
    assert code == 0
    data = json.loads(out)
    assert data["value"] == "0" and data["shifts"] == [0, 1, 1]
    code, out = run(capsys, "validate", f, "--format", "machine-readable")
    assert json.loads(out)["ok"] is True


def test_explicit_packet(tmp_path, capsys):
    doc = {"blocks": [{"A": "1", "B": "0", "zeta": "+"}], "epsilon": ["+"]}
    code, out = run(capsys, "packet", write(tmp_path, doc), "--mode", "explicit")
    assert code == 0 and out == "soc[<1:0..-1>]pi{}"


def test_stable_lists_every_character(tmp_path, capsys):
    doc = {"blocks": [{"A": "0", "B": "0"}, {"A": "1", "B": "1"}], "epsilon": ["+", "+"]}
    code, out = run(capsys, "--format", "machine-readable", "stable", write(tmp_path, doc))
    assert code == 0 and len(json.loads(out)["signs"]) == 4


def test_check_suite_passes(capsys):
    code, out = run(capsys, "check", "--suite", "independence", "--bounds", "blocks=2,gap=2,b=3")
    assert code == 0 and "independence" in out


def test_bad_usage_exits_two(tmp_path, capsys):
    assert main(["packet"]) == 2
    assert main(["nosuch"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["packet", str(bad)]) == 2
    assert main(["packet", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_missing_epsilon_is_a_usage_error(tmp_path, capsys):
    f = write(tmp_path, {"blocks": [{"A": "1", "B": "1"}]})
    assert run(capsys, "packet", f)[0] == 2


def test_yaml_documents(tmp_path, capsys):
    yaml = pytest.importorskip("yaml")
    p, e = so9_example()
    f = tmp_path / "p.yaml"
    f.write_text(yaml.safe_dump(dump_doc(p, e)))
    assert run(capsys, "general", str(f))[1].endswith("value: 0")


def test_parse_query():
    assert parse_query("3/2").x == HalfInt("3/2")
    assert parse_query("1:2").rho == TRIVIAL
    with pytest.raises(DocError):
        parse_query("1:x")


SIGNED = [(p, e) for p in parameters(2, 2, 2) for e in all_sign_chars(p)]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(SIGNED))
def test_document_round_trip(pe):
    p, e = pe
    doc = json.loads(json.dumps(dump_doc(p, e)))
    assert doc_param(doc) == (p, e)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "arthur_packets", "validate", str(DEMO)], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("ok")
