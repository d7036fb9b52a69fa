import json
from pathlib import Path

import pytest

from metafib_embed.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_example_golden(tmp_path, capsys):
    bundle = tmp_path / "bundle.json"
    terms = tmp_path / "q.bfile"
    code, _, _ = run(capsys, "construct", "--coeffs", "1,0,2", "--initial", "30,40,60",
                     "-o", bundle, "--terms", 20, "--terms-output", terms)
    assert code == 0
    assert bundle.read_text() == (GOLDEN / "example_bundle.json").read_text()
    assert terms.read_text() == (GOLDEN / "example_q20.bfile").read_text()
    assert json.loads(bundle.read_text())["h"] == 17


def test_construct_from_file_csv(tmp_path, capsys):
    terms = tmp_path / "q.csv"
    code, out, _ = run(capsys, "construct", GOLDEN / "fib5.json", "--terms", 16,
                       "--format", "csv", "--terms-output", terms)
    assert code == 0
    assert json.loads(out)["h"] == 15
    assert terms.read_text() == (GOLDEN / "fib5_q16.csv").read_text()


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["--coeffs", "1,1", "--initial", "5"], "length(initial)"),
        (["--coeffs", "1,0", "--initial", "5,8"], "sum to at least 2"),
        (["--k", "3", "--coeffs", "1,1", "--initial", "5,8"], "length(coeffs)"),
        (["--coeffs", "1,1"], "--initial"),
        (["--coeffs", "1,1", "--initial", "5,8", "--h", "3"], "h=3"),
    ],
)
def test_construct_invalid(capsys, argv, fragment):
    code, _, err = run(capsys, "construct", *argv)
    assert code == 2
    assert fragment in err


def test_eval_hofstadter_bfile(capsys):
    code, out, _ = run(capsys, "eval", GOLDEN / "hofstadter_q.json", "--n", 10)
    assert code == 0
    assert out == (GOLDEN / "hofstadter_q10.bfile").read_text()


def test_eval_formats_and_empty(capsys):
    code, out, _ = run(capsys, "eval", GOLDEN / "hofstadter_q.json", "--n", 3, "--format", "csv")
    assert (code, out) == (0, "n,value\n1,1\n2,1\n3,2\n")
    code, out, _ = run(capsys, "eval", GOLDEN / "hofstadter_q.json", "--n", 3, "--format", "json")
    assert json.loads(out) == {"n0": 1, "values": [1, 1, 2]}
    code, out, _ = run(capsys, "eval", GOLDEN / "hofstadter_q.json", "--n", 0)
    assert (code, out) == (0, "")


def test_eval_death(capsys):
    code, out, err = run(capsys, "eval", GOLDEN / "hofstadter_q_dies.json", "--n", 5)
    assert code == 3 and out == ""
    death = json.loads(err)["death"]
    assert death["n"] == 3 and death["inner_index"] == 2 and death["argument"] == 3


def test_eval_invalid_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n0": 1, "coeffs": [1, 1], "initial": [1, -1]}')
    assert run(capsys, "eval", bad, "--n", 5)[0] == 2
    bad.write_text("{not json")
    assert run(capsys, "eval", bad, "--n", 5)[0] == 2
    assert run(capsys, "eval", tmp_path / "missing.json", "--n", 5)[0] == 2


def test_verify_and_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", GOLDEN / "example_bundle.json", "--n", 2000)
    assert code == 0
    assert json.loads(out) == {"pass": True, "checked": 2000, "first_mismatch": None, "death": None}
    bundle = tmp_path / "b.json"
    assert run(capsys, "construct", "--coeffs", "0,2,1,1", "--initial", "3,1,4,1", "-o", bundle)[0] == 0
    assert run(capsys, "verify", bundle, "--n", 3000)[0] == 0


def test_verify_mismatch_and_death(tmp_path, capsys):
    obj = json.loads((GOLDEN / "example_bundle.json").read_text())
    obj["h"], obj["meta"]["initial"] = 15, obj["meta"]["initial"][:16]
    path = tmp_path / "short.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", path, "--n", 500)
    assert code == 4 and json.loads(out)["first_mismatch"]["n"] == 16
    obj["h"], obj["meta"]["initial"] = 11, obj["meta"]["initial"][:12]
    path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", path, "--n", 500)
    assert code == 3 and json.loads(out)["death"]["n"] == 16


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", GOLDEN / "example_bundle.json", "--at", 18)
    assert code == 0
    assert out.splitlines()[0].startswith("M(18) = 120")
    assert "M(-42)" in out and "-> 60" in out
    code, out, _ = run(capsys, "trace", GOLDEN / "example_bundle.json", "--at", 19, "--json")
    trace = json.loads(out)
    assert [t["argument"] for t in trace["terms"]] == [-101, 13, -41]
    assert trace["value"] == 18
    assert run(capsys, "trace", GOLDEN / "example_bundle.json", "--at", 17)[0] == 2


def test_extract(tmp_path, capsys):
    code, out, _ = run(capsys, "eval", GOLDEN / "example_bundle.json", "--n", 40)
    dump = tmp_path / "dump.txt"
    dump.write_text(out)
    code, out, _ = run(capsys, "extract", dump, "--stride", 6, "--offset", 0)
    assert code == 0
    assert [int(line.split()[1]) for line in out.splitlines()] == [30, 40, 60, 120, 200, 320, 560]
    code, out, _ = run(capsys, "extract", GOLDEN / "fib5_q16.csv", "--stride", 4, "--format", "json")
    assert json.loads(out)["values"] == [5, 8, 13, 21]
    assert run(capsys, "extract", dump, "--stride", 0)[0] == 2


def test_output_is_stable(tmp_path, capsys):
    outs = {run(capsys, "construct", "--coeffs", "1,1", "--initial", "5,8", "--terms", 30)[1] for _ in range(3)}
    assert len(outs) == 1


def test_module_entry_point(tmp_path):
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "metafib_embed", "eval", str(GOLDEN / "hofstadter_q.json"), "--n", "10"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "hofstadter_q10.bfile").read_text()
