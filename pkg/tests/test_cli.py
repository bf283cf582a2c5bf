import json
import subprocess
import sys

import pytest

from newton_dm1.campaigns import Report, run_campaign
from newton_dm1.cli import main
from newton_dm1.specialization import Chain, verify_chain


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["word", "sum", "11100000", "11100"], "1110011000100"),
        (["word", "minus", "1110011000100"], "1110101000100"),
        (["word", "ell", "1110011000100"], "9"),
        (["word", "dual", "11100000"], "11111000"),
        (["word", "minus", "01"], "10"),
        (["word", "ell", "1100"], "0"),
        (["np", "minword", "(3,5)+(3,2)"], "1110011000100"),
        (["np", "c", "(2,3)+4(1,1)", "(3,5)+(3,2)"], "5"),
        (["np", "c", "(1,1)", "(0,1)+(1,0)"], "1"),
        (["np", "eval", "(0,1)+(1,0)", "1"], "0"),
        (["np", "eval", "(1,1)", "1"], "1/2"),
        (["np", "saturated", "(1,1)", "(0,1)+(1,0)"], "true"),
    ],
)
def test_outputs(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip() == expected


def test_cycles_text_and_json(capsys):
    code, out, _ = run(capsys, "word", "cycles", "1111001000100")
    assert code == 0 and sorted(out.split()) == ["11000", "11010100"]
    code, out, _ = run(capsys, "word", "cycles", "1111001000100", "--json")
    cyc = json.loads(out)
    assert sorted(c["word"] for c in cyc) == ["11000", "11010100"]
    assert sorted(i for c in cyc for i in c["positions"]) == list(range(1, 14))


def test_show_formats(capsys):
    code, out, _ = run(capsys, "word", "show", "10")
    assert code == 0 and "cycles:" in out and "V" in out
    code, out, _ = run(capsys, "word", "show", "10", "--dot")
    assert out.startswith("digraph") and "n1 -> n2" in out
    code, out, _ = run(capsys, "word", "show", "10", "--json")
    assert json.loads(out)["succ"] == [2, 1]


def test_enumerate(capsys):
    code, out, _ = run(capsys, "np", "enumerate", "2", "1")
    assert code == 0 and set(out.split()) == {"(1,1)", "(0,1)+(1,0)"}


def test_chain_text(capsys):
    code, out, err = run(capsys, "chain", "(1,1)", "(0,1)+(1,0)", "--verify")
    assert code == 0
    assert "A(0) = 10" in out and "A(1) = 01" in out
    assert "verified" in err


def test_chain_json_round_trip(capsys):
    code, out, _ = run(capsys, "chain", "(2,3)+4(1,1)", "(3,5)+(3,2)", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["c"] == 5 and len(obj["words"]) == 6 and len(obj["steps"]) == 5
    assert obj["method"] == "constructive"
    assert obj["words"][-1] == "1110011000100"
    ch = Chain.from_json(obj)
    assert verify_chain(ch)
    assert json.dumps(ch.to_json(), sort_keys=True, indent=2) == out.strip()


@pytest.mark.parametrize(
    "argv,code",
    [
        (["word", "show", "10a"], 1),
        (["np", "c", "(2,2)", "(1,1)"], 1),
        (["np", "c", "(1,1", "(1,1)"], 1),
        (["np", "eval", "(1,1)", "x"], 1),
        (["word", "minus", "1100"], 2),
        (["chain", "(0,1)+(1,0)", "(1,1)"], 2),
        (["np", "c", "(0,1)+(1,0)", "(1,1)"], 2),
        (["np", "c", "(1,1)", "(1,2)"], 2),
        (["verify", "axioms", "--hmax", "99"], 1),
        (["word", "ell", "10", "01"], 1),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_argparse_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["word"])
    assert exc.value.code == 1


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "theorem", "--hmax", "6")
    assert code == 0 and out.startswith("PASS theorem")


def test_verify_theorem_base(capsys):
    code, out, _ = run(capsys, "verify", "theorem", "--hmax", "2", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["instances"] == 1 and obj["counterexamples"] == []


def test_verify_axioms_eight(capsys):
    code, out, _ = run(capsys, "verify", "axioms", "--hmax", "8", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["per_case"]["h=8"] == 2**8


def test_verify_counterexample_exit_three(capsys):
    code, out, _ = run(capsys, "verify", "triangles", "--hmax", "2")
    assert code == 3 and out.startswith("FAIL triangles") and "counterexample" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "algebra", "--hmax", "6", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["status"] == "pass"
    rep = Report.from_json(obj)
    assert rep.ok and rep.instances == obj["instances"]


def test_report_json_round_trip():
    rep = run_campaign("prop4", 8)
    again = Report.from_json(json.loads(json.dumps(rep.to_json())))
    assert again == rep


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "newton_dm1", "word", "sum", "11100000", "11100"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0 and res.stdout.strip() == "1110011000100"
