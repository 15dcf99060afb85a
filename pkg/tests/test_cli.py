import sys
import json
import tempfile
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from main import main


CUBIC = "Tr([0,1,0]*x^4) @ GF(3^3)"


def test_bound_command():
    """
    Test: bound prints a classification and writes it as JSON.
    """
    print("🧪 Test: bound command")
    print("-" * 50)

    with tempfile.TemporaryDirectory() as folder:
        out = Path(folder) / "bound.json"
        assert main(["bound", "--n", "32", "--k", "27", "--d", "3", "--output", str(out), "-q"]) == 0
        document = json.loads(out.read_text())
        assert document["max_d"] == 4
        assert document["class"] == "almost-optimal-vs-bound"
    assert main(["bound", "--n", "87", "--k", "81"]) == 0
    print("✅ bound works")


def test_analyze_command():
    """
    Test: analyze reports the profile and saves a spectrum plot.
    """
    print("🧪 Test: analyze command")
    print("-" * 50)

    with tempfile.TemporaryDirectory() as folder:
        out = Path(folder) / "profile.json"
        plot = Path(folder) / "plots" / "spectrum.png"
        code = main(["analyze", "--f", CUBIC, "--output", str(out), "--plot", str(plot)])
        assert code == 0
        document = json.loads(out.read_text())
        assert document["profile"]["k"] == 0
        assert document["profile"]["epsilon"] == -1
        assert plot.exists()
    print("✅ analyze works")


def test_construct_command():
    """
    Test: construct with the LCD lift writes the (I | G) generator.
    """
    print("🧪 Test: construct command")
    print("-" * 50)

    with tempfile.TemporaryDirectory() as folder:
        out = Path(folder) / "report.json"
        matrix = Path(folder) / "lcd.txt"
        plot = Path(folder) / "weights.png"
        code = main([
            "construct", "--kind", "traceg", "--n", "1", "--g", CUBIC, "--lambda", "1", "--lcd",
            "--matrix-out", str(matrix), "--plot", str(plot), "--output", str(out), "-q",
        ])
        assert code == 0
        document = json.loads(out.read_text())
        assert document["ok"]
        assert document["lcd"]["length"] == 32
        assert matrix.read_text().splitlines()[0] == "5 32"
        assert plot.exists()
    print("✅ construct works")


def test_lemma_check_command():
    """
    Test: lemma-check accepts inline JSON and a context file.
    """
    print("🧪 Test: lemma-check command")
    print("-" * 50)

    context = {"kind": "trace", "n": 1, "g": "Tr(x^2) @ GF(3^2)", "lambda": 1}
    assert main(["lemma-check", "--lemma", "trace-zeros", "--context", json.dumps(context), "-q"]) == 0

    with tempfile.TemporaryDirectory() as folder:
        path = Path(folder) / "context.json"
        path.write_text(json.dumps(context))
        out = Path(folder) / "lemmas.json"
        code = main(["lemma-check", "--context", str(path), "--sample", "20", "--output", str(out), "-q"])
        assert code == 0
        document = json.loads(out.read_text())
        assert "scaled-dual-level" in document["lemmas"]
        assert all(not entry["mismatches"] for entry in document["lemmas"].values())
    print("✅ lemma-check works")


def test_lambda_choices():
    """
    Test: --lambda only takes the nonzero shifts 1 and 2.
    """
    print("🧪 Test: Lambda choices")
    print("-" * 50)

    for value in ("0", "3"):
        with pytest.raises(SystemExit) as excinfo:
            main(["construct", "--kind", "traceg", "--n", "1", "--g", CUBIC, "--lambda", value])
        assert excinfo.value.code == 2
    print("✅ lambda outside GF(3)* rejected by the parser")


def test_bound_text_labels(capsys):
    """
    Test: Text output carries the same classification label as the JSON.
    """
    print("🧪 Test: bound text labels")
    print("-" * 50)

    assert main(["bound", "--n", "223", "--k", "216", "--d", "3"]) == 0
    assert "almost-optimal-vs-bound" in capsys.readouterr().out
    assert main(["bound", "--n", "223", "--k", "7", "--d", "127"]) == 0
    assert "neither" in capsys.readouterr().out


def test_error_exit_codes():
    """
    Test: Bad input returns 2 instead of raising.
    """
    print("🧪 Test: Error exit codes")
    print("-" * 50)

    assert main(["reproduce", "--example", "99"]) == 2
    assert main(["construct", "--kind", "fg", "--g", CUBIC]) == 2
    assert main(["analyze", "--f", "Tr(x) @ GF(5^2)"]) == 2
    assert main(["bound", "--n", "3", "--k", "1", "--jobs", "0"]) == 2
    assert main(["lemma-check", "--context", "no/such/file.json"]) == 2
    print("✅ Errors mapped to exit code 2")


if __name__ == "__main__":
    print("🎯 COMMAND LINE TESTS")
    print("=" * 50)

    tests = [
        test_bound_command,
        test_analyze_command,
        test_construct_command,
        test_lemma_check_command,
        test_lambda_choices,
        test_error_exit_codes,
    ]
    failed = 0
    for test in tests:
        try:
            test()
        except Exception as e:
            print(f"❌ {test.__name__}: {e}")
            failed += 1

    print(f"\n📊 Results: {'PASSED' if not failed else 'FAILED'}")

    sys.exit(0 if not failed else 1)
