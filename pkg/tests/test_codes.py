import sys
import tempfile
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import codes
from codes import (
    LinearCode, classify, dual_code, gf3_matrix, is_lcd, is_self_orthogonal,
    pless_check, read_matrix, sphere_packing_max_d, to_report, write_matrix,
)
from errors import CapacityError, SpecSyntaxError, VerificationError


REPETITION = [[1, 1, 1]]
TETRACODE = [[1, 0, 1, 1], [0, 1, 1, 2]]


def in_dual(code, witness):
    vector = np.zeros(code.n_len, dtype=np.int64)
    for position, coefficient in witness.items():
        vector[position] = coefficient
    return not ((code.basis_ints @ vector) % 3).any()


def test_repetition_code():
    """
    Test: [3, 1, 3] repetition code and its [3, 2, 2] dual.
    """
    print("🧪 Test: Repetition code")
    print("-" * 50)

    code = LinearCode(REPETITION, label="rep3")
    assert code.weight_distribution() == {0: 1, 3: 2}
    assert code.minimum_distance() == 3

    report = pless_check(code)
    assert report.count_ok
    assert (report.dual_a1, report.dual_a2, report.dual_a3) == (0, 6, 2)
    assert report.nonnegative_integers
    assert report.dual_distance == 2

    dual = dual_code(code)
    assert dual.dimension == 2
    assert dual.weight_distribution() == {0: 1, 2: 6, 3: 2}

    found = code.dual_distance_upto3()
    assert found.value == 2
    assert in_dual(code, found.witness)
    print("✅ Moments, dual code and search agree")


def test_tetracode():
    """
    Test: The self-dual [4, 2, 3] tetracode.
    """
    print("🧪 Test: Tetracode")
    print("-" * 50)

    code = LinearCode(TETRACODE, label="tetracode")
    assert code.weight_distribution() == {0: 1, 3: 8}
    assert is_self_orthogonal(code)
    assert not is_lcd(code)

    report = code.pless()
    assert (report.dual_a1, report.dual_a2, report.dual_a3) == (0, 0, 8)

    found = code.dual_distance_upto3()
    assert found.value == 3
    assert len(found.witness) == 3
    assert in_dual(code, found.witness)
    assert classify(4, 2, 3)["class"] == "optimal-vs-bound"
    print("✅ Tetracode is self-dual and perfect")


def test_lcd_and_degenerate_codes():
    """
    Test: LCD detection, zero columns, full rank and repeated rows.
    """
    print("🧪 Test: LCD and degenerate codes")
    print("-" * 50)

    code = LinearCode([[1, 1, 0]])
    assert is_lcd(code)
    assert not is_self_orthogonal(code)
    found = code.dual_distance_upto3()
    assert found.value == 1 and found.witness == {2: 1}

    full = LinearCode(np.eye(3, dtype=np.int64))
    assert full.is_lcd()
    assert full.dual_distance_upto3().value == "dual trivial"

    repeated = LinearCode([[1, 1, 0], [2, 2, 0]])
    assert repeated.rank == 1
    assert repeated.weight_distribution() == {0: 1, 2: 2}
    print("✅ Edge cases handled")


def test_sphere_packing_bound():
    """
    Test: Bound values for the LCD duals and classification labels.
    """
    print("🧪 Test: Sphere-packing bound")
    print("-" * 50)

    for n, k in ((32, 27), (87, 81), (223, 216)):
        assert sphere_packing_max_d(n, k) == 4
        assert classify(n, k, 3)["class"] == "almost-optimal-vs-bound"
    assert sphere_packing_max_d(5, 5) == 1
    assert classify(223, 7, 127)["class"] == "neither"
    with pytest.raises(VerificationError):
        classify(4, 2, 4)
    with pytest.raises(SpecSyntaxError):
        sphere_packing_max_d(3, 0)
    print("✅ Bound values as expected")


def test_matrix_files():
    """
    Test: Generator files are written and read back, bad files rejected.
    """
    print("🧪 Test: Matrix files")
    print("-" * 50)

    with tempfile.TemporaryDirectory() as folder:
        path = Path(folder) / "tetracode.txt"
        write_matrix(path, gf3_matrix(TETRACODE))
        assert path.read_text().splitlines() == ["2 4", "1011", "0112"]
        assert np.array_equal(read_matrix(path).view(np.ndarray), np.array(TETRACODE))

        bad = Path(folder) / "bad.txt"
        bad.write_text("2 4\n1011\n0113\n")
        with pytest.raises(SpecSyntaxError):
            read_matrix(bad)
    with pytest.raises(SpecSyntaxError):
        gf3_matrix([1, 2, 0])
    print("✅ Matrix files handled")


def test_threaded_enumeration():
    """
    Test: Chunked threaded enumeration matches the single pass.
    """
    print("🧪 Test: Threaded enumeration")
    print("-" * 50)

    rng = np.random.default_rng(5)
    gen = rng.integers(0, 3, size=(6, 12))
    single = LinearCode(gen).weight_distribution()
    saved = codes.CHUNK_SYMBOLS
    codes.CHUNK_SYMBOLS = 120
    try:
        threaded = LinearCode(gen).weight_distribution(jobs=4)
    finally:
        codes.CHUNK_SYMBOLS = saved
    assert threaded == single
    assert single.total == 3 ** LinearCode(gen).rank
    print("✅ Chunks agree")


def test_capacity_and_report():
    """
    Test: Enumeration limit and the combined report.
    """
    print("🧪 Test: Capacity and report")
    print("-" * 50)

    with pytest.raises(CapacityError):
        LinearCode(np.eye(21, dtype=np.int64)).weight_distribution()

    report = to_report(LinearCode(TETRACODE))
    assert (report["n"], report["k"], report["d"]) == (4, 2, 3)
    assert report["enumerator"] == "1+8x^3"
    assert report["self_orthogonal"] and not report["lcd"]
    assert report["dual_d_upto3"]["value"] == 3
    assert report["bound"]["class"] == "optimal-vs-bound"
    print("✅ Report complete")


if __name__ == "__main__":
    print("🎯 LINEAR CODE TESTS")
    print("=" * 50)

    tests = [
        test_repetition_code,
        test_tetracode,
        test_lcd_and_degenerate_codes,
        test_sphere_packing_bound,
        test_matrix_files,
        test_threaded_enumeration,
        test_capacity_and_report,
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
