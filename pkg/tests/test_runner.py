import sys
import time
import subprocess
from pathlib import Path


def run_test_file(test_file):
    """
    Run a test file and return (success, output, errors).
    """
    try:
        project_root = Path(__file__).parent.parent
        result = subprocess.run([sys.executable, test_file], capture_output=True, text=True, cwd=project_root)
        return result.returncode == 0, result.stdout, result.stderr
    except Exception as e:
        return False, "", str(e)


def run_all_tests(verbose=False):
    """
    Run all test suites and generate comprehensive report.
    """
    print("🎯 TERNARY CODES - TEST")
    print("=" * 70)
    print("Running all test modules")
    print()

    test_files = [
        ("Field Arithmetic", "test_field.py"),
        ("Eisenstein Integers", "test_eisenstein.py"),
        ("Walsh Spectrum", "test_spectrum.py"),
        ("Character Sums", "test_charsums.py"),
        ("Linear Codes", "test_codes.py"),
        ("Constructions", "test_constructions.py"),
        ("Command Line", "test_cli.py"),
    ]

    results = []
    for test_name, test_file in test_files:
        print(f"🔄 Running {test_name} tests...")

        test_path = Path(__file__).parent / test_file
        if not test_path.exists():
            print(f"❌ Test file not found: {test_file}")
            results.append((test_name, False, f"File not found: {test_file}"))
            continue

        started = time.time()
        success, stdout, stderr = run_test_file(str(test_path))
        elapsed = time.time() - started

        if success:
            print(f"✅ {test_name}: PASSED ({elapsed:.1f}s)")
        else:
            print(f"❌ {test_name}: FAILED ({elapsed:.1f}s)")
            failures = [line for line in stdout.splitlines() if line.startswith("❌")]
            for line in failures:
                print(f"   {line}")
            if stderr:
                print(f"   Error: {stderr.strip()}")
        if verbose:
            print(stdout)

        results.append((test_name, success, stderr if stderr else ""))
        print()

    print("📊 FINAL TEST REPORT")
    print("=" * 60)
    print(f"Date: {time.strftime('%Y-%m-%d %H:%M:%S')}")
    print()

    for test_name, success, error in results:
        status = "✅ PASSED" if success else "❌ FAILED"
        print(f"{status:12} {test_name}")
        if error and not success:
            print(f"             Error: {error.strip()}")

    return all(success for _, success, _ in results)


if __name__ == "__main__":

    if "--help" in sys.argv:
        print("Usage: python3 -m tests.test_runner [--verbose]")
        print("  --verbose: Print the output of every test module")
        sys.exit(0)

    success = run_all_tests(verbose="--verbose" in sys.argv)
    sys.exit(0 if success else 1)
