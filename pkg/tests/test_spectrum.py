import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from catalog import EXAMPLES
from errors import CapacityError, SpecSyntaxError
from eisenstein import EisensteinInt, SQRT_NEG3, zeta_power
from field import make_field
from spectrum import (
    TernaryFunction, admission_reasons, analyze, function_on,
    parse_function_spec, walsh_spectrum, walsh_transform,
)


FIXTURE_SPECS = [
    "Tr(x^2) @ GF(3^1)",
    "Tr(x^2) @ GF(3^2)",
    "Tr(0*x) @ GF(3^2)",
    "Tr(x) @ GF(3^3)",
    "Tr(x^2) @ GF(3^3)",
    "Tr([0,1,0]*x^4) @ GF(3^3)",
    "Tr([0,1,0]*x^4 + x) @ GF(3^3)",
    "Tr([0,1,0]^7*x^4 + [0,1,0]*x^2) @ GF(3^3)",
    "Tr(x^2) @ GF(3^4)",
    "Tr([0,1,0,0]*x^2) @ GF(3^4)",
    "Tr(g^1*x^2) @ GF(3^4)",
    "Tr(2*x^92) @ GF(3^4)",
]


def test_zero_function():
    """
    Test: The zero function peaks at alpha = 0 with value 3^n and vanishes elsewhere.
    """
    print("🧪 Test: Zero function")
    print("-" * 50)

    f = function_on(2, "Tr(0*x)")
    walsh = walsh_spectrum(f)
    assert walsh[0] == EisensteinInt(9, 0)
    assert all(walsh[i].is_zero for i in range(1, 9))

    profile = analyze(f)
    assert profile.plateaued and profile.k == 2 and profile.epsilon == 1
    assert profile.support_size == 1
    assert not profile.balanced
    print("✅ Zero function is 2-plateaued on GF(9)")


def test_linear_function():
    """
    Test: Tr(x) has a single spectral peak at alpha = 1 and is balanced.
    """
    print("🧪 Test: Linear function")
    print("-" * 50)

    params = make_field(3)
    f = parse_function_spec("Tr(x) @ GF(3^3)")
    assert walsh_transform(f, params.one()) == EisensteinInt(27, 0)
    assert walsh_transform(f, params.zero()).is_zero

    profile = analyze(f)
    assert profile.balanced
    assert not profile.symmetric
    assert profile.support.tolist() == [params.index_of(params.one())]
    print("✅ Tr(x) spectrum is a single peak")


def test_parseval():
    """
    Test: Squared norms sum to 3^(2n), and plateaued fixtures have one level 3^(n+k) on 3^(n-k) points.
    """
    print("🧪 Test: Parseval identity")
    print("-" * 50)

    functions = [parse_function_spec(spec) for spec in FIXTURE_SPECS]
    for entry in EXAMPLES.values():
        functions.append(parse_function_spec(entry.g))
        if entry.f:
            functions.append(parse_function_spec(entry.f))
    functions += [function_on(5, "Tr(x^2)"), function_on(5, "Tr(g^1*x^4)"), function_on(6, "Tr(x^2 + g^5*x^4)")]

    plateaued = 0
    for f in functions:
        n = f.params.n
        norms = walsh_spectrum(f).norms
        assert int(norms.sum()) == 3 ** (2 * n), f
        profile = analyze(f)
        if profile.plateaued:
            plateaued += 1
            levels = set(int(v) for v in norms[norms != 0])
            assert levels == {3 ** (n + profile.k)}, f
            assert int(np.count_nonzero(norms)) == profile.support_size == 3 ** (n - profile.k), f
    assert plateaued >= len(FIXTURE_SPECS)
    print(f"✅ Parseval holds on {len(functions)} functions")


def test_plateaued_power_function():
    """
    Test: Tr(2x^92) on GF(81) is 2-plateaued, weakly regular with sign +1.
    """
    print("🧪 Test: 2-plateaued power function")
    print("-" * 50)

    f = parse_function_spec("Tr(2*x^92) @ GF(3^4)")
    profile = analyze(f)
    assert profile.plateaued
    assert profile.k == 2
    assert profile.weakly_regular
    assert profile.epsilon == 1
    assert profile.support_size == 9
    assert profile.symmetric and profile.in_wrp and profile.dual_homogeneous
    assert admission_reasons(f, profile) == []
    print(f"✅ {profile.to_dict()['spectrum']}")


def test_bent_quadratic_forms():
    """
    Test: Nondegenerate quadratic forms are bent; the sign follows the field.
    """
    print("🧪 Test: Bent quadratic forms")
    print("-" * 50)

    cubic = analyze(parse_function_spec("Tr([0,1,0]*x^4) @ GF(3^3)"))
    assert cubic.k == 0 and cubic.epsilon == -1
    assert cubic.support_size == 27

    quartic = analyze(parse_function_spec("Tr([0,1,0,0]*x^2) @ GF(3^4)"))
    assert quartic.k == 0 and quartic.epsilon == 1
    assert quartic.sign_pattern == "positive"
    assert quartic.in_wrp
    print("✅ Quadratic forms are bent")


def test_profile_invariants():
    """
    Test: Support size, exact reconstruction from (k, sign, dual) and f*(0) = 0 in the class.
    """
    print("🧪 Test: Profile invariants")
    print("-" * 50)

    specs = [
        "Tr(x^2) @ GF(3^2)",
        "Tr(0*x) @ GF(3^2)",
        "Tr([0,1,0]*x^4) @ GF(3^3)",
        "Tr([0,1,0]^7*x^4 + [0,1,0]*x^2) @ GF(3^3)",
        "Tr(2*x^92) @ GF(3^4)",
    ]
    for spec in specs:
        f = parse_function_spec(spec)
        profile = analyze(f)
        assert profile.weakly_regular, spec
        assert profile.support_size == 3 ** (f.params.n - profile.k)
        scale = SQRT_NEG3 ** (f.params.n + profile.k)
        for idx in profile.support:
            expected = profile.epsilon * scale * zeta_power(profile.dual(int(idx)))
            assert profile.walsh[int(idx)] == expected
        if profile.in_wrp:
            assert profile.dual(0) == 0
            assert profile.dual_homogeneous
    print("✅ Profiles reconstruct the spectrum")


def test_non_plateaued_function():
    """
    Test: A point indicator has two distinct nonzero norms.
    """
    print("🧪 Test: Non-plateaued function")
    print("-" * 50)

    params = make_field(2)
    table = np.zeros(9, dtype=np.int64)
    table[1] = 1
    f = TernaryFunction.from_table(params, table, label="delta")
    profile = analyze(f)
    assert not profile.plateaued
    assert profile.k is None
    assert admission_reasons(f, profile) == ["f is not plateaued"]
    print("✅ Point indicator rejected")


def test_nonzero_at_origin():
    """
    Test: Tr(x) + 1 is plateaued but fails admission because f(0) = 1.
    """
    print("🧪 Test: Nonzero value at the origin")
    print("-" * 50)

    params = make_field(2)
    f = TernaryFunction.from_table(params, params.trace_table + 1, label="Tr(x)+1")
    profile = analyze(f)
    assert profile.plateaued and profile.weakly_regular
    reasons = admission_reasons(f, profile, name="g")
    assert reasons == ["g(0) = 1, expected 0"]
    print("✅ Nonzero origin rejected")


def test_coefficient_forms():
    """
    Test: Primitive powers, vectors and integers all parse to the same tables.
    """
    print("🧪 Test: Coefficient forms")
    print("-" * 50)

    a = parse_function_spec("Tr(x) @ GF(3^3)")
    b = parse_function_spec("Tr(g^0*x) @ GF(3^3)")
    c = parse_function_spec("Tr([1,0,0]*x) @ GF(3^3)")
    d = parse_function_spec("Tr(4*x) @ GF(3^3)")
    for other in (b, c, d):
        assert np.array_equal(a.table, other.table)

    e = parse_function_spec("Tr([0,1,0]^2*x^2) @ GF(3^3)")
    f = parse_function_spec("Tr([0,0,1]*x^2) @ GF(3^3)")
    assert np.array_equal(e.table, f.table)
    print("✅ Coefficient forms agree")


def test_parser_errors():
    """
    Test: Malformed function specs raise SpecSyntaxError.
    """
    print("🧪 Test: Parser errors")
    print("-" * 50)

    bad = [
        "Tr(x)",
        "x^2 @ GF(3^2)",
        "Tr() @ GF(3^2)",
        "Tr(y) @ GF(3^2)",
        "Tr([0,3]*x) @ GF(3^2)",
        "Tr(h^2*x) @ GF(3^2)",
    ]
    for text in bad:
        with pytest.raises(SpecSyntaxError):
            parse_function_spec(text)
    with pytest.raises(SpecSyntaxError):
        TernaryFunction.from_table(make_field(2), [0, 1, 2])
    print("✅ Malformed specs rejected")


def test_jobs_do_not_change_spectrum():
    """
    Test: Chunked threaded evaluation matches the single-threaded spectrum.
    """
    print("🧪 Test: Threaded spectrum")
    print("-" * 50)

    f = function_on(6, "Tr(x^2 + g^5*x^4)")
    single = walsh_spectrum(f, jobs=1)
    threaded = walsh_spectrum(f, jobs=3)
    assert np.array_equal(single.a_part, threaded.a_part)
    assert np.array_equal(single.b_part, threaded.b_part)
    for idx in (0, 7, 400, 728):
        assert walsh_transform(f, f.params.element_at(idx)) == single[idx]
    print("✅ Threads agree")


def test_capacity_limit():
    """
    Test: Spectra above GF(3^8) are refused.
    """
    print("🧪 Test: Spectrum capacity")
    print("-" * 50)

    params = make_field(9)
    f = TernaryFunction.from_table(params, np.zeros(params.order, dtype=np.int64))
    with pytest.raises(CapacityError, match=r"limited to GF\(3\^8\)"):
        walsh_spectrum(f)
    with pytest.raises(CapacityError):
        analyze(f)
    print("✅ GF(3^9) refused")


if __name__ == "__main__":
    print("🎯 WALSH SPECTRUM TESTS")
    print("=" * 50)

    tests = [
        test_zero_function,
        test_linear_function,
        test_parseval,
        test_plateaued_power_function,
        test_bent_quadratic_forms,
        test_profile_invariants,
        test_non_plateaued_function,
        test_nonzero_at_origin,
        test_coefficient_forms,
        test_parser_errors,
        test_jobs_do_not_change_spectrum,
        test_capacity_limit,
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
