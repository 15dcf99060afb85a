"""
Self-orthogonal codes from defining sets, their predicted parameters, and
the LCD lift (I | G).

Two families of defining set are supported:

- fg:     D = {(x, y) : f(x) + g(y) + lam = 0}  on GF(3^n) x GF(3^m)
- traceg: D = {(x, y) : Tr(x) + g(y) + lam = 0}

The code generated by Tr(a x_j) + Tr(b y_j) + c over D is built directly and
compared with the weight tables below.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

try:
    from .errors import AdmissionError, PreconditionError, VerificationError
    from .eisenstein import quadratic_character
    from .field import FieldParams, P, make_field
    from .spectrum import SpectrumProfile, TernaryFunction, admission_reasons, analyze
    from .codes import LinearCode, classify, gf3_matrix
except ImportError:
    from errors import AdmissionError, PreconditionError, VerificationError
    from eisenstein import quadratic_character
    from field import FieldParams, P, make_field
    from spectrum import SpectrumProfile, TernaryFunction, admission_reasons, analyze
    from codes import LinearCode, classify, gf3_matrix

logger = logging.getLogger(__name__)

FG = "fg"
TRACE_G = "traceg"
VARIANTS = ("derived", "reference")


@dataclass
class DefiningSet:
    kind: str
    lam: int
    x_params: FieldParams
    y_params: FieldParams
    x_index: np.ndarray
    y_index: np.ndarray
    g: TernaryFunction
    g_profile: SpectrumProfile
    f: Optional[TernaryFunction] = None
    f_profile: Optional[SpectrumProfile] = None

    @property
    def length(self) -> int:
        return len(self.x_index)

    @property
    def n(self) -> int:
        return self.x_params.n

    @property
    def m(self) -> int:
        return self.y_params.n

    @property
    def s(self) -> int:
        return self.n + self.m

    def describe(self) -> Dict:
        info = {"kind": self.kind, "lambda": self.lam, "g": str(self.g), "g_profile": self.g_profile.to_dict()}
        if self.kind == FG:
            info["f"] = str(self.f)
            info["f_profile"] = self.f_profile.to_dict()
        else:
            info["n"] = self.n
        return info


def build_defining_set(f: Optional[TernaryFunction], g: TernaryFunction, lam: int,
                       n: Optional[int] = None, jobs: int = 1,
                       f_profile: Optional[SpectrumProfile] = None,
                       g_profile: Optional[SpectrumProfile] = None) -> DefiningSet:
    """Pairs in lexicographic (x, y) order; pass f=None and n for the Tr(x) family."""
    lam %= P
    g_profile = g_profile or analyze(g, jobs)
    reasons = admission_reasons(g, g_profile, "g")
    if f is None:
        if n is None:
            raise AdmissionError("The Tr(x) family needs the degree n of the x field")
        kind = TRACE_G
        x_params = make_field(n)
        x_table = x_params.trace_table
    else:
        kind = FG
        f_profile = f_profile or analyze(f, jobs)
        reasons = admission_reasons(f, f_profile, "f") + reasons
        x_params = f.params
        x_table = f.table
    if reasons:
        raise AdmissionError("Defining set rejected: " + "; ".join(reasons), reasons)

    hits = (x_table.astype(np.int64)[:, None] + g.table.astype(np.int64)[None, :] + lam) % P == 0
    x_index, y_index = np.nonzero(hits)
    logger.info("%s defining set with lam=%d has %d points", kind, lam, len(x_index))
    return DefiningSet(kind, lam, x_params, g.params, x_index, y_index, g, g_profile, f,
                       f_profile if kind == FG else None)


def _basis_traces(params: FieldParams, points: np.ndarray) -> np.ndarray:
    xi = params.primitive
    rows = np.array([params.index_of(xi ** i) for i in range(params.n)])
    return params.trace_products(rows)[:, points]


def augmented_generator(ds: DefiningSet):
    """Rows Tr(xi^i x_j), then Tr(xi^i y_j), then all ones."""
    top = _basis_traces(ds.x_params, ds.x_index)
    middle = _basis_traces(ds.y_params, ds.y_index)
    ones = np.ones((1, ds.length), dtype=np.int64)
    return gf3_matrix(np.vstack([top, middle, ones]))


# --- predicted parameters -------------------------------------------------------


@dataclass
class PredictedCode:
    table: str
    length: int
    dimension: int
    rows: List[Tuple[int, int]]
    variant: str = "derived"

    @property
    def distribution(self) -> Dict[int, int]:
        merged = {0: 1}
        for w, c in self.rows:
            if c:
                merged[w] = merged.get(w, 0) + c
        return dict(sorted(merged.items()))

    @property
    def min_distance(self) -> int:
        return min(w for w in self.distribution if w > 0)

    @property
    def dual_params(self) -> Tuple[int, int, int]:
        return self.length, self.length - self.dimension, 3

    @property
    def divisible_by_three(self) -> bool:
        return all(w % P == 0 for w in self.distribution)

    def to_dict(self) -> Dict:
        return {
            "table": self.table,
            "variant": self.variant,
            "length": self.length,
            "dimension": self.dimension,
            "min_distance": self.min_distance,
            "rows": [list(r) for r in self.rows],
            "distribution": [[w, c] for w, c in self.distribution.items() if w],
            "dual_params": list(self.dual_params),
        }


@dataclass
class LcdPrediction:
    length: int
    dimension: int
    min_distance_at_least: int
    dual_params: Tuple[int, int, int]

    def to_dict(self) -> Dict:
        return {
            "length": self.length,
            "dimension": self.dimension,
            "min_distance_at_least": self.min_distance_at_least,
            "dual_params": list(self.dual_params),
        }


def _require_wrp(profile: SpectrumProfile, name: str) -> None:
    if not profile.in_wrp:
        missing = []
        if profile.balanced:
            missing.append("balanced")
        if not profile.symmetric:
            missing.append("not symmetric")
        if not profile.weakly_regular:
            missing.append("not weakly regular")
        raise PreconditionError(f"{name} is outside the weight-table class ({', '.join(missing)})")
    if not profile.dual_homogeneous:
        raise PreconditionError(f"{name} has a dual that is not homogeneous")


def _fg_even_rows(s: int, big_k: int, eps: int, variant: str) -> Tuple[Fraction, List[Tuple[Fraction, Fraction]]]:
    t = Fraction(eps * (-3) ** ((s + big_k - 2) // 2))
    r = Fraction((-1) ** (s + 1) * eps * (-3) ** ((s - big_k - 2) // 2))
    base = 2 * Fraction(3) ** (s - 2)
    q = Fraction(3) ** (s - big_k - 1)
    last = base - 2 * t if variant == "reference" else base + 2 * t / 3
    rows = [
        (base + 2 * t, q - r),
        (base + t, 4 * q + 2 * r - 2),
        (base, 4 * q - r - 1),
        (Fraction(3) ** (s - 1) + t, Fraction(2)),
        (last, Fraction(3) ** (s + 1) - Fraction(3) ** (s - big_k + 1)),
    ]
    return Fraction(3) ** (s - 1) + t, rows


def _fg_odd_rows(s: int, big_k: int, eps: int, eta: int) -> Tuple[Fraction, List[Tuple[Fraction, Fraction]]]:
    v = Fraction(eps * (-3) ** ((s + big_k - 3) // 2))
    q = Fraction(3) ** (s - big_k - 1)
    rm = Fraction((-1) ** s * eps * (-3) ** ((s - big_k - 1) // 2))
    base = 2 * Fraction(3) ** (s - 2)
    rows = [
        (base + 2 * eta * v, Fraction(3) ** (s + 1) - 2 * Fraction(3) ** (s - big_k) - 3 * eta * rm),
        (base, q - 1),
        (base + 4 * eta * v, q + eta * rm),
        (base + 3 * eta * v, 2 * q - 2),
        (base + eta * v, 2 * q + 2 * eta * rm),
        (Fraction(3) ** (s - 1) + 3 * eta * v, Fraction(2)),
    ]
    return Fraction(3) ** (s - 1) + 3 * eta * v, rows


def _trace_rows(n: int, m: int, k_g: int, eps_g: int) -> Tuple[str, Fraction, List[Tuple[Fraction, Fraction]]]:
    s = n + m
    z = Fraction(3) ** (m - k_g)
    base = 2 * Fraction(3) ** (s - 2)
    top = Fraction(3) ** (s - 1)
    if (m + k_g) % 2 == 0:
        q = Fraction(3) ** (n - 2) * eps_g * (-3) ** ((m + k_g) // 2)
        rows = [(base - 2 * q, 2 * z), (base + q, 4 * z), (base, Fraction(3) ** (s + 1) - 6 * z - 3), (top, Fraction(2))]
        return "trace-even", top, rows
    q = Fraction(3) ** (n - 2) * eps_g * (-3) ** ((m + k_g + 1) // 2)
    rows = [(base - q, 2 * z), (base + q, 2 * z), (base, Fraction(3) ** (s + 1) - 4 * z - 3), (top, Fraction(2))]
    return "trace-odd", top, rows


def _as_integers(table: str, length: Fraction, rows) -> Tuple[int, List[Tuple[int, int]]]:
    if length.denominator != 1 or length <= 0:
        raise PreconditionError(f"{table}: length {length} is not a positive integer")
    out = []
    for w, c in rows:
        if w.denominator != 1 or c.denominator != 1 or w <= 0 or c < 0:
            raise PreconditionError(f"{table}: row ({w}, {c}) is not a positive integral weight")
        out.append((int(w), int(c)))
    return int(length), out


def select_table(ds: DefiningSet) -> str:
    if ds.kind == TRACE_G:
        return "trace-even" if (ds.m + ds.g_profile.k) % 2 == 0 else "trace-odd"
    big_k = ds.f_profile.k + ds.g_profile.k
    return "fg-even" if (ds.s + big_k) % 2 == 0 else "fg-odd"


def predict(ds: DefiningSet, variant: str = "derived") -> PredictedCode:
    """Length, dimension and weight distribution from the Walsh data alone."""
    if variant not in VARIANTS:
        raise ValueError(f"Unknown variant '{variant}' (expected one of {VARIANTS})")
    if ds.lam == 0:
        raise PreconditionError("Weight tables need lam != 0")
    _require_wrp(ds.g_profile, "g")
    s = ds.s
    if ds.kind == TRACE_G:
        table, length, rows = _trace_rows(ds.n, ds.m, ds.g_profile.k, ds.g_profile.epsilon)
    else:
        _require_wrp(ds.f_profile, "f")
        big_k = ds.f_profile.k + ds.g_profile.k
        if big_k >= s - 3:
            raise PreconditionError(f"k_f + k_g = {big_k} must be below s - 3 = {s - 3}")
        eps = ds.f_profile.epsilon * ds.g_profile.epsilon
        if (s + big_k) % 2 == 0:
            table = "fg-even"
            length, rows = _fg_even_rows(s, big_k, eps, variant)
        else:
            table = "fg-odd"
            length, rows = _fg_odd_rows(s, big_k, eps, quadratic_character(ds.lam))
    int_length, int_rows = _as_integers(table, length, rows)
    prediction = PredictedCode(table, int_length, s + 1, int_rows, variant)
    total = sum(prediction.distribution.values())
    if total != 3 ** (s + 1):
        raise VerificationError(f"{table}: predicted multiplicities add up to {total}, expected {3 ** (s + 1)}")
    logger.info("Prediction from %s (%s): length %d", table, variant, int_length)
    return prediction


def predict_lcd(prediction: PredictedCode) -> LcdPrediction:
    length = prediction.length + prediction.dimension
    return LcdPrediction(length, prediction.dimension, prediction.min_distance + 1,
                         (length, prediction.length, 3))


def lift_generator(generator) -> LinearCode:
    """(I_k | G) for a full-rank generator G."""
    code = LinearCode(generator)
    k = code.gen.shape[0]
    if code.rank != k:
        raise VerificationError(f"Generator has rank {code.rank} but {k} rows; (I | G) would not be systematic")
    plain = code.gen.view(np.ndarray).astype(np.int64)
    return LinearCode(np.hstack([np.eye(k, dtype=np.int64), plain]), label="LCD lift")


def build_lcd(ds: DefiningSet, variant: str = "derived") -> Tuple[LinearCode, Optional[LcdPrediction]]:
    """LCD lift of the augmented code of ds, with its predicted parameters when a weight table applies."""
    lifted = lift_generator(augmented_generator(ds))
    try:
        expected = predict_lcd(predict(ds, variant))
    except PreconditionError as e:
        logger.info("No LCD prediction for %s: %s", ds.kind, e)
        expected = None
    return lifted, expected


# --- verification ---------------------------------------------------------------------


@dataclass
class VerificationReport:
    construction: Dict
    actual: Dict
    prediction: Optional[Dict] = None
    prediction_note: str = ""
    lcd: Optional[Dict] = None
    reference: Optional[Dict] = None
    mismatches: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> Dict:
        return {
            "construction": self.construction,
            "actual": self.actual,
            "prediction": self.prediction,
            "prediction_note": self.prediction_note,
            "lcd": self.lcd,
            "reference": self.reference,
            "mismatches": list(self.mismatches),
            "warnings": list(self.warnings),
            "ok": self.ok,
        }


def _dual_check(code: LinearCode, jobs: int, mismatches: List[str], tag: str) -> Dict:
    dual = code.dual_distance_upto3()
    pless = code.pless(jobs)
    if not pless.nonnegative_integers or not pless.count_ok:
        mismatches.append(f"{tag}: power moments give non-integral dual counts {pless.to_dict()}")
    elif dual.value != "dual trivial" and pless.dual_distance != dual.value:
        mismatches.append(f"{tag}: power moments say d_dual={pless.dual_distance}, search says {dual.value}")
    return {"dual_d_upto3": dual.to_dict(), "pless": pless.to_dict()}


def _compare_reference(actual_dist: Dict[int, int], n_len: int, k: int, d: Optional[int], dual_d,
                       claim: Dict, warnings: List[str], tag: str) -> Dict:
    checks = {}
    for key, value in (("length", n_len), ("dimension", k), ("min_distance", d), ("dual_distance", dual_d)):
        if key in claim:
            checks[key] = {"claimed": claim[key], "actual": value, "match": claim[key] == value}
    if "distribution" in claim:
        claimed = {int(w): int(c) for w, c in claim["distribution"].items()}
        actual_nonzero = {w: c for w, c in actual_dist.items() if w}
        checks["distribution"] = {"match": claimed == actual_nonzero}
    for key, check in checks.items():
        if not check["match"]:
            warnings.append(f"{tag}: published {key} differs from the enumerated code")
    return checks


def verify_construction(ds: DefiningSet, lcd: bool = False, jobs: int = 1,
                        reference: Optional[Dict] = None, variant: str = "derived") -> VerificationReport:
    mismatches: List[str] = []
    warnings: List[str] = []
    gen = augmented_generator(ds)
    code = LinearCode(gen, label=f"{ds.kind} code")
    dist = code.weight_distribution(jobs)
    so = code.self_orthogonality(jobs)
    d = dist.min_nonzero

    actual = {
        "length": code.n_len,
        "dimension": code.rank,
        "min_distance": d,
        "distribution": dist.nonzero_pairs(),
        "enumerator": dist.enumerator(),
        "self_orthogonal": so.ok,
        "bound": classify(code.n_len, code.rank, d) if d else None,
    }
    actual.update(_dual_check(code, jobs, mismatches, "code"))
    if code.rank != ds.s + 1:
        mismatches.append(f"dimension {code.rank} differs from s + 1 = {ds.s + 1}")

    report = VerificationReport(ds.describe(), actual, mismatches=mismatches, warnings=warnings)

    prediction = None
    try:
        prediction = predict(ds, variant)
    except PreconditionError as e:
        report.prediction_note = f"no prediction: {e}"
        logger.info("No prediction for %s: %s", ds.kind, e)
    if prediction is not None:
        report.prediction = prediction.to_dict()
        if prediction.length != code.n_len:
            mismatches.append(f"length: predicted {prediction.length}, actual {code.n_len}")
        if prediction.distribution != dict(dist.as_pairs()):
            mismatches.append("weight distribution differs from prediction")
        dual_value = actual["dual_d_upto3"]["value"]
        if dual_value != prediction.dual_params[2]:
            mismatches.append(f"dual distance: predicted 3, actual {dual_value}")
        if not so.ok:
            mismatches.append("predicted self-orthogonal code is not self-orthogonal")

    if lcd:
        report.lcd = _verify_lcd(gen, code, so.ok, prediction, jobs, mismatches, warnings, reference)

    if reference:
        report.reference = _compare_reference(dict(dist.as_pairs()), code.n_len, code.rank, d,
                                              actual["dual_d_upto3"]["value"], reference, warnings, "code")
    for w in warnings:
        logger.warning(w)
    return report


def _verify_lcd(gen, code: LinearCode, self_orthogonal: bool, prediction: Optional[PredictedCode],
                jobs: int, mismatches: List[str], warnings: List[str],
                reference: Optional[Dict]) -> Dict:
    lifted = lift_generator(gen)
    dist = lifted.weight_distribution(jobs)
    d = dist.min_nonzero
    lcd_ok = lifted.is_lcd()
    block = {
        "length": lifted.n_len,
        "dimension": lifted.rank,
        "min_distance": d,
        "distribution": dist.nonzero_pairs(),
        "is_lcd": lcd_ok,
        "bound": classify(lifted.n_len, lifted.rank, d) if d else None,
    }
    block.update(_dual_check(lifted, jobs, mismatches, "lcd"))
    if self_orthogonal and not lcd_ok:
        mismatches.append("(I | G) of a self-orthogonal code is not LCD")
    d_so = code.minimum_distance(jobs)
    if d is not None and d_so is not None and d < d_so + 1:
        mismatches.append(f"lcd minimum distance {d} is below {d_so + 1}")
    if prediction is not None:
        expected = predict_lcd(prediction)
        block["prediction"] = expected.to_dict()
        if expected.length != lifted.n_len or expected.dimension != lifted.rank:
            mismatches.append("lcd length or dimension differs from prediction")
        if block["dual_d_upto3"]["value"] != 3:
            mismatches.append(f"lcd dual distance: predicted 3, actual {block['dual_d_upto3']['value']}")
    if reference and "lcd" in reference:
        block["reference"] = _compare_reference(dict(dist.as_pairs()), lifted.n_len, lifted.rank, d,
                                                block["dual_d_upto3"]["value"], reference["lcd"], warnings, "lcd")
    return block
