"""
Ternary functions on GF(3^n) and their Walsh spectra.

A function is stored as its value table in field enumeration order. The
Walsh transform W_f(a) = sum_x zeta^(f(x) - Tr(a*x)) is computed exactly
from per-row value counts, so the whole spectrum is three histograms per a.
"""

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

try:
    from .errors import CapacityError, SpecSyntaxError, VerificationError
    from .eisenstein import EisensteinInt, SQRT_NEG3, UNITS, from_counts, quadratic_character
    from .field import MAX_DEGREE, FieldElement, FieldParams, P, make_field, parse_field_spec
except ImportError:
    from errors import CapacityError, SpecSyntaxError, VerificationError
    from eisenstein import EisensteinInt, SQRT_NEG3, UNITS, from_counts, quadratic_character
    from field import MAX_DEGREE, FieldElement, FieldParams, P, make_field, parse_field_spec

logger = logging.getLogger(__name__)

MAX_SPECTRUM_DEGREE = 8
SPECTRUM_CHUNK_ROWS = 243
FULL_CHECK_ORDER = 729
SAMPLE_CHECK_POINTS = 64

__all__ = [
    "TernaryFunction",
    "WalshSpectrum",
    "SpectrumProfile",
    "walsh_transform",
    "walsh_spectrum",
    "analyze",
    "parse_function_spec",
    "admission_reasons",
    "quadratic_character",
]


@dataclass
class TernaryFunction:
    params: FieldParams
    table: np.ndarray
    terms: List[Tuple[FieldElement, int]] = field(default_factory=list)
    label: str = ""

    @classmethod
    def from_terms(cls, params: FieldParams, terms: Sequence[Tuple[FieldElement, int]], label: str = "",
                   check_seed: int = 0) -> "TernaryFunction":
        terms = list(terms)
        xs = params.elements()
        acc = params.gf.Zeros(params.order)
        for coeff, exponent in terms:
            if exponent < 0:
                raise SpecSyntaxError(f"Negative exponent {exponent} in {label or 'function'}")
            acc = acc + params.to_galois(coeff) * (xs ** exponent)
        if params.n == 1:
            values = acc.view(np.ndarray)
        else:
            values = acc.field_trace().view(np.ndarray)
        table = np.asarray(values, dtype=np.uint8)
        func = cls(params, table, terms, label or render_terms(terms, params))
        func._check_against_scalar(check_seed)
        return func

    @classmethod
    def from_table(cls, params: FieldParams, values: Sequence[int], label: str = "table") -> "TernaryFunction":
        table = np.asarray(values, dtype=np.int64) % P
        if table.shape != (params.order,):
            raise SpecSyntaxError(f"Table has {table.size} entries, expected {params.order}")
        return cls(params, table.astype(np.uint8), [], label)

    def evaluate(self, x: FieldElement) -> int:
        """Scalar evaluation, independent of the vectorized table."""
        if not self.terms:
            return int(self.table[self.params.index_of(x)])
        total = self.params.zero()
        for coeff, exponent in self.terms:
            total = total + coeff * (x ** exponent)
        return total.trace()

    def _check_against_scalar(self, seed: int) -> None:
        order = self.params.order
        if order <= FULL_CHECK_ORDER:
            points = np.arange(order)
        else:
            points = np.random.default_rng(seed).choice(order, size=SAMPLE_CHECK_POINTS, replace=False)
        for idx in points:
            expected = self.evaluate(self.params.element_at(int(idx)))
            if expected != int(self.table[idx]):
                raise VerificationError(
                    f"Table of {self.label} disagrees with scalar evaluation at index {int(idx)}"
                )

    @property
    def at_zero(self) -> int:
        return int(self.table[0])

    def __str__(self):
        return f"{self.label} @ {self.params.spec}"


def render_terms(terms, params: FieldParams) -> str:
    parts = []
    for coeff, exponent in terms:
        mono = "x" if exponent == 1 else f"x^{exponent}"
        parts.append(mono if coeff == params.one() else f"{coeff}*{mono}")
    return "Tr(" + " + ".join(parts) + ")"


@dataclass
class WalshSpectrum:
    """W(a) = a_part + b_part * zeta for every a in enumeration order."""

    params: FieldParams
    a_part: np.ndarray
    b_part: np.ndarray

    def __getitem__(self, index: int) -> EisensteinInt:
        return EisensteinInt(int(self.a_part[index]), int(self.b_part[index]))

    def __len__(self):
        return len(self.a_part)

    @property
    def norms(self) -> np.ndarray:
        a, b = self.a_part, self.b_part
        return a * a - a * b + b * b


def _counts_to_parts(diff: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    c0 = (diff == 0).sum(axis=1)
    c1 = (diff == 1).sum(axis=1)
    c2 = (diff == 2).sum(axis=1)
    return (c0 - c2).astype(np.int64), (c1 - c2).astype(np.int64)


def walsh_transform(f: TernaryFunction, alpha: FieldElement) -> EisensteinInt:
    traces = f.params.scaled_trace_table(alpha)
    diff = (f.table.astype(np.int64) - traces) % P
    counts = [int((diff == c).sum()) for c in range(P)]
    return from_counts(*counts)


def _spectrum_rows(f: TernaryFunction, start: int, stop: int):
    rows = np.arange(start, stop)
    diff = (f.table.astype(np.int64)[None, :] - f.params.trace_products(rows)) % P
    logger.debug("Spectrum rows %d..%d of %d", start, stop, f.params.order)
    return _counts_to_parts(diff)


def walsh_spectrum(f: TernaryFunction, jobs: int = 1) -> WalshSpectrum:
    params = f.params
    if params.n > MAX_SPECTRUM_DEGREE:
        raise CapacityError(
            f"Spectrum of a function on GF(3^{params.n}) needs 3^{2 * params.n} evaluations; spectra are "
            f"limited to GF(3^{MAX_SPECTRUM_DEGREE}) although field arithmetic goes up to GF(3^{MAX_DEGREE})"
        )
    bounds = [(s, min(s + SPECTRUM_CHUNK_ROWS, params.order)) for s in range(0, params.order, SPECTRUM_CHUNK_ROWS)]
    if jobs > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda b: _spectrum_rows(f, *b), bounds))
    else:
        parts = [_spectrum_rows(f, *b) for b in bounds]
    a_part = np.concatenate([p[0] for p in parts])
    b_part = np.concatenate([p[1] for p in parts])
    return WalshSpectrum(params, a_part, b_part)


@dataclass
class SpectrumProfile:
    n: int
    plateaued: bool
    k: Optional[int] = None
    epsilon: Optional[int] = None
    weakly_regular: bool = False
    sign_pattern: str = "none"
    dual_table: Optional[np.ndarray] = None
    support_mask: Optional[np.ndarray] = None
    balanced: bool = False
    symmetric: bool = False
    in_wrp: bool = False
    dual_homogeneous: bool = False
    spectrum: Dict[str, int] = field(default_factory=dict)
    walsh: Optional[WalshSpectrum] = field(default=None, repr=False)
    at_zero: int = 0

    @property
    def support(self) -> np.ndarray:
        if self.support_mask is None:
            return np.array([], dtype=np.int64)
        return np.flatnonzero(self.support_mask)

    @property
    def support_size(self) -> int:
        return int(self.support_mask.sum()) if self.support_mask is not None else 0

    def in_support(self, index: int) -> bool:
        return bool(self.support_mask[index])

    def dual(self, index: int) -> int:
        return int(self.dual_table[index])

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "plateaued": self.plateaued,
            "k": self.k,
            "epsilon": self.epsilon,
            "weakly_regular": self.weakly_regular,
            "sign_pattern": self.sign_pattern,
            "support_size": self.support_size,
            "balanced": self.balanced,
            "symmetric": self.symmetric,
            "in_wrp": self.in_wrp,
            "dual_homogeneous": self.dual_homogeneous,
            "f_at_zero": self.at_zero,
            "spectrum": dict(self.spectrum),
        }


def _power_of_three(value: int) -> Optional[int]:
    if value < 1:
        return None
    e = 0
    while value % P == 0:
        value //= P
        e += 1
    return e if value == 1 else None


def _is_symmetric(f: TernaryFunction) -> bool:
    return f.at_zero == 0 and bool(np.array_equal(f.table[f.params.negation_index], f.table))


def analyze(f: TernaryFunction, jobs: int = 1) -> SpectrumProfile:
    params = f.params
    walsh = walsh_spectrum(f, jobs)
    norms = walsh.norms
    nonzero = norms != 0
    values, counts = np.unique(np.stack([walsh.a_part, walsh.b_part]), axis=1, return_counts=True)
    spectrum = {str(EisensteinInt(int(a), int(b))): int(c) for (a, b), c in zip(values.T, counts)}

    base = SpectrumProfile(
        n=params.n,
        plateaued=False,
        balanced=bool(norms[0] == 0),
        symmetric=_is_symmetric(f),
        spectrum=spectrum,
        walsh=walsh,
        at_zero=f.at_zero,
    )

    levels = np.unique(norms[nonzero])
    exponent = _power_of_three(int(levels[0])) if len(levels) == 1 else None
    if exponent is None or exponent < params.n:
        logger.info("%s is not plateaued (%d distinct nonzero norms)", f.label, len(levels))
        return base

    k = exponent - params.n
    scale = SQRT_NEG3 ** exponent
    signs = np.zeros(params.order, dtype=np.int64)
    dual = np.zeros(params.order, dtype=np.uint8)
    for unit_index, unit in enumerate(UNITS):
        target = unit * scale
        hit = nonzero & (walsh.a_part == target.a) & (walsh.b_part == target.b)
        signs[hit] = 1 if unit_index < 3 else -1
        dual[hit] = unit_index % 3
    if np.any(signs[nonzero] == 0):
        raise VerificationError(f"Walsh value of {f.label} is not an associate of (sqrt(-3))^{exponent}")

    present = set(np.unique(signs[nonzero]).tolist())
    weakly_regular = len(present) == 1
    epsilon = present.pop() if weakly_regular else None
    if weakly_regular:
        pattern = "positive" if epsilon == 1 else "negative"
    else:
        pattern = "mixed"

    negated = params.negation_index
    dual_homogeneous = bool(
        np.array_equal(nonzero[negated], nonzero) and np.array_equal(dual[negated][nonzero], dual[nonzero])
    )

    base.plateaued = True
    base.k = k
    base.epsilon = epsilon
    base.weakly_regular = weakly_regular
    base.sign_pattern = pattern
    base.dual_table = dual
    base.support_mask = nonzero
    base.dual_homogeneous = dual_homogeneous
    base.in_wrp = weakly_regular and not base.balanced and base.symmetric
    logger.info(
        "%s: %d-plateaued, sign %s, balanced=%s, symmetric=%s",
        f.label, k, pattern, base.balanced, base.symmetric,
    )
    return base


_TERM_RE = re.compile(r"^(?:(?P<coeff>[^*]+)\*)?x(?:\^(?P<exp>\d+))?$")
_POWER_COEFF_RE = re.compile(r"^g\^(\d+)$")
_VECTOR_COEFF_RE = re.compile(r"^\[([0-9,]+)\](?:\^(\d+))?$")


def _parse_coefficient(text: str, params: FieldParams) -> FieldElement:
    if text is None:
        return params.one()
    match = _POWER_COEFF_RE.match(text)
    if match:
        return params.primitive ** int(match.group(1))
    match = _VECTOR_COEFF_RE.match(text)
    if match:
        digits = [int(d) for d in match.group(1).split(",")]
        if any(d > 2 for d in digits):
            raise SpecSyntaxError(f"Coefficient digits must be 0..2: '{text}'")
        value = params.element(digits)
        return value ** int(match.group(2)) if match.group(2) else value
    if text.isdigit():
        return params.scalar(int(text))
    raise SpecSyntaxError(f"Cannot parse coefficient '{text}'")


def parse_function_spec(text: str, default_field: Optional[FieldParams] = None) -> TernaryFunction:
    """Parse 'Tr(c1*x^e1 + c2*x^e2) @ GF(3^n)[/modulus]'."""
    body, _, field_text = text.partition("@")
    field_text = field_text.strip()
    if field_text:
        params = parse_field_spec(field_text)
    elif default_field is not None:
        params = default_field
    else:
        raise SpecSyntaxError(f"Function spec '{text}' names no field (append '@ GF(3^n)')")

    body = body.replace(" ", "")
    if not (body.startswith("Tr(") and body.endswith(")")):
        raise SpecSyntaxError(f"Function spec must look like Tr(...): '{text}'")
    inner = body[3:-1]
    if not inner:
        raise SpecSyntaxError(f"Empty trace argument in '{text}'")

    terms = []
    for chunk in inner.split("+"):
        match = _TERM_RE.match(chunk)
        if not match:
            raise SpecSyntaxError(f"Cannot parse term '{chunk}' in '{text}'")
        coeff = _parse_coefficient(match.group("coeff"), params)
        exponent = int(match.group("exp")) if match.group("exp") else 1
        terms.append((coeff, exponent))
    return TernaryFunction.from_terms(params, terms, label=f"Tr({inner})")


def function_on(n: int, terms_text: str) -> TernaryFunction:
    """Shorthand used by fixtures: 'Tr(...)' on the default GF(3^n)."""
    return parse_function_spec(terms_text, default_field=make_field(n))


def admission_reasons(f: TernaryFunction, profile: SpectrumProfile, name: str = "f") -> List[str]:
    """Why f cannot be used to build a defining set; empty when it can."""
    reasons = []
    if not profile.plateaued:
        reasons.append(f"{name} is not plateaued")
    elif not profile.weakly_regular:
        reasons.append(f"{name} is plateaued but not weakly regular (sign pattern {profile.sign_pattern})")
    if f.at_zero != 0:
        reasons.append(f"{name}(0) = {f.at_zero}, expected 0")
    return reasons
