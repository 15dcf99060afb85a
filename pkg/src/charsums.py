"""
Counting identities and character sums behind the weight distributions.

Each quantity has two implementations: a closed form built from the Walsh
profile (k, sign, dual function) and a brute-force oracle that only looks at
value tables and trace tables. The oracles reduce every double sum over
(x, y) to two 3x3 histograms of (function value, Tr(a*x)), one per field.

Elements alpha, beta are passed as indices in field enumeration order.
"""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

try:
    from .errors import AdmissionError, PreconditionError, SpecSyntaxError, VerificationError
    from .eisenstein import (
        EisensteinInt, SQRT_NEG3, conjugate_pair_sum, from_counts, zeta_power,
    )
    from .field import FieldParams, P, make_field
    from .spectrum import SpectrumProfile, TernaryFunction, admission_reasons, analyze, parse_function_spec
except ImportError:
    from errors import AdmissionError, PreconditionError, SpecSyntaxError, VerificationError
    from eisenstein import (
        EisensteinInt, SQRT_NEG3, conjugate_pair_sum, from_counts, zeta_power,
    )
    from field import FieldParams, P, make_field
    from spectrum import SpectrumProfile, TernaryFunction, admission_reasons, analyze, parse_function_spec

logger = logging.getLogger(__name__)


@dataclass
class PairContext:
    """Two admitted functions f on GF(3^n), g on GF(3^m) and a shift lam."""

    f: TernaryFunction
    g: TernaryFunction
    f_profile: SpectrumProfile
    g_profile: SpectrumProfile
    lam: int

    @classmethod
    def build(cls, f: TernaryFunction, g: TernaryFunction, lam: int, jobs: int = 1,
              f_profile: Optional[SpectrumProfile] = None,
              g_profile: Optional[SpectrumProfile] = None) -> "PairContext":
        f_profile = f_profile or analyze(f, jobs)
        g_profile = g_profile or analyze(g, jobs)
        reasons = admission_reasons(f, f_profile, "f") + admission_reasons(g, g_profile, "g")
        if reasons:
            raise AdmissionError("Pair context rejected: " + "; ".join(reasons), reasons)
        return cls(f, g, f_profile, g_profile, lam % P)

    def with_lambda(self, lam: int) -> "PairContext":
        return replace(self, lam=lam % P)

    @property
    def n(self) -> int:
        return self.f.params.n

    @property
    def m(self) -> int:
        return self.g.params.n

    @property
    def s(self) -> int:
        return self.n + self.m

    @property
    def k_sum(self) -> int:
        return self.f_profile.k + self.g_profile.k

    @property
    def eps(self) -> int:
        return self.f_profile.epsilon * self.g_profile.epsilon

    @property
    def x_params(self) -> FieldParams:
        return self.f.params

    @property
    def y_params(self) -> FieldParams:
        return self.g.params

    @property
    def x_table(self) -> np.ndarray:
        return self.f.table

    def describe(self) -> Dict:
        return {
            "kind": "pair", "f": str(self.f), "g": str(self.g), "lambda": self.lam,
            "s": self.s, "k_f": self.f_profile.k, "k_g": self.g_profile.k, "eps": self.eps,
        }


@dataclass
class TraceContext:
    """Tr(x) on GF(3^n) paired with an admitted g on GF(3^m)."""

    x_params: FieldParams
    g: TernaryFunction
    g_profile: SpectrumProfile
    lam: int

    @classmethod
    def build(cls, n: int, g: TernaryFunction, lam: int, jobs: int = 1,
              g_profile: Optional[SpectrumProfile] = None) -> "TraceContext":
        g_profile = g_profile or analyze(g, jobs)
        reasons = admission_reasons(g, g_profile, "g")
        if reasons:
            raise AdmissionError("Trace context rejected: " + "; ".join(reasons), reasons)
        return cls(make_field(n), g, g_profile, lam % P)

    def with_lambda(self, lam: int) -> "TraceContext":
        return replace(self, lam=lam % P)

    @property
    def n(self) -> int:
        return self.x_params.n

    @property
    def m(self) -> int:
        return self.g.params.n

    @property
    def s(self) -> int:
        return self.n + self.m

    @property
    def y_params(self) -> FieldParams:
        return self.g.params

    @property
    def x_table(self) -> np.ndarray:
        return self.x_params.trace_table

    def describe(self) -> Dict:
        return {
            "kind": "trace", "n": self.n, "g": str(self.g), "lambda": self.lam,
            "s": self.s, "k_g": self.g_profile.k, "eps_g": self.g_profile.epsilon,
        }


@dataclass
class LemmaRow:
    lemma: str
    inputs: Dict[str, int]
    closed: Optional[object]
    oracle: object
    match: Optional[bool]
    note: str = ""

    def to_dict(self) -> Dict:
        return {
            "lemma": self.lemma,
            "inputs": dict(self.inputs),
            "closed": None if self.closed is None else str(self.closed),
            "oracle": str(self.oracle),
            "match": self.match,
            "note": self.note,
        }


# --- shared helpers -----------------------------------------------------------


@lru_cache(maxsize=4096)
def _trace_row(params: FieldParams, alpha: int) -> np.ndarray:
    return params.trace_products(np.array([alpha]))[0]


def _histogram(values: np.ndarray, params: FieldParams, alpha: int) -> np.ndarray:
    """3x3 counts of (value(x), Tr(alpha*x)) over the field."""
    traces = _trace_row(params, alpha)
    flat = values.astype(np.int64) * P + traces
    return np.bincount(flat, minlength=P * P).reshape(P, P)


def _exponent_counts(hist: np.ndarray, t: int, u: int) -> np.ndarray:
    counts = np.zeros(P, dtype=np.int64)
    for a in range(P):
        for b in range(P):
            counts[(t * a + u * b) % P] += hist[a, b]
    return counts


def _oracle_sum(hx: np.ndarray, hy: np.ndarray, lam: int, mu: int,
                pairs: Iterable[Tuple[int, int]]) -> EisensteinInt:
    """Sum over (t, u) in pairs of sum_{x,y} zeta^(t(F+G+lam) + u(Tr(ax)+Tr(by)+mu))."""
    total = EisensteinInt()
    for t, u in pairs:
        cx = _exponent_counts(hx, t, u)
        cy = _exponent_counts(hy, t, u)
        joint = np.zeros(P, dtype=np.int64)
        shift = (t * lam + u * mu) % P
        for i in range(P):
            for j in range(P):
                joint[(i + j + shift) % P] += cx[i] * cy[j]
        total = total + from_counts(*(int(v) for v in joint))
    return total


def _oracle_zero_count(hx: np.ndarray, hy: np.ndarray, lam: int, mu: int) -> int:
    total = 0
    for a in range(P):
        for b in range(P):
            for c in range(P):
                for d in range(P):
                    if (a + c + lam) % P == 0 and (b + d + mu) % P == 0:
                        total += int(hx[a, b]) * int(hy[c, d])
    return total


def _to_int(value: EisensteinInt, what: str) -> int:
    if not value.is_rational:
        raise VerificationError(f"{what} should be rational, got {value}")
    return value.a


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise VerificationError(f"{what} evaluated to non-integer {value}")
    return value.numerator


def _scaled(params: FieldParams, index: int, v: int) -> int:
    """Index of v*element for v in {1, 2}."""
    return index if v % P == 1 else int(params.negation_index[index])


def _embedded_scalar(params: FieldParams, index: int) -> Optional[int]:
    """1 or 2 when the element is in the embedded prime field minus zero."""
    for c in (1, 2):
        if params.index_of(params.scalar(c)) == index:
            return c
    return None


def _level_count(exponent: int, sign: int, c: int, what: str) -> int:
    # (3^e + sign * sum_t sigma_t((sqrt(-3))^e zeta^c)) / 3
    return _integral(Fraction(P ** exponent + sign * conjugate_pair_sum(exponent, c), P), what)


def _dual_histogram(profile: SpectrumProfile) -> np.ndarray:
    return np.bincount(profile.dual_table[profile.support_mask].astype(np.int64), minlength=P)


# --- dual level counts ----------------------------------------------------------


def count_dual_level(ctx: PairContext, target: int) -> int:
    """#{(a, b) in supp f x supp g : f*(a) + g*(b) + lam = target}."""
    hf = _dual_histogram(ctx.f_profile)
    hg = _dual_histogram(ctx.g_profile)
    return sum(
        int(hf[a]) * int(hg[b])
        for a in range(P) for b in range(P)
        if (a + b + ctx.lam) % P == target % P
    )


def closed_dual_level(ctx: PairContext, target: int) -> int:
    sign = ctx.eps * (-1) ** ctx.s
    return _level_count(ctx.s - ctx.k_sum, sign, ctx.lam - target, "dual level count")


def _g_dual_level(tctx: TraceContext, c: int) -> int:
    """#{b in supp g : g*(b) = c} from the sign, k and m alone."""
    g = tctx.g_profile
    sign = g.epsilon * (-1) ** tctx.m
    return _level_count(tctx.m - g.k, sign, -c, "dual level count of g")


def count_scaled_dual_level(tctx: TraceContext, mu: int) -> int:
    """#{(a, b) in F3* x supp g : g*(b/a) + lam - mu/a = 0}."""
    params = tctx.y_params
    profile = tctx.g_profile
    support = profile.support
    total = 0
    for a in (1, 2):
        inv = a  # a^-1 = a in GF(3)
        idx = support if a == 1 else params.negation_index[support]
        values = profile.dual_table[idx].astype(np.int64)
        total += int(((values + tctx.lam - mu * inv) % P == 0).sum())
    return total


def closed_scaled_dual_level(tctx: TraceContext, mu: int) -> int:
    if tctx.lam == 0:
        raise PreconditionError("Scaled dual level count needs lam != 0")
    if not tctx.g_profile.dual_homogeneous:
        raise PreconditionError("Scaled dual level count needs a dual-homogeneous g")
    return sum(_g_dual_level(tctx, a * mu - tctx.lam) for a in (1, 2))


# --- character sums --------------------------------------------------------------


_NONZERO = (1, 2)


def defining_sum(ctx: PairContext) -> int:
    """sum_{t != 0} sum_{x,y} zeta^(t(f(x) + g(y) + lam))."""
    hx = _histogram(ctx.f.table, ctx.x_params, 0)
    hy = _histogram(ctx.g.table, ctx.y_params, 0)
    value = _oracle_sum(hx, hy, ctx.lam, 0, [(t, 0) for t in _NONZERO])
    return _to_int(value, "defining sum")


def closed_defining_sum(ctx: PairContext) -> int:
    if ctx.f_profile.balanced or ctx.g_profile.balanced:
        return 0
    level = ctx.f_profile.dual(0) + ctx.g_profile.dual(0) + ctx.lam
    return ctx.eps * conjugate_pair_sum(ctx.s + ctx.k_sum, level)


def defining_set_size(ctx: PairContext) -> int:
    return _integral(Fraction(P ** (ctx.s - 1)) + Fraction(closed_defining_sum(ctx), P), "defining set size")


def codeword_sum(x_params: FieldParams, y_params: FieldParams, alpha: int, beta: int, mu: int) -> int:
    """sum_{u != 0} sum_{x,y} zeta^(u(Tr(ax) + Tr(by) + mu))."""
    hx = _histogram(np.zeros(x_params.order, dtype=np.int64), x_params, alpha)
    hy = _histogram(np.zeros(y_params.order, dtype=np.int64), y_params, beta)
    value = _oracle_sum(hx, hy, 0, mu, [(0, u) for u in _NONZERO])
    return _to_int(value, "codeword sum")


def closed_codeword_sum(x_params: FieldParams, y_params: FieldParams, alpha: int, beta: int, mu: int) -> int:
    if alpha or beta:
        return 0
    s = x_params.n + y_params.n
    return 2 * P ** s if mu % P == 0 else -(P ** s)


def joint_sum(ctx: PairContext, alpha: int, beta: int, mu: int) -> int:
    hx = _histogram(ctx.f.table, ctx.x_params, alpha)
    hy = _histogram(ctx.g.table, ctx.y_params, beta)
    value = _oracle_sum(hx, hy, ctx.lam, mu, [(t, u) for t in _NONZERO for u in _NONZERO])
    return _to_int(value, "joint sum")


def closed_joint_sum(ctx: PairContext, alpha: int, beta: int, mu: int) -> int:
    total = 0
    for v in _NONZERO:
        a = _scaled(ctx.x_params, alpha, v)
        b = _scaled(ctx.y_params, beta, v)
        if ctx.f_profile.in_support(a) and ctx.g_profile.in_support(b):
            level = ctx.f_profile.dual(a) + ctx.g_profile.dual(b) + ctx.lam - v * mu
            total += ctx.eps * conjugate_pair_sum(ctx.s + ctx.k_sum, level)
    return total


def _trace_support_level(tctx: TraceContext, alpha: int, beta: int, mu: int) -> Optional[int]:
    """g*(b/a) + lam - mu/a when a is in F3* and b/a is in the support of g."""
    a = _embedded_scalar(tctx.x_params, alpha)
    if a is None:
        return None
    quotient = _scaled(tctx.y_params, beta, a)
    if not tctx.g_profile.in_support(quotient):
        return None
    return (tctx.g_profile.dual(quotient) + tctx.lam - mu * a) % P


def trace_joint_sum(tctx: TraceContext, alpha: int, beta: int, mu: int) -> int:
    hx = _histogram(tctx.x_table, tctx.x_params, alpha)
    hy = _histogram(tctx.g.table, tctx.y_params, beta)
    value = _oracle_sum(hx, hy, tctx.lam, mu, [(t, u) for t in _NONZERO for u in _NONZERO])
    return _to_int(value, "trace joint sum")


def closed_trace_joint_sum(tctx: TraceContext, alpha: int, beta: int, mu: int) -> int:
    level = _trace_support_level(tctx, alpha, beta, mu)
    if level is None:
        return 0
    g = tctx.g_profile
    return P ** tctx.n * g.epsilon * conjugate_pair_sum(tctx.m + g.k, level)


def trace_square_sum(tctx: TraceContext, alpha: int, beta: int, mu: int) -> EisensteinInt:
    """Same as the joint sum with t^2 in place of t, so every t contributes alike."""
    hx = _histogram(tctx.x_table, tctx.x_params, alpha)
    hy = _histogram(tctx.g.table, tctx.y_params, beta)
    pairs = [(t * t % P, u) for t in _NONZERO for u in _NONZERO]
    return _oracle_sum(hx, hy, tctx.lam, mu, pairs)


def closed_trace_square_sum(tctx: TraceContext, alpha: int, beta: int, mu: int) -> EisensteinInt:
    level = _trace_support_level(tctx, alpha, beta, mu)
    if level is None:
        return EisensteinInt()
    g = tctx.g_profile
    return 2 * P ** tctx.n * g.epsilon * (SQRT_NEG3 ** (tctx.m + g.k)) * zeta_power(level)


def reference_trace_square_sum(tctx: TraceContext, alpha: int, beta: int, mu: int) -> EisensteinInt:
    """Tabulated values as published; level 2 carries the opposite sign to the derived form."""
    g = tctx.g_profile
    if (tctx.m + g.k) % 2:
        raise PreconditionError("Published table covers m + k_g even only")
    level = _trace_support_level(tctx, alpha, beta, mu)
    if level is None:
        return EisensteinInt()
    scale = P ** tctx.n * g.epsilon * (-3) ** ((tctx.m + g.k) // 2)
    factor = {0: EisensteinInt(2), 1: SQRT_NEG3 - 1, 2: SQRT_NEG3 + 1}[level]
    return factor * scale


# --- zero counts -------------------------------------------------------------------


def count_trace_zeros(tctx: TraceContext, alpha: int, beta: int, mu: int) -> int:
    """#{(x, y) : Tr(x) + g(y) + lam = 0, Tr(ax) + Tr(by) + mu = 0}."""
    hx = _histogram(tctx.x_table, tctx.x_params, alpha)
    hy = _histogram(tctx.g.table, tctx.y_params, beta)
    return _oracle_zero_count(hx, hy, tctx.lam, mu)


def closed_trace_zeros(tctx: TraceContext, alpha: int, beta: int, mu: int) -> int:
    s2 = closed_codeword_sum(tctx.x_params, tctx.y_params, alpha, beta, mu)
    s4 = closed_trace_joint_sum(tctx, alpha, beta, mu)
    return _integral(Fraction(P ** tctx.s, 9) + Fraction(s2 + s4, 9), "trace zero count")


def count_defining_zeros(ctx: PairContext, alpha: int, beta: int, mu: int) -> int:
    """#{(x, y) : f(x) + g(y) + lam = 0, Tr(ax) + Tr(by) + mu = 0}."""
    hx = _histogram(ctx.f.table, ctx.x_params, alpha)
    hy = _histogram(ctx.g.table, ctx.y_params, beta)
    return _oracle_zero_count(hx, hy, ctx.lam, mu)


def closed_defining_zeros(ctx: PairContext, alpha: int, beta: int, mu: int) -> int:
    s1 = closed_defining_sum(ctx)
    s2 = closed_codeword_sum(ctx.x_params, ctx.y_params, alpha, beta, mu)
    s3 = closed_joint_sum(ctx, alpha, beta, mu)
    return _integral(Fraction(P ** ctx.s, 9) + Fraction(s1 + s2 + s3, 9), "defining zero count")


# --- sweeps --------------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaSpec:
    kind: str
    axes: Tuple[str, ...]
    oracle: Callable
    closed: Callable
    reference: Optional[Callable] = None


def _pair_codeword(fn):
    return lambda ctx, alpha, beta, mu: fn(ctx.x_params, ctx.y_params, alpha, beta, mu)


LEMMAS: Dict[str, LemmaSpec] = {
    "dual-level": LemmaSpec("pair", ("lam", "target"), count_dual_level, closed_dual_level),
    "scaled-dual-level": LemmaSpec("trace", ("lam", "mu"), count_scaled_dual_level, closed_scaled_dual_level),
    "defining-sum": LemmaSpec("pair", ("lam",), defining_sum, closed_defining_sum),
    "codeword-sum": LemmaSpec("any", ("alpha", "beta", "mu"), _pair_codeword(codeword_sum),
                              _pair_codeword(closed_codeword_sum)),
    "joint-sum": LemmaSpec("pair", ("lam", "mu", "alpha", "beta"), joint_sum, closed_joint_sum),
    "trace-joint-sum": LemmaSpec("trace", ("lam", "mu", "alpha", "beta"), trace_joint_sum, closed_trace_joint_sum),
    "trace-square-sum": LemmaSpec("trace", ("lam", "mu", "alpha", "beta"), trace_square_sum,
                                  closed_trace_square_sum, reference_trace_square_sum),
    "trace-zeros": LemmaSpec("trace", ("lam", "mu", "alpha", "beta"), count_trace_zeros, closed_trace_zeros),
    "defining-zeros": LemmaSpec("pair", ("lam", "mu", "alpha", "beta"), count_defining_zeros,
                                closed_defining_zeros),
}


def lemmas_for(ctx) -> List[str]:
    kind = "pair" if isinstance(ctx, PairContext) else "trace"
    return [name for name, spec in LEMMAS.items() if spec.kind in (kind, "any")]


def _grid(ctx, axes: Tuple[str, ...]) -> List[Dict[str, int]]:
    ranges = {
        "lam": list(_NONZERO),
        "target": list(range(P)),
        "mu": list(range(P)),
        "alpha": list(range(ctx.x_params.order)),
        "beta": list(range(ctx.y_params.order)),
    }
    points = [{}]
    for axis in axes:
        points = [dict(p, **{axis: v}) for p in points for v in ranges[axis]]
    return points


def _evaluate(ctx, name: str, spec: LemmaSpec, point: Dict[str, int]) -> LemmaRow:
    local = ctx.with_lambda(point["lam"]) if "lam" in point else ctx
    args = {a: point[a] for a in spec.axes if a != "lam"}
    oracle = spec.oracle(local, **args)
    note = ""
    try:
        closed = spec.closed(local, **args)
    except PreconditionError as e:
        return LemmaRow(name, point, None, oracle, None, f"precondition unmet: {e}")
    if spec.reference is not None:
        try:
            reference = spec.reference(local, **args)
            if reference != closed:
                note = f"published value {reference}"
        except PreconditionError:
            pass
    return LemmaRow(name, point, closed, oracle, closed == oracle, note)


def sweep(ctx, lemma: str, sample: Optional[int] = None, seed: int = 0, jobs: int = 1) -> List[LemmaRow]:
    """Closed form vs oracle over every input (or a seeded sample of inputs)."""
    if lemma not in LEMMAS:
        raise SpecSyntaxError(f"Unknown lemma '{lemma}' (known: {', '.join(LEMMAS)})")
    spec = LEMMAS[lemma]
    if lemma not in lemmas_for(ctx):
        raise SpecSyntaxError(f"Lemma '{lemma}' needs a {spec.kind} context")
    points = _grid(ctx, spec.axes)
    if sample is not None and sample < len(points):
        points = random.Random(seed).sample(points, sample)
    logger.info("Sweeping %s over %d inputs", lemma, len(points))

    def run(point):
        return _evaluate(ctx, lemma, spec, point)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run, points))
    return [run(p) for p in points]


def context_from_dict(data: Dict, jobs: int = 1):
    """{"kind": "pair", "f": ..., "g": ..., "lambda": 1} or {"kind": "trace", "n": 2, "g": ..., "lambda": 1}."""
    try:
        kind = data.get("kind", "pair")
        lam = int(data.get("lambda", 1))
        g = parse_function_spec(data["g"])
        if kind == "pair":
            return PairContext.build(parse_function_spec(data["f"]), g, lam, jobs)
        if kind == "trace":
            return TraceContext.build(int(data["n"]), g, lam, jobs)
    except KeyError as e:
        raise SpecSyntaxError(f"Context is missing key {e}") from e
    raise SpecSyntaxError(f"Unknown context kind '{kind}'")
