"""
Ternary linear codes: weights, duals, self-orthogonality, LCD, bounds.

Generator matrices are galois GF(3) arrays. Weight enumeration walks all
3^k messages over a row basis in numpy chunks; everything else is linear
algebra on the basis.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import galois
import numpy as np

try:
    from .errors import CapacityError, SpecSyntaxError, VerificationError
except ImportError:
    from errors import CapacityError, SpecSyntaxError, VerificationError

logger = logging.getLogger(__name__)

GF3 = galois.GF(3)
MAX_ENUMERATION_DIM = 20
CHUNK_SYMBOLS = 4_000_000


def gf3_matrix(rows) -> galois.FieldArray:
    if isinstance(rows, galois.FieldArray):
        rows = rows.view(np.ndarray)
    arr = np.asarray(rows, dtype=np.int64)
    if arr.ndim != 2:
        raise SpecSyntaxError(f"Generator must be two-dimensional, got shape {arr.shape}")
    return GF3(arr % 3)


def rank_and_rref(matrix) -> Tuple[int, galois.FieldArray, List[int]]:
    rref = gf3_matrix(matrix).row_reduce()
    plain = rref.view(np.ndarray)
    nonzero_rows = [i for i in range(plain.shape[0]) if plain[i].any()]
    pivots = [int(np.flatnonzero(plain[i])[0]) for i in nonzero_rows]
    return len(nonzero_rows), rref, pivots


@dataclass
class WeightDistribution:
    counts: Dict[int, int]

    @classmethod
    def from_histogram(cls, hist: np.ndarray) -> "WeightDistribution":
        return cls({int(w): int(c) for w, c in enumerate(hist) if c})

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def min_nonzero(self) -> Optional[int]:
        weights = [w for w in self.counts if w > 0]
        return min(weights) if weights else None

    def as_pairs(self) -> List[Tuple[int, int]]:
        return sorted(self.counts.items())

    def nonzero_pairs(self) -> List[Tuple[int, int]]:
        return [(w, c) for w, c in self.as_pairs() if w > 0]

    def all_divisible_by(self, d: int) -> bool:
        return all(w % d == 0 for w in self.counts)

    def enumerator(self) -> str:
        parts = []
        for w, c in self.as_pairs():
            if w == 0:
                parts.append(str(c))
            else:
                parts.append(f"x^{w}" if c == 1 else f"{c}x^{w}")
        return "+".join(parts)

    def __eq__(self, other):
        if isinstance(other, WeightDistribution):
            return self.counts == other.counts
        if isinstance(other, dict):
            return self.counts == other
        return NotImplemented


@dataclass
class DualDistance:
    value: Union[int, str]
    witness: Dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {"value": self.value, "witness": {str(k): v for k, v in sorted(self.witness.items())}}


@dataclass
class SelfOrthogonality:
    gram_zero: bool
    weights_divisible: bool

    @property
    def ok(self) -> bool:
        return self.gram_zero and self.weights_divisible


@dataclass
class PlessReport:
    moments: List[int]
    dual_a1: Fraction
    dual_a2: Fraction
    dual_a3: Fraction
    count_ok: bool

    @property
    def nonnegative_integers(self) -> bool:
        return all(v.denominator == 1 and v >= 0 for v in (self.dual_a1, self.dual_a2, self.dual_a3))

    @property
    def dual_distance(self) -> Union[int, str]:
        for d, v in enumerate((self.dual_a1, self.dual_a2, self.dual_a3), start=1):
            if v:
                return d
        return ">3"

    def to_dict(self) -> Dict:
        return {
            "moments": self.moments,
            "dual_a1": str(self.dual_a1),
            "dual_a2": str(self.dual_a2),
            "dual_a3": str(self.dual_a3),
            "count_ok": self.count_ok,
            "nonnegative_integers": self.nonnegative_integers,
        }


class LinearCode:
    def __init__(self, gen, label: str = ""):
        self.gen = gf3_matrix(gen)
        self.label = label
        self._distribution: Optional[WeightDistribution] = None

    @cached_property
    def _reduced(self):
        return rank_and_rref(self.gen)

    @property
    def rank(self) -> int:
        return self._reduced[0]

    @property
    def dimension(self) -> int:
        return self.rank

    @property
    def n_len(self) -> int:
        return self.gen.shape[1]

    @cached_property
    def basis(self) -> galois.FieldArray:
        return self._reduced[1][: self.rank]

    @property
    def basis_ints(self) -> np.ndarray:
        return self.basis.view(np.ndarray).astype(np.int64)

    def __repr__(self):
        return f"LinearCode({self.label or 'code'} [{self.n_len}, {self.rank}])"

    # --- enumeration ---------------------------------------------------------

    def _chunk_histogram(self, start: int, stop: int) -> np.ndarray:
        k = self.rank
        idx = np.arange(start, stop, dtype=np.int64)
        place = 3 ** np.arange(k, dtype=np.int64)
        messages = (idx[:, None] // place[None, :]) % 3
        words = (messages @ self.basis_ints) % 3
        weights = np.count_nonzero(words, axis=1)
        logger.debug("Enumerated messages %d..%d of %s", start, stop, self)
        return np.bincount(weights, minlength=self.n_len + 1)

    def weight_distribution(self, jobs: int = 1) -> WeightDistribution:
        if self._distribution is not None:
            return self._distribution
        k = self.rank
        if k > MAX_ENUMERATION_DIM:
            raise CapacityError(f"Dimension {k} exceeds the enumeration limit {MAX_ENUMERATION_DIM}")
        total = 3 ** k
        step = max(1, CHUNK_SYMBOLS // max(self.n_len, 1))
        bounds = [(s, min(s + step, total)) for s in range(0, total, step)]
        if jobs > 1 and len(bounds) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(lambda b: self._chunk_histogram(*b), bounds))
        else:
            parts = [self._chunk_histogram(*b) for b in bounds]
        dist = WeightDistribution.from_histogram(np.sum(parts, axis=0))
        self._distribution = dist
        return dist

    def minimum_distance(self, jobs: int = 1) -> Optional[int]:
        return self.weight_distribution(jobs).min_nonzero

    # --- duality ---------------------------------------------------------------

    def dual_code(self) -> "LinearCode":
        return LinearCode(self.basis.null_space(), label=f"dual of {self.label or 'code'}")

    def gram(self) -> np.ndarray:
        b = self.basis
        return (b @ b.T).view(np.ndarray)

    def self_orthogonality(self, jobs: int = 1) -> SelfOrthogonality:
        gram_zero = not self.gram().any()
        divisible = self.weight_distribution(jobs).all_divisible_by(3)
        if gram_zero != divisible:
            raise VerificationError(
                f"{self}: Gram test says {gram_zero}, weight test says {divisible}"
            )
        return SelfOrthogonality(gram_zero, divisible)

    def is_lcd(self) -> bool:
        b = self.basis
        return int(np.linalg.matrix_rank(b @ b.T)) == self.rank

    def dual_distance_upto3(self) -> DualDistance:
        return dual_min_distance_upto3(self)

    def pless(self, jobs: int = 1) -> PlessReport:
        return pless_check(self, jobs)


def _leading(vectors: np.ndarray) -> np.ndarray:
    """First nonzero entry of each column vector (0 for zero columns)."""
    nonzero = vectors != 0
    first = np.argmax(nonzero, axis=0)
    return vectors[first, np.arange(vectors.shape[1])] * nonzero.any(axis=0)


def _normalized_keys(vectors: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Base-3 key of each column scaled to leading entry 1, plus the leading entries."""
    lead = _leading(vectors)
    # inverse of 1 is 1 and of 2 is 2
    scaled = (vectors * lead[None, :]) % 3
    place = 3 ** np.arange(vectors.shape[0], dtype=np.int64)
    return place @ scaled, lead


def dual_min_distance_upto3(code: LinearCode) -> DualDistance:
    """Smallest dependent set of columns of size at most 3, with the dual codeword found."""
    k, n = code.rank, code.n_len
    if k == n:
        return DualDistance("dual trivial")
    cols = code.basis_ints
    zero = np.flatnonzero(~cols.any(axis=0))
    if zero.size:
        return DualDistance(1, {int(zero[0]): 1})

    keys, lead = _normalized_keys(cols)
    seen: Dict[int, int] = {}
    for j, key in enumerate(keys.tolist()):
        if key in seen:
            i = seen[key]
            # lead_i^-1 c_i = lead_j^-1 c_j  =>  lead_j c_i - lead_i c_j = 0
            return DualDistance(2, {i: int(lead[j]), j: int(-lead[i] % 3)})
        seen[key] = j

    order = np.argsort(keys)
    sorted_keys = keys[order]
    for i in range(n - 1):
        rest = np.arange(i + 1, n)
        for b in (1, 2):
            combos = (cols[:, i][:, None] + b * cols[:, rest]) % 3
            combo_keys, combo_lead = _normalized_keys(combos)
            pos = np.searchsorted(sorted_keys, combo_keys)
            pos = np.minimum(pos, n - 1)
            hit = sorted_keys[pos] == combo_keys
            hit &= combo_lead != 0
            if hit.any():
                t = int(np.flatnonzero(hit)[0])
                j = int(rest[t])
                l = int(order[pos[t]])
                # c_i + b c_j = (lead_combo / lead_l) c_l
                gamma = (int(combo_lead[t]) * int(lead[l])) % 3
                return DualDistance(3, {i: 1, j: b, l: (-gamma) % 3})
    return DualDistance(">3")


def weight_distribution(code: LinearCode, jobs: int = 1) -> WeightDistribution:
    return code.weight_distribution(jobs)


def minimum_distance(code: LinearCode, jobs: int = 1) -> Optional[int]:
    return code.minimum_distance(jobs)


def dual_code(code: LinearCode) -> LinearCode:
    return code.dual_code()


def is_self_orthogonal(code: LinearCode, jobs: int = 1) -> bool:
    return code.self_orthogonality(jobs).ok


def is_lcd(code: LinearCode) -> bool:
    return code.is_lcd()


def pless_check(code: LinearCode, jobs: int = 1) -> PlessReport:
    """Solve the first four power moments (q = 3) for the dual counts A1..A3."""
    dist = code.weight_distribution(jobs)
    n, k = code.n_len, code.rank
    m = [sum(w ** r * c for w, c in dist.counts.items()) for r in range(4)]
    three = Fraction(3)
    b1 = 2 * n - Fraction(m[1]) / three ** (k - 1)
    b2 = (Fraction(m[2]) / three ** (k - 2) - 2 * n * (2 * n + 1) + (4 * n - 1) * b1) / 2
    b3 = (2 * n * (4 * n * n + 6 * n - 1) - (12 * n * n - 3) * b1 + 6 * (2 * n - 1) * b2
          - Fraction(m[3]) / three ** (k - 3)) / 6
    return PlessReport(m, b1, b2, b3, m[0] == 3 ** k)


def sphere_packing_max_d(n: int, k: int) -> int:
    """Largest d allowed by the sphere-packing bound, capped by n - k + 1."""
    if not 0 < k <= n:
        raise SpecSyntaxError(f"Need 0 < k <= n, got n={n}, k={k}")
    capacity = 3 ** (n - k)
    best = 1
    for d in range(1, n - k + 2):
        t = (d - 1) // 2
        volume = sum(math.comb(n, i) * 2 ** i for i in range(t + 1))
        if volume <= capacity:
            best = d
    return best


def classify(n: int, k: int, d: int) -> Dict:
    bound = sphere_packing_max_d(n, k)
    if d > bound:
        raise VerificationError(f"[{n}, {k}, {d}] exceeds the sphere-packing bound {bound}")
    if d == bound:
        label = "optimal-vs-bound"
    elif d == bound - 1:
        label = "almost-optimal-vs-bound"
    else:
        label = "neither"
    return {"n": n, "k": k, "d": d, "max_d": bound, "class": label}


def write_matrix(path, matrix) -> None:
    arr = np.asarray(matrix.view(np.ndarray) if isinstance(matrix, galois.FieldArray) else matrix)
    lines = [f"{arr.shape[0]} {arr.shape[1]}"]
    lines += ["".join(str(int(v)) for v in row) for row in arr]
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path) -> galois.FieldArray:
    lines = [line.strip() for line in Path(path).read_text().splitlines() if line.strip()]
    if not lines:
        raise SpecSyntaxError(f"Empty matrix file {path}")
    try:
        rows, cols = (int(v) for v in lines[0].split())
    except ValueError as e:
        raise SpecSyntaxError(f"Bad header in {path}: '{lines[0]}'") from e
    body = [line.replace(" ", "") for line in lines[1:]]
    if len(body) != rows or any(len(r) != cols or set(r) - set("012") for r in body):
        raise SpecSyntaxError(f"{path} does not hold a {rows}x{cols} matrix over GF(3)")
    return gf3_matrix([[int(c) for c in r] for r in body])


def to_report(code: LinearCode, jobs: int = 1) -> Dict:
    dist = code.weight_distribution(jobs)
    d = dist.min_nonzero
    return {
        "n": code.n_len,
        "k": code.rank,
        "d": d,
        "weight_distribution": dist.nonzero_pairs(),
        "enumerator": dist.enumerator(),
        "self_orthogonal": code.self_orthogonality(jobs).ok,
        "lcd": code.is_lcd(),
        "dual_d_upto3": code.dual_distance_upto3().to_dict(),
        "bound": classify(code.n_len, code.rank, d) if d else None,
    }
