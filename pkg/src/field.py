"""
Finite fields GF(3^n) in a polynomial basis.

Elements are coefficient vectors (coefficient of x^i at index i) modulo a
monic irreducible polynomial. Arithmetic is delegated to galois field
classes; this module fixes the conventions the rest of the package relies on:

- enumeration order is lexicographic on (c0, c1, ..., c_{n-1}) with c0 the
  most significant digit, so index 0 is always the zero element
- the primitive element is the first element of that order with
  multiplicative order 3^n - 1
- the absolute trace is returned as a plain integer in {0, 1, 2}
"""

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import galois
import numpy as np

try:
    from .errors import FieldError, SpecSyntaxError, CapacityError
except ImportError:
    from errors import FieldError, SpecSyntaxError, CapacityError

logger = logging.getLogger(__name__)

P = 3
MAX_DEGREE = 12
GF3 = galois.GF(P)

# Degrees whose default modulus is pinned instead of taken from the Conway table.
PINNED_MODULI = {
    1: (0, 1),
    3: (1, 2, 0, 1),
}


@lru_cache(maxsize=None)
def _field_class(n: int, modulus: Tuple[int, ...]):
    if n == 1:
        return GF3
    poly = galois.Poly(list(modulus), field=GF3, order="asc")
    return galois.GF(P ** n, irreducible_poly=poly)


def default_modulus(n: int) -> Tuple[int, ...]:
    if n in PINNED_MODULI:
        return PINNED_MODULI[n]
    conway = galois.conway_poly(P, n)
    return tuple(int(c) for c in conway.coeffs[::-1])


def render_polynomial(coeffs: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = "x" if i == 1 else f"x^{i}"
            parts.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class FieldParams:
    n: int
    modulus: Tuple[int, ...]
    gf: type = field(compare=False, repr=False)

    @property
    def order(self) -> int:
        return P ** self.n

    @property
    def spec(self) -> str:
        return f"GF(3^{self.n})/{render_polynomial(self.modulus)}"

    def __str__(self):
        return self.spec

    # --- conversions -------------------------------------------------------

    def element(self, coeffs: Sequence[int]) -> "FieldElement":
        coeffs = tuple(int(c) % P for c in coeffs)
        if len(coeffs) > self.n:
            raise FieldError(f"Too many coefficients for {self.spec}: {list(coeffs)}")
        coeffs = coeffs + (0,) * (self.n - len(coeffs))
        return FieldElement(coeffs, self)

    def scalar(self, value: int) -> "FieldElement":
        return self.element([value])

    def zero(self) -> "FieldElement":
        return self.element([])

    def one(self) -> "FieldElement":
        return self.element([1])

    def from_galois(self, value) -> "FieldElement":
        v = int(value)
        coeffs = []
        for _ in range(self.n):
            coeffs.append(v % P)
            v //= P
        return FieldElement(tuple(coeffs), self)

    def to_galois(self, elem: "FieldElement"):
        return self.gf(sum(c * P ** i for i, c in enumerate(elem.coeffs)))

    def index_of(self, elem: "FieldElement") -> int:
        idx = 0
        for c in elem.coeffs:
            idx = idx * P + c
        return idx

    def element_at(self, index: int) -> "FieldElement":
        return FieldElement(tuple(int(c) for c in self.coefficient_matrix[index]), self)

    # --- vectorized views in enumeration order ------------------------------

    @cached_property
    def coefficient_matrix(self) -> np.ndarray:
        idx = np.arange(self.order, dtype=np.int64)
        place = P ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return ((idx[:, None] // place[None, :]) % P).astype(np.int64)

    @cached_property
    def galois_integers(self) -> np.ndarray:
        return self.coefficient_matrix @ (P ** np.arange(self.n, dtype=np.int64))

    def elements(self):
        return self.gf(self.galois_integers)

    @cached_property
    def trace_table(self) -> np.ndarray:
        values = self.elements()
        if self.n == 1:
            return np.asarray(values.view(np.ndarray), dtype=np.int64)
        return np.asarray(values.field_trace().view(np.ndarray), dtype=np.int64)

    @cached_property
    def trace_form(self) -> np.ndarray:
        """Matrix M with Tr(a*b) = a^T M b on coefficient vectors."""
        basis = [self.element([0] * i + [1]) for i in range(self.n)]
        return np.array([[(u * v).trace() for v in basis] for u in basis], dtype=np.int64)

    @cached_property
    def negation_index(self) -> np.ndarray:
        neg = (P - self.coefficient_matrix) % P
        place = P ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return neg @ place

    def trace_products(self, alpha_rows: np.ndarray) -> np.ndarray:
        """Tr(alpha * x) for the given alpha indices (rows) and every x (columns)."""
        a = self.coefficient_matrix[alpha_rows]
        return (a @ self.trace_form @ self.coefficient_matrix.T) % P

    def scaled_trace_table(self, coefficient: "FieldElement") -> np.ndarray:
        """Tr(c * x) for every x in enumeration order."""
        a = np.array(coefficient.coeffs, dtype=np.int64)
        return (a @ self.trace_form @ self.coefficient_matrix.T) % P

    # --- distinguished elements ---------------------------------------------

    @cached_property
    def primitive(self) -> "FieldElement":
        target = self.order - 1
        ints = self.galois_integers
        for i in range(1, self.order):
            if self.gf(int(ints[i])).multiplicative_order() == target:
                return self.element_at(i)
        raise FieldError(f"No primitive element found in {self.spec}")

    @cached_property
    def _log_table(self) -> Dict[Tuple[int, ...], int]:
        table = {}
        g = self.primitive
        acc = self.one()
        for k in range(self.order - 1):
            table.setdefault(acc.coeffs, k)
            acc = acc * g
        return table

    def discrete_log(self, elem: "FieldElement") -> int:
        if elem.is_zero:
            raise FieldError("Zero has no discrete logarithm")
        return self._log_table[elem.coeffs]

    def prime_subfield_indices(self) -> List[int]:
        return [self.index_of(self.scalar(c)) for c in (1, 2)]


@dataclass(frozen=True)
class FieldElement:
    coeffs: Tuple[int, ...]
    params: FieldParams = field(repr=False)

    def _check(self, other):
        if isinstance(other, int):
            return self.params.scalar(other)
        if other.params != self.params:
            raise FieldError(f"Mixed fields: {self.params.spec} and {other.params.spec}")
        return other

    def _wrap(self, value) -> "FieldElement":
        return self.params.from_galois(value)

    def _value(self):
        return self.params.to_galois(self)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(tuple((a + b) % P for a, b in zip(self.coeffs, other.coeffs)), self.params)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(tuple((-a) % P for a in self.coeffs), self.params)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        return self._wrap(self._value() * other._value())

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise FieldError("Inverse of zero is undefined")
        return self._wrap(self._value() ** -1)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.params.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def trace(self) -> int:
        if self.params.n == 1:
            return self.coeffs[0]
        return int(self._value().field_trace())

    def multiplicative_order(self) -> int:
        if self.is_zero:
            raise FieldError("Zero has no multiplicative order")
        return int(self._value().multiplicative_order())

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"


def _validate_modulus(n: int, modulus: Tuple[int, ...]) -> None:
    if len(modulus) != n + 1:
        raise FieldError(f"Modulus {render_polynomial(modulus)} has degree {len(modulus) - 1}, expected {n}")
    if modulus[-1] != 1:
        raise FieldError(f"Modulus {render_polynomial(modulus)} is not monic")
    if n == 1:
        return
    poly = galois.Poly(list(modulus), field=GF3, order="asc")
    if poly.is_irreducible():
        return
    roots = poly.roots()
    if len(roots):
        raise FieldError(
            f"Modulus {render_polynomial(modulus)} is reducible: root {int(roots[0])}"
        )
    factors, _ = poly.factors()
    witness = render_polynomial([int(c) for c in factors[0].coeffs[::-1]])
    raise FieldError(f"Modulus {render_polynomial(modulus)} is reducible: factor {witness}")


def make_field(n: int, modulus: Optional[Sequence[int]] = None) -> FieldParams:
    if not isinstance(n, int) or n < 1:
        raise FieldError(f"Extension degree must be a positive integer, got {n!r}")
    if n > MAX_DEGREE:
        raise CapacityError(f"Extension degree {n} exceeds the supported maximum {MAX_DEGREE}")
    if modulus is None:
        modulus = default_modulus(n)
    modulus = tuple(int(c) % P for c in modulus)
    _validate_modulus(n, modulus)
    logger.debug("Building GF(3^%d) with modulus %s", n, render_polynomial(modulus))
    return FieldParams(n, modulus, _field_class(n, modulus))


def enumerate_elements(params: FieldParams) -> List[FieldElement]:
    return [params.element_at(i) for i in range(params.order)]


def primitive_element(params: FieldParams) -> FieldElement:
    return params.primitive


def trace(a: FieldElement) -> int:
    return a.trace()


_FIELD_RE = re.compile(r"^\s*GF\(\s*3\s*\^\s*(\d+)\s*\)\s*(?:/\s*(.+?))?\s*$")
_TERM_RE = re.compile(r"^(\d*)\*?(x(?:\^(\d+))?)?$")


def parse_polynomial(text: str) -> List[int]:
    terms = [t for t in text.replace(" ", "").split("+")]
    found: Dict[int, int] = {}
    for term in terms:
        match = _TERM_RE.match(term)
        if not term or not match or (not match.group(1) and not match.group(2)):
            raise SpecSyntaxError(f"Cannot parse polynomial term '{term}' in '{text}'")
        coeff = int(match.group(1)) if match.group(1) else 1
        if match.group(2):
            degree = int(match.group(3)) if match.group(3) else 1
        else:
            degree = 0
        found[degree] = (found.get(degree, 0) + coeff) % P
    size = max(found) + 1
    return [found.get(i, 0) for i in range(size)]


def parse_field_spec(text: str) -> FieldParams:
    match = _FIELD_RE.match(text)
    if not match:
        raise SpecSyntaxError(f"Cannot parse field spec '{text}' (expected GF(3^n) or GF(3^n)/poly)")
    n = int(match.group(1))
    modulus = parse_polynomial(match.group(2)) if match.group(2) else None
    return make_field(n, modulus)
