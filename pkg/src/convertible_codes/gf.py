"""
Exact arithmetic in finite fields GF(p^m).

Elements use the polynomial-basis integer encoding: the coordinate vector of an
element, read as base-p digits, gives its canonical integer (under x^4 + x + 1,
x^3 + x^2 + 1 is 13). galois uses the same encoding for its field arrays.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Type

import galois
import numpy as np

from .errors import FieldMismatchError, PreconditionError

MAX_FIELD_ORDER = 1 << 16

# Moduli pinned so canonical integers match the usual x^4 + x + 1 tables.
PINNED_MODULI = {
    (2, 4): (1, 0, 0, 1, 1),  # x^4 + x + 1
}


@lru_cache(maxsize=None)
def _galois_field(p: int, m: int, modulus: Tuple[int, ...]) -> Type[galois.FieldArray]:
    if m == 1:
        return galois.GF(p)
    poly = galois.Poly(list(modulus), field=galois.GF(p))
    return galois.GF(p**m, irreducible_poly=poly)


@dataclass(frozen=True)
class FieldSpec:
    """A finite field GF(p^m) with an explicit modulus.

    The modulus is stored as degree-descending coefficients. Prime fields carry
    the placeholder modulus ``x`` (``(1, 0)``).
    """

    p: int
    m: int = 1
    modulus: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not galois.is_prime(self.p):
            raise PreconditionError(f"characteristic must be prime (p={self.p})")
        if self.m < 1:
            raise PreconditionError(f"extension degree must be >= 1 (m={self.m})")
        if self.p**self.m > MAX_FIELD_ORDER:
            raise PreconditionError(
                f"field order {self.p}^{self.m} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )
        modulus = tuple(int(c) for c in self.modulus)
        if self.m == 1:
            modulus = modulus or (1, 0)
        if len(modulus) != self.m + 1 or modulus[0] != 1:
            raise PreconditionError(
                f"modulus must be a monic polynomial of degree {self.m}, got {list(modulus)}"
            )
        if any(not 0 <= c < self.p for c in modulus):
            raise PreconditionError(f"modulus coefficients must lie in [0, {self.p})")
        if self.m > 1:
            poly = galois.Poly(list(modulus), field=galois.GF(self.p))
            if not poly.is_irreducible():
                raise PreconditionError(f"modulus {poly} is not irreducible over GF({self.p})")
        object.__setattr__(self, "modulus", modulus)

    @property
    def q(self) -> int:
        return self.p**self.m

    @classmethod
    def from_order(
        cls,
        q: int,
        modulus: Optional[Sequence[int]] = None,
        max_order: int = MAX_FIELD_ORDER,
    ) -> "FieldSpec":
        """Build the field of order ``q``.

        Without an explicit modulus, GF(16) uses x^4 + x + 1 and every other
        extension field the lexicographically smallest primitive polynomial.
        """
        if q > max_order:
            raise PreconditionError(f"field order {q} exceeds the configured maximum {max_order}")
        if not galois.is_prime_power(q):
            raise PreconditionError(f"field order must be a prime power (q={q})")
        primes, exponents = galois.factors(q)
        p, m = int(primes[0]), int(exponents[0])
        if modulus is None and m > 1:
            modulus = PINNED_MODULI.get((p, m))
            if modulus is None:
                poly = galois.primitive_poly(p, m, method="min")
                modulus = tuple(int(c) for c in poly.coeffs)
        return cls(p, m, tuple(modulus or ()))

    def galois_field(self) -> Type[galois.FieldArray]:
        """The galois field-array class for this field (cached)."""
        return _galois_field(self.p, self.m, self.modulus)

    def array(self, values: Any) -> galois.FieldArray:
        """Canonical integers (scalar or nested sequence) as a field array."""
        GF = self.galois_field()
        if isinstance(values, GF):
            return values
        if isinstance(values, galois.FieldArray):
            raise FieldMismatchError(f"array belongs to {type(values).name}, not {self}")
        arr = np.asarray(values, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise PreconditionError(f"values must lie in [0, {self.q}) for {self}")
        return GF(arr)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(int(value), self)

    def elements(self) -> List["FieldElement"]:
        return [FieldElement(v, self) for v in range(self.q)]

    def random_vector(self, rng: np.random.Generator, n: int) -> Tuple[int, ...]:
        """``n`` uniformly random canonical integers drawn from ``rng``."""
        return tuple(int(v) for v in rng.integers(0, self.q, size=n))

    def __str__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


def to_ints(arr: Any) -> Any:
    """Field array (any shape) to plain Python ints / nested lists."""
    plain = np.asarray(arr.view(np.ndarray) if isinstance(arr, np.ndarray) else arr)
    return plain.astype(np.int64).tolist()


@dataclass(frozen=True)
class FieldElement:
    """An element of a finite field, identified by its canonical integer."""

    value: int
    spec: FieldSpec

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.spec.q:
            raise PreconditionError(f"{self.value} is not an element of {self.spec}")

    def _lift(self) -> galois.FieldArray:
        return self.spec.galois_field()(self.value)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        _check_same(self, other)
        return FieldElement(int(self._lift() - other._lift()), self.spec)

    def __neg__(self) -> "FieldElement":
        return FieldElement(int(-self._lift()), self.spec)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, other)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, inv(other))

    def __pow__(self, e: int) -> "FieldElement":
        return power(self, e)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, {self.spec})"


def _check_same(a: FieldElement, b: FieldElement) -> None:
    if a.spec != b.spec:
        raise FieldMismatchError(f"cannot combine elements of {a.spec} and {b.spec}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return FieldElement(int(a._lift() + b._lift()), a.spec)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return FieldElement(int(a._lift() * b._lift()), a.spec)


def inv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise PreconditionError("zero has no multiplicative inverse")
    return FieldElement(int(np.reciprocal(a._lift())), a.spec)


def power(a: FieldElement, e: int) -> FieldElement:
    """``a`` raised to the integer ``e``; negative exponents invert first."""
    if e < 0:
        if a.value == 0:
            raise PreconditionError("zero cannot be raised to a negative power")
        a, e = inv(a), -e
    return FieldElement(int(a._lift() ** int(e)), a.spec)


def multiplicative_order(a: FieldElement) -> int:
    if a.value == 0:
        raise PreconditionError("zero has no multiplicative order")
    one = a.spec.galois_field()(1)
    lifted = a._lift()
    for d in sorted(galois.divisors(a.spec.q - 1)):
        if lifted ** int(d) == one:
            return int(d)
    raise AssertionError("unreachable: a^(q-1) = 1 for every nonzero a")


@lru_cache(maxsize=None)
def primitive_element(spec: FieldSpec) -> FieldElement:
    """The smallest canonical integer of multiplicative order q - 1."""
    if spec.q < 3:
        raise PreconditionError(f"{spec} has no primitive element worth naming (q - 1 = 1)")
    for value in range(2, spec.q):
        candidate = FieldElement(value, spec)
        if multiplicative_order(candidate) == spec.q - 1:
            return candidate
    raise AssertionError(f"no primitive element found in {spec}")


def nth_root_of_unity(spec: FieldSpec, r: int) -> FieldElement:
    """An element of order exactly ``r``, as primitive_element^((q-1)/r)."""
    if r < 1 or (spec.q - 1) % r:
        raise PreconditionError(f"r must divide q - 1 (r={r}, q={spec.q})")
    if r == 1:
        return FieldElement(1, spec)
    return power(primitive_element(spec), (spec.q - 1) // r)


def exponents_to_elements(spec: FieldSpec, exponents: Iterable[int]) -> Tuple[int, ...]:
    """Canonical integers of primitive_element^e for each exponent e."""
    alpha = primitive_element(spec)
    return tuple(power(alpha, e).value for e in exponents)
