"""
Dense matrices over finite fields and the structured builders the code
constructions rest on.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Iterator, List, Optional, Sequence, Tuple

import galois
import numpy as np

from .errors import (
    BruteForceLimitError,
    FieldMismatchError,
    InconsistentSystemError,
    PreconditionError,
    SingularMatrixError,
)
from .gf import FieldSpec, to_ints


class MatrixGF:
    """An immutable rows x cols matrix over a finite field.

    Wraps a galois field array; ``array`` hands out a writeable copy so callers
    can never mutate the stored entries.
    """

    __slots__ = ("spec", "_data")

    def __init__(self, spec: FieldSpec, entries: Any):
        data = spec.array(entries).copy()
        if data.ndim != 2:
            raise PreconditionError(f"matrix entries must be 2-D, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise PreconditionError(f"matrix dimensions must be positive, got {data.shape}")
        data.flags.writeable = False
        self.spec = spec
        self._data = data

    @property
    def rows(self) -> int:
        return int(self._data.shape[0])

    @property
    def cols(self) -> int:
        return int(self._data.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def array(self) -> galois.FieldArray:
        return self._data.copy()

    def entries(self) -> List[List[int]]:
        return to_ints(self._data)

    def column(self, j: int) -> galois.FieldArray:
        return self._data[:, j].copy()

    def row(self, i: int) -> galois.FieldArray:
        return self._data[i, :].copy()

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.spec, self._data.T)

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        _check_field(self, other)
        if self.cols != other.rows:
            raise PreconditionError(f"cannot multiply {self.shape} by {other.shape}")
        return MatrixGF(self.spec, self.array @ other.array)

    def __neg__(self) -> "MatrixGF":
        return MatrixGF(self.spec, -self.array)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return self.spec == other.spec and self.shape == other.shape and bool(
            np.array_equal(self._data.view(np.ndarray), other._data.view(np.ndarray))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MatrixGF({self.spec}, {self.entries()})"


def _check_field(*matrices: MatrixGF) -> None:
    specs = {m.spec for m in matrices}
    if len(specs) > 1:
        raise FieldMismatchError(f"matrices over different fields: {sorted(map(str, specs))}")


@dataclass(frozen=True)
class OrderedSet:
    """Distinct field elements in a significant order."""

    spec: FieldSpec
    elements: Tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.elements)
        if len(set(values)) != len(values):
            raise PreconditionError(f"ordered set has repeated elements: {list(values)}")
        if any(not 0 <= v < self.spec.q for v in values):
            raise PreconditionError(f"ordered set has values outside {self.spec}")
        object.__setattr__(self, "elements", values)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, value: object) -> bool:
        return value in self.elements

    def array(self) -> galois.FieldArray:
        return self.spec.array(list(self.elements))

    def isdisjoint(self, other: Iterable[int]) -> bool:
        return set(self.elements).isdisjoint(other)

    def __add__(self, other: "OrderedSet") -> "OrderedSet":
        """Concatenation; raises when the sets overlap."""
        return OrderedSet(self.spec, self.elements + tuple(other))


def identity(spec: FieldSpec, n: int) -> MatrixGF:
    return MatrixGF(spec, spec.galois_field().Identity(n))


def cauchy(x: OrderedSet, y: OrderedSet) -> MatrixGF:
    """Cauchy matrix with entry (i, j) = 1 / (x_i - y_j)."""
    if x.spec != y.spec:
        raise FieldMismatchError("cauchy sets must live in the same field")
    if not x.isdisjoint(y):
        raise PreconditionError(
            f"cauchy sets must be disjoint, both contain {sorted(set(x) & set(y))}"
        )
    xs, ys = x.array(), y.array()
    return MatrixGF(x.spec, np.reciprocal(xs[:, np.newaxis] - ys[np.newaxis, :]))


def _powers(spec: FieldSpec, a: OrderedSet, r: int) -> galois.FieldArray:
    GF = spec.galois_field()
    out = GF.Ones((r, len(a)))
    points = a.array()
    for i in range(1, r):
        out[i] = out[i - 1] * points
    return out


def vandermonde(a: OrderedSet, r: int) -> MatrixGF:
    """r x |a| matrix whose row i holds the i-th powers of a (0^0 = 1)."""
    if r < 1:
        raise PreconditionError(f"vandermonde needs r >= 1 (r={r})")
    return MatrixGF(a.spec, _powers(a.spec, a, r))


def extended_vandermonde(a: OrderedSet, r: int, triply: bool = False) -> MatrixGF:
    """[V_{a,r} | e^r], or [V_{a,3} | e^2 | e^3] when ``triply`` is set."""
    if r < 1:
        raise PreconditionError(f"extended vandermonde needs r >= 1 (r={r})")
    if triply and r != 3:
        raise PreconditionError(f"the triply-extended form is defined for r = 3 only (r={r})")
    GF = a.spec.galois_field()
    basis = GF.Identity(r)
    tail = basis[:, 1:3] if triply else basis[:, r - 1:r]
    if len(a) == 0:
        return MatrixGF(a.spec, tail)
    return MatrixGF(a.spec, np.hstack((_powers(a.spec, a, r), tail)))


def rank(m: MatrixGF) -> int:
    return int(np.linalg.matrix_rank(m.array))


def determinant(m: MatrixGF) -> int:
    if m.rows != m.cols:
        raise PreconditionError(f"determinant of a non-square {m.shape} matrix")
    return int(np.linalg.det(m.array))


def inverse(m: MatrixGF) -> MatrixGF:
    if m.rows != m.cols:
        raise PreconditionError(f"cannot invert a non-square {m.shape} matrix")
    if rank(m) < m.rows:
        raise SingularMatrixError(f"{m.rows}x{m.cols} matrix is singular")
    return MatrixGF(m.spec, np.linalg.inv(m.array))


def solve(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    """The unique X with A X = B.

    A may be tall (more equations than unknowns) as long as it has full column
    rank and the system is consistent.
    """
    _check_field(a, b)
    if a.rows != b.rows:
        raise PreconditionError(f"shape mismatch: A is {a.shape}, B is {b.shape}")
    if a.rows < a.cols or rank(a) < a.cols:
        raise SingularMatrixError(f"{a.rows}x{a.cols} system has no unique solution")
    reduced = np.hstack((a.array, b.array)).row_reduce(ncols=a.cols)
    rhs = reduced[:, a.cols:]
    if np.any(rhs[a.cols:].view(np.ndarray) != 0):
        raise InconsistentSystemError("overdetermined system is inconsistent")
    return MatrixGF(a.spec, rhs[: a.cols])


def submatrix(m: MatrixGF, rows: Optional[Sequence[int]] = None, cols: Optional[Sequence[int]] = None) -> MatrixGF:
    row_idx = list(range(m.rows)) if rows is None else list(rows)
    col_idx = list(range(m.cols)) if cols is None else list(cols)
    return MatrixGF(m.spec, m.array[np.ix_(row_idx, col_idx)])


def horizontal_concat(*matrices: MatrixGF) -> MatrixGF:
    _check_field(*matrices)
    return MatrixGF(matrices[0].spec, np.hstack([m.array for m in matrices]))


def scale_columns(m: MatrixGF, diag: Sequence[int]) -> MatrixGF:
    """M . diag(d), i.e. column j multiplied by d_j."""
    if len(diag) != m.cols:
        raise PreconditionError(f"need {m.cols} scaling factors, got {len(diag)}")
    return MatrixGF(m.spec, m.array * m.spec.array(list(diag))[np.newaxis, :])


def diagonal(spec: FieldSpec, diag: Sequence[int]) -> MatrixGF:
    GF = spec.galois_field()
    out = GF.Zeros((len(diag), len(diag)))
    for i, d in enumerate(diag):
        out[i, i] = GF(int(d))
    return MatrixGF(spec, out)


def scalar_multiple_of(u: galois.FieldArray, v: galois.FieldArray) -> Optional[int]:
    """Return theta with u = theta * v, or None when no such scalar exists.

    theta is read off the first nonzero entry of v and then checked on every
    coordinate.
    """
    if u.shape != v.shape:
        raise PreconditionError(f"columns differ in length: {u.shape} vs {v.shape}")
    nonzero = np.flatnonzero(v.view(np.ndarray))
    if nonzero.size == 0:
        raise PreconditionError("v must not be the zero column")
    t = int(nonzero[0])
    theta = u[t] / v[t]
    if np.array_equal((theta * v).view(np.ndarray), u.view(np.ndarray)):
        return int(theta)
    return None


def square_submatrices(rows: int, cols: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    for size in range(1, min(rows, cols) + 1):
        for row_idx in combinations(range(rows), size):
            for col_idx in combinations(range(cols), size):
                yield row_idx, col_idx


def is_superregular(m: MatrixGF, max_side: int = 8, max_cells: int = 200) -> bool:
    """True iff every square submatrix of ``m`` is nonsingular.

    Enumerates all index subsets, so the input size is capped.
    """
    if min(m.rows, m.cols) > max_side or m.rows * m.cols > max_cells:
        raise BruteForceLimitError(
            f"superregularity check of a {m.rows}x{m.cols} matrix exceeds the cap "
            f"(min side <= {max_side}, cells <= {max_cells})"
        )
    data = m.array
    if np.any(data.view(np.ndarray) == 0):
        return False
    for row_idx, col_idx in square_submatrices(m.rows, m.cols):
        if len(row_idx) == 1:
            continue
        if np.linalg.det(data[np.ix_(row_idx, col_idx)]) == 0:
            return False
    return True
