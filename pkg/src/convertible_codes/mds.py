"""
Scalar [n, k] linear codes in systematic-generator or parity-check form.

Systematic positions are always the first k coordinates; parities trail.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence, Tuple

import galois
import numpy as np

from .errors import (
    BruteForceLimitError,
    InconsistentErasuresError,
    PreconditionError,
    SingularMatrixError,
)
from .gf import FieldSpec, to_ints
from .linalg import MatrixGF, horizontal_concat, identity, inverse, rank, solve, submatrix

SYSTEMATIC = "systematic"
PARITY_CHECK = "parity_check"
REPRESENTATIONS = (SYSTEMATIC, PARITY_CHECK)


@dataclass(frozen=True)
class Codeword:
    """A length-n vector of canonical field integers."""

    spec: FieldSpec
    symbols: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, index: int) -> int:
        return self.symbols[index]

    def array(self) -> galois.FieldArray:
        return self.spec.array(list(self.symbols))


@dataclass(frozen=True)
class MdsCode:
    """An [n, k] code given by P (G = [I_k | P]) or by a parity-check matrix H."""

    n: int
    k: int
    representation: str
    matrix: MatrixGF

    def __post_init__(self) -> None:
        if self.representation not in REPRESENTATIONS:
            raise PreconditionError(f"unknown representation {self.representation!r}")
        if not 0 < self.k < self.n:
            raise PreconditionError(f"need 0 < k < n (n={self.n}, k={self.k})")
        expected = (
            (self.k, self.r) if self.representation == SYSTEMATIC else (self.r, self.n)
        )
        if self.matrix.shape != expected:
            raise PreconditionError(
                f"{self.representation} matrix of an [{self.n},{self.k}] code must be "
                f"{expected[0]}x{expected[1]}, got {self.matrix.rows}x{self.matrix.cols}"
            )

    @property
    def r(self) -> int:
        return self.n - self.k

    @property
    def spec(self) -> FieldSpec:
        return self.matrix.spec

    @cached_property
    def parity_matrix(self) -> MatrixGF:
        """P of the systematic generator [I | P]."""
        if self.representation == SYSTEMATIC:
            return self.matrix
        h = self.matrix
        h_msg = submatrix(h, cols=range(self.k))
        h_par = submatrix(h, cols=range(self.k, self.n))
        try:
            h_par_inv = inverse(h_par)
        except SingularMatrixError as e:
            raise SingularMatrixError(
                "parity-check columns of the trailing r coordinates are singular; "
                "the first k coordinates are not an information set"
            ) from e
        return (-(h_par_inv @ h_msg)).transpose()

    @cached_property
    def generator_matrix(self) -> MatrixGF:
        return horizontal_concat(identity(self.spec, self.k), self.parity_matrix)

    @cached_property
    def parity_check_matrix(self) -> MatrixGF:
        if self.representation == PARITY_CHECK:
            return self.matrix
        return horizontal_concat(-self.parity_matrix.transpose(), identity(self.spec, self.r))


def to_systematic(code: MdsCode) -> MdsCode:
    if code.representation == SYSTEMATIC:
        return code
    return MdsCode(code.n, code.k, SYSTEMATIC, code.parity_matrix)


def to_parity_check(code: MdsCode) -> MdsCode:
    if code.representation == PARITY_CHECK:
        return code
    return MdsCode(code.n, code.k, PARITY_CHECK, code.parity_check_matrix)


def encode(code: MdsCode, message: Sequence[int]) -> Codeword:
    """Systematic codeword whose first k symbols are ``message``."""
    if len(message) != code.k:
        raise PreconditionError(f"message must have k={code.k} symbols, got {len(message)}")
    m = code.spec.array(list(message))
    parities = m @ code.parity_matrix.array
    return Codeword(code.spec, tuple(to_ints(m)) + tuple(to_ints(parities)))


def is_codeword(code: MdsCode, word: Codeword) -> bool:
    if len(word) != code.n or word.spec != code.spec:
        return False
    syndrome = code.parity_check_matrix.array @ word.array()
    return not np.any(syndrome.view(np.ndarray))


def decode_erasures(code: MdsCode, known: Mapping[int, int]) -> Tuple[int, ...]:
    """Recover the message from at least k known (coordinate, value) pairs.

    Solves from the k smallest known coordinates and re-validates the rest.
    """
    if len(known) < code.k:
        raise PreconditionError(f"need at least k={code.k} known symbols, got {len(known)}")
    positions = sorted(known)
    if positions[0] < 0 or positions[-1] >= code.n:
        raise PreconditionError(f"known coordinates must lie in [0, {code.n})")
    chosen = positions[: code.k]
    g_s = submatrix(code.generator_matrix, cols=chosen)
    values = MatrixGF(code.spec, [[known[i]] for i in chosen])
    try:
        message = solve(g_s.transpose(), values)
    except SingularMatrixError as e:
        raise SingularMatrixError(
            f"coordinates {chosen} do not determine the message; the code is not MDS"
        ) from e
    recovered = tuple(int(v) for v in to_ints(message.column(0)))
    if len(positions) > code.k:
        word = encode(code, recovered)
        mismatched = [i for i in positions[code.k:] if word[i] != known[i]]
        if mismatched:
            raise InconsistentErasuresError(
                f"known symbols at {mismatched} disagree with the decoded codeword"
            )
    return recovered


def verify_mds(code: MdsCode, max_subsets: int = 10**6) -> bool:
    """Brute-force MDS check over every information-set candidate."""
    subsets = comb(code.n, code.k)
    if subsets > max_subsets:
        raise BruteForceLimitError(
            f"[{code.n},{code.k}] MDS check needs {subsets} subsets, cap is {max_subsets}"
        )
    h = code.parity_check_matrix.array
    if rank(code.parity_check_matrix) < code.r:
        return False
    for cols in combinations(range(code.n), code.r):
        if np.linalg.det(h[:, list(cols)]) == 0:
            return False
    return True


def puncture(code: MdsCode, drop: Iterable[int]) -> MdsCode:
    """Remove parity coordinates; the result is returned in systematic form.

    At least one parity must survive: MdsCode needs k < n, so dropping all
    n - k parities (which would leave the trivial [k, k] code) is refused.
    """
    dropped = sorted(set(drop))
    if not dropped:
        return code
    if any(c < code.k or c >= code.n for c in dropped):
        raise PreconditionError(
            f"only parity coordinates [{code.k}, {code.n}) can be punctured, got {dropped}"
        )
    if len(dropped) >= code.r:
        raise PreconditionError(
            f"puncturing all {code.r} parity coordinates would leave the trivial "
            f"[{code.k},{code.k}] code; drop at most {code.r - 1}"
        )
    keep = [j for j in range(code.r) if code.k + j not in dropped]
    return MdsCode(code.n - len(dropped), code.k, SYSTEMATIC, submatrix(code.parity_matrix, cols=keep))
