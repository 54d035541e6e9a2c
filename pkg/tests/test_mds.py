"""
Tests for scalar MDS codes.
"""

from itertools import combinations

import numpy as np
import pytest

from convertible_codes.errors import (
    BruteForceLimitError,
    InconsistentErasuresError,
    PreconditionError,
    SingularMatrixError,
)
from convertible_codes.gf import FieldSpec
from convertible_codes.linalg import MatrixGF, OrderedSet, extended_vandermonde, vandermonde
from convertible_codes.mds import (
    PARITY_CHECK,
    SYSTEMATIC,
    Codeword,
    MdsCode,
    decode_erasures,
    encode,
    is_codeword,
    puncture,
    to_parity_check,
    to_systematic,
    verify_mds,
)


def _rs_code(spec, points, r):
    h = vandermonde(OrderedSet(spec, tuple(points)), r)
    return MdsCode(len(points), len(points) - r, PARITY_CHECK, h)


def test_shape_is_validated(gf13):
    """Test that the matrix shape must agree with n, k and the representation."""
    with pytest.raises(PreconditionError):
        MdsCode(5, 3, SYSTEMATIC, MatrixGF(gf13, [[1, 1, 1]]))
    with pytest.raises(PreconditionError):
        MdsCode(3, 3, SYSTEMATIC, MatrixGF(gf13, [[1]]))
    with pytest.raises(PreconditionError):
        MdsCode(3, 2, "generator", MatrixGF(gf13, [[1], [1]]))


def test_single_parity_code(gf13):
    """Test that an all-ones parity column appends the sum of the message."""
    code = MdsCode(4, 3, SYSTEMATIC, MatrixGF(gf13, [[1], [1], [1]]))
    assert encode(code, (2, 5, 9)).symbols == (2, 5, 9, 3)
    assert encode(code, (0, 0, 0)).symbols == (0, 0, 0, 0)


def test_representations_agree(gf13, rng):
    """Test that both representations describe the same code."""
    code = _rs_code(gf13, (1, 2, 4, 8, 3, 6, 12), 3)
    systematic = to_systematic(code)
    assert systematic.representation == SYSTEMATIC
    assert to_parity_check(systematic).representation == PARITY_CHECK
    for _ in range(5):
        word = encode(code, gf13.random_vector(rng, code.k))
        assert is_codeword(code, word)
        assert is_codeword(systematic, word)
        assert is_codeword(to_parity_check(systematic), word)


def test_parity_check_encode_satisfies_h(grs_pair, rng):
    """Test that a parity-check code encodes to words with H c = 0."""
    code = grs_pair.initial
    word = encode(code, grs_pair.spec.random_vector(rng, code.k))
    syndrome = code.parity_check_matrix.array @ word.array()
    assert not np.any(syndrome.view(np.ndarray))
    assert is_codeword(code, word)


def test_singular_trailing_block(gf13):
    """Test that a code whose last r coordinates are not a parity set is refused."""
    h = MatrixGF(gf13, [[1, 1, 0], [1, 2, 0]])
    code = MdsCode(3, 1, PARITY_CHECK, h)
    with pytest.raises(SingularMatrixError):
        code.parity_matrix


def test_decode_every_erasure_pattern(gf13, rng):
    """Test that any k known symbols recover the message."""
    code = _rs_code(gf13, (1, 2, 4, 8, 3, 6, 12), 3)
    message = gf13.random_vector(rng, code.k)
    word = encode(code, message)
    assert decode_erasures(code, {i: word[i] for i in range(code.k)}) == message
    for known in combinations(range(code.n), code.k):
        assert decode_erasures(code, {i: word[i] for i in known}) == message


def test_decode_detects_inconsistent_knowns(gf13, rng):
    """Test that a corrupted extra symbol is reported."""
    code = _rs_code(gf13, (1, 2, 4, 8, 3, 6, 12), 3)
    word = encode(code, gf13.random_vector(rng, code.k))
    known = {i: word[i] for i in range(code.k + 1)}
    known[code.k] = (known[code.k] + 1) % 13
    with pytest.raises(InconsistentErasuresError):
        decode_erasures(code, known)
    with pytest.raises(PreconditionError):
        decode_erasures(code, {0: word[0]})


def test_verify_mds(gf13, gf8):
    """Test brute-force MDS verification on good and bad codes."""
    # Doubly-extended RS: [V_A,3 | e^3] over GF(13), n = 7.
    h = extended_vandermonde(OrderedSet(gf13, (1, 2, 4, 8, 3, 6)), 3)
    assert verify_mds(MdsCode(7, 4, PARITY_CHECK, h))
    repeated = MatrixGF(gf13, [[1, 1, 1, 1], [2, 2, 3, 4]])
    assert not verify_mds(MdsCode(4, 2, PARITY_CHECK, repeated))
    # Triply-extended RS over GF(8): all 8 points plus e^2 and e^3.
    triply = extended_vandermonde(OrderedSet(gf8, tuple(range(8))), 3, triply=True)
    assert verify_mds(MdsCode(10, 7, PARITY_CHECK, triply))


def test_verify_mds_cap(gf13):
    """Test that the subset cap is enforced."""
    code = _rs_code(gf13, (1, 2, 4, 8, 3, 6, 12), 3)
    with pytest.raises(BruteForceLimitError):
        verify_mds(code, max_subsets=10)


def test_puncture(gf23, piggyback_pair):
    """Test that dropping parity coordinates keeps an MDS code."""
    base = to_systematic(piggyback_pair.base.initial)
    assert (base.n, base.k) == (14, 8)
    assert puncture(base, []) is base
    punctured = puncture(base, range(10, 14))
    assert (punctured.n, punctured.k) == (10, 8)
    assert verify_mds(punctured)
    with pytest.raises(PreconditionError):
        puncture(base, [0])
    with pytest.raises(PreconditionError, match=r"trivial \[8,8\] code; drop at most 5"):
        puncture(base, range(8, 14))
    single = puncture(base, range(9, 14))
    assert (single.n, single.k) == (9, 8)
    assert verify_mds(single)


def test_codeword_of_wrong_field_is_not_a_codeword(gf13):
    """Test that membership checks the field and the length."""
    code = MdsCode(4, 3, SYSTEMATIC, MatrixGF(gf13, [[1], [1], [1]]))
    assert not is_codeword(code, Codeword(FieldSpec(11), (0, 0, 0, 0)))
    assert not is_codeword(code, Codeword(gf13, (0, 0, 0)))
