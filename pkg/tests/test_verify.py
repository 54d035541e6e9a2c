"""
Tests for the verification runner.
"""

from dataclasses import replace

from convertible_codes.access_convert import MergeParams, build_default
from convertible_codes.linalg import MatrixGF
from convertible_codes.verify import FAIL, PASS, SKIP, PairVerifier


def _status(result, name):
    return next(c.status for c in result.checks if c.name == name)


def test_mult_passes(mult_pair, test_config):
    """Test that the multiplicative subgroup pair passes every check."""
    result = PairVerifier(test_config).verify_pair(mult_pair)
    assert result.passed, result.checks
    assert result.per_symbol is True
    assert _status(result, "parallel-block-reconstructible") == PASS
    assert result.report.reads == 8


def test_grs_pair_is_not_per_symbol(grs_pair, test_config):
    """Test that the GRS plan passes but reads multi-term combinations."""
    result = PairVerifier(test_config).verify_pair(grs_pair)
    assert result.passed, result.checks
    assert result.per_symbol is False
    assert _status(result, "F . H^I identity") == PASS


def test_tampered_matrix_fails(mult_pair, test_config):
    """Test that zeroing a parity entry breaks MDS and conversion."""
    rows = [list(row) for row in mult_pair.final.matrix.entries()]
    rows[0][0] = 0
    final = replace(mult_pair.final, matrix=MatrixGF(mult_pair.spec, rows))
    result = PairVerifier(test_config).verify_pair(replace(mult_pair, final=final))
    assert not result.passed
    assert _status(result, "final code is MDS") == FAIL
    assert _status(result, "final parity matrix is superregular") == FAIL


def test_default_pair_skips_access_check(gf11, test_config):
    """Test that a pair without a plan only gets the structural checks."""
    result = PairVerifier(test_config).verify_pair(build_default(MergeParams(4, 3, 3, 2), gf11))
    assert result.passed
    assert result.per_symbol is None
    assert _status(result, "access-optimal conversion") == SKIP


def test_vector_pair_passes(piggyback_pair, test_config):
    """Test the bandwidth checks on the GF(23) vector pair."""
    result = PairVerifier(test_config).verify_vector_pair(piggyback_pair, trials=5)
    assert result.passed, result.checks
    assert _status(result, "vector code is MDS") == PASS
    assert (result.report.read, result.report.write) == (44, 18)


def test_full_strategy_fails(piggyback_pair, test_config):
    """Test that the read-everything strategy is flagged."""
    result = PairVerifier(test_config).verify_vector_pair(piggyback_pair, trials=2, strategy="full")
    assert not result.passed
    assert _status(result, "bandwidth-optimal conversion") == FAIL


def test_vector_decode_cap_skips(piggyback_pair, test_config):
    """Test that the brute-force decode check is skipped above the length cap."""
    test_config.limits.vector_decode_max_length = 8
    result = PairVerifier(test_config).verify_vector_pair(piggyback_pair, trials=2)
    assert _status(result, "vector code is MDS") == SKIP
    assert result.passed
