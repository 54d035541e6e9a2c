"""
Test configuration and utilities.
"""

import numpy as np
import pytest

from convertible_codes.access_convert import (
    MergeParams,
    build_grs,
    build_subgroup_add,
    build_subgroup_mult,
)
from convertible_codes.bw_convert import BwParams, build_vector_pair
from convertible_codes.config import Config, LimitsConfig, VerifyConfig
from convertible_codes.gf import FieldSpec


@pytest.fixture
def gf13():
    return FieldSpec(13)


@pytest.fixture
def gf16():
    """GF(16) under x^4 + x + 1."""
    return FieldSpec.from_order(16)


@pytest.fixture
def gf11():
    return FieldSpec(11)


@pytest.fixture
def gf8():
    return FieldSpec.from_order(8)


@pytest.fixture
def gf23():
    return FieldSpec(23)


@pytest.fixture
def rng():
    """A seeded generator so every test run draws the same messages."""
    return np.random.default_rng(1234)


@pytest.fixture
def mult_pair(gf13):
    """Multiplicative subgroup, variant B, over GF(13): k_i=5, lambda=2, r=4."""
    return build_subgroup_mult(MergeParams(5, 4, 4, 2), gf13, "B")


@pytest.fixture
def add_pair(gf16):
    """Additive subgroup, variant A, over GF(16): k_i=7, lambda=2, r=3."""
    return build_subgroup_add(MergeParams(7, 3, 3, 2), gf16, "A")


@pytest.fixture
def grs_pair(gf13):
    """GRS pair over GF(13) with k=4, r_i=3, r_f=2, lambda=2."""
    return build_grs(MergeParams(4, 3, 2, 2), gf13)


@pytest.fixture
def doubly_pair(gf11):
    return build_grs(MergeParams(4, 3, 3, 2), gf11, doubly_extended=True)


@pytest.fixture
def piggyback_pair(gf23):
    """Vector pair over GF(23): lambda=2, k_i=8, r_i=2, r_f=6 (alpha=3)."""
    return build_vector_pair(BwParams(8, 2, 6, 2), gf23)


@pytest.fixture
def test_config():
    """Create a test configuration."""
    return Config(
        limits=LimitsConfig(mds_max_subsets=100_000),
        verify=VerifyConfig(trials=10, seed=7, show_progress=False),
    )
