"""
Convertible Codes - MDS codes whose codewords can be merged into a longer
codeword of a different code with few disk accesses or little bandwidth.
"""

__version__ = "0.1.0"
__author__ = "Your Name"
__email__ = "your.email@example.com"

from .access_convert import (
    ConvertiblePair,
    MergeParams,
    build_default,
    build_grs,
    build_subgroup_add,
    build_subgroup_mult,
    build_triply_extended,
    convert,
    convert_default,
    verify_access_optimal,
)
from .bw_convert import BwParams, VectorCodePair, build_vector_pair, vector_convert, verify_bandwidth_optimal
from .gf import FieldSpec
from .mds import MdsCode, decode_erasures, encode, verify_mds

__all__ = [
    "BwParams",
    "ConvertiblePair",
    "FieldSpec",
    "MdsCode",
    "MergeParams",
    "VectorCodePair",
    "build_default",
    "build_grs",
    "build_subgroup_add",
    "build_subgroup_mult",
    "build_triply_extended",
    "build_vector_pair",
    "convert",
    "convert_default",
    "decode_erasures",
    "encode",
    "vector_convert",
    "verify_access_optimal",
    "verify_bandwidth_optimal",
    "verify_mds",
]
