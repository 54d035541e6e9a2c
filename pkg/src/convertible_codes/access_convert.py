"""
Access-optimal convertible codes in the merge regime.

Builders for the subgroup (Cauchy) families and the GRS family, the
conversion engine with per-disk access accounting, and optimality checks.
Coordinates and block indices are 0-based throughout.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import galois
import numpy as np

from .errors import ConvertibleCodeError, InvalidCodewordError, PreconditionError
from .gf import FieldSpec, exponents_to_elements, nth_root_of_unity, primitive_element, to_ints
from .linalg import (
    MatrixGF,
    OrderedSet,
    cauchy,
    diagonal,
    extended_vandermonde,
    horizontal_concat,
    inverse,
    scalar_multiple_of,
    scale_columns,
    submatrix,
    vandermonde,
)
from .mds import PARITY_CHECK, SYSTEMATIC, Codeword, MdsCode, encode, is_codeword

BlockMap = Dict[Tuple[int, int], Tuple[int, int]]


@dataclass(frozen=True)
class MergeParams:
    """Merge-regime parameters: lam initial [k_i + r_i, k_i] codewords become
    one final [lam * k_i + r_f, lam * k_i] codeword."""

    k_i: int
    r_i: int
    r_f: int
    lam: int

    def __post_init__(self) -> None:
        if self.k_i <= 1:
            raise PreconditionError(f"k_i must exceed 1 (k_i={self.k_i}); k_i = 1 is trivial")
        if self.r_f <= 1:
            raise PreconditionError(
                f"r_f must exceed 1 (r_f={self.r_f}); a single parity is converted by "
                "summing the initial parities"
            )
        if self.r_i < 1:
            raise PreconditionError(f"r_i must be at least 1 (r_i={self.r_i})")
        if self.lam < 2:
            raise PreconditionError(f"lambda must be at least 2 (lambda={self.lam})")

    @property
    def n_i(self) -> int:
        return self.k_i + self.r_i

    @property
    def k_f(self) -> int:
        return self.lam * self.k_i

    @property
    def n_f(self) -> int:
        return self.k_f + self.r_f

    @property
    def access_regime(self) -> bool:
        return self.r_f <= min(self.k_i, self.r_i)

    def require_access_regime(self) -> None:
        if not self.access_regime:
            raise PreconditionError(
                f"access-optimal conversion needs r_f <= min(k_i, r_i) "
                f"(r_f={self.r_f}, k_i={self.k_i}, r_i={self.r_i})"
            )


class Family(str, Enum):
    SUBGROUP_MULT = "subgroup-mult"
    SUBGROUP_ADD = "subgroup-add"
    GRS = "grs"
    GRS_DOUBLY_EXT = "grs-doubly-ext"
    GRS_TRIPLY_EXT = "grs-triply-ext"
    DEFAULT = "default"

    @property
    def per_symbol_by_design(self) -> bool:
        return self in (Family.SUBGROUP_MULT, Family.SUBGROUP_ADD)


@dataclass(frozen=True)
class SourceTerm:
    """coefficient * (symbol ``coordinate`` of initial codeword ``block``)."""

    block: int
    coordinate: int
    coefficient: int


@dataclass(frozen=True)
class ConversionPlan:
    """For each new parity, the weighted initial symbols that sum to it."""

    terms: Tuple[Tuple[SourceTerm, ...], ...]

    @property
    def r_f(self) -> int:
        return len(self.terms)

    @property
    def read_set(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted({(t.block, t.coordinate) for row in self.terms for t in row}))

    def sources(self, i: int, block: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Source coordinates and coefficients of new parity ``i`` in ``block``."""
        picked = [t for t in self.terms[i] if t.block == block]
        return tuple(t.coordinate for t in picked), tuple(t.coefficient for t in picked)

    def is_per_symbol(self, lam: int) -> bool:
        return all(len(self.sources(i, b)[0]) == 1 for i in range(self.r_f) for b in range(lam))

    def validate(self, params: MergeParams) -> None:
        if self.r_f != params.r_f:
            raise PreconditionError(f"plan defines {self.r_f} parities, expected {params.r_f}")
        for t in (t for row in self.terms for t in row):
            if not 0 <= t.block < params.lam:
                raise PreconditionError(f"plan references block {t.block} of {params.lam}")
            if not params.k_i <= t.coordinate < params.n_i:
                raise PreconditionError(
                    f"plan reads coordinate {t.coordinate}, which is not an initial parity"
                )


@dataclass(frozen=True)
class ConvertiblePair:
    """Initial and final codes plus the conversion plan between them."""

    params: MergeParams
    family: Family
    initial: MdsCode
    final: MdsCode
    plan: Optional[ConversionPlan]
    variant: Optional[str] = None
    sets: Mapping[str, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def spec(self) -> FieldSpec:
        return self.initial.spec


@dataclass(frozen=True)
class AccessTrace:
    """Which disks a conversion touched."""

    read_set: Tuple[Tuple[int, int], ...]
    writes: int
    per_symbol_reads: Tuple[Tuple[Tuple[int, int], ...], ...]

    @property
    def disks_read(self) -> int:
        return len(self.read_set)

    @property
    def disks_written(self) -> int:
        return self.writes

    @property
    def total(self) -> int:
        return self.disks_read + self.writes


@dataclass
class AccessReport:
    trials: int
    reads: int
    writes: int
    bound: int
    per_symbol: bool
    passed: bool
    read_set: Tuple[Tuple[int, int], ...] = ()
    failures: List[str] = field(default_factory=list)


# --- subgroup families -----------------------------------------------------

MULT_SHRINK = {"base": 0, "A": 1, "B": 2}
ADD_SHRINK = {"base": 0, "A": 1}


def _check_subgroup_params(params: MergeParams) -> None:
    if params.r_f > params.r_i:
        raise PreconditionError(
            f"subgroup constructions need r_f <= r_i (r_f={params.r_f}, r_i={params.r_i})"
        )


def _disjoint_blocks(spec: FieldSpec, blocks: Sequence[Sequence[int]], y: Sequence[int]) -> OrderedSet:
    flat = [v for block in blocks for v in block]
    if len(set(flat)) != len(flat) or set(flat) & set(y):
        raise PreconditionError(
            "coset collision: the evaluation blocks X^(l) and Y are not pairwise disjoint"
        )
    return OrderedSet(spec, tuple(flat))


def _subgroup_pair(
    params: MergeParams,
    spec: FieldSpec,
    family: Family,
    variant: str,
    x_blocks: List[Tuple[int, ...]],
    y: Tuple[int, ...],
    ones_column: bool,
) -> ConvertiblePair:
    x = _disjoint_blocks(spec, x_blocks, y)
    p = cauchy(x, OrderedSet(spec, y))
    if ones_column:
        p = horizontal_concat(p, MatrixGF(spec, [[1]] * p.rows))
    block_map = verify_parallel_block_reconstructible(p, params.k_i)
    if block_map is None:
        raise ConvertibleCodeError(f"{family.value} matrix is not parallel-block-reconstructible")
    p_initial = submatrix(p, rows=range(params.k_i))
    p_final = submatrix(p, cols=range(params.r_f))
    initial = MdsCode(params.n_i, params.k_i, SYSTEMATIC, p_initial)
    final = MdsCode(params.n_f, params.k_f, SYSTEMATIC, p_final)
    plan = plan_from_block_map(block_map, params)
    sets = {"Y": y, "X": tuple(x)}
    for ell, block in enumerate(x_blocks):
        sets[f"X{ell + 1}"] = block
    return ConvertiblePair(params, family, initial, final, plan, variant, sets)


def _x1(spec: FieldSpec, k_i: int, x1: Optional[Sequence[int]], default: Tuple[int, ...]) -> Tuple[int, ...]:
    if x1 is None:
        return default
    chosen = tuple(int(v) for v in x1)
    if len(chosen) != k_i:
        raise PreconditionError(f"X^(1) override must have k_i={k_i} elements, got {len(chosen)}")
    OrderedSet(spec, chosen)
    return chosen


def build_subgroup_mult(
    params: MergeParams,
    spec: FieldSpec,
    variant: str = "base",
    x1: Optional[Sequence[int]] = None,
) -> ConvertiblePair:
    """Cauchy construction over a multiplicative subgroup.

    Y is the subgroup of order s (s = r, r - 1 or r - 2 for variants base, A, B),
    with 0 added for A and B and an all-ones column appended for B. The blocks
    are X^(l) = gamma^(l-1) X^(1). With r_f < r_i the final parity matrix keeps
    the first r_f columns.
    """
    if variant not in MULT_SHRINK:
        raise PreconditionError(f"subgroup-mult variant must be one of {sorted(MULT_SHRINK)}")
    _check_subgroup_params(params)
    r, q = params.r_i, spec.q
    s = r - MULT_SHRINK[variant]
    if s < 1 or params.lam > s:
        raise PreconditionError(
            f"variant {variant} requires lambda <= r - {MULT_SHRINK[variant]} "
            f"(lambda={params.lam}, r={r})"
        )
    if (q - 1) % s:
        raise PreconditionError(f"variant {variant} requires (r - {MULT_SHRINK[variant]}) | (q - 1) (s={s}, q={q})")
    if q < (params.k_i + 1) * s + 1:
        raise PreconditionError(
            f"variant {variant} requires q >= (k_i + 1)(r - {MULT_SHRINK[variant]}) + 1 "
            f"= {(params.k_i + 1) * s + 1} (q={q})"
        )
    GF = spec.galois_field()
    gamma = GF(nth_root_of_unity(spec, s).value)
    y = [int(gamma**j) for j in range(s)]
    if variant in ("A", "B"):
        y.append(0)
    first = _x1(spec, params.k_i, x1, exponents_to_elements(spec, range(1, params.k_i + 1)))
    x_blocks = [tuple(to_ints(gamma**ell * GF(list(first)))) for ell in range(params.lam)]
    return _subgroup_pair(
        params, spec, Family.SUBGROUP_MULT, variant, x_blocks, tuple(y), variant == "B"
    )


def build_subgroup_add(
    params: MergeParams,
    spec: FieldSpec,
    variant: str = "base",
    x1: Optional[Sequence[int]] = None,
) -> ConvertiblePair:
    """Cauchy construction over an additive subgroup.

    Y holds the s = p^u polynomials of degree < u (s = r, or r - 1 for variant A
    which appends an all-ones column); X^(1) defaults to the first k_i nonzero
    multiples of x^u, and X^(l) = y_(l-1) + X^(1).
    """
    if variant not in ADD_SHRINK:
        raise PreconditionError(f"subgroup-add variant must be one of {sorted(ADD_SHRINK)}")
    _check_subgroup_params(params)
    r, q = params.r_i, spec.q
    s = r - ADD_SHRINK[variant]
    label = "r" if variant == "base" else "r - 1"
    if s < 2 or not galois.is_prime_power(s) or galois.factors(s)[0][0] != spec.p:
        raise PreconditionError(
            f"variant {variant} requires {label} to be a power of the characteristic "
            f"p={spec.p} ({label}={s})"
        )
    if s >= q:
        raise PreconditionError(f"variant {variant} requires {label} < q (s={s}, q={q})")
    if params.lam > s:
        raise PreconditionError(
            f"variant {variant} requires lambda <= {label} (lambda={params.lam}, {label}={s})"
        )
    if q < (params.k_i + 1) * s:
        raise PreconditionError(
            f"variant {variant} requires q >= (k_i + 1)({label}) = {(params.k_i + 1) * s} (q={q})"
        )
    GF = spec.galois_field()
    y = tuple(range(s))
    first = _x1(spec, params.k_i, x1, tuple(s * t for t in range(1, params.k_i + 1)))
    x_blocks = [tuple(to_ints(GF(y[ell]) + GF(list(first)))) for ell in range(params.lam)]
    return _subgroup_pair(params, spec, Family.SUBGROUP_ADD, variant, x_blocks, y, variant == "A")


def verify_parallel_block_reconstructible(p: MatrixGF, k_i: int) -> Optional[BlockMap]:
    """Match every column of every k_i-row block to a scalar multiple of a
    first-block column.

    Returns {(block, column): (first_block_column, theta)}, or None when some
    column has no match or a block's matches do not form a permutation.
    """
    if k_i < 1 or p.rows % k_i:
        raise PreconditionError(f"k_i={k_i} must divide the row count {p.rows}")
    data = p.array
    first = data[:k_i]
    usable = [j for j in range(p.cols) if np.any(first[:, j].view(np.ndarray))]
    mapping: BlockMap = {}
    for block in range(p.rows // k_i):
        rows = data[block * k_i:(block + 1) * k_i]
        matched = []
        for i in range(p.cols):
            hit = None
            for j in usable:
                theta = scalar_multiple_of(rows[:, i], first[:, j])
                if theta is not None:
                    hit = (j, theta)
                    break
            if hit is None:
                return None
            mapping[(block, i)] = hit
            matched.append(hit[0])
        if len(set(matched)) != len(matched):
            return None
    return mapping


def plan_from_block_map(block_map: BlockMap, params: MergeParams) -> ConversionPlan:
    """Per-symbol plan: new parity i = sum_l theta * c^l[k_i + i_l]."""
    terms = []
    for i in range(params.r_f):
        row = []
        for block in range(params.lam):
            j, theta = block_map[(block, i)]
            row.append(SourceTerm(block, params.k_i + j, theta))
        terms.append(tuple(row))
    return ConversionPlan(tuple(terms))


# --- GRS family ------------------------------------------------------------


@dataclass(frozen=True)
class GrsLayout:
    """Evaluation sets of a GRS pair, as canonical integers."""

    a: Tuple[Tuple[int, ...], ...]
    b_final: Tuple[int, ...]
    b_initial: Tuple[int, ...]
    extension: str  # "none", "doubly" or "triply"

    @property
    def fill(self) -> Tuple[int, ...]:
        return self.b_initial[len(self.b_final):]


def _grs_layout(
    params: MergeParams,
    spec: FieldSpec,
    extension: str,
    b_initial: Optional[Sequence[int]] = None,
) -> GrsLayout:
    k, lam, q = params.k_i, params.lam, spec.q
    if lam * k > q - 1:
        raise PreconditionError(f"need lambda * k_i <= q - 1 distinct nonzero points (q={q})")
    a = tuple(exponents_to_elements(spec, range(ell * k, (ell + 1) * k)) for ell in range(lam))
    if extension == "triply":
        return GrsLayout(a, (0,), (0,), extension)
    shrink = 1 if extension == "doubly" else 0
    size_final = params.r_f - shrink
    size_initial = params.r_i - shrink
    b_final = (0,) + exponents_to_elements(spec, range(lam * k, lam * k + size_final - 1))
    need = size_initial - size_final
    forbidden = set(a[0]) | set(b_final)
    if b_initial is not None:
        fill = tuple(int(v) for v in b_initial)
        if len(fill) != need or len(set(fill)) != need or forbidden & set(fill):
            raise PreconditionError(
                f"B^I override must add {need} distinct elements outside A_1 and B^F"
            )
    else:
        candidates = list(range(lam * k + size_final - 1, q - 1)) + list(range(k, lam * k))
        fill = tuple(v for v in exponents_to_elements(spec, candidates) if v not in forbidden)[:need]
        if len(fill) < need:
            raise PreconditionError(
                f"cannot fill B^I: need {need} more points outside A_1 and B^F in {spec}"
            )
    return GrsLayout(a, b_final, b_final + fill, extension)


def _f_poly(spec: FieldSpec, roots: Sequence[int]) -> galois.Poly:
    GF = spec.galois_field()
    if not roots:
        return galois.Poly([1], field=GF)
    return galois.Poly.Roots(GF(list(roots)))


def _block(spec: FieldSpec, points: Sequence[int], r: int, extension: str) -> MatrixGF:
    s = OrderedSet(spec, tuple(points))
    if extension == "none":
        return vandermonde(s, r)
    return extended_vandermonde(s, r, triply=extension == "triply")


def _grs_codes(params: MergeParams, spec: FieldSpec, layout: GrsLayout) -> Tuple[MdsCode, MdsCode]:
    GF = spec.galois_field()
    f = _f_poly(spec, layout.fill)
    scaled = layout.a[0] + layout.b_final
    v = [int(x) for x in to_ints(np.reciprocal(f(GF(list(scaled)))))]
    v += [1] * (params.r_i + params.k_i - len(v))
    h_initial = horizontal_concat(
        vandermonde(OrderedSet(spec, layout.a[0]), params.r_i),
        _block(spec, layout.b_initial, params.r_i, layout.extension),
    )
    h_initial = scale_columns(h_initial, v)
    h_final = horizontal_concat(
        *[vandermonde(OrderedSet(spec, a), params.r_f) for a in layout.a],
        _block(spec, layout.b_final, params.r_f, layout.extension),
    )
    initial = MdsCode(params.n_i, params.k_i, PARITY_CHECK, h_initial)
    final = MdsCode(params.n_f, params.k_f, PARITY_CHECK, h_final)
    return initial, final


def grs_read_coordinates(params: MergeParams, extension: str) -> Tuple[int, ...]:
    """Initial parity coordinates read by the GRS conversion."""
    k = params.k_i
    if extension == "doubly":
        return tuple(range(k, k + params.r_f - 1)) + (k + params.r_i - 1,)
    return tuple(range(k, k + params.r_f))


def grs_coefficient_blocks(params: MergeParams, spec: FieldSpec, layout: GrsLayout) -> List[MatrixGF]:
    """C_l = M^-1 D_l M, with M the square B^F block of the final parity check."""
    m = _block(spec, layout.b_final, params.r_f, layout.extension)
    m_inv = inverse(m)
    GF = spec.galois_field()
    gamma = GF(primitive_element(spec).value)
    blocks = []
    for ell in range(params.lam):
        shift = gamma ** (ell * params.k_i)
        d = diagonal(spec, [int(shift**i) for i in range(params.r_f)])
        blocks.append(m_inv @ d @ m)
    return blocks


def _grs_plan(params: MergeParams, spec: FieldSpec, layout: GrsLayout) -> ConversionPlan:
    coords = grs_read_coordinates(params, layout.extension)
    blocks = grs_coefficient_blocks(params, spec, layout)
    terms = []
    for i in range(params.r_f):
        row = []
        for ell, c in enumerate(blocks):
            for t, coefficient in enumerate(c.entries()[i]):
                if coefficient:
                    row.append(SourceTerm(ell, coords[t], coefficient))
        terms.append(tuple(row))
    return ConversionPlan(tuple(terms))


def _layout_sets(layout: GrsLayout) -> Dict[str, Tuple[int, ...]]:
    sets = {f"A{ell + 1}": a for ell, a in enumerate(layout.a)}
    sets["BF"] = layout.b_final
    sets["BI"] = layout.b_initial
    return sets


def build_grs(
    params: MergeParams,
    spec: FieldSpec,
    doubly_extended: bool = False,
    b_initial: Optional[Sequence[int]] = None,
) -> ConvertiblePair:
    """GRS pair with A_l = gamma^(l-1)k A_1 and B^F = {0, gamma^(lam k), ...}.

    The initial parity check is scaled by f(a)^-1 on A_1 and B^F, where f
    vanishes on B^I \\ B^F, so that F . H^I exposes the final-code structure.
    """
    params.require_access_regime()
    k, q = params.k_i, spec.q
    bound = max(k + params.r_i, params.lam * k + params.r_f) - (1 if doubly_extended else 0)
    if q < bound:
        form = "doubly-extended" if doubly_extended else "plain"
        raise PreconditionError(
            f"{form} GRS needs q >= max(k_i + r_i, lambda * k_i + r_f)"
            f"{' - 1' if doubly_extended else ''} = {bound} (q={q})"
        )
    extension = "doubly" if doubly_extended else "none"
    layout = _grs_layout(params, spec, extension, b_initial)
    initial, final = _grs_codes(params, spec, layout)
    family = Family.GRS_DOUBLY_EXT if doubly_extended else Family.GRS
    plan = _grs_plan(params, spec, layout)
    return ConvertiblePair(params, family, initial, final, plan, None, _layout_sets(layout))


def build_triply_extended(params: MergeParams, spec: FieldSpec) -> ConvertiblePair:
    """r_i = r_f = 3 GRS pair over GF(2^m) with parity blocks [V | e^2 | e^3]."""
    if params.r_i != 3 or params.r_f != 3:
        raise PreconditionError(f"triply-extended GRS needs r_i = r_f = 3 (r_i={params.r_i}, r_f={params.r_f})")
    if spec.p != 2:
        raise PreconditionError(f"triply-extended GRS needs q to be a power of 2 (q={spec.q})")
    params.require_access_regime()
    if spec.q < params.lam * params.k_i + 1:
        raise PreconditionError(
            f"triply-extended GRS needs q >= lambda * k_i + 1 = {params.lam * params.k_i + 1} (q={spec.q})"
        )
    layout = _grs_layout(params, spec, "triply")
    initial, final = _grs_codes(params, spec, layout)
    plan = _grs_plan(params, spec, layout)
    return ConvertiblePair(params, Family.GRS_TRIPLY_EXT, initial, final, plan, None, _layout_sets(layout))


def build_default(params: MergeParams, spec: FieldSpec) -> ConvertiblePair:
    """Doubly-extended GRS codes with no conversion plan; only the
    read-everything baseline applies to them."""
    k, lam = params.k_i, params.lam
    bound = max(k + params.r_i, lam * k + params.r_f) - 1
    if spec.q < bound:
        raise PreconditionError(f"default pair needs q >= {bound} (q={spec.q})")
    # Each code is doubly-extended over its own points, so any r_i, r_f pair works.
    a = tuple(exponents_to_elements(spec, range(ell * k, (ell + 1) * k)) for ell in range(lam))
    b_initial = ((0,) + exponents_to_elements(spec, range(k, k + params.r_i - 2)))[: params.r_i - 1]
    b_final = ((0,) + exponents_to_elements(spec, range(lam * k, lam * k + params.r_f - 2)))[: params.r_f - 1]
    h_initial = horizontal_concat(
        vandermonde(OrderedSet(spec, a[0]), params.r_i),
        extended_vandermonde(OrderedSet(spec, b_initial), params.r_i),
    )
    h_final = horizontal_concat(
        *[vandermonde(OrderedSet(spec, points), params.r_f) for points in a],
        extended_vandermonde(OrderedSet(spec, b_final), params.r_f),
    )
    initial = MdsCode(params.n_i, k, PARITY_CHECK, h_initial)
    final = MdsCode(params.n_f, params.k_f, PARITY_CHECK, h_final)
    sets = {f"A{ell + 1}": points for ell, points in enumerate(a)}
    sets["BF"] = b_final
    sets["BI"] = b_initial
    return ConvertiblePair(params, Family.DEFAULT, initial, final, None, None, sets)


def f_matrix(pair: ConvertiblePair) -> MatrixGF:
    """r_f x r_i matrix with F(i, i + j) = f_j for f = prod over B^I \\ B^F of (x - b)."""
    params, spec = pair.params, pair.spec
    fill = pair.sets["BI"][len(pair.sets["BF"]):]
    coeffs = to_ints(_f_poly(spec, fill).coeffs)[::-1]
    rows = [[0] * params.r_i for _ in range(params.r_f)]
    for i in range(params.r_f):
        for j, c in enumerate(coeffs):
            rows[i][i + j] = c
    return MatrixGF(spec, rows)


def expected_f_product(pair: ConvertiblePair) -> MatrixGF:
    """[V_{A_1,r_f} | V_{B^F,r_f} | 0 (| e^r_f)] that F . H^I must equal."""
    params, spec = pair.params, pair.spec
    GF = spec.galois_field()
    a1 = OrderedSet(spec, pair.sets["A1"])
    b_final = OrderedSet(spec, pair.sets["BF"])
    fill = len(pair.sets["BI"]) - len(b_final)
    parts = [vandermonde(a1, params.r_f).array, vandermonde(b_final, params.r_f).array]
    if fill:
        parts.append(GF.Zeros((params.r_f, fill)))
    if pair.family == Family.GRS_DOUBLY_EXT:
        parts.append(GF.Identity(params.r_f)[:, params.r_f - 1:])
    return MatrixGF(spec, np.hstack(parts))


# --- conversion --------------------------------------------------------------


def _check_inputs(pair: ConvertiblePair, codewords: Sequence[Codeword]) -> None:
    if len(codewords) != pair.params.lam:
        raise PreconditionError(f"expected {pair.params.lam} initial codewords, got {len(codewords)}")
    for ell, word in enumerate(codewords):
        if not is_codeword(pair.initial, word):
            raise InvalidCodewordError(f"input {ell} is not a codeword of the initial code")


def _prefix(pair: ConvertiblePair, codewords: Sequence[Codeword]) -> Tuple[int, ...]:
    k = pair.params.k_i
    return tuple(v for word in codewords for v in word.symbols[:k])


def convert(pair: ConvertiblePair, codewords: Sequence[Codeword]) -> Tuple[Codeword, AccessTrace]:
    """Merge lam initial codewords by reading only the plan's parity symbols."""
    if pair.plan is None:
        raise PreconditionError(f"{pair.family.value} pairs carry no plan; use convert_default")
    _check_inputs(pair, codewords)
    spec, plan = pair.spec, pair.plan
    GF = spec.galois_field()
    parities = []
    for row in plan.terms:
        acc = GF(0)
        for t in row:
            acc = acc + GF(t.coefficient) * GF(codewords[t.block][t.coordinate])
        parities.append(int(acc))
    trace = AccessTrace(
        read_set=plan.read_set,
        writes=pair.params.r_f,
        per_symbol_reads=tuple(tuple((t.block, t.coordinate) for t in row) for row in plan.terms),
    )
    return Codeword(spec, _prefix(pair, codewords) + tuple(parities)), trace


def convert_default(pair: ConvertiblePair, codewords: Sequence[Codeword]) -> Tuple[Codeword, AccessTrace]:
    """Baseline: read every message symbol and re-encode."""
    _check_inputs(pair, codewords)
    k = pair.params.k_i
    read_set = tuple((ell, j) for ell in range(pair.params.lam) for j in range(k))
    final = encode(pair.final, _prefix(pair, codewords))
    trace = AccessTrace(read_set, pair.params.r_f, tuple(read_set for _ in range(pair.params.r_f)))
    return final, trace


def access_cost_bound(params: MergeParams) -> int:
    """Lower bound on disks read plus written by any conversion."""
    if params.access_regime:
        return (params.lam + 1) * params.r_f
    return params.lam * params.k_i + params.r_f


def random_initial_codewords(pair: ConvertiblePair, rng: np.random.Generator) -> List[Codeword]:
    spec, k = pair.spec, pair.params.k_i
    return [encode(pair.initial, spec.random_vector(rng, k)) for _ in range(pair.params.lam)]


def verify_access_optimal(
    pair: ConvertiblePair,
    trials: int = 100,
    rng: Optional[np.random.Generator] = None,
    on_trial: Optional[Callable[[int], None]] = None,
) -> AccessReport:
    """Run random conversions and check soundness and read/write optimality."""
    params = pair.params
    params.require_access_regime()
    if pair.plan is None:
        raise PreconditionError(f"{pair.family.value} pairs carry no plan to verify")
    rng = rng if rng is not None else np.random.default_rng(0)
    per_symbol = pair.plan.is_per_symbol(params.lam)
    report = AccessReport(
        trials=trials,
        reads=len(pair.plan.read_set),
        writes=params.r_f,
        bound=access_cost_bound(params),
        per_symbol=per_symbol,
        passed=True,
        read_set=pair.plan.read_set,
    )
    if report.reads != params.lam * params.r_f:
        report.failures.append(f"reads {report.reads} != lambda * r_f = {params.lam * params.r_f}")
    if pair.family.per_symbol_by_design and not per_symbol:
        report.failures.append("plan is not per-symbol for a per-symbol family")
    first_trace: Optional[AccessTrace] = None
    for trial in range(trials):
        inputs = random_initial_codewords(pair, rng)
        final, trace = convert(pair, inputs)
        if not is_codeword(pair.final, final):
            report.failures.append(f"trial {trial}: output fails the final parity check")
        if final.symbols[: params.k_f] != _prefix(pair, inputs):
            report.failures.append(f"trial {trial}: systematic prefix differs from the inputs")
        if trace.disks_written != params.r_f:
            report.failures.append(f"trial {trial}: wrote {trace.disks_written} disks")
        if first_trace is None:
            first_trace = trace
        elif trace != first_trace:
            report.failures.append(f"trial {trial}: access trace depends on the data")
        if on_trial is not None:
            on_trial(trial)
    report.passed = not report.failures
    return report
