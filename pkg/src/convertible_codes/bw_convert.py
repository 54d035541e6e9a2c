"""
Bandwidth-optimal vector convertible codes built by piggybacking.

Each code symbol is a vector of ``alpha = r_f / gcd(r_f, r_i)`` sub-symbols.
Column j of a vector codeword is one instance of a scalar base code; the
first ``beta = r_i / gcd`` instances carry no piggybacks, the remaining ones
carry functions of the first ``beta`` messages on their parities.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .access_convert import ConvertiblePair, MergeParams, build_grs
from .errors import InconsistentSystemError, InvalidCodewordError, PreconditionError
from .gf import FieldSpec, to_ints
from .linalg import MatrixGF, solve, submatrix
from .mds import MdsCode, decode_erasures, puncture, to_systematic

BaseBuilder = Callable[[MergeParams, FieldSpec], ConvertiblePair]
Message = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class BwParams(MergeParams):
    """Merge parameters in the regime k_i > r_f > r_i."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.k_i > self.r_f > self.r_i:
            raise PreconditionError(
                f"piggyback construction needs k_i > r_f > r_i "
                f"(k_i={self.k_i}, r_f={self.r_f}, r_i={self.r_i})"
            )

    @property
    def g(self) -> int:
        return gcd(self.r_f, self.r_i)

    @property
    def alpha(self) -> int:
        return self.r_f // self.g

    @property
    def beta(self) -> int:
        return self.r_i // self.g


@dataclass(frozen=True)
class BandwidthBound:
    read: int
    write: int

    @property
    def total(self) -> int:
        return self.read + self.write


def min_subpacketization(r_f: int, r_i: int) -> int:
    """Smallest alpha for bandwidth-optimal conversion (1 once r_i >= r_f)."""
    if r_f < 1 or r_i < 1:
        raise PreconditionError(f"parity counts must be positive (r_f={r_f}, r_i={r_i})")
    if r_i >= r_f:
        return 1
    return r_f // gcd(r_f, r_i)


def multi_rf_subpacketization(r_i: int, r_targets: Sequence[int]) -> int:
    """alpha supporting conversion to every final parity count in ``r_targets``."""
    if any(r_t <= r_i for r_t in r_targets):
        raise PreconditionError(f"every target must exceed r_i={r_i}, got {list(r_targets)}")
    return reduce(lambda acc, r_t: acc * (r_t // gcd(r_i, r_t)), r_targets, 1)


def bandwidth_bound(params: MergeParams, alpha: Optional[int] = None) -> BandwidthBound:
    """Lower bound on sub-symbols read and written by a conversion."""
    alpha = alpha if alpha is not None else min_subpacketization(params.r_f, params.r_i)
    lam, k, r_i, r_f = params.lam, params.k_i, params.r_i, params.r_f
    if r_i >= r_f or k <= r_f:
        read = Fraction(lam * alpha * min(k, r_f))
    else:
        read = lam * alpha * (r_i + k * (1 - Fraction(r_i, r_f)))
    if read.denominator != 1:
        raise PreconditionError(f"alpha={alpha} gives a fractional read bound {read}")
    return BandwidthBound(int(read), r_f * alpha)


def piggyback_read_cost(params: BwParams) -> int:
    """Sub-symbols the piggyback conversion downloads."""
    return params.lam * (params.r_i * params.alpha + (params.alpha - params.beta) * params.k_i)


def piggyback_source(params: BwParams, i: int, j: int) -> Optional[Tuple[int, int]]:
    """(message instance, base parity column) piggybacked onto parity (i, j)."""
    if j < params.beta:
        return None
    i1, i2 = divmod(i, params.g)
    return i1, params.r_i + (params.alpha - params.beta) * i2 + (j - params.beta)


@dataclass(frozen=True)
class VectorCodeword:
    """n symbols of ``alpha`` sub-symbols each."""

    spec: FieldSpec
    symbols: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.symbols)
        if len({len(row) for row in rows}) > 1:
            raise PreconditionError("vector symbols must all have the same length")
        object.__setattr__(self, "symbols", rows)

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def alpha(self) -> int:
        return len(self.symbols[0]) if self.symbols else 0

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.symbols)


@dataclass(frozen=True)
class VectorCodePair:
    params: BwParams
    base: ConvertiblePair
    p_initial: MatrixGF
    p_blocks: Tuple[MatrixGF, ...]
    w: Tuple[MatrixGF, ...]
    punctured: MdsCode

    @property
    def spec(self) -> FieldSpec:
        return self.base.spec

    @property
    def n_i(self) -> int:
        return self.params.n_i

    @property
    def n_f(self) -> int:
        return self.params.n_f


@dataclass
class BandwidthTrace:
    """Sub-symbols moved per disk; disks are keyed (block, coordinate)."""

    reads: Dict[Tuple[int, int], int] = field(default_factory=dict)
    write: int = 0

    def read_from(self, block: int, coordinate: int, count: int = 1) -> None:
        key = (block, coordinate)
        self.reads[key] = self.reads.get(key, 0) + count

    @property
    def read(self) -> int:
        return sum(self.reads.values())

    @property
    def total(self) -> int:
        return self.read + self.write

    def equal_download(self, params: BwParams) -> bool:
        """Same amount from every unchanged disk, everything from retired ones."""
        unchanged = {
            self.reads.get((ell, c), 0) for ell in range(params.lam) for c in range(params.k_i)
        }
        retired = {
            self.reads.get((ell, c), 0)
            for ell in range(params.lam)
            for c in range(params.k_i, params.n_i)
        }
        return len(unchanged) == 1 and retired == {params.alpha}


@dataclass
class BandwidthReport:
    trials: int
    read: int
    write: int
    bound_read: int
    bound_write: int
    equal_download: bool
    passed: bool
    failures: List[str] = field(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.read == self.bound_read and self.write == self.bound_write


def default_base_builder(params: MergeParams, spec: FieldSpec) -> ConvertiblePair:
    """Plain GRS when the field allows it, doubly-extended GRS otherwise."""
    plain_bound = max(params.k_i + params.r_i, params.lam * params.k_i + params.r_f)
    return build_grs(params, spec, doubly_extended=spec.q < plain_bound)


def vector_pair_from_base(params: BwParams, base: ConvertiblePair) -> VectorCodePair:
    """Derive P^I, the blocks P^(l) and W_l (P^I W_l = P^(l)) from a base pair."""
    bp = base.params
    if (bp.k_i, bp.r_i, bp.r_f, bp.lam) != (params.k_i, params.r_f, params.r_f, params.lam):
        raise PreconditionError(
            f"base pair must have shape k_i={params.k_i}, r_i=r_f={params.r_f}, "
            f"lambda={params.lam}"
        )
    initial = to_systematic(base.initial)
    p_initial = initial.parity_matrix
    p_final = to_systematic(base.final).parity_matrix
    k = params.k_i
    p_blocks = tuple(
        submatrix(p_final, rows=range(ell * k, (ell + 1) * k)) for ell in range(params.lam)
    )
    try:
        w = tuple(solve(p_initial, block) for block in p_blocks)
    except InconsistentSystemError as e:
        raise PreconditionError("base final blocks are not in the column space of P^I") from e
    drop = range(k + params.r_i, k + params.r_f)
    punctured = puncture(initial, drop)
    return VectorCodePair(params, base, p_initial, p_blocks, w, punctured)


def build_vector_pair(
    params: BwParams,
    spec: FieldSpec,
    base_builder: Optional[BaseBuilder] = None,
) -> VectorCodePair:
    """Piggybacked vector pair over a scalar (k_i + r_f, k_i; lam k_i + r_f) base pair."""
    if spec.q < params.n_f - 1:
        raise PreconditionError(
            f"piggyback construction needs q >= lambda * k_i + r_f - 1 = {params.n_f - 1} (q={spec.q})"
        )
    base_params = MergeParams(params.k_i, params.r_f, params.r_f, params.lam)
    base = (base_builder or default_base_builder)(base_params, spec)
    return vector_pair_from_base(params, base)


def _parity_products(pair: VectorCodePair, message: Sequence[Sequence[int]]) -> np.ndarray:
    """S[u][j] = m_j . p^u for every base parity column u and instance j."""
    m = pair.spec.array([list(row) for row in message])
    return m.T @ pair.p_initial.array


def _check_message(pair: VectorCodePair, message: Sequence[Sequence[int]]) -> None:
    alpha = pair.params.alpha
    if len(message) != pair.params.k_i or any(len(row) != alpha for row in message):
        raise PreconditionError(
            f"message must be k_i x alpha = {pair.params.k_i}x{alpha} sub-symbols"
        )


def vector_encode_initial(pair: VectorCodePair, message: Sequence[Sequence[int]]) -> VectorCodeword:
    """Systematic rows, then parity (i, j) = m_j . p^i plus its piggyback."""
    _check_message(pair, message)
    params = pair.params
    s = _parity_products(pair, message)  # alpha x r_f
    rows: List[Tuple[int, ...]] = [tuple(int(v) for v in row) for row in message]
    for i in range(params.r_i):
        row = []
        for j in range(params.alpha):
            value = s[j, i]
            source = piggyback_source(params, i, j)
            if source is not None:
                value = value + s[source[0], source[1]]
            row.append(int(value))
        rows.append(tuple(row))
    return VectorCodeword(pair.spec, tuple(rows))


def vector_encode_final(pair: VectorCodePair, messages: Sequence[Sequence[Sequence[int]]]) -> VectorCodeword:
    """Final parity (i, j) = sum_l m^l_j . p^(l, i); no piggybacks."""
    params = pair.params
    if len(messages) != params.lam:
        raise PreconditionError(f"expected {params.lam} message blocks, got {len(messages)}")
    GF = pair.spec.galois_field()
    parity = GF.Zeros((params.alpha, params.r_f))
    rows: List[Tuple[int, ...]] = []
    for ell, message in enumerate(messages):
        _check_message(pair, message)
        rows.extend(tuple(int(v) for v in row) for row in message)
        m = pair.spec.array([list(row) for row in message])
        parity = parity + m.T @ pair.p_blocks[ell].array
    rows.extend(tuple(to_ints(parity[:, i])) for i in range(params.r_f))
    return VectorCodeword(pair.spec, tuple(rows))


def vector_decode(pair: VectorCodePair, known: Mapping[int, Sequence[int]]) -> Message:
    """Recover the k_i x alpha message from any k_i known vector symbols.

    Unpiggybacked instances decode directly in the punctured base code; their
    messages then cancel the piggybacks on the remaining instances.
    """
    params = pair.params
    if len(known) < params.k_i:
        raise PreconditionError(f"need at least k_i={params.k_i} symbols, got {len(known)}")
    if any(not 0 <= c < params.n_i for c in known):
        raise PreconditionError(f"known coordinates must lie in [0, {params.n_i})")
    GF = pair.spec.galois_field()
    columns: Dict[int, Tuple[int, ...]] = {}
    for j in range(params.beta):
        columns[j] = decode_erasures(pair.punctured, {c: int(v[j]) for c, v in known.items()})
    sources = pair.spec.array([list(columns[j]) for j in range(params.beta)])
    s = sources @ pair.p_initial.array  # beta x r_f
    for j in range(params.beta, params.alpha):
        values = {}
        for c, v in known.items():
            value = GF(int(v[j]))
            if c >= params.k_i:
                i1, u = piggyback_source(params, c - params.k_i, j)
                value = value - s[i1, u]
            values[c] = int(value)
        columns[j] = decode_erasures(pair.punctured, values)
    return tuple(tuple(columns[j][row] for j in range(params.alpha)) for row in range(params.k_i))


def _validate_inputs(pair: VectorCodePair, codewords: Sequence[VectorCodeword]) -> None:
    params = pair.params
    if len(codewords) != params.lam:
        raise PreconditionError(f"expected {params.lam} initial codewords, got {len(codewords)}")
    for ell, word in enumerate(codewords):
        if word.n != params.n_i or word.alpha != params.alpha:
            raise InvalidCodewordError(f"input {ell} has the wrong shape")
        message = word.symbols[: params.k_i]
        if vector_encode_initial(pair, message) != word:
            raise InvalidCodewordError(f"input {ell} is not a codeword of the initial vector code")


def vector_convert(
    pair: VectorCodePair,
    codewords: Sequence[VectorCodeword],
    strategy: str = "optimized",
) -> Tuple[VectorCodeword, BandwidthTrace]:
    """Merge lam initial vector codewords, accounting every sub-symbol moved.

    ``strategy="full"`` downloads everything and re-encodes; it is the
    reference point for the excess the optimized download avoids.
    """
    if strategy not in ("optimized", "full"):
        raise PreconditionError(f"unknown conversion strategy {strategy!r}")
    _validate_inputs(pair, codewords)
    params = pair.params
    k, alpha, beta = params.k_i, params.alpha, params.beta
    trace = BandwidthTrace()
    messages = [word.symbols[:k] for word in codewords]

    if strategy == "full":
        for ell in range(params.lam):
            for c in range(params.n_i):
                trace.read_from(ell, c, alpha)
        final = vector_encode_final(pair, messages)
        trace.write = params.r_f * alpha
        return final, trace

    GF = pair.spec.galois_field()
    parity = GF.Zeros((alpha, params.r_f))
    for ell, word in enumerate(codewords):
        s = GF.Zeros((alpha, params.r_f))
        # Unpiggybacked instances: the first r_i base parities are stored as is.
        for i in range(params.r_i):
            trace.read_from(ell, k + i, beta)
            for j in range(beta):
                s[j, i] = GF(word.symbols[k + i][j])
        # Piggybacked instances: download their messages and recompute every parity.
        for c in range(k):
            trace.read_from(ell, c, alpha - beta)
        tail = pair.spec.array([list(word.symbols[c][beta:]) for c in range(k)])
        s[beta:, :] = tail.T @ pair.p_initial.array
        # Peel: stored - recomputed leaves m_(i1) . p^u for u in [r_i, r_f).
        for i in range(params.r_i):
            trace.read_from(ell, k + i, alpha - beta)
            for j in range(beta, alpha):
                i1, u = piggyback_source(params, i, j)
                s[i1, u] = GF(word.symbols[k + i][j]) - s[j, i]
        parity = parity + s @ pair.w[ell].array

    rows = [row for message in messages for row in message]
    rows.extend(tuple(to_ints(parity[:, i])) for i in range(params.r_f))
    trace.write = params.r_f * alpha
    return VectorCodeword(pair.spec, tuple(rows)), trace


def random_messages(pair: VectorCodePair, rng: np.random.Generator) -> List[Message]:
    params = pair.params
    return [
        tuple(pair.spec.random_vector(rng, params.alpha) for _ in range(params.k_i))
        for _ in range(params.lam)
    ]


def verify_bandwidth_optimal(
    pair: VectorCodePair,
    trials: int = 100,
    rng: Optional[np.random.Generator] = None,
    strategy: str = "optimized",
    on_trial: Optional[Callable[[int], None]] = None,
) -> BandwidthReport:
    """Random conversions compared against direct final encoding and the bound."""
    params = pair.params
    rng = rng if rng is not None else np.random.default_rng(0)
    bound = bandwidth_bound(params, params.alpha)
    first: Optional[BandwidthTrace] = None
    failures: List[str] = []
    for trial in range(trials):
        messages = random_messages(pair, rng)
        inputs = [vector_encode_initial(pair, m) for m in messages]
        output, trace = vector_convert(pair, inputs, strategy)
        if output != vector_encode_final(pair, messages):
            failures.append(f"trial {trial}: converted codeword differs from direct encoding")
        if first is None:
            first = trace
        elif trace.reads != first.reads or trace.write != first.write:
            failures.append(f"trial {trial}: download pattern depends on the data")
        if on_trial is not None:
            on_trial(trial)
    if first is None:
        first = vector_convert(
            pair, [vector_encode_initial(pair, m) for m in random_messages(pair, rng)], strategy
        )[1]
    report = BandwidthReport(
        trials=trials,
        read=first.read,
        write=first.write,
        bound_read=bound.read,
        bound_write=bound.write,
        equal_download=first.equal_download(params),
        passed=False,
        failures=failures,
    )
    if report.read > bound.read:
        failures.append(
            f"read {report.read} sub-symbols exceeds the bound {bound.read} "
            f"by {report.read - bound.read}"
        )
    if report.write != bound.write:
        failures.append(f"wrote {report.write} sub-symbols, bound is {bound.write}")
    report.passed = not failures
    return report
