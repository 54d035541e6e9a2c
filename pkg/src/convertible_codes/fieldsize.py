"""
Minimal field sizes per construction family, used for ``--q auto`` and the
parameter sweep.
"""

from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple, Union

import galois

from .access_convert import MergeParams, access_cost_bound
from .errors import PreconditionError
from .gf import MAX_FIELD_ORDER, FieldSpec

# (family, variant) keys, in sweep column order.
FAMILIES: Tuple[Tuple[str, Optional[str]], ...] = (
    ("subgroup-mult", "base"),
    ("subgroup-mult", "A"),
    ("subgroup-mult", "B"),
    ("subgroup-add", "base"),
    ("subgroup-add", "A"),
    ("grs", None),
    ("grs-doubly-ext", None),
    ("grs-triply-ext", None),
    ("piggyback", None),
    ("default", None),
)

# Piggyback needs r_f > r_i, so it only joins sweeps with separate r_f values.
SWEEP_FAMILIES = tuple(f for f in FAMILIES if f[0] != "piggyback")

SHRINK = {"base": 0, "A": 1, "B": 2}


def family_label(family: str, variant: Optional[str]) -> str:
    return family if variant in (None, "base") else f"{family}-{variant}"


def prime_powers(start: int, stop: int = MAX_FIELD_ORDER) -> Iterator[int]:
    for q in range(max(start, 2), stop + 1):
        if galois.is_prime_power(q):
            yield q


def _first(candidates: Iterable[int], accept: Callable[[int], bool]) -> Optional[int]:
    return next((q for q in candidates if accept(q)), None)


def _char_power(s: int) -> Optional[Tuple[int, int]]:
    if s < 2 or not galois.is_prime_power(s):
        return None
    primes, exponents = galois.factors(s)
    return int(primes[0]), int(exponents[0])


@dataclass(frozen=True)
class FieldBound:
    """A family's field-size requirement for one parameter set."""

    lower: int
    description: str
    accept: Callable[[int], bool]


def field_bound(family: str, variant: Optional[str], params: MergeParams) -> Optional[FieldBound]:
    """The requirement, or None when no field can host the construction."""
    k, r_i, r_f, lam = params.k_i, params.r_i, params.r_f, params.lam
    if family in ("subgroup-mult", "subgroup-add"):
        variant = variant or "base"
        if r_f > r_i or (family == "subgroup-add" and variant == "B"):
            return None
        s = r_i - SHRINK[variant]
        if s < 1 or lam > s:
            return None
        if family == "subgroup-mult":
            lower = (k + 1) * s + 1
            return FieldBound(
                lower,
                f"q >= (k_i + 1)s + 1 = {lower} with s = {s} dividing q - 1",
                lambda q: (q - 1) % s == 0,
            )
        char = _char_power(s)
        if char is None:
            return None
        p, u = char
        lower = (k + 1) * s
        return FieldBound(
            lower,
            f"q = {p}^m with m > {u} and q >= (k_i + 1)s = {lower}, s = {s}",
            lambda q: galois.factors(q)[0] == [p] and q > s,
        )
    if family in ("grs", "grs-doubly-ext", "default"):
        if family != "default" and not params.access_regime:
            return None
        minus = 0 if family == "grs" else 1
        lower = max(k + r_i, lam * k + r_f) - minus
        suffix = " - 1" if minus else ""
        return FieldBound(
            lower,
            f"q >= max(k_i + r_i, lambda * k_i + r_f){suffix} = {lower}",
            lambda q: True,
        )
    if family == "grs-triply-ext":
        if r_i != 3 or r_f != 3 or not params.access_regime:
            return None
        lower = lam * k + 1
        return FieldBound(lower, f"q = 2^m >= lambda * k_i + 1 = {lower}", lambda q: q % 2 == 0)
    if family == "piggyback":
        if not k > r_f > r_i:
            return None
        lower = lam * k + r_f - 1
        return FieldBound(lower, f"q >= lambda * k_i + r_f - 1 = {lower}", lambda q: True)
    raise PreconditionError(f"unknown family {family!r}")


def bound_description(family: str, variant: Optional[str], params: MergeParams) -> str:
    bound = field_bound(family, variant, params)
    return "infeasible" if bound is None else bound.description


def min_field_order(
    family: str,
    variant: Optional[str],
    params: MergeParams,
    max_order: int = MAX_FIELD_ORDER,
) -> Optional[int]:
    """Smallest prime power meeting the family's bound, or None if infeasible."""
    bound = field_bound(family, variant, params)
    if bound is None:
        return None
    return _first(prime_powers(bound.lower, max_order), bound.accept)


def auto_field(
    family: str,
    variant: Optional[str],
    params: MergeParams,
    max_order: int = MAX_FIELD_ORDER,
) -> Tuple[FieldSpec, str]:
    """The smallest admissible field and the bound that selected it."""
    bound = field_bound(family, variant, params)
    q = min_field_order(family, variant, params, max_order)
    if bound is None or q is None:
        raise PreconditionError(
            f"no field of order <= {max_order} hosts {family_label(family, variant)} "
            f"with k_i={params.k_i}, r_i={params.r_i}, r_f={params.r_f}, lambda={params.lam}"
        )
    return FieldSpec.from_order(q, max_order=max_order), bound.description


SweepRow = Dict[str, Union[int, str]]


def sweep_rows(
    lambdas: Iterable[int],
    rs: Iterable[int],
    ks: Iterable[int],
    families: Optional[Iterable[Tuple[str, Optional[str]]]] = None,
    rfs: Optional[Iterable[int]] = None,
) -> List[SweepRow]:
    """One row per parameter set: minimal q per family plus access costs.

    Without ``rfs`` each r is used for both r_i and r_f and the row has an
    "r" column. With ``rfs`` the rows cover every (r_i, r_f) combination and
    carry "r_i" and "r_f" columns instead. Cells a family cannot host read "n/a".
    """
    split = rfs is not None
    if families is None:
        families = FAMILIES if split else SWEEP_FAMILIES
    selected = list(families)
    final_counts: List[Optional[int]] = sorted(rfs) if rfs is not None else [None]
    rows: List[SweepRow] = []
    for lam, r_i, r_f, k in product(sorted(lambdas), sorted(rs), final_counts, sorted(ks)):
        r_f = r_i if r_f is None else r_f
        try:
            params = MergeParams(k, r_i, r_f, lam)
        except PreconditionError:
            continue
        row: SweepRow = {"k": k}
        if split:
            row.update({"r_i": r_i, "r_f": r_f})
        else:
            row["r"] = r_i
        row.update(
            {
                "lambda": lam,
                "access_bound": access_cost_bound(params),
                "default_reads": lam * k,
                "optimal_reads": lam * r_f if params.access_regime else lam * k,
            }
        )
        for family, variant in selected:
            q = min_field_order(family, variant, params)
            row[family_label(family, variant)] = "n/a" if q is None else q
        rows.append(row)
    return rows
