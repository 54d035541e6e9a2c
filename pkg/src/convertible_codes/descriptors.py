"""
JSON artifacts: fields, matrices, codes, pairs, codewords and reports.

Every artifact written to disk carries a "kind" key so ``load_artifact`` can
dispatch on it.
"""

import functools
import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Sequence, Union

from .access_convert import (
    AccessReport,
    AccessTrace,
    ConversionPlan,
    ConvertiblePair,
    Family,
    MergeParams,
    SourceTerm,
)
from .bw_convert import (
    BandwidthReport,
    BandwidthTrace,
    BwParams,
    VectorCodePair,
    VectorCodeword,
    vector_pair_from_base,
)
from .errors import ConvertibleCodeError, DescriptorError
from .gf import FieldSpec
from .linalg import MatrixGF
from .mds import Codeword, MdsCode

Artifact = Union[ConvertiblePair, VectorCodePair, Dict[str, Any]]


def _require(data: Dict[str, Any], *keys: str) -> None:
    missing = [k for k in keys if k not in data]
    if missing:
        raise DescriptorError(f"descriptor is missing keys {missing}")


def _guard(loader: Callable[..., Any]) -> Callable[..., Any]:
    """Report malformed content as DescriptorError."""

    @functools.wraps(loader)
    def wrapped(*args: Any, **kwargs: Any) -> Any:
        try:
            return loader(*args, **kwargs)
        except DescriptorError:
            raise
        except (ConvertibleCodeError, KeyError, TypeError, ValueError) as e:
            raise DescriptorError(f"{loader.__name__}: {e}") from e

    return wrapped


def field_to_dict(spec: FieldSpec) -> Dict[str, Any]:
    return {"p": spec.p, "m": spec.m, "modulus": list(spec.modulus)}


@_guard
def field_from_dict(data: Dict[str, Any]) -> FieldSpec:
    _require(data, "p", "m", "modulus")
    return FieldSpec(int(data["p"]), int(data["m"]), tuple(int(c) for c in data["modulus"]))


def matrix_to_dict(m: MatrixGF) -> Dict[str, Any]:
    return {"rows": m.rows, "cols": m.cols, "field": field_to_dict(m.spec), "entries": m.entries()}


@_guard
def matrix_from_dict(data: Dict[str, Any]) -> MatrixGF:
    _require(data, "rows", "cols", "field", "entries")
    m = MatrixGF(field_from_dict(data["field"]), data["entries"])
    if m.shape != (data["rows"], data["cols"]):
        raise DescriptorError(f"matrix declares {data['rows']}x{data['cols']}, entries are {m.shape}")
    return m


def code_to_dict(code: MdsCode) -> Dict[str, Any]:
    return {
        "n": code.n,
        "k": code.k,
        "repr": code.representation,
        "matrix": matrix_to_dict(code.matrix),
        "field": field_to_dict(code.spec),
    }


@_guard
def code_from_dict(data: Dict[str, Any]) -> MdsCode:
    _require(data, "n", "k", "repr", "matrix")
    return MdsCode(int(data["n"]), int(data["k"]), data["repr"], matrix_from_dict(data["matrix"]))


def params_to_dict(params: MergeParams) -> Dict[str, int]:
    return {"k_i": params.k_i, "r_i": params.r_i, "r_f": params.r_f, "lambda": params.lam}


@_guard
def params_from_dict(data: Dict[str, Any], cls: Callable[..., MergeParams] = MergeParams) -> MergeParams:
    _require(data, "k_i", "r_i", "r_f", "lambda")
    return cls(int(data["k_i"]), int(data["r_i"]), int(data["r_f"]), int(data["lambda"]))


def plan_to_list(plan: ConversionPlan) -> List[List[Dict[str, int]]]:
    return [
        [{"block": t.block, "coordinate": t.coordinate, "coefficient": t.coefficient} for t in row]
        for row in plan.terms
    ]


def plan_from_list(rows: Sequence[Sequence[Dict[str, int]]]) -> ConversionPlan:
    return ConversionPlan(
        tuple(
            tuple(SourceTerm(int(t["block"]), int(t["coordinate"]), int(t["coefficient"])) for t in row)
            for row in rows
        )
    )


def pair_to_dict(pair: ConvertiblePair) -> Dict[str, Any]:
    return {
        "kind": "pair",
        "family": pair.family.value,
        "variant": pair.variant,
        "params": params_to_dict(pair.params),
        "field": field_to_dict(pair.spec),
        "initial": code_to_dict(pair.initial),
        "final": code_to_dict(pair.final),
        "plan": None if pair.plan is None else plan_to_list(pair.plan),
        "sets": {name: list(values) for name, values in pair.sets.items()},
    }


@_guard
def pair_from_dict(data: Dict[str, Any]) -> ConvertiblePair:
    _require(data, "family", "params", "initial", "final", "plan")
    params = params_from_dict(data["params"])
    plan = None if data["plan"] is None else plan_from_list(data["plan"])
    if plan is not None:
        plan.validate(params)
    return ConvertiblePair(
        params=params,
        family=Family(data["family"]),
        initial=code_from_dict(data["initial"]),
        final=code_from_dict(data["final"]),
        plan=plan,
        variant=data.get("variant"),
        sets={name: tuple(int(v) for v in values) for name, values in data.get("sets", {}).items()},
    )


def vector_pair_to_dict(pair: VectorCodePair) -> Dict[str, Any]:
    return {
        "kind": "vector_pair",
        "params": params_to_dict(pair.params),
        "alpha": pair.params.alpha,
        "field": field_to_dict(pair.spec),
        "base": pair_to_dict(pair.base),
    }


@_guard
def vector_pair_from_dict(data: Dict[str, Any]) -> VectorCodePair:
    _require(data, "params", "base")
    params = params_from_dict(data["params"], BwParams)
    return vector_pair_from_base(params, pair_from_dict(data["base"]))  # type: ignore[arg-type]


def codeword_to_dict(word: Codeword) -> Dict[str, Any]:
    return {"n": len(word), "field": field_to_dict(word.spec), "symbols": list(word.symbols)}


@_guard
def codeword_from_dict(data: Dict[str, Any]) -> Codeword:
    _require(data, "field", "symbols")
    spec = field_from_dict(data["field"])
    spec.array(data["symbols"])
    return Codeword(spec, tuple(data["symbols"]))


def vector_codeword_to_dict(word: VectorCodeword) -> Dict[str, Any]:
    return {
        "n": word.n,
        "alpha": word.alpha,
        "field": field_to_dict(word.spec),
        "subsymbols": [list(row) for row in word.symbols],
    }


@_guard
def vector_codeword_from_dict(data: Dict[str, Any]) -> VectorCodeword:
    _require(data, "field", "subsymbols")
    spec = field_from_dict(data["field"])
    spec.array(data["subsymbols"])
    return VectorCodeword(spec, tuple(tuple(row) for row in data["subsymbols"]))


def messages_to_dict(spec: FieldSpec, messages: Sequence[Any]) -> Dict[str, Any]:
    """Message blocks: flat lists (scalar pairs) or k_i x alpha lists (vector pairs)."""
    return {
        "kind": "messages",
        "field": field_to_dict(spec),
        "messages": [[list(row) if isinstance(row, (list, tuple)) else row for row in m] for m in messages],
    }


def access_trace_to_dict(trace: AccessTrace, per_symbol: bool) -> Dict[str, Any]:
    return {
        "reads": trace.disks_read,
        "writes": trace.disks_written,
        "per_symbol": per_symbol,
        "read_set": [list(disk) for disk in trace.read_set],
    }


def access_report_to_dict(report: AccessReport) -> Dict[str, Any]:
    return {
        "trials": report.trials,
        "reads": report.reads,
        "writes": report.writes,
        "bound": report.bound,
        "per_symbol": report.per_symbol,
        "passed": report.passed,
        "read_set": [list(disk) for disk in report.read_set],
        "failures": list(report.failures),
    }


def bandwidth_trace_to_dict(trace: BandwidthTrace, bound_read: int, bound_write: int) -> Dict[str, Any]:
    return {
        "read": trace.read,
        "write": trace.write,
        "bound_read": bound_read,
        "bound_write": bound_write,
        "optimal": trace.read == bound_read and trace.write == bound_write,
        "per_disk": [[block, coordinate, count] for (block, coordinate), count in sorted(trace.reads.items())],
    }


def bandwidth_report_to_dict(report: BandwidthReport) -> Dict[str, Any]:
    return {
        "trials": report.trials,
        "read": report.read,
        "write": report.write,
        "bound_read": report.bound_read,
        "bound_write": report.bound_write,
        "optimal": report.optimal,
        "equal_download": report.equal_download,
        "passed": report.passed,
        "failures": list(report.failures),
    }


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def dump_artifact(obj: Artifact) -> str:
    if isinstance(obj, ConvertiblePair):
        return dumps(pair_to_dict(obj))
    if isinstance(obj, VectorCodePair):
        return dumps(vector_pair_to_dict(obj))
    return dumps(obj)


def loads_artifact(text: str) -> Artifact:
    """Parse a JSON artifact; pairs come back as objects, anything else as a dict."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DescriptorError(f"not valid JSON: {e}") from e
    if not isinstance(data, dict) or "kind" not in data:
        raise DescriptorError("artifact must be a JSON object with a 'kind' key")
    if data["kind"] == "pair":
        return pair_from_dict(data)
    if data["kind"] == "vector_pair":
        return vector_pair_from_dict(data)
    return data


def load_artifact(path: Path) -> Artifact:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DescriptorError(f"cannot read {path}: {e}") from e
    return loads_artifact(text)
