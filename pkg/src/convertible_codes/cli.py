"""
Command-line interface for convertible-codes.
"""

import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, List, Optional, Tuple, Union

import click
import numpy as np
from rich.console import Console

from . import __version__
from .access_convert import (
    AccessReport,
    ConvertiblePair,
    MergeParams,
    access_cost_bound,
    build_default,
    build_grs,
    build_subgroup_add,
    build_subgroup_mult,
    build_triply_extended,
    convert,
    convert_default,
)
from .bw_convert import (
    BandwidthReport,
    BwParams,
    VectorCodePair,
    bandwidth_bound,
    build_vector_pair,
    random_messages,
    vector_convert,
    vector_encode_initial,
)
from .config import Config, load_config
from .descriptors import (
    access_report_to_dict,
    access_trace_to_dict,
    bandwidth_report_to_dict,
    bandwidth_trace_to_dict,
    codeword_to_dict,
    dump_artifact,
    dumps,
    field_from_dict,
    load_artifact,
    vector_codeword_to_dict,
)
from .errors import ConvertibleCodeError, DescriptorError, PreconditionError
from .fieldsize import auto_field, family_label, sweep_rows
from .gf import FieldSpec
from .mds import encode
from .report import display_access, display_bandwidth, display_checks, display_sweep, sweep_columns
from .verify import PairVerifier

# Status lines go to stderr so JSON on stdout stays parseable.
console = Console(stderr=True)

EXIT_PRECONDITION = 1
EXIT_VERIFICATION = 2

FAMILY_CHOICES = [
    "subgroup-mult",
    "subgroup-mult-A",
    "subgroup-mult-B",
    "subgroup-add",
    "subgroup-add-A",
    "grs",
    "grs-doubly-ext",
    "grs-triply-ext",
    "piggyback",
    "default",
]


def parse_family(family: str, variant: Optional[str]) -> Tuple[str, Optional[str]]:
    """Split shorthand like ``subgroup-mult-B`` into (family, variant)."""
    for base in ("subgroup-mult", "subgroup-add"):
        if family.startswith(base + "-"):
            suffix = family[len(base) + 1:]
            if variant is not None and variant != suffix:
                raise PreconditionError(f"--family {family} conflicts with --variant {variant}")
            return base, suffix
        if family == base:
            return base, variant or "base"
    if variant is not None:
        raise PreconditionError(f"--variant applies to the subgroup families only, not {family}")
    return family, None


def parse_int_list(text: Optional[str]) -> List[int]:
    """"2,3" and "4-6" style lists; an empty string is an empty list."""
    values: List[int] = []
    for part in (text or "").split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            values.extend(range(int(lo), int(hi) + 1))
        else:
            values.append(int(part))
    return values


def resolve_field(
    config: Config,
    q: str,
    field_json: Optional[Path],
    family: str,
    variant: Optional[str],
    params: MergeParams,
) -> FieldSpec:
    if field_json is not None:
        return field_from_dict(json.loads(field_json.read_text(encoding="utf-8")))
    if q == "auto":
        spec, description = auto_field(family, variant, params, config.gf.max_order)
        console.print(f"[green]v Auto field {spec} (q = {spec.q}) from bound {description}[/green]")
        return spec
    try:
        order = int(q)
    except ValueError:
        raise PreconditionError(f"--q must be an integer or 'auto', got {q!r}")
    return FieldSpec.from_order(order, max_order=config.gf.max_order)


def build_artifact(
    config: Config,
    family: str,
    variant: Optional[str],
    params: MergeParams,
    spec: FieldSpec,
    x1: Optional[List[int]],
) -> Union[ConvertiblePair, VectorCodePair]:
    x1 = x1 if x1 else config.construct.x1
    if family == "subgroup-mult":
        return build_subgroup_mult(params, spec, variant or "base", x1)
    if family == "subgroup-add":
        return build_subgroup_add(params, spec, variant or "base", x1)
    if family in ("grs", "grs-doubly-ext"):
        return build_grs(params, spec, family == "grs-doubly-ext", config.construct.b_initial)
    if family == "grs-triply-ext":
        return build_triply_extended(params, spec)
    if family == "default":
        return build_default(params, spec)
    if family == "piggyback":
        return build_vector_pair(params, spec)  # type: ignore[arg-type]
    raise PreconditionError(f"unknown family {family!r}")


def emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        click.echo(text)
    else:
        out.write_text(text + "\n", encoding="utf-8")
        console.print(f"[green]v Wrote {out}[/green]")


def fail(message: str, code: int = EXIT_PRECONDITION) -> None:
    console.print(f"[red]x {message}[/red]")
    sys.exit(code)


@click.group()
@click.version_option(version=__version__)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Config file to use instead of the default search path")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[Path]) -> None:
    """Convertible Codes - access- and bandwidth-optimal MDS code conversion."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = load_config([config_path] if config_path else None)


@cli.command()
@click.option("--family", required=True, type=click.Choice(FAMILY_CHOICES), help="Construction family")
@click.option("--variant", type=click.Choice(["base", "A", "B"]), help="Subgroup variant")
@click.option("--k", "k", type=int, required=True, help="Initial message length k_i")
@click.option("--ri", type=int, help="Initial parity count r_i")
@click.option("--rf", type=int, help="Final parity count r_f")
@click.option("--r", "r", type=int, help="Shorthand for --ri R --rf R")
@click.option("--lambda", "lam", type=int, default=2, show_default=True, help="Codewords merged")
@click.option("--q", default="auto", show_default=True, help="Field order, or 'auto'")
@click.option("--field-json", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Field descriptor file")
@click.option("--x1", help="Comma-separated override for the first evaluation block")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the descriptor here")
@click.pass_context
def construct(
    ctx: click.Context,
    family: str,
    variant: Optional[str],
    k: int,
    ri: Optional[int],
    rf: Optional[int],
    r: Optional[int],
    lam: int,
    q: str,
    field_json: Optional[Path],
    x1: Optional[str],
    out: Optional[Path],
) -> None:
    """Build an initial/final code pair and print its JSON descriptor."""
    config = ctx.obj["config"]
    try:
        family, variant = parse_family(family, variant)
        r_i = ri if ri is not None else r
        r_f = rf if rf is not None else r
        if r_i is None or r_f is None:
            raise PreconditionError("give --r, or both --ri and --rf")
        params_cls = BwParams if family == "piggyback" else MergeParams
        params = params_cls(k, r_i, r_f, lam)
        spec = resolve_field(config, q, field_json, family, variant, params)
        artifact = build_artifact(config, family, variant, params, spec, parse_int_list(x1) or None)
        emit(dump_artifact(artifact), out)
        console.print(
            f"[green]v Built {family_label(family, variant)} pair over {spec} "
            f"(n_i={params.n_i}, n_f={params.n_f})[/green]"
        )
    except (ConvertibleCodeError, OSError, json.JSONDecodeError) as e:
        fail(f"Construction failed: {e}")


def _load_messages(path: Path) -> List[Any]:
    data = load_artifact(path)
    if not isinstance(data, dict) or data.get("kind") != "messages":
        raise DescriptorError(f"{path} is not a messages file")
    return data["messages"]


@cli.command(name="convert")
@click.argument("pair_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--messages", "messages_file", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Messages file")
@click.option("--random", "use_random", is_flag=True, help="Draw random messages from --seed")
@click.option("--seed", type=int, help="Seed for random messages")
@click.option("--default", "use_default", is_flag=True, help="Run the read-everything baseline instead")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the result JSON here")
@click.pass_context
def convert_cmd(
    ctx: click.Context,
    pair_file: Path,
    messages_file: Optional[Path],
    use_random: bool,
    seed: Optional[int],
    use_default: bool,
    out: Optional[Path],
) -> None:
    """Convert encoded messages and report the cost against the bound."""
    config = ctx.obj["config"]
    try:
        pair = load_artifact(pair_file)
        if not isinstance(pair, (ConvertiblePair, VectorCodePair)):
            raise DescriptorError(f"{pair_file} does not hold a code pair")
        if messages_file is None and not use_random:
            raise PreconditionError("give --messages FILE or --random")
        rng = np.random.default_rng(config.verify.seed if seed is None else seed)

        if isinstance(pair, VectorCodePair):
            messages = _load_messages(messages_file) if messages_file else random_messages(pair, rng)
            inputs = [vector_encode_initial(pair, m) for m in messages]
            final, trace = vector_convert(pair, inputs, "full" if use_default else "optimized")
            bound = bandwidth_bound(pair.params, pair.params.alpha)
            result = {
                "kind": "vector_conversion",
                "final": vector_codeword_to_dict(final),
                "trace": bandwidth_trace_to_dict(trace, bound.read, bound.write),
            }
            display_bandwidth(console, trace, bound)
        else:
            params = pair.params
            if messages_file:
                messages = _load_messages(messages_file)
            else:
                messages = [pair.spec.random_vector(rng, params.k_i) for _ in range(params.lam)]
            inputs = [encode(pair.initial, m) for m in messages]
            runner = convert_default if use_default or pair.plan is None else convert
            final, trace = runner(pair, inputs)
            per_symbol = runner is convert and pair.plan is not None and pair.plan.is_per_symbol(params.lam)
            result = {
                "kind": "conversion",
                "final": codeword_to_dict(final),
                "trace": access_trace_to_dict(trace, per_symbol),
                "bound": access_cost_bound(params),
            }
            display_access(console, trace, params)
        emit(dumps(result), out)
    except (ConvertibleCodeError, OSError) as e:
        fail(f"Conversion failed: {e}")


@cli.command()
@click.argument("pair_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--trials", type=int, help="Random conversions to run")
@click.option("--seed", type=int, help="Seed for random messages")
@click.option("--no-progress", is_flag=True, help="Disable progress display")
@click.option("--verbose-errors", is_flag=True, help="Print the error behind each failed check")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the report JSON here")
@click.pass_context
def verify(
    ctx: click.Context,
    pair_file: Path,
    trials: Optional[int],
    seed: Optional[int],
    no_progress: bool,
    verbose_errors: bool,
    out: Optional[Path],
) -> None:
    """Check MDS-ness, block structure and conversion optimality of a pair."""
    config = ctx.obj["config"]
    if verbose_errors:
        config.verify.verbose_errors = True
    try:
        pair = load_artifact(pair_file)
        verifier = PairVerifier(config, show_progress=False if no_progress else None)
        if isinstance(pair, VectorCodePair):
            result = verifier.verify_vector_pair(pair, trials, seed)
        elif isinstance(pair, ConvertiblePair):
            result = verifier.verify_pair(pair, trials, seed)
        else:
            raise DescriptorError(f"{pair_file} does not hold a code pair")
    except (ConvertibleCodeError, OSError) as e:
        fail(f"Verification could not run: {e}")
        return

    display_checks(console, result)
    report = {
        "kind": "verification",
        "passed": result.passed,
        "per_symbol": result.per_symbol,
        "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in result.checks],
    }
    if isinstance(result.report, AccessReport):
        report["report"] = access_report_to_dict(result.report)
    elif isinstance(result.report, BandwidthReport):
        report["report"] = bandwidth_report_to_dict(result.report)
    if out is not None:
        emit(dumps(report), out)
    if result.passed:
        console.print("[green]v All checks passed[/green]")
    else:
        fail("Verification failed", EXIT_VERIFICATION)


@cli.command()
@click.option("--lambdas", default="2,3", show_default=True, help="Values of lambda, e.g. 2,3")
@click.option("--rs", default="3,4", show_default=True, help="Parity counts r (r_i = r_f unless --rfs is given), e.g. 3,4")
@click.option("--rfs", help="Final parity counts r_f; --rs then sets r_i only, e.g. 4-6")
@click.option("--ks", default="4-6", show_default=True, help="Message lengths k_i, e.g. 4-6")
@click.option("--family", "families", multiple=True, type=click.Choice(FAMILY_CHOICES), help="Restrict to families")
@click.option("--format", "fmt", type=click.Choice(["table", "csv", "json"]), default="table", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write CSV/JSON here")
def sweep(
    lambdas: str,
    rs: str,
    rfs: Optional[str],
    ks: str,
    families: Tuple[str, ...],
    fmt: str,
    out: Optional[Path],
) -> None:
    """Tabulate the minimal field size each family needs over a parameter grid."""
    try:
        selected = [parse_family(f, None) for f in families] if families else None
        final_counts = parse_int_list(rfs) if rfs is not None else None
        rows = sweep_rows(parse_int_list(lambdas), parse_int_list(rs), parse_int_list(ks), selected, final_counts)
    except (ConvertibleCodeError, ValueError) as e:
        fail(f"Sweep failed: {e}")
        return

    if fmt == "table":
        display_sweep(console, rows)
        return
    if fmt == "json":
        emit(dumps(rows), out)
        return
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=sweep_columns(rows), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    emit(buffer.getvalue().rstrip("\n"), out)


def main() -> None:
    """Main entry point for the CLI."""
    try:
        code = cli.main(standalone_mode=False)
    except click.exceptions.Abort:
        console.print("[red]x Aborted[/red]")
        sys.exit(EXIT_PRECONDITION)
    except click.ClickException as e:
        e.show()
        sys.exit(EXIT_PRECONDITION)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
