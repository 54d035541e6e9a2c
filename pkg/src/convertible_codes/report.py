"""
Rich rendering of traces, bounds, check results and sweeps.
"""

from typing import List, Sequence

from rich.console import Console
from rich.table import Table

from .access_convert import AccessTrace, MergeParams, access_cost_bound
from .bw_convert import BandwidthBound, BandwidthTrace
from .fieldsize import SweepRow
from .verify import FAIL, PASS, VerificationResult

STATUS_STYLE = {PASS: "[green]v pass[/green]", FAIL: "[red]x fail[/red]"}


def _verdict(optimal: bool) -> str:
    return "OPTIMAL" if optimal else "SUBOPTIMAL"


def access_summary(trace: AccessTrace, params: MergeParams) -> str:
    """e.g. "read 8/8, write 4/4, OPTIMAL"."""
    bound_total = access_cost_bound(params)
    bound_read = bound_total - params.r_f
    optimal = trace.total == bound_total
    return f"read {trace.disks_read}/{bound_read}, write {trace.disks_written}/{params.r_f}, {_verdict(optimal)}"


def bandwidth_summary(trace: BandwidthTrace, bound: BandwidthBound) -> str:
    """e.g. "read 44/44, write 18/18, OPTIMAL"."""
    optimal = trace.read == bound.read and trace.write == bound.write
    return f"read {trace.read}/{bound.read}, write {trace.write}/{bound.write}, {_verdict(optimal)}"


def display_access(console: Console, trace: AccessTrace, params: MergeParams, title: str = "Access cost") -> None:
    bound_total = access_cost_bound(params)
    table = Table(title=title)
    table.add_column("Quantity", style="cyan")
    table.add_column("Trace", style="yellow", justify="right")
    table.add_column("Bound", style="green", justify="right")
    table.add_row("disks read", str(trace.disks_read), str(bound_total - params.r_f))
    table.add_row("disks written", str(trace.disks_written), str(params.r_f))
    table.add_row("total", str(trace.total), str(bound_total))
    console.print(table)
    console.print(access_summary(trace, params))


def display_bandwidth(console: Console, trace: BandwidthTrace, bound: BandwidthBound, title: str = "Bandwidth") -> None:
    table = Table(title=title)
    table.add_column("Quantity", style="cyan")
    table.add_column("Trace", style="yellow", justify="right")
    table.add_column("Bound", style="green", justify="right")
    table.add_row("sub-symbols read", str(trace.read), str(bound.read))
    table.add_row("sub-symbols written", str(trace.write), str(bound.write))
    table.add_row("total", str(trace.total), str(bound.total))
    console.print(table)
    console.print(bandwidth_summary(trace, bound))


def display_checks(console: Console, result: VerificationResult, title: str = "Verification") -> None:
    table = Table(title=title)
    table.add_column("Check", style="cyan", no_wrap=True)
    table.add_column("Status")
    table.add_column("Detail", style="dim")
    for check in result.checks:
        table.add_row(check.name, STATUS_STYLE.get(check.status, "[yellow]- skip[/yellow]"), check.detail)
    console.print(table)
    if result.per_symbol is not None:
        console.print(f"per_symbol = {str(result.per_symbol).lower()}")


def sweep_columns(rows: Sequence[SweepRow]) -> List[str]:
    columns: List[str] = []
    for row in rows:
        columns.extend(c for c in row if c not in columns)
    return columns


def display_sweep(console: Console, rows: Sequence[SweepRow]) -> None:
    if not rows:
        console.print("[yellow]Empty parameter range; nothing to sweep.[/yellow]")
        return
    table = Table(title=f"Minimal field size per family ({len(rows)} parameter sets)")
    columns = sweep_columns(rows)
    for column in columns:
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(*(str(row.get(c, "")) for c in columns))
    console.print(table)
