"""
Check runner behind ``convertible-codes verify``.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Callable, List, Optional

import numpy as np
from rich.console import Console
from rich.progress import Progress

from .access_convert import (
    ConvertiblePair,
    Family,
    expected_f_product,
    f_matrix,
    verify_access_optimal,
    verify_parallel_block_reconstructible,
)
from .bw_convert import (
    VectorCodePair,
    random_messages,
    vector_decode,
    vector_encode_initial,
    verify_bandwidth_optimal,
)
from .config import Config
from .errors import BruteForceLimitError, ConvertibleCodeError
from .linalg import is_superregular
from .mds import MdsCode, to_systematic, verify_mds

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""


@dataclass
class VerificationResult:
    """Outcome of every check run against one artifact."""

    checks: List[CheckResult] = field(default_factory=list)
    per_symbol: Optional[bool] = None
    report: Any = None

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def add(self, name: str, status: str, detail: str = "") -> None:
        self.checks.append(CheckResult(name, status, detail))


class PairVerifier:
    """Runs the structural and conversion checks on constructed pairs."""

    def __init__(self, config: Optional[Config] = None, show_progress: Optional[bool] = None):
        self.config = config or Config()
        self.console = Console(stderr=True)
        self.show_progress = (
            self.config.verify.show_progress if show_progress is None else show_progress
        )

    def _rng(self, seed: Optional[int]) -> np.random.Generator:
        return np.random.default_rng(self.config.verify.seed if seed is None else seed)

    def _run(self, result: VerificationResult, name: str, check: Callable[[], Any]) -> None:
        """Record one boolean check, turning library errors into failures or skips."""
        try:
            outcome = check()
        except BruteForceLimitError as e:
            result.add(name, SKIP, str(e))
            return
        except ConvertibleCodeError as e:
            if self.config.verify.verbose_errors:
                self.console.print(f"[yellow]{name}: {type(e).__name__}: {e}[/yellow]")
            result.add(name, FAIL, str(e))
            return
        if isinstance(outcome, tuple):
            ok, detail = outcome
        else:
            ok, detail = bool(outcome), ""
        result.add(name, PASS if ok else FAIL, detail)

    def _mds(self, code: MdsCode) -> bool:
        return verify_mds(code, self.config.limits.mds_max_subsets)

    def _superregular(self, code: MdsCode) -> bool:
        limits = self.config.limits
        return is_superregular(
            to_systematic(code).parity_matrix,
            limits.superregular_max_side,
            limits.superregular_max_cells,
        )

    def _with_progress(self, description: str, trials: int, run: Callable[[Callable[[int], None]], Any]) -> Any:
        with Progress(console=self.console, disable=not self.show_progress) as progress:
            task = progress.add_task(description, total=trials)
            return run(lambda _trial: progress.advance(task))

    def verify_pair(
        self, pair: ConvertiblePair, trials: Optional[int] = None, seed: Optional[int] = None
    ) -> VerificationResult:
        trials = self.config.verify.trials if trials is None else trials
        result = VerificationResult()
        self._run(result, "initial code is MDS", lambda: self._mds(pair.initial))
        self._run(result, "final code is MDS", lambda: self._mds(pair.final))
        self._run(result, "final parity matrix is superregular", lambda: self._superregular(pair.final))

        if pair.family in (Family.SUBGROUP_MULT, Family.SUBGROUP_ADD):
            def block_check() -> Any:
                p = to_systematic(pair.final).parity_matrix
                block_map = verify_parallel_block_reconstructible(p, pair.params.k_i)
                if block_map is None:
                    return False, "no scalar-multiple column matching"
                scalars = sorted({theta for _, theta in block_map.values()})
                return True, f"block scalars {scalars}"

            self._run(result, "parallel-block-reconstructible", block_check)

        if pair.family in (Family.GRS, Family.GRS_DOUBLY_EXT) and pair.params.r_i > pair.params.r_f:
            self._run(
                result,
                "F . H^I identity",
                lambda: f_matrix(pair) @ pair.initial.parity_check_matrix == expected_f_product(pair),
            )

        if pair.plan is None:
            result.add("access-optimal conversion", SKIP, f"{pair.family.value} pairs have no plan")
            return result
        if not pair.params.access_regime:
            result.add("access-optimal conversion", SKIP, "r_f > min(k_i, r_i)")
            return result

        def access_check() -> Any:
            report = self._with_progress(
                "Converting random codewords",
                trials,
                lambda tick: verify_access_optimal(pair, trials, self._rng(seed), on_trial=tick),
            )
            result.per_symbol = report.per_symbol
            result.report = report
            detail = f"reads {report.reads}, writes {report.writes}, bound {report.bound}"
            return report.passed, "; ".join([detail] + report.failures[:3])

        self._run(result, "access-optimal conversion", access_check)
        return result

    def verify_vector_pair(
        self,
        pair: VectorCodePair,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        strategy: str = "optimized",
    ) -> VerificationResult:
        trials = self.config.verify.trials if trials is None else trials
        params = pair.params
        result = VerificationResult()
        self._run(result, "base initial code is MDS", lambda: self._mds(pair.base.initial))
        self._run(result, "punctured base code is MDS", lambda: self._mds(pair.punctured))
        self._run(
            result,
            "P^(l) = P^I W_l for every block",
            lambda: all(pair.p_initial @ w == p for w, p in zip(pair.w, pair.p_blocks)),
        )

        def vector_mds() -> Any:
            if params.n_i > self.config.limits.vector_decode_max_length:
                raise BruteForceLimitError(
                    f"vector MDS check of length {params.n_i} exceeds the cap "
                    f"{self.config.limits.vector_decode_max_length}"
                )
            message = random_messages(pair, self._rng(seed))[0]
            word = vector_encode_initial(pair, message)
            for subset in combinations(range(params.n_i), params.k_i):
                known = {c: word.symbols[c] for c in subset}
                if vector_decode(pair, known) != message:
                    return False, f"subset {subset} decodes incorrectly"
            return True, f"{comb(params.n_i, params.k_i)} subsets decode"

        self._run(result, "vector code is MDS", vector_mds)

        def bandwidth_check() -> Any:
            report = self._with_progress(
                "Converting random vector codewords",
                trials,
                lambda tick: verify_bandwidth_optimal(pair, trials, self._rng(seed), strategy, tick),
            )
            result.report = report
            detail = (
                f"read {report.read}/{report.bound_read}, write {report.write}/{report.bound_write}"
            )
            return report.passed, "; ".join([detail] + report.failures[:3])

        self._run(result, "bandwidth-optimal conversion", bandwidth_check)
        self._run(
            result,
            "equal download per unchanged disk",
            lambda: result.report is not None and result.report.equal_download,
        )
        return result

