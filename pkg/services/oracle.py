"""Brute-force lattice point counts of the fixed polytopes, from the definition of Π_n only.

A point fixed by σ is constant on every cycle, so the fixed lattice points of tΠ_n are the
integer vectors y ∈ [t, tn]^m whose expansion (y_k repeated ℓ_k times) lies in tΠ_n.
Membership is the majorization test: coordinates sum to t·n(n+1)/2 and the k largest
coordinates sum to at most t·(n + (n-1) + ... + (n-k+1)).
"""

import logging
from typing import Callable, List, Optional, Sequence, Tuple

import anyio
import numpy as np
from anyio import to_process

from config import settings
from exceptions import BudgetExceededError, InputError
from models.schemas import CycleType, OracleComparison, OracleSweepReport
from services.combinatorics import partitions_of
from services.fixed_polytope import ehrhart_quasipolynomial

logger = logging.getLogger(__name__)


def count_slice(parts: Tuple[int, ...], t: int, first: int) -> int:
    """Fixed lattice points of tΠ_n with y_1 = ``first``.

    y_2..y_{m-1} range over the candidate box and y_m is solved from the sum equation,
    so only candidates on the right hyperplane are materialized. Values stay below
    t·n(n+1)/2, far inside int64 for any budgeted input.
    """
    n, m = sum(parts), len(parts)
    low, high = t, t * n
    total = t * n * (n + 1) // 2
    bounds = t * np.cumsum(np.arange(n, 0, -1, dtype=np.int64))

    if m == 1:
        rows = np.array([[first]], dtype=np.int64)
    else:
        free = m - 2
        if free:
            axis = np.arange(low, high + 1, dtype=np.int64)
            grids = np.meshgrid(*([axis] * free), indexing="ij")
            middle = np.stack([g.ravel() for g in grids], axis=1)
        else:
            middle = np.zeros((1, 0), dtype=np.int64)
        partial = parts[0] * first + middle @ np.array(parts[1:-1], dtype=np.int64)
        remainder = total - partial
        last = remainder // parts[-1]
        keep = (remainder % parts[-1] == 0) & (last >= low) & (last <= high)
        rows = np.column_stack([np.full(len(middle), first, dtype=np.int64), middle, last])[keep]

    if len(rows) == 0:
        return 0
    expanded = np.repeat(rows, parts, axis=1)
    descending = -np.sort(-expanded, axis=1)
    prefix = np.cumsum(descending, axis=1)
    inside = np.all(prefix[:, :-1] <= bounds[:-1], axis=1) & (prefix[:, -1] == total)
    return int(np.count_nonzero(inside))


class LatticePointOracle:
    """Counts fixed lattice points of tΠ_n by enumeration, within configured budgets."""

    def __init__(
        self,
        max_dilation_size: Optional[int] = None,
        max_candidates: Optional[int] = None,
        workers: Optional[int] = None,
    ):
        self.max_dilation_size = settings.oracle_max_dilation_size if max_dilation_size is None else max_dilation_size
        self.max_candidates = settings.oracle_max_candidates if max_candidates is None else max_candidates
        self.workers = settings.oracle_workers if workers is None else workers

    @staticmethod
    def in_dilated_permutahedron(x: Sequence[int], t: int) -> bool:
        """Membership of an integer point in tΠ_n, n = len(x)."""
        n = len(x)
        if t < 1:
            raise InputError(f"t must be positive, got {t}")
        if sum(x) != t * n * (n + 1) // 2:
            return False
        top, bound = 0, 0
        for k, value in enumerate(sorted(x, reverse=True)[:-1], start=1):
            top += value
            bound += t * (n - k + 1)
            if top > bound:
                return False
        return True

    def check_budget(self, cycle_type: CycleType, t: int) -> None:
        if t < 1:
            raise InputError(f"t must be positive, got {t}")
        n, m = cycle_type.n, cycle_type.m
        if t * n > self.max_dilation_size:
            raise BudgetExceededError(f"t*n for {cycle_type.label()} at t={t}", t * n, self.max_dilation_size)
        candidates = (t * (n - 1) + 1) ** m
        if candidates > self.max_candidates:
            raise BudgetExceededError(f"candidate box size for {cycle_type.label()} at t={t}", candidates, self.max_candidates)

    def count_fixed_lattice_points(self, cycle_type: CycleType, t: int) -> int:
        """|tΠ_n^σ ∩ Z^n| for σ of the given cycle type, by enumeration."""
        self.check_budget(cycle_type, t)
        firsts = range(t, t * cycle_type.n + 1)
        logger.debug(f"Enumerating fixed points of {t}*Pi_{cycle_type.n} for {cycle_type.label()}")
        if self.workers > 1:
            return anyio.run(self._count_in_workers, cycle_type.parts, t, list(firsts))
        return sum(count_slice(cycle_type.parts, t, first) for first in firsts)

    async def _count_in_workers(self, parts: Tuple[int, ...], t: int, firsts: List[int]) -> int:
        limiter = anyio.CapacityLimiter(self.workers)
        counts: List[int] = []

        async def run_slice(first: int) -> None:
            counts.append(await to_process.run_sync(count_slice, parts, t, first, limiter=limiter))

        async with anyio.create_task_group() as tg:
            for first in firsts:
                tg.start_soon(run_slice, first)
        return sum(counts)

    def sweep(
        self,
        n_max: int,
        t_max: int,
        select: Optional[Callable[[CycleType], bool]] = None,
    ) -> OracleSweepReport:
        """Compare enumeration with the quasipolynomial for every class of every n ≤ n_max.

        Mismatches are logged and returned in the report, never raised.
        """
        if n_max < 1 or t_max < 1:
            raise InputError(f"sweep bounds must be positive, got n_max={n_max}, t_max={t_max}")
        plan = [
            (cycle_type, t)
            for n in range(1, n_max + 1)
            for cycle_type in partitions_of(n)
            if select is None or select(cycle_type)
            for t in range(1, t_max + 1)
        ]
        for cycle_type, t in plan:
            self.check_budget(cycle_type, t)

        logger.info(f"Oracle sweep over {len(plan)} (cycle type, t) pairs")
        report = OracleSweepReport(n_max=n_max, t_max=t_max)
        for cycle_type, t in plan:
            comparison = OracleComparison(
                cycle_type=cycle_type.parts,
                t=t,
                oracle_count=self.count_fixed_lattice_points(cycle_type, t),
                formula_value=ehrhart_quasipolynomial(cycle_type)(t),
            )
            if not comparison.match:
                logger.warning(
                    f"Mismatch for {cycle_type.label()} at t={t}: "
                    f"oracle {comparison.oracle_count}, formula {comparison.formula_value}"
                )
            report.comparisons.append(comparison)
        return report


# Create global instance
lattice_point_oracle = LatticePointOracle()
