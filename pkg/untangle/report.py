"""
Bound report: runs the untangling engines over a suite of small instances
and checks every recorded length against its known bound.
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

from untangle import constants
from untangle.caching import cache
from untangle.engine import longest_untangle, run_greedy_top, shortest_untangle
from untangle.errors import BudgetExhausted, TiedBlueHeights
from untangle.fence import make_fence
from untangle.generators import SampleKind, make_butterfly, make_star, sample_random
from untangle.geometry import convex_position
from untangle.logger import logger
from untangle.matching import Matching, crossing_count, nonH_count
from untangle.potential import phi_total

# names of the bound checks
GREEDY = "greedy"  # greedy length <= nonH count <= C(n, 2)
POTENTIAL = "potential"  # red-on-a-line longest <= C(n, 2) (n + 4) / 6
CONVEX = "convex"  # convex longest <= C(n, 2)
CHECKS = (GREEDY, POTENTIAL, CONVEX)


@dataclass
class BoundReport:
    instance: str
    n: int
    crossings: int
    non_h: int
    phi: Optional[int] = None
    greedy: Optional[int] = None
    shortest: Optional[int] = None
    longest: Optional[int] = None
    # None when a check does not apply to the instance
    checks: Dict[str, Optional[bool]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok is not False for ok in self.checks.values())


@dataclass
class ReportSummary:
    reports: List[BoundReport]

    @property
    def failures(self) -> List[BoundReport]:
        return [r for r in self.reports if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures


@cache(ttl=-1, min_memory_time=0)
def exact_lengths(matching: Matching, budget: int) -> Tuple[int, int]:
    """shortest and longest untangle lengths of ``matching``"""
    shortest = shortest_untangle(matching, budget).length
    longest = longest_untangle(matching, budget).length
    return shortest, longest


def potential_bound(n: int) -> Fraction:
    return Fraction(comb(n, 2) * (n + 4), 6)


def bound_report(
    instance: str, matching: Matching, budget: int = constants.DEFAULT_BUDGET
) -> BoundReport:
    n = matching.n
    report = BoundReport(instance, n, crossing_count(matching), nonH_count(matching))
    red_on_line = matching.is_red_on_line()
    convex = convex_position(matching.points)

    try:
        report.shortest, report.longest = exact_lengths(matching, budget)
    except BudgetExhausted as e:
        logger.warning("%s: exact search gave up after %s configurations", instance, e.explored)

    if red_on_line:
        report.phi = phi_total(matching)
        try:
            report.greedy = len(run_greedy_top(matching))
        except TiedBlueHeights:
            logger.info("%s: tied blue heights, greedy skipped", instance)
        if report.greedy is not None:
            report.checks[GREEDY] = report.greedy <= report.non_h <= comb(n, 2)
        if report.longest is not None:
            report.checks[POTENTIAL] = report.longest <= potential_bound(n)
    if convex and report.longest is not None:
        report.checks[CONVEX] = report.longest <= comb(n, 2)

    if not report.passed:
        logger.warning("%s: bound check failed: %s", instance, report.checks)
    return report


def report_suite(max_n: int, trials: int, seed: int) -> List[Tuple[str, Matching]]:
    """stars, butterflies and the 2-fence, then random samples for every n"""
    suite = [(f"star-{n}", make_star(n)) for n in range(2, max_n + 1)]
    suite += [
        (f"butterfly-{m}", make_butterfly(m, perturb=True))
        for m in range(1, max_n // 2 + 1)
    ]
    if max_n >= 4:
        suite.append(("fence-2", make_fence(2)[0]))
    for n in range(2, max_n + 1):
        for trial in range(trials):
            for kind in (SampleKind.RED_ON_LINE, SampleKind.CONVEX):
                instance_seed = seed * 1_000_003 + n * 1_009 + trial
                suite.append(
                    (f"{kind.value}-{n}-{trial}", sample_random(kind, n, instance_seed))
                )
    return suite


def table1_report(
    max_n: int = constants.DEFAULT_REPORT_MAX_N,
    trials: int = constants.DEFAULT_REPORT_TRIALS,
    seed: int = 0,
    budget: int = constants.DEFAULT_BUDGET,
    workers: int = 1,
) -> ReportSummary:
    """Bound reports for the whole suite, in suite order whatever ``workers`` is."""
    suite = report_suite(max_n, trials, seed)
    logger.info("bound report over %s instances", len(suite))
    reports: List[Optional[BoundReport]] = [None] * len(suite)
    with ThreadPoolExecutor(max_workers=max(workers, 1)) as executor:
        futures = {
            executor.submit(bound_report, name, matching, budget): k
            for k, (name, matching) in enumerate(suite)
        }
        for future in as_completed(futures):
            reports[futures[future]] = future.result()
    summary = ReportSummary(reports)
    logger.info(
        "bound report: %s instances, %s failures", len(reports), len(summary.failures)
    )
    return summary


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "ok" if value else "FAIL"
    return str(value)


def format_table(summary: ReportSummary) -> str:
    header = ["instance", "n", "X", "nonH", "phi", "greedy", "shortest", "longest"]
    header += list(CHECKS)
    rows = [header]
    for r in summary.reports:
        row = [r.instance, r.n, r.crossings, r.non_h, r.phi, r.greedy, r.shortest, r.longest]
        row += [r.checks.get(name) for name in CHECKS]
        rows.append([_cell(v) for v in row])
    widths = [max(len(row[k]) for row in rows) for k in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    verdict = "all bounds hold" if summary.passed else f"{len(summary.failures)} failures"
    lines.append(f"{len(summary.reports)} instances, {verdict}")
    return "\n".join(lines) + "\n"
