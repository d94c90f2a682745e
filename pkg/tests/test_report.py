from math import comb

import pytest

from untangle import constants
from untangle.fence import make_fence
from untangle.generators import make_star
from untangle.report import (
    CONVEX,
    GREEDY,
    POTENTIAL,
    BoundReport,
    ReportSummary,
    bound_report,
    format_table,
    potential_bound,
    report_suite,
    table1_report,
)


@pytest.fixture(autouse=True)
def cache_in_tmp(monkeypatch, tmp_path):
    monkeypatch.setenv(constants.CACHE_DIR_ENV, str(tmp_path))


def test_potential_bound():
    assert potential_bound(6) == 25
    assert potential_bound(2) == 1


def test_star_report():
    report = bound_report("star-6", make_star(6))
    assert report.crossings == report.non_h == comb(6, 2)
    assert report.longest == 15
    assert report.greedy <= report.non_h
    assert report.checks[GREEDY] and report.checks[POTENTIAL]
    assert report.passed


def test_fence_report():
    matching, _ = make_fence(2)
    report = bound_report("fence-2", matching)
    assert report.shortest == report.longest == 4
    assert report.checks[CONVEX]


def test_budget_exhausted_leaves_lengths_empty():
    report = bound_report("star-5", make_star(5), budget=2)
    assert report.longest is None
    assert POTENTIAL not in report.checks
    assert report.passed


def test_suite_contents():
    names = [name for name, _ in report_suite(4, 1, 0)]
    assert names[:3] == ["star-2", "star-3", "star-4"]
    assert "butterfly-2" in names
    assert "fence-2" in names
    assert "convex-4-0" in names
    assert "fence-2" not in [name for name, _ in report_suite(3, 1, 0)]


def test_small_table():
    summary = table1_report(max_n=4, trials=2, seed=1, workers=3)
    assert summary.passed
    names = [r.instance for r in summary.reports]
    assert names == [name for name, _ in report_suite(4, 2, 1)]
    table = format_table(summary)
    assert table.splitlines()[0].split()[:3] == ["instance", "n", "X"]
    assert table.rstrip().endswith("all bounds hold")


def test_failures_are_reported():
    failing = BoundReport("made-up", 3, 3, 3, checks={CONVEX: False, GREEDY: None})
    summary = ReportSummary([failing])
    assert summary.failures == [failing]
    assert "FAIL" in format_table(summary)
    assert format_table(summary).rstrip().endswith("1 failures")
