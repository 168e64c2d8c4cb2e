"""Tests for the bound checks."""
import math

from cutpath.monitors import check_bound, check_increasing, check_nonincreasing, summarize


def test_check_bound():
    report = check_bound("escape", 0.2, 0.25, j=4)
    assert report.satisfied
    assert report.parameters == {"j": 4}

    assert not check_bound("escape", 0.3, 0.25).satisfied
    assert check_bound("escape", 0.3, 0.25, half_width=0.06).satisfied


def test_summarize_reports():
    reports = [check_bound("x", 1.0, 2.0), check_bound("x", 3.0, 2.0), check_bound("y", 0.0, 0.0)]
    assert summarize(reports) == {"x": {"satisfied": 1, "violated": 1}, "y": {"satisfied": 1, "violated": 0}}


def test_check_nonincreasing():
    reports = check_nonincreasing("trend", [1, 2, 3, 4], [1.0, 0.8, 0.9, 0.5], [0.0, 0.0, 0.05, 0.0], key="block")

    assert [report.parameters["block"] for report in reports] == [2, 3, 4]
    assert [report.satisfied for report in reports] == [True, False, True]


def test_check_nonincreasing_skips_undefined_means():
    reports = check_nonincreasing("trend", [0, 1, 2], [1.0, math.nan, 0.5], [0.1, math.nan, 0.1])
    assert reports == []


def test_check_increasing():
    samples = [[1.0, 1.2, 0.9, 1.1], [2.0, 2.1, 1.8, 2.2], [2.0, 2.1, 1.8, 2.2]]
    reports = check_increasing("growth", [10, 100, 1000], samples, key="horizon")

    assert [report.parameters["horizon"] for report in reports] == [100, 1000]
    assert [report.satisfied for report in reports] == [True, False]
    assert reports[1].value == 0.0


def test_check_increasing_rejects_noisy_growth():
    samples = [[0.0, 0.0, 0.0, 0.0], [1.0, -1.0, 1.2, -0.8]]
    (report,) = check_increasing("growth", [1, 2], samples)

    assert report.value < 0
    assert not report.satisfied
