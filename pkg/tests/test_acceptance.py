"""Acceptance gate: one line per criterion, each checked at its own tolerance and time budget."""

import json
import time

import pytest

from planemoduli.cli import main
from planemoduli.selftest import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, report_line):
    result = run_criterion(number, "full", seed=0)
    report_line(result.line())
    assert result.passed, result.line()


def test_selftest_quick_is_fast_and_replayable(capsys):
    start = time.perf_counter()
    first = main(["selftest", "quick", "--seed", "7"])
    elapsed = time.perf_counter() - start
    report_a = json.loads(capsys.readouterr().out)
    second = main(["selftest", "quick", "--seed", "7"])
    report_b = json.loads(capsys.readouterr().out)
    assert first == second == 0
    assert elapsed < 60
    assert report_a["outcome"] == report_b["outcome"]
