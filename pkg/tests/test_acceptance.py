"""Acceptance gate: runs every shipped criterion at its stated tolerance and
prints one pass/fail line per criterion (visible with `pytest -s` and in the
CLI's `selftest` output, which shares these check functions)."""

import pytest

from chordmean import selftest


def _report(result):
    status = "PASS" if result.passed else "FAIL"
    return (f"criterion {result.criterion:2d} [{status}] {result.name}: "
            f"defect {result.defect:.3e} (tolerance {result.tolerance:.0e}, "
            f"{result.seconds:.1f}s) {result.detail}")


@pytest.mark.parametrize("criterion", sorted(selftest.CHECKS))
def test_criterion(criterion):
    result = selftest.CHECKS[criterion]()
    line = _report(result)
    print(line)
    assert result.passed, line


def test_criterion_15_selftest_contract():
    result = selftest.check_15_selftest_contract()
    line = _report(result)
    print(line)
    assert result.passed, line
