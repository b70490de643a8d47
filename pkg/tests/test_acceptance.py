"""Runs every acceptance criterion at its stated tolerance, one PASS/FAIL line each."""

import pytest

from debyelib.selftest import CHECKS


@pytest.mark.parametrize("check", CHECKS, ids=[c.__name__ for c in CHECKS])
def test_acceptance(check):
    result = check()
    print(result.line())
    assert result.passed, result.line()
