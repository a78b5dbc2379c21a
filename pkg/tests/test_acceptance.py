"""Acceptance gate: one test per criterion, one printed line each."""

import pytest

from aperiodic.selftest import CRITERIA


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    title, func = CRITERIA[number]
    try:
        ok, detail = func()
    except Exception as exc:
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    with capsys.disabled():
        print(f"\ncriterion {number} ({title}): "
              f"{'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {number} ({title}): {detail}"
