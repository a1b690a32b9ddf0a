"""The ten acceptance criteria at exact tolerance and inside their time limits."""

from __future__ import annotations

import pytest

from carnot_sard.acceptance import CRITERIA, run_criterion

from conftest import CRITERION_LINES


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number):
    res = run_criterion(number, seed=0)
    print(res.line())
    CRITERION_LINES.append(res.line())
    assert res.passed, res.line()
    assert res.elapsed <= res.limit
