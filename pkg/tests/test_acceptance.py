"""Acceptance gate: every criterion runs at its stated tolerance.

Each test prints one pass/fail line so `pytest -s tests/test_acceptance.py`
doubles as the human-readable report; `momzeta verify` emits the same checks
as JSON.
"""

import pytest

from momzeta.acceptance import CRITERIA, run_criterion

SEED = 42


@pytest.mark.parametrize("cid", sorted(CRITERIA, key=int))
def test_criterion(cid):
    result = run_criterion(cid, seed=SEED)
    print(result.line())
    assert result.passed, f"criterion {cid} failed: {result.details}"
