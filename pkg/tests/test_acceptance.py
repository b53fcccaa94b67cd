"""The ten acceptance criteria, each under its own time limit."""
import pytest

from raagcc.suite import CRITERIA, run_criterion

LINES = {}  # shown in the terminal summary by conftest


@pytest.mark.parametrize("index", range(len(CRITERIA)), ids=[c[0] for c in CRITERIA])
def test_criterion(index):
    verdict = run_criterion(index)
    print(verdict.line())
    LINES[index] = verdict.line()
    if not verdict.ok:
        print("\n".join(f"    {d}" for d in verdict.details))
    assert verdict.ok, verdict.details
    assert verdict.seconds < verdict.limit
