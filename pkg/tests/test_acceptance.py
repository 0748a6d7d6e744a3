"""Acceptance criteria 1-14; each prints a PASS/FAIL line."""

import pytest

from thetajac.verify import CRITERIA, run_criterion


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, acceptance_lines):
    result = run_criterion(k)
    line = result.line()
    acceptance_lines[k] = line
    print(line)
    assert result.passed, line


if __name__ == "__main__":
    for k in sorted(CRITERIA):
        print(run_criterion(k).line())
