"""One line per acceptance criterion, printed whether it passes or fails.

Run with ``pytest tests/test_acceptance.py -v`` (lines go straight to the
terminal). Each suite also has a wall-clock budget on a laptop-class CPU.
"""
import pytest

from width2lab import verify

BUDGET_SECONDS = 120

CRITERIA = verify.names()


def test_every_criterion_registered():
    assert [verify.SUITES[n][0] for n in CRITERIA] == list(range(1, 15))


@pytest.mark.parametrize("name", CRITERIA)
def test_criterion(name, capsys):
    res = verify.run_suite(name)
    with capsys.disabled():
        print(f"\n{res.line()} ({res.seconds}s)")
    assert res.ok, f"{name} failed; counterexample: {res.counterexample!r}"
    assert res.seconds < BUDGET_SECONDS
