"""Shared pytest wiring: per-criterion acceptance result lines.

Acceptance tests record a one-line verdict through the ``acceptance_log``
fixture; the terminal summary prints every recorded line plus a FAIL line
for any criterion whose test never reached its record call.
"""

CRITERIA = {
    1: "end-to-end detection correctness",
    2: "spread-signature reproduction",
    3: "step-fidelity unit suite",
    4: "geometry oracle equivalence",
    5: "numerical identities",
    6: "spoofed symmetry property",
    7: "format round-trip and ingest fuzz",
    8: "determinism",
}

_results: dict[int, str] = {}
_acceptance_ran = False


def record_acceptance(criterion: int, message: str) -> None:
    global _acceptance_ran
    _acceptance_ran = True
    _results[criterion] = message


import pytest


@pytest.fixture()
def acceptance_log():
    return record_acceptance


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_ran:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number, title in CRITERIA.items():
        if number in _results:
            terminalreporter.write_line(f"criterion {number} ({title}): PASS - {_results[number]}")
        else:
            terminalreporter.write_line(f"criterion {number} ({title}): FAIL (test did not complete)")
