"""Acceptance criteria, one pass/fail line each (tolerance: exact equality).

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""

import pytest

from gwloc.selfcheck import CRITERIA


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{c.number}" for c in CRITERIA])
def test_criterion(crit):
    results = crit.run(extended=True)
    ok = all(good for _, good, _ in results)
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {crit.number}: {crit.title} (exact)")
    failures = [f"{label}: {detail}" for label, good, detail in results if not good]
    for line in failures:
        print(f"    FAIL {line}")
    assert ok, "\n".join(failures)
