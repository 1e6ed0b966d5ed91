"""Acceptance gate: every criterion at its stated tolerance, one PASS/FAIL line each."""

from __future__ import annotations

import json
import subprocess
import sys
import time

import pytest

from rigctl.suite import CRITERIA, canonical_json

# seconds; criteria without a stated budget get None
BUDGETS = {1: 5.0, 2: 60.0, 3: 600.0}


def _cli_reruns_identical() -> bool:
    argv = [sys.executable, "-m", "rigctl.cli", "verify", "all", "--criteria", "1,4,6", "--seed", "3"]
    runs = [subprocess.run(argv, capture_output=True, check=False) for _ in range(2)]
    return all(r.returncode == 0 for r in runs) and runs[0].stdout == runs[1].stdout


@pytest.mark.parametrize("cid", sorted(CRITERIA))
def test_criterion(cid, capsys):
    t0 = time.perf_counter()
    result = CRITERIA[cid](0)
    extra = ""
    if cid == 9:
        # library-level reruns plus byte comparison of two CLI processes
        cli_ok = _cli_reruns_identical()
        result = {**result, "cli_identical": cli_ok, "pass": result["pass"] and cli_ok}
    elapsed = time.perf_counter() - t0
    budget = BUDGETS.get(cid)
    in_time = budget is None or elapsed < budget
    if budget is not None:
        extra = f" (budget {budget:.0f}s)"
    ok = bool(result["pass"]) and in_time
    with capsys.disabled():
        print(f"\n[acceptance] criterion {cid} {'PASS' if ok else 'FAIL'}: {result['name']} in {elapsed:.2f}s{extra}")
    assert result["pass"], json.dumps(result)[:2000]
    assert in_time, f"criterion {cid} took {elapsed:.1f}s, budget {budget}s"
    # the report itself must be canonical JSON
    assert json.loads(canonical_json(result)) == result
