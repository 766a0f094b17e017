"""
Tests for verification reports: serialization, merging and exit codes.
"""

import json

from determinants.matpoly import RingMatrix
from rings.grassmann import GrassmannBackend
from verification.reports import Verdict, VerificationReport, exit_code, merge_reports, run_trials, timed


def _report(verdict=Verdict.PASS, trials=1):
    return VerificationReport("ch", "grassmann:2", {"n": 2, "k": 2}, verdict=verdict, trials=trials)


def test_to_dict_renders_elements_and_matrices():
    E = GrassmannBackend(2)
    v1, v2 = E.generators()
    report = _report()
    report.fail("(A)p != 0", residual=RingMatrix.diagonal(E, [v1 * v2, 0]), value=-(v2 * v1))
    d = report.to_dict(include_timing=False)
    assert d["verdict"] == "fail"
    assert d["witnesses"] == [{"label": "(A)p != 0", "residual": [["v1*v2", "0"], ["0", "0"]], "value": "v1*v2"}]
    assert "elapsed_ms" not in d
    assert "elapsed_ms" in report.to_dict()


def test_to_json_keeps_unicode():
    report = _report()
    report.notes.append("λ_2 = 2")
    assert "λ_2" in report.to_json()
    assert json.loads(report.to_json())["notes"] == ["λ_2 = 2"]


def test_merge_keeps_most_severe_verdict():
    merged = merge_reports([_report(), _report(Verdict.HYPOTHESES_UNMET), _report(Verdict.OBSERVATION)])
    assert merged.verdict is Verdict.HYPOTHESES_UNMET
    assert merged.trials == 3


def test_run_trials_collects_witnesses():
    @timed
    def check(value):
        report = _report()
        if value < 0:
            report.fail("negative", value=value)
        return report

    merged = run_trials(check, [1, -2, 3, -4])
    assert merged.verdict is Verdict.FAIL
    assert [w["value"] for w in merged.witnesses] == [-2, -4]
    assert merged.trials == 4
    assert merged.elapsed_ms >= 0


def test_exit_codes():
    assert exit_code([_report(), _report(Verdict.OBSERVATION)]) == 0
    assert exit_code([_report(), _report(Verdict.FAIL), _report(Verdict.REJECTED)]) == 1
    assert exit_code([_report(Verdict.REJECTED)]) == 2
    assert exit_code([_report(Verdict.HYPOTHESES_UNMET)]) == 2
    assert exit_code([]) == 0


def test_summary_marks_verdict():
    assert _report().summary().startswith("✅ ch [grassmann:2] pass")
    assert _report(Verdict.FAIL).summary().startswith("❌")
