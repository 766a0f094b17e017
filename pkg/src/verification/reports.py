"""
Structured evidence returned by every identity check.
"""

import json
import time
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import wraps
from typing import Any, Callable, Dict, Iterable, List, Optional

from determinants.matpoly import RingMatrix
from rings.ringcore import RingElement

logger = logging.getLogger(__name__)


class Verdict(Enum):
    """Outcome of one check; members are listed in increasing severity."""
    PASS = "pass"
    OBSERVATION = "observation"
    HYPOTHESES_UNMET = "hypotheses-unmet"
    REJECTED = "rejected"
    FAIL = "fail"


SEVERITY = {verdict: rank for rank, verdict in enumerate(Verdict)}


def render_value(value: Any) -> Any:
    """JSON-ready form: matrices as nested canonical strings, elements and rationals as text."""
    if isinstance(value, RingMatrix):
        return value.to_strings()
    if isinstance(value, (RingElement, Fraction)):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [render_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): render_value(v) for k, v in value.items()}
    return value


@dataclass
class VerificationReport:
    """
    Result of one identity check.

    A pass verdict means every residual computed was exactly zero; witnesses
    hold the inputs and nonzero residuals otherwise.
    """
    theorem: str
    backend: str
    params: Dict[str, Any] = field(default_factory=dict)
    verdict: Verdict = Verdict.PASS
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    degree_info: Dict[str, Any] = field(default_factory=dict)
    lifted_coefficients: Optional[List[str]] = None
    notes: List[str] = field(default_factory=list)
    trials: int = 1
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def add_witness(self, label: str, **values: Any) -> None:
        self.witnesses.append({"label": label, **{k: render_value(v) for k, v in values.items()}})

    def fail(self, label: str, **values: Any) -> "VerificationReport":
        self.verdict = Verdict.FAIL
        self.add_witness(label, **values)
        return self

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        d: Dict[str, Any] = {
            "theorem": self.theorem,
            "backend": self.backend,
            "params": render_value(self.params),
            "verdict": self.verdict.value,
            "degree_info": render_value(self.degree_info),
            "witnesses": self.witnesses,
            "trials": self.trials,
        }
        if self.lifted_coefficients is not None:
            d["lifted_coefficients"] = self.lifted_coefficients
        if self.notes:
            d["notes"] = self.notes
        if include_timing:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d

    def to_json(self, indent: int = 2, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=indent, ensure_ascii=False)

    def summary(self) -> str:
        marker = {Verdict.PASS: "✅", Verdict.FAIL: "❌", Verdict.OBSERVATION: "📊"}.get(self.verdict, "⚠️")
        return f"{marker} {self.theorem} [{self.backend}] {self.verdict.value} ({self.trials} trials)"


def timed(check: Callable[..., VerificationReport]) -> Callable[..., VerificationReport]:
    """Record wall-clock time of a check in its report."""

    @wraps(check)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = check(*args, **kwargs)
        report.elapsed_ms = (time.perf_counter() - start) * 1000
        logger.info("%s", report.summary())
        return report

    return wrapper


def merge_reports(reports: Iterable[VerificationReport]) -> VerificationReport:
    """
    Combine per-instance reports of the same check: the most severe verdict
    wins, witnesses and notes are concatenated, trials and timing add up.
    """
    reports = list(reports)
    if not reports:
        raise ValueError("nothing to merge")
    first = reports[0]
    merged = VerificationReport(first.theorem, first.backend, dict(first.params),
                                degree_info=dict(first.degree_info),
                                lifted_coefficients=first.lifted_coefficients, trials=0)
    for report in reports:
        if SEVERITY[report.verdict] > SEVERITY[merged.verdict]:
            merged.verdict = report.verdict
        merged.witnesses.extend(report.witnesses)
        merged.notes.extend(note for note in report.notes if note not in merged.notes)
        merged.trials += report.trials
        merged.elapsed_ms += report.elapsed_ms
    return merged


def run_trials(check: Callable[[Any], VerificationReport], inputs: Iterable[Any]) -> VerificationReport:
    """Run a single-instance check on every input and merge the reports."""
    return merge_reports(check(item) for item in inputs)


def exit_code(reports: Iterable[VerificationReport]) -> int:
    """0 when every report passed or is an observation, 1 on any failure, 2 otherwise."""
    verdicts = {report.verdict for report in reports}
    if Verdict.FAIL in verdicts:
        return 1
    if verdicts & {Verdict.REJECTED, Verdict.HYPOTHESES_UNMET}:
        return 2
    return 0
