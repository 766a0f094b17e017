"""
Command-line front end: identity verification suites and direct computations.

Exit codes: 0 every check passed, 1 an identity failed (witness in the
report), 2 usage, configuration or hypothesis problems.
"""

import sys
import json
import random
import logging
import argparse
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from cli.backends import BackendInfo, parse_backend
from cli.expressions import parse_matrix
from config.settings import settings
from determinants.dettheory import char_poly, right_adjoint_chain, sdet, sym_adjoint
from determinants.matpoly import PolynomialRing, RingMatrix, poly_eval_right, random_matrix
from rings.errors import ArithmeticConsistencyError, ConfigError, NilCayleyError, SingularMatrixError
from rings.grassmann import GrassmannBackend
from rings.linalg import inverse
from rings.ringcore import RingBackend, SampleSpec, Sampler
from verification.families import grassmann_odd_traceless, sylvester_traceless
from verification.identities import (LIFT_STRATEGIES, check_ch, check_conjugation_invariance, check_domokos_2x2,
                                     check_fundamental, check_ideal_nilpotency, check_jennings, check_power_ch,
                                     check_trace_nilpotency)
from verification.reports import VerificationReport, exit_code, run_trials

logger = logging.getLogger(__name__)

CHECKS = ("jennings", "fundamental", "ch", "domokos", "trace-nilpotency", "power-ch",
          "commutator-power-ch", "conjugation", "ideal-nilpotency")
TWO_BY_TWO = ("domokos", "trace-nilpotency")
FINDIM_CHECKS = ("power-ch", "commutator-power-ch", "conjugation", "ideal-nilpotency")

# verify all: (check, backend, n, k)
SUITE = (
    ("jennings", "relfree:2,3,5", 2, 3),
    ("fundamental", "grassmann:4", 2, 2),
    ("fundamental", "relfree:2,3,5", 2, 3),
    ("ch", "grassmann:4", 2, 2),
    ("domokos", "grassmann:4", 2, 2),
    ("domokos", "rational", 2, 1),
    ("trace-nilpotency", "grassmann:4", 2, 2),
    ("trace-nilpotency", "relfree:2,3,5", 2, 3),
    ("power-ch", "utri:2:grassmann:2", 2, None),
    ("power-ch", "relfree:2,3,5", 2, 3),
    ("commutator-power-ch", "utri:2:rational", 2, None),
    ("conjugation", "grassmann:3", 2, 2),
    ("conjugation", "utri:2:grassmann:2", 2, None),
    ("ideal-nilpotency", "relfree:2,3,5", 2, 3),
    ("ideal-nilpotency", "utri:2:grassmann:2", 2, None),
)
SLOW_SUITE = (
    ("power-ch", "relfree:2,3,4", 3, 3),
)


@dataclass
class RunConfig:
    """One CLI invocation after argument parsing."""
    command: str
    check: Optional[str] = None
    backend: str = "grassmann:4"
    n: int = 2
    k: Optional[int] = None
    t: Optional[int] = None
    exponent: Optional[int] = None
    seed: int = 42
    trials: int = 5
    lift: str = "canonical"
    output_format: Optional[str] = None
    out: Optional[str] = None
    matrix: Optional[str] = None
    slow: bool = False
    workers: int = 1
    allow_large: bool = False
    verbose: bool = False

    @property
    def format(self) -> str:
        if self.output_format:
            return self.output_format
        return "json" if self.command == "verify" else "text"

    def validate(self) -> None:
        """
        Raises:
            ConfigError: listing the first inconsistency found
        """
        if self.command == "verify" and self.check not in CHECKS + ("all",):
            raise ConfigError(f"unknown check {self.check!r}")
        if self.n < 1:
            raise ConfigError("--n must be >= 1")
        if self.n > settings.max_n and not self.allow_large:
            raise ConfigError(f"--n {self.n} exceeds NILCAYLEY_MAX_N={settings.max_n}; pass --allow-large")
        if self.k is not None and self.k < 1:
            raise ConfigError("--k must be >= 1")
        if self.k is not None and self.k > settings.max_k and not self.allow_large:
            raise ConfigError(f"--k {self.k} exceeds NILCAYLEY_MAX_K={settings.max_k}; pass --allow-large")
        if self.trials < 1 or self.workers < 1:
            raise ConfigError("--trials and --workers must be >= 1")
        if self.exponent is not None and self.exponent < 1:
            raise ConfigError("--exponent must be >= 1")
        if self.lift not in LIFT_STRATEGIES:
            raise ConfigError(f"--lift must be one of {', '.join(LIFT_STRATEGIES)}")
        if self.output_format not in (None, "json", "text"):
            raise ConfigError("--format must be json or text")
        if self.check in TWO_BY_TWO and self.n != 2:
            raise ConfigError(f"{self.check} is stated for 2 x 2 matrices; use --n 2")
        if self.check == "jennings" and self.matrix:
            raise ConfigError("jennings samples ring elements; --matrix does not apply")


def _spec(config: RunConfig) -> SampleSpec:
    return SampleSpec(config.seed)


def _level(config: RunConfig, info: BackendInfo) -> int:
    k = config.k if config.k is not None else info.lie_index
    if k is None:
        raise ConfigError(f"{info.spec} has no known Lie nilpotency index; pass --k")
    return k


def _matrices(config: RunConfig, backend: RingBackend, sampler: Sampler) -> List[RingMatrix]:
    if config.matrix:
        return [parse_matrix(config.matrix, backend, config.n)]
    return [random_matrix(sampler, config.n) for _ in range(config.trials)]


def _default_exponent(config: RunConfig, info: BackendInfo, ideal_kind: str) -> Optional[int]:
    """--exponent, else t for U_t, else 2^(k-2) for the double commutator ideal of an L_k ring."""
    if config.exponent is not None:
        return config.exponent
    if config.t is not None or info.t is not None:
        return config.t or info.t
    k = config.k if config.k is not None else info.lie_index
    if ideal_kind == "double_commutator" and k is not None and k >= 2:
        return 2 ** (k - 2)
    if ideal_kind == "commutator" and k == 1:
        return 1
    return None


def _random_invertible(rng: random.Random, n: int) -> List[List[Fraction]]:
    while True:
        T = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        try:
            inverse(T)
            return T
        except SingularMatrixError:
            continue


def _run_jennings(config, info):
    return [check_jennings(info.backend, _level(config, info), _spec(config), config.trials)]


def _run_fundamental(config, info):
    k = _level(config, info)
    sampler = Sampler(info.backend, _spec(config))
    hypotheses = _spec(config).derive(7)
    return [run_trials(lambda A: check_fundamental(A, k, hypotheses), _matrices(config, info.backend, sampler))]


def _run_ch(config, info):
    k = _level(config, info)
    sampler = Sampler(info.backend, _spec(config))
    hypotheses = _spec(config).derive(7)
    ring = PolynomialRing(info.backend)

    def one(A):
        h = ring.x() + ring.constant(sampler.element())
        return check_ch(A, k, h, hypotheses)

    return [run_trials(one, _matrices(config, info.backend, sampler))]


def _run_domokos(config, info):
    sampler = Sampler(info.backend, _spec(config))
    hypotheses = _spec(config).derive(7)
    return [run_trials(lambda A: check_domokos_2x2(A, hypotheses), _matrices(config, info.backend, sampler))]


def _run_trace_nilpotency(config, info):
    k = _level(config, info)
    sampler = Sampler(info.backend, _spec(config))
    if config.matrix:
        matrices = [parse_matrix(config.matrix, info.backend, 2)]
    elif isinstance(info.backend, GrassmannBackend):
        matrices = [grassmann_odd_traceless(info.backend, sampler) for _ in range(config.trials)]
    else:
        matrices = [sylvester_traceless(info.backend, sampler) for _ in range(config.trials)]
    hypotheses = _spec(config).derive(7)
    return [run_trials(lambda A: check_trace_nilpotency(A, k, hypotheses), matrices)]


def _power_ch_runner(ideal_kind: str):
    def runner(config, info):
        alg = info.findim()
        sampler = Sampler(alg, _spec(config))
        exponent = _default_exponent(config, info, ideal_kind)
        k = config.k if config.k is not None else info.lie_index

        def one(A):
            return check_power_ch(A, ideal_kind, exponent, config.lift, config.seed, k)

        return [run_trials(one, _matrices(config, alg, sampler))]

    return runner


def _run_conjugation(config, info):
    alg = info.findim()
    sampler = Sampler(alg, _spec(config))
    rng = random.Random(config.seed)
    return [run_trials(lambda A: check_conjugation_invariance(A, _random_invertible(rng, config.n)),
                       _matrices(config, alg, sampler))]


def _run_ideal_nilpotency(config, info):
    alg = info.findim()
    expected = _default_exponent(config, info, "double_commutator") or alg.dim + 1
    reports = [check_ideal_nilpotency(alg, "double_commutator", expected)]
    if info.lie_index is not None and info.lie_index >= 3:
        reports.append(check_ideal_nilpotency(alg, "jennings", 2, info.lie_index))
    return reports


RUNNERS: Dict[str, Callable[[RunConfig, BackendInfo], List[VerificationReport]]] = {
    "jennings": _run_jennings,
    "fundamental": _run_fundamental,
    "ch": _run_ch,
    "domokos": _run_domokos,
    "trace-nilpotency": _run_trace_nilpotency,
    "power-ch": _power_ch_runner("double_commutator"),
    "commutator-power-ch": _power_ch_runner("commutator"),
    "conjugation": _run_conjugation,
    "ideal-nilpotency": _run_ideal_nilpotency,
}


def run_check(config: RunConfig) -> List[VerificationReport]:
    info = parse_backend(config.backend)
    print(f"🔍 {config.check} on {info.spec} (n={config.n}, seed={config.seed})", file=sys.stderr)
    reports = RUNNERS[config.check](config, info)
    for report in reports:
        print(report.summary(), file=sys.stderr)
    return reports


def suite_configs(config: RunConfig) -> List[RunConfig]:
    entries = SUITE + (SLOW_SUITE if config.slow else ())
    return [replace(config, check=check, backend=backend, n=n, k=k, matrix=None)
            for check, backend, n, k in entries]


def run_verify(config: RunConfig) -> List[VerificationReport]:
    """Run one check, or the fixed suite fanned out over worker threads (results kept in suite order)."""
    if config.check != "all":
        return run_check(config)
    configs = suite_configs(config)
    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        batches = list(executor.map(run_check, configs))
    return [report for batch in batches for report in batch]


def _demo_matrix() -> RingMatrix:
    return parse_matrix("[[v1, v2], [v3, v4]]", GrassmannBackend(4), 2)


def run_compute(config: RunConfig) -> Dict:
    """sdet / adjoint / charpoly / demo; returns a JSON-ready result."""
    if config.command == "demo":
        A = _demo_matrix()
        k = 2
    else:
        info = parse_backend(config.backend)
        if config.matrix:
            A = parse_matrix(config.matrix, info.backend, None)
        else:
            A = random_matrix(Sampler(info.backend, _spec(config)), config.n)
        k = config.k if config.k is not None else 1

    result: Dict = {"command": config.command, "backend": A.backend.describe(), "matrix": A.to_strings()}
    if config.command == "sdet":
        result["sdet"] = str(sdet(A, workers=config.workers, allow_large=config.allow_large))
    elif config.command == "adjoint":
        if k == 1:
            result["adjoint"] = sym_adjoint(A, config.allow_large).to_strings()
        else:
            chain = right_adjoint_chain(A, k, config.allow_large)
            result["chain"] = [P.to_strings() for P in chain.matrices]
    else:
        cp = char_poly(A, k, config.allow_large)
        result.update({"k": k, "degree": cp.degree, "coefficients": cp.to_strings(),
                       "polynomial": str(cp.poly)})
        if config.command == "demo":
            residual = poly_eval_right(A, cp.poly)
            result["residual"] = residual.to_strings()
            result["residual_is_zero"] = residual.is_zero()
    return result


def format_reports(reports: Sequence[VerificationReport], fmt: str) -> str:
    if fmt == "json":
        payload = {"reports": [r.to_dict() for r in reports], "exit_code": exit_code(reports)}
        return json.dumps(payload, indent=2, ensure_ascii=False)
    lines = []
    for report in reports:
        lines.append(report.summary())
        for key, value in report.to_dict(include_timing=False)["degree_info"].items():
            lines.append(f"    {key:<18} {value}")
        for witness in report.witnesses:
            lines.append(f"    witness: {json.dumps(witness, ensure_ascii=False)}")
        for note in report.notes:
            lines.append(f"    note: {note}")
    return "\n".join(lines)


def format_result(result: Dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, indent=2, ensure_ascii=False)
    if "sdet" in result:
        return result["sdet"]
    if "adjoint" in result:
        return "\n".join("  ".join(row) for row in result["adjoint"])
    if "chain" in result:
        blocks = []
        for level, P in enumerate(result["chain"], 1):
            blocks.append(f"P{level}:\n" + "\n".join("  ".join(row) for row in P))
        return "\n".join(blocks)
    lines = [f"p_(A,{result['k']})(x) = {result['polynomial']}"]
    lines += [f"  l{i}: {c}" for i, c in enumerate(result["coefficients"])]
    if "residual" in result:
        lines.append(f"(A)p = {result['residual']}  zero: {result['residual_is_zero']}")
    return "\n".join(lines)


def emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        print(f"💾 Report written to {out}", file=sys.stderr)
    else:
        print(text)


def run(config: RunConfig) -> int:
    """
    Execute a validated configuration and write its output.

    Returns:
        Process exit code
    """
    config.validate()
    caps = settings.max_n, settings.max_k
    if config.allow_large:
        settings.max_n = max(settings.max_n, config.n)
        settings.max_k = max(settings.max_k, config.k or 0)
    try:
        return _execute(config)
    finally:
        settings.max_n, settings.max_k = caps


def _execute(config: RunConfig) -> int:
    if config.command == "verify":
        reports = run_verify(config)
        emit(format_reports(reports, config.format), config.out)
        code = exit_code(reports)
        print("✅ All checks passed" if code == 0 else f"❌ Exit code {code}", file=sys.stderr)
        return code

    result = run_compute(config)
    emit(format_result(result, config.format), config.out)
    if config.command == "demo" and not result["residual_is_zero"]:
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", default="grassmann:4",
                        help="rational | grassmann:<m> | relfree:<m>,<k>,<d> | utri:<t>:<backend> | json:<path>")
    common.add_argument("--n", type=int, default=2, help="matrix size")
    common.add_argument("--k", type=int, help="Lie nilpotency index / adjoint level")
    common.add_argument("--t", type=int, help="exponent t for U_t backends")
    common.add_argument("--exponent", type=int, help="power of the power Cayley-Hamilton identity")
    common.add_argument("--seed", type=int, default=settings.default_seed)
    common.add_argument("--trials", type=int, default=5)
    common.add_argument("--lift", default="canonical", choices=LIFT_STRATEGIES)
    common.add_argument("--format", dest="output_format", choices=("json", "text"))
    common.add_argument("--out", help="write the report to this path instead of stdout")
    common.add_argument("--matrix", help="matrix text such as '[[v1, v2], [v3, v4]]'")
    common.add_argument("--slow", action="store_true", help="include the slow n = 3 cases in 'verify all'")
    common.add_argument("--workers", type=int, default=settings.workers)
    common.add_argument("--allow-large", action="store_true", help="lift the n and k caps for this run")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="nilcayley",
                                     description="Exact Cayley-Hamilton identities over Lie nilpotent rings")
    commands = parser.add_subparsers(dest="command", required=True)
    verify = commands.add_parser("verify", parents=[common], help="run identity checks")
    verify.add_argument("check", choices=CHECKS + ("all",))
    commands.add_parser("charpoly", parents=[common], help="k-th right characteristic polynomial")
    commands.add_parser("sdet", parents=[common], help="symmetric determinant")
    commands.add_parser("adjoint", parents=[common], help="symmetric adjoint, or the right adjoint chain with --k")
    commands.add_parser("demo", parents=[common], help="second right Cayley-Hamilton identity of [[v1,v2],[v3,v4]]")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command, check=getattr(args, "check", None), backend=args.backend, n=args.n, k=args.k,
        t=args.t, exponent=args.exponent, seed=args.seed, trials=args.trials, lift=args.lift,
        output_format=args.output_format, out=args.out, matrix=args.matrix, slow=args.slow,
        workers=args.workers, allow_large=args.allow_large, verbose=args.verbose)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    logging.basicConfig(level=logging.DEBUG if config.verbose else settings.logging_level,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return run(config)
    except ArithmeticConsistencyError as e:
        print(f"❌ Arithmetic consistency failure: {e}", file=sys.stderr)
        return 1
    except NilCayleyError as e:
        print(f"⚠️ {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"⚠️ {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
