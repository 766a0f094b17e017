"""
Instance verification of the Cayley-Hamilton-type identities over Lie
nilpotent rings.

Every check returns a VerificationReport; a mathematical failure is a FAIL
verdict with witnesses, never an exception.
"""

import random
import logging
from fractions import Fraction
from typing import Optional, Sequence

from determinants.dettheory import char_poly, leading_coefficient, right_adjoint_chain
from determinants.matpoly import CentralPoly, RingMatrix, matrix_image, poly_eval_right
from rings.findim import (AlgebraElement, StructureAlgebra, ideal_of_kind, ideal_power,
                          nilpotency_index, quotient)
from rings.grassmann import GrassmannBackend
from rings.linalg import Subspace, inverse
from rings.ringcore import (RingBackend, SampleSpec, Sampler, commutator, is_lie_nilpotent_sampled,
                            left_normed)
from verification.reports import Verdict, VerificationReport, timed

logger = logging.getLogger(__name__)

LIFT_STRATEGIES = ("canonical", "randomized")
# power-CH: ideal kind -> level of the characteristic polynomial over R/I
POWER_CH_LEVELS = {"double_commutator": 2, "commutator": 1}
HYPOTHESIS_TRIALS = 20


def _hypotheses_unmet(report: VerificationReport, backend: RingBackend, k: int,
                      spec: Optional[SampleSpec]) -> bool:
    """Sampled L_k check; marks the report and returns True when the backend is not L_k."""
    if spec is None:
        return False
    lie = is_lie_nilpotent_sampled(backend, k, spec, HYPOTHESIS_TRIALS)
    if lie:
        return False
    report.verdict = Verdict.HYPOTHESES_UNMET
    report.notes.append(f"backend is not Lie nilpotent of index {k}")
    report.add_witness("lie_nilpotency", tuple=list(lie.witness), commutator=lie.residual)
    return True


@timed
def check_centrality(backend: RingBackend, k: int, spec: SampleSpec, trials: int) -> VerificationReport:
    """[[x1, ..., xk]_k, y] = 0 for sampled x's and every generator and sampled y."""
    report = VerificationReport("centrality", backend.describe(), {"k": k, "seed": spec.seed}, trials=trials)
    sampler = Sampler(backend, spec)
    for trial in range(trials):
        xs = sampler.elements(k)
        value = left_normed(xs)
        for y in list(backend.generators()) + [sampler.element()]:
            residual = commutator(value, y)
            if residual:
                return report.fail("non-central k-commutator", trial=trial, xs=xs, y=y, residual=residual)
    return report


@timed
def check_jennings(backend: RingBackend, k: int, spec: SampleSpec, trials: int) -> VerificationReport:
    """
    [x1, ..., xk]_k * [y1, ..., yk]_k = 0 on an L_k backend with k >= 3, plus
    centrality of the k-commutators.
    """
    report = VerificationReport("jennings", backend.describe(), {"k": k, "seed": spec.seed}, trials=trials)
    if k < 3:
        report.verdict = Verdict.REJECTED
        report.notes.append("the product identity of two k-commutators needs k >= 3")
        return report
    if _hypotheses_unmet(report, backend, k, spec.derive(1)):
        return report

    sampler = Sampler(backend, spec)
    for trial in range(trials):
        xs, ys = sampler.elements(k), sampler.elements(k)
        product = left_normed(xs) * left_normed(ys)
        if product:
            return report.fail("nonzero product of k-commutators", trial=trial, xs=xs, ys=ys, product=product)

    central = check_centrality(backend, k, spec.derive(2), trials)
    if not central.passed:
        report.verdict = central.verdict
        report.witnesses.extend(central.witnesses)
    report.notes.append("k-commutators are central" if central.passed else "k-commutator not central")
    return report


@timed
def check_fundamental(A: RingMatrix, k: int, spec: Optional[SampleSpec] = None) -> VerificationReport:
    """A radj_k(A) = n A P1...Pk = rdet_k(A) I_n, both equalities entrywise."""
    report = VerificationReport("fundamental", A.backend.describe(), {"n": A.n, "k": k})
    if _hypotheses_unmet(report, A.backend, k, spec):
        return report
    chain = right_adjoint_chain(A, k)
    adjoint = chain.tail * A.n
    left = A * adjoint
    middle = chain.products[-1] * A.n
    right = RingMatrix.scalar(A.backend, A.n, chain.products[-1].trace())
    if left != middle:
        return report.fail("A radj != n A P1...Pk", A=A, residual=left - middle)
    if middle != right:
        return report.fail("n A P1...Pk != rdet I", A=A, residual=middle - right)
    report.degree_info = {"rdet": right[0, 0]}
    return report


@timed
def check_ch(A: RingMatrix, k: int, h: Optional[CentralPoly] = None,
             spec: Optional[SampleSpec] = None) -> VerificationReport:
    """(A)p_{A,k} = 0 with coefficients on the right; with h also (A)(p h) = 0."""
    report = VerificationReport("ch", A.backend.describe(), {"n": A.n, "k": k})
    if _hypotheses_unmet(report, A.backend, k, spec):
        return report
    cp = char_poly(A, k)
    report.degree_info = {"degree": cp.degree, "leading": cp.leading,
                          "expected_leading": leading_coefficient(A.n, k)}
    residual = poly_eval_right(A, cp.poly)
    if not residual.is_zero():
        return report.fail("(A)p != 0", A=A, coefficients=list(cp.coefficients), residual=residual)
    if h is not None:
        report.params["h"] = str(h)
        multiple = poly_eval_right(A, cp.poly * h)
        if not multiple.is_zero():
            return report.fail("(A)(p h) != 0", A=A, h=h, residual=multiple)
    return report


def domokos_expression(A: RingMatrix) -> RingMatrix:
    """The 2 x 2 trace form of (A)p_{A,2}, coefficients multiplied on the right."""
    if A.n != 2:
        raise ValueError("the trace form is stated for 2 x 2 matrices")
    A2 = A * A
    A3 = A2 * A
    A4 = A3 * A
    t1, t2, t3 = A.trace(), A2.trace(), A3.trace()
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    constant = (t1 * t1 * t1 * t1 * half + t2 * t2 * half + t1 * t1 * t2 * quarter
                - t2 * t1 * t1 * Fraction(5, 4) + commutator(t3, t1))
    linear = t1 * t2 + t2 * t1 - t1 * t1 * t1 * 2
    quadratic = t1 * t1 * 4 - t2 * 2
    cubic = t1 * 4
    return (RingMatrix.scalar(A.backend, 2, constant) + A.right_scale(linear) + A2.right_scale(quadratic)
            - A3.right_scale(cubic) + A4 * 2)


@timed
def check_domokos_2x2(A: RingMatrix, spec: Optional[SampleSpec] = None) -> VerificationReport:
    """The trace form of the second right Cayley-Hamilton identity for 2 x 2 matrices over an L_2 ring vanishes."""
    report = VerificationReport("domokos", A.backend.describe(), {"n": A.n})
    if A.n != 2:
        report.verdict = Verdict.REJECTED
        report.notes.append("the trace form is stated for 2 x 2 matrices")
        return report
    if _hypotheses_unmet(report, A.backend, 2, spec):
        return report
    residual = domokos_expression(A)
    if not residual.is_zero():
        return report.fail("trace form != 0", A=A, residual=residual)
    return report


@timed
def check_trace_nilpotency(A: RingMatrix, k: int, spec: Optional[SampleSpec] = None) -> VerificationReport:
    """tr(A) = tr(A^2) = 0 implies A^(2^k) = 0 for 2 x 2 matrices over L_k rings."""
    report = VerificationReport("trace-nilpotency", A.backend.describe(), {"n": A.n, "k": k})
    if A.n != 2:
        report.verdict = Verdict.REJECTED
        report.notes.append("trace nilpotency is stated for 2 x 2 matrices")
        return report
    if _hypotheses_unmet(report, A.backend, k, spec):
        return report
    t1, t2 = A.trace(), (A * A).trace()
    if t1 or t2:
        report.verdict = Verdict.HYPOTHESES_UNMET
        report.add_witness("traces", A=A, trace=t1, trace_of_square=t2)
        return report
    exponent = 2 ** k
    report.degree_info = {"exponent": exponent}
    power = A.power(exponent)
    if not power.is_zero():
        return report.fail(f"A^{exponent} != 0", A=A, power=power)
    return report


def _random_ideal_element(alg: StructureAlgebra, ideal: Subspace, rng: random.Random) -> AlgebraElement:
    terms = {}
    for row in ideal.basis():
        weight = Fraction(rng.randint(-3, 3), rng.choice((1, 2)))
        for i, c in row.items():
            terms[i] = terms.get(i, 0) + weight * c
    return alg.element(terms)


def _require_algebra(report: VerificationReport, A: RingMatrix) -> bool:
    if isinstance(A.backend, StructureAlgebra):
        return True
    report.verdict = Verdict.REJECTED
    report.notes.append(f"{A.backend.describe()} has no structure constants; convert it to a finite-dimensional algebra")
    return False


@timed
def check_power_ch(A: RingMatrix, ideal_kind: str = "double_commutator", exponent: Optional[int] = None,
                   lift_strategy: str = "canonical", seed: int = 0, k: Optional[int] = None) -> VerificationReport:
    """
    Power Cayley-Hamilton identity (sum_i A^i l_i)^t = 0.

    The ideal I (double commutator or commutator) is computed, the level 2
    (resp. 1) characteristic polynomial of the image of A in M_n(R/I) is
    lifted back to R, the sum is checked to lie in M_n(I), and its t-th power
    to vanish. t defaults to the nilpotency index of I.

    Args:
        A: matrix over a StructureAlgebra
        ideal_kind: 'double_commutator' or 'commutator'
        exponent: t; must satisfy I^t = 0
        lift_strategy: 'canonical' section, or 'randomized' (canonical plus a random ideal element)
        seed: seed of the randomized lift
        k: Lie nilpotency index, only used to report the degree n^k for comparison
    """
    params = {"n": A.n, "ideal": ideal_kind, "lift": lift_strategy, "seed": seed}
    report = VerificationReport("power-ch" if ideal_kind == "double_commutator" else "commutator-power-ch",
                                A.backend.describe(), params)
    if ideal_kind not in POWER_CH_LEVELS or lift_strategy not in LIFT_STRATEGIES:
        raise ValueError(f"unknown ideal kind {ideal_kind!r} or lift strategy {lift_strategy!r}")
    if not _require_algebra(report, A):
        return report
    alg: StructureAlgebra = A.backend
    level = POWER_CH_LEVELS[ideal_kind]

    ideal = ideal_of_kind(alg, ideal_kind)
    limit = exponent if exponent is not None else alg.dim + 1
    index = nilpotency_index(alg, ideal, limit)
    if index is None:
        report.params["exponent"] = limit
        offending = ideal_power(alg, ideal, limit)
        return report.fail(f"I^{limit} != 0", ideal_rank=ideal.rank, power_rank=offending.rank)
    if exponent is None:
        exponent = index
    report.params["exponent"] = exponent

    q = quotient(alg, ideal)
    cp = char_poly(matrix_image(A, q), level)
    rng = random.Random(seed)
    lifted = []
    for c in cp.coefficients:
        value = q.lift(c)
        if lift_strategy == "randomized":
            value = value + _random_ideal_element(alg, ideal, rng)
        lifted.append(value)
    report.lifted_coefficients = [str(c) for c in lifted]
    poly_degree = A.n ** level
    report.degree_info = {"ideal_rank": ideal.rank, "nilpotency_index": index, "poly_degree": poly_degree,
                          "exponent": exponent, "total_degree": poly_degree * exponent}
    if k is not None:
        report.degree_info["ch_degree"] = A.n ** k

    value = poly_eval_right(A, CentralPoly(alg, lifted))
    for i in range(A.n):
        for j in range(A.n):
            if not ideal.contains(value[i, j].terms):
                return report.fail("sum A^i l_i not in M_n(I)", A=A, entry=[i + 1, j + 1], value=value)
    power = value.power(exponent)
    if not power.is_zero():
        return report.fail(f"(sum A^i l_i)^{exponent} != 0", A=A, value=value, power=power)
    return report


@timed
def check_conjugation_invariance(A: RingMatrix, T: Sequence[Sequence[Fraction]]) -> VerificationReport:
    """
    p_{image(T^-1 A T),2} = p_{image(A),2} over R/D for rational invertible T.

    Raises:
        SingularMatrixError: if T is singular
    """
    report = VerificationReport("conjugation", A.backend.describe(),
                                {"n": A.n, "T": [[str(Fraction(c)) for c in row] for row in T]})
    if not _require_algebra(report, A):
        return report
    alg: StructureAlgebra = A.backend
    T_inverse = inverse([[Fraction(c) for c in row] for row in T])
    conjugated = RingMatrix(alg, T_inverse) * A * RingMatrix(alg, [[Fraction(c) for c in row] for row in T])
    q = quotient(alg, ideal_of_kind(alg, "double_commutator"))
    original = char_poly(matrix_image(A, q), 2)
    moved = char_poly(matrix_image(conjugated, q), 2)
    report.degree_info = {"degree": original.degree}
    if original.coefficients != moved.coefficients:
        return report.fail("characteristic polynomials differ", A=A, conjugated=conjugated,
                           original=list(original.coefficients), moved=list(moved.coefficients))
    return report


@timed
def check_ideal_nilpotency(alg: StructureAlgebra, kind: str, expected_exponent: int,
                           k: Optional[int] = None) -> VerificationReport:
    """The chosen ideal vanishes at expected_exponent; reports the least vanishing exponent."""
    report = VerificationReport("ideal-nilpotency", alg.describe(),
                                {"ideal": kind, "expected_exponent": expected_exponent, "k": k})
    ideal = ideal_of_kind(alg, kind, k)
    index = nilpotency_index(alg, ideal, expected_exponent)
    report.degree_info = {"ideal_rank": ideal.rank, "nilpotency_index": index}
    if index is None:
        offending = ideal_power(alg, ideal, expected_exponent)
        return report.fail(f"I^{expected_exponent} != 0", ideal_rank=ideal.rank, power_rank=offending.rank)
    return report


@timed
def check_grassmann_commutator_product(m: int, t: int) -> VerificationReport:
    """[v1,v2][v3,v4]...[v_{2t-1},v_{2t}] = 2^t v1...v_{2t}, a nonzero product of commutators in E_m."""
    backend = GrassmannBackend(m)
    report = VerificationReport("grassmann-commutator-product", backend.describe(), {"m": m, "t": t})
    if 2 * t > m:
        report.verdict = Verdict.REJECTED
        report.notes.append(f"needs 2t <= m, got t={t}, m={m}")
        return report
    v = backend.generators()
    product = backend.one()
    for i in range(t):
        product = product * commutator(v[2 * i], v[2 * i + 1])
    expected = backend.one()
    for i in range(2 * t):
        expected = expected * v[i]
    expected = expected * 2 ** t
    if product != expected or not product:
        return report.fail("product of commutators", product=product, expected=expected)
    return report


def _subalgebra_draw(gens, rng: random.Random):
    first = rng.choice(gens)
    return first * rng.choice(gens) if rng.random() < 0.5 else first


@timed
def probe_commutator_product(backend: RingBackend, factors: int, spec: SampleSpec,
                             trials: int) -> VerificationReport:
    """
    Count nonzero [x1,y1]...[x_d,y_d] with x's and y's drawn from the
    subalgebra generated by 4 sampled elements. Observation only.
    """
    report = VerificationReport("commutator-product-probe", backend.describe(),
                                {"factors": factors, "seed": spec.seed}, verdict=Verdict.OBSERVATION,
                                trials=trials)
    sampler = Sampler(backend, spec)
    rng = random.Random(spec.seed)
    nonzero = 0
    for _ in range(trials):
        gens = sampler.elements(4)
        product = backend.one()
        for _ in range(factors):
            product = product * commutator(_subalgebra_draw(gens, rng), _subalgebra_draw(gens, rng))
        if product:
            nonzero += 1
    report.degree_info = {"nonzero_products": nonzero, "samples": trials}
    return report
