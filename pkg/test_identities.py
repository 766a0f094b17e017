"""
Tests for the identity checks: Jennings products, the fundamental relation,
the right Cayley-Hamilton identities, trace nilpotency, the power identities
and conjugation invariance, with negative controls.
"""

from fractions import Fraction

import pytest

from determinants.matpoly import PolynomialRing, RingMatrix, random_matrix
from rings.errors import SingularMatrixError
from rings.findim import from_grassmann, scalars, upper_triangular
from rings.grassmann import GrassmannBackend
from rings.relfree import build
from rings.ringcore import RationalRing, SampleSpec, Sampler
from verification.families import grassmann_odd_traceless, sylvester_traceless
from verification.identities import (check_centrality, check_ch, check_conjugation_invariance, check_domokos_2x2,
                                     check_fundamental, check_ideal_nilpotency, check_jennings, check_power_ch,
                                     check_trace_nilpotency, probe_commutator_product)
from verification.reports import Verdict

SPEC = SampleSpec(5, max_degree=2)


@pytest.fixture(scope="module")
def relfree_235():
    return build(2, 3, 5).algebra


@pytest.fixture(scope="module")
def u2e2():
    return upper_triangular(from_grassmann(2), 2)


@pytest.fixture(scope="module")
def demo_matrix():
    E = GrassmannBackend(4)
    v1, v2, v3, v4 = E.generators()
    return RingMatrix(E, [[v1, v2], [v3, v4]])


# -- Jennings and centrality ------------------------------------------------------------

def test_jennings_on_relfree(relfree_235):
    report = check_jennings(relfree_235, 3, SPEC, 10)
    assert report.passed, report.witnesses
    assert "k-commutators are central" in report.notes


def test_jennings_on_grassmann():
    assert check_jennings(GrassmannBackend(4), 3, SPEC, 10).passed


def test_jennings_needs_k_at_least_three():
    report = check_jennings(GrassmannBackend(4), 2, SPEC, 10)
    assert report.verdict is Verdict.REJECTED


def test_jennings_on_non_nilpotent_backend():
    report = check_jennings(upper_triangular(scalars(), 3), 3, SPEC, 5)
    assert report.verdict is Verdict.HYPOTHESES_UNMET
    assert report.witnesses[0]["label"] == "lie_nilpotency"


def test_centrality_on_relfree():
    assert check_centrality(build(2, 3, 4).algebra, 3, SPEC, 10).passed


# -- fundamental relation ------------------------------------------------------------

@pytest.mark.parametrize("m,n", [(4, 2), (2, 3)])
def test_fundamental_over_grassmann(m, n):
    sampler = Sampler(GrassmannBackend(m), SPEC)
    for _ in range(3):
        report = check_fundamental(random_matrix(sampler, n), 2, SPEC.derive(1))
        assert report.passed, report.witnesses


def test_fundamental_over_relfree(relfree_235):
    sampler = Sampler(relfree_235, SPEC)
    for _ in range(2):
        assert check_fundamental(random_matrix(sampler, 2), 3, SPEC.derive(1)).passed


def test_fundamental_over_rationals():
    A = RingMatrix(RationalRing(), [[1, 2], [3, 4]])
    report = check_fundamental(A, 1, SPEC)
    assert report.passed
    assert report.degree_info["rdet"] == -4


# -- right Cayley-Hamilton ------------------------------------------------------------

def test_second_identity_on_demo_matrix(demo_matrix):
    ring = PolynomialRing(demo_matrix.backend)
    h = ring.x() + ring.constant(demo_matrix.backend.generator(1))
    report = check_ch(demo_matrix, 2, h, SPEC)
    assert report.passed, report.witnesses
    assert report.degree_info["degree"] == 4
    assert report.degree_info["expected_leading"] == 2


def test_second_identity_on_random_grassmann_matrices():
    sampler = Sampler(GrassmannBackend(4), SPEC)
    for _ in range(3):
        assert check_ch(random_matrix(sampler, 2), 2).passed


def test_third_identity_on_relfree(relfree_235):
    A = random_matrix(Sampler(relfree_235, SampleSpec(8, term_count=2, max_degree=2)), 2)
    report = check_ch(A, 3)
    assert report.passed, report.witnesses
    assert report.degree_info["degree"] == 8


def test_second_identity_three_by_three_over_e2():
    sampler = Sampler(GrassmannBackend(2), SPEC)
    for _ in range(2):
        report = check_ch(random_matrix(sampler, 3), 2)
        assert report.passed, report.witnesses
        assert report.degree_info["degree"] == 9


def test_first_identity_fails_over_grassmann():
    E = GrassmannBackend(2)
    v1, v2 = E.generators()
    report = check_ch(RingMatrix.diagonal(E, [v1, v2]), 1)
    assert report.verdict is Verdict.FAIL
    assert report.witnesses[0]["residual"] == [["-2*v1*v2", "0"], ["0", "2*v1*v2"]]


def test_first_identity_with_hypothesis_check():
    E = GrassmannBackend(2)
    v1, v2 = E.generators()
    report = check_ch(RingMatrix.diagonal(E, [v1, v2]), 1, spec=SPEC)
    assert report.verdict is Verdict.HYPOTHESES_UNMET


def test_classical_identity_over_rationals():
    A = RingMatrix(RationalRing(), [[Fraction(1, 2), 3], [-1, 7]])
    assert check_ch(A, 1).passed


# -- 2 x 2 trace form ------------------------------------------------------------------

def test_trace_form_on_demo_matrix(demo_matrix):
    assert check_domokos_2x2(demo_matrix).passed


def test_trace_form_on_samples():
    for backend in (GrassmannBackend(4), RationalRing()):
        sampler = Sampler(backend, SPEC)
        for _ in range(3):
            report = check_domokos_2x2(random_matrix(sampler, 2))
            assert report.passed, report.witnesses


def test_trace_form_checks_lie_nilpotency():
    E = GrassmannBackend(4)
    assert check_domokos_2x2(random_matrix(Sampler(E, SPEC), 2), SPEC.derive(1)).passed
    alg = upper_triangular(scalars(), 2)
    report = check_domokos_2x2(random_matrix(Sampler(alg, SPEC), 2), SPEC.derive(1))
    assert report.verdict is Verdict.HYPOTHESES_UNMET
    assert report.witnesses[0]["label"] == "lie_nilpotency"


def test_trace_form_rejects_other_sizes():
    A = RingMatrix.identity(GrassmannBackend(2), 3)
    assert check_domokos_2x2(A).verdict is Verdict.REJECTED


# -- trace nilpotency ------------------------------------------------------------------

def test_trace_nilpotency_example():
    E = GrassmannBackend(2)
    v1, v2 = E.generators()
    A = RingMatrix(E, [[v1 * v2, v1], [v2, -(v1 * v2)]])
    report = check_trace_nilpotency(A, 2)
    assert report.passed
    assert report.degree_info["exponent"] == 4


def test_trace_nilpotency_on_odd_family():
    E = GrassmannBackend(4)
    sampler = Sampler(E, SPEC)
    for _ in range(10):
        A = grassmann_odd_traceless(E, sampler)
        assert not A.trace() and not (A * A).trace()
        assert check_trace_nilpotency(A, 2).passed


def test_trace_nilpotency_on_relfree(relfree_235):
    sampler = Sampler(relfree_235, SPEC)
    for _ in range(3):
        A = sylvester_traceless(relfree_235, sampler)
        assert not A.trace() and not (A * A).trace()
        report = check_trace_nilpotency(A, 3)
        assert report.passed, report.witnesses


def test_trace_nilpotency_hypotheses():
    report = check_trace_nilpotency(RingMatrix.identity(GrassmannBackend(2), 2), 2)
    assert report.verdict is Verdict.HYPOTHESES_UNMET


def test_trace_nilpotency_checks_lie_nilpotency():
    alg = upper_triangular(scalars(), 2)
    A = RingMatrix.zero(alg, 2)
    report = check_trace_nilpotency(A, 2, SPEC)
    assert report.verdict is Verdict.HYPOTHESES_UNMET
    assert report.witnesses[0]["label"] == "lie_nilpotency"
    assert check_trace_nilpotency(A, 1).passed


def test_odd_family_needs_grassmann(relfree_235):
    with pytest.raises(TypeError):
        grassmann_odd_traceless(relfree_235, Sampler(relfree_235, SPEC))


# -- power identities ------------------------------------------------------------------

@pytest.mark.parametrize("lift", ["canonical", "randomized"])
def test_power_identity_over_u2_e2(u2e2, lift):
    sampler = Sampler(u2e2, SPEC)
    for seed in range(2):
        report = check_power_ch(random_matrix(sampler, 2), "double_commutator", 2, lift, seed)
        assert report.passed, report.witnesses
        assert report.degree_info["nilpotency_index"] == 2
        assert report.degree_info["total_degree"] == 8


def test_power_identity_over_relfree(relfree_235):
    A = random_matrix(Sampler(relfree_235, SPEC), 2)
    report = check_power_ch(A, exponent=2, k=3)
    assert report.passed, report.witnesses
    assert report.degree_info["ch_degree"] == 8
    assert report.degree_info["poly_degree"] == 4
    assert report.degree_info["total_degree"] == 8


def test_power_identity_defaults_to_nilpotency_index(u2e2):
    report = check_power_ch(random_matrix(Sampler(u2e2, SPEC), 2))
    assert report.passed
    assert report.params["exponent"] == 2


def test_power_identity_coincides_with_second_identity_when_d_vanishes():
    alg = from_grassmann(3)
    report = check_power_ch(random_matrix(Sampler(alg, SPEC), 2))
    assert report.passed
    assert report.degree_info["ideal_rank"] == 0
    assert report.params["exponent"] == 1


def test_commutator_power_identity_over_u2_q():
    alg = upper_triangular(scalars(), 2)
    report = check_power_ch(random_matrix(Sampler(alg, SPEC), 2), "commutator", 2)
    assert report.theorem == "commutator-power-ch"
    assert report.passed, report.witnesses
    assert report.lifted_coefficients[-1] == str(2 * alg.one())


def test_power_identity_reports_both_degrees_at_three():
    alg = upper_triangular(scalars(), 2)
    report = check_power_ch(random_matrix(Sampler(alg, SPEC), 3), exponent=2, k=3)
    assert report.passed, report.witnesses
    assert report.degree_info["poly_degree"] == 9
    assert report.degree_info["total_degree"] == 18
    assert report.degree_info["ch_degree"] == 27
    assert len(report.lifted_coefficients) == 10


def test_power_identity_with_too_small_exponent(u2e2):
    report = check_power_ch(random_matrix(Sampler(u2e2, SPEC), 2), exponent=1)
    assert report.verdict is Verdict.FAIL
    assert report.witnesses[0]["label"] == "I^1 != 0"


def test_power_identity_needs_structure_constants(demo_matrix):
    assert check_power_ch(demo_matrix).verdict is Verdict.REJECTED


def test_power_identity_argument_validation(u2e2):
    with pytest.raises(ValueError):
        check_power_ch(RingMatrix.identity(u2e2, 2), "jennings")
    with pytest.raises(ValueError):
        check_power_ch(RingMatrix.identity(u2e2, 2), lift_strategy="random")


# -- conjugation and ideal nilpotency --------------------------------------------------

def test_conjugation_invariance_over_grassmann():
    alg = from_grassmann(3)
    sampler = Sampler(alg, SPEC)
    for T in ([[1, 0], [0, 1]], [[1, 1], [0, 1]], [[2, 1], [1, 1]]):
        report = check_conjugation_invariance(random_matrix(sampler, 2), T)
        assert report.passed, report.witnesses


def test_conjugation_invariance_over_u2_e2(u2e2):
    A = random_matrix(Sampler(u2e2, SPEC), 2)
    assert check_conjugation_invariance(A, [[2, 0], [0, 3]]).passed


def test_conjugation_by_singular_matrix(u2e2):
    with pytest.raises(SingularMatrixError):
        check_conjugation_invariance(RingMatrix.identity(u2e2, 2), [[1, 2], [2, 4]])


def test_ideal_nilpotency(relfree_235, u2e2):
    assert check_ideal_nilpotency(relfree_235, "double_commutator", 2).passed
    assert check_ideal_nilpotency(relfree_235, "jennings", 2, k=3).passed
    assert check_ideal_nilpotency(u2e2, "double_commutator", 2).passed
    failed = check_ideal_nilpotency(u2e2, "double_commutator", 1)
    assert failed.verdict is Verdict.FAIL


# -- observation probe -----------------------------------------------------------------

def test_commutator_product_probe_is_an_observation():
    report = probe_commutator_product(GrassmannBackend(6), 3, SPEC, 10)
    assert report.verdict is Verdict.OBSERVATION
    assert report.degree_info["samples"] == 10
    assert 0 <= report.degree_info["nonzero_products"] <= 10


@pytest.mark.slow
def test_power_identity_three_by_three_over_relfree():
    alg = build(2, 3, 4).algebra
    A = random_matrix(Sampler(alg, SPEC), 3)
    report = check_power_ch(A, exponent=2, k=3)
    assert report.passed, report.witnesses
