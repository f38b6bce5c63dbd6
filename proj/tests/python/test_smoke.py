from fractions import Fraction

import pytest

import leechcert as lc


def test_kissing_bounds_are_exact_integers():
    assert lc.kissing_bound(8) == 240
    assert lc.kissing_bound(24) == 196560


def test_e8_minimal_vectors_and_rank():
    assert lc.minimal_vector_count("e8") == 240
    assert lc.perfection_rank("e8") == 36


def test_theta_shells():
    assert lc.theta("e8", 4) == [(2, 240), (4, 2160)]


def test_adjugate_sum_of_e8_gram():
    assert lc.adjugate_abs_sum(lc.gram("e8")) == 620


def test_minor_sums_small_matrix():
    g = [[2, 1], [1, 2]]
    assert lc.minor_abs_sum(g, 1) == 6
    assert lc.minor_abs_sum(g, 2) == 1
    assert lc.minor_abs_sum(lc.gram("e8"), 8) == 1


def test_alpha_chain_e8():
    alpha, table = lc.alpha_chain("e8")
    assert alpha == Fraction(1, 20)
    assert table[(Fraction(2), 1)] == Fraction(1, 7)
    assert table[(Fraction(1), -1)] == Fraction(2, 9)


def test_e8_intersection_numbers_symmetric():
    p = lc.intersection_numbers("e8")
    half = Fraction(1, 2)
    assert p[(Fraction(1), half, half)] == "56"
    assert p[(half, half, Fraction(0))] == p[(half, Fraction(0), half)]


def test_solve_lp():
    value, x = lc.solve_lp([[1, 1], [1, -1]], ["<=", "<="], [4, 1], [-1, -2])
    assert value == -8
    assert x == [0, 4]


def test_sigma_is_small():
    assert 0 < lc.sigma("e8") < Fraction(889, 10**8)


def test_pipeline_and_certificate_roundtrip():
    rep = lc.run_pipeline("e8", ["kissing", "scheme"])
    assert rep["ok"]
    assert all(c["passed"] for c in rep["claims"])
    assert lc.verify_certificate(rep["certificate"])["ok"]


def test_tampered_certificate_rejected():
    text = lc.run_pipeline("e8", ["kissing"])["certificate"]
    bad = text.replace("kissing.bound 240", "kissing.bound 241")
    assert bad != text
    with pytest.raises(lc.CertificationFailed):
        lc.verify_certificate(bad)


def test_bad_target_is_input_error():
    with pytest.raises(ValueError):
        lc.run_pipeline("d4", ["kissing"])
