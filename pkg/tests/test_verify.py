import pytest

from superhom.chains import complex_slice
from superhom.verify import (
    VerificationReport, verify_acyclicity, verify_d_squared, verify_jacobi, verify_lemma_ranks,
    verify_m_range, verify_oracle, verify_prop1, verify_theorem2, verify_theorem5,
)


@pytest.mark.parametrize("n,w,h", [(1, 3, -3), (1, 3, 1), (2, 2, -1)])
def test_d_squared(n, w, h):
    assert verify_d_squared(complex_slice(n, w, h)).passed


@pytest.mark.parametrize("w,h", [(2, 0), (0, 3), (4, -2)])
def test_acyclicity_examples(w, h):
    r = verify_acyclicity(1, w, h)
    assert r.passed
    assert all(b == 0 for b in r.details["bettis"][:-1])


def test_acyclicity_refuses_diagonal():
    with pytest.raises(ValueError):
        verify_acyclicity(1, 2, -2)
    r = verify_acyclicity(1, 2, -2, allow_diagonal=True)
    assert not r.passed and r.counterexample["word"] == "C^2_{2,-2}"


def test_prop1_and_jacobi():
    assert verify_prop1(1, 4).passed
    assert verify_prop1(2, 3).passed
    assert verify_jacobi(1, 3).passed


def test_theorem2_and_m_range():
    assert verify_theorem2(range(3, 11)).passed
    assert verify_m_range(range(0, 11)).passed


def test_theorem5_at_w3_matches_printed_sign():
    r = verify_theorem5([3])
    assert r.passed
    assert r.details["sigma"] == {"3": -1}
    assert r.details["noncommuting_witness"] == "d/dx & 1 & x"


def test_theorem5_needs_multiplicity_above_w3():
    literal = verify_theorem5(range(3, 9))
    assert not literal.passed
    assert literal.details == {"w": 4, "corrected_formula_holds": True}
    corrected = verify_theorem5(range(3, 9), corrected=True)
    assert corrected.passed
    assert all(corrected.details["matches_printed_sign"].values())


def test_lemma_ranks():
    r = verify_lemma_ranks(range(3, 8))
    assert r.passed
    assert r.details["rank_pairs"] == [[0, 0], [1, 1], [2, 2], [0, 0]]
    assert r.details["rank_profiles"]["7"] == [0, 1, 2, 0]


def test_oracle_small_grid():
    assert verify_oracle(1, range(0, 3), range(-3, 2), words=200).passed


def test_report_invariant_and_round_trip():
    with pytest.raises(ValueError):
        VerificationReport("d2", {}, False)
    r = verify_acyclicity(1, 2, -2, allow_diagonal=True)
    again = VerificationReport.from_json(r.to_json())
    assert again == r and again.to_json() == r.to_json()
