import random

import pytest

from superhom.algebra import function, generators_upto, vector_field
from superhom.chains import (
    Chain, canonicalize, closed_form_basis, complex_slice, enumerate_basis, ii_multiply,
    m_range, wedge, word_weight,
)
from superhom.notation import format_chain, format_word, parse_chain, parse_generator


def g(text, n=1):
    return parse_generator(text, n)


def words(basis):
    return [format_word(w) for w in basis.words]


def test_canonicalize_examples():
    assert canonicalize([g("x d/dx"), g("d/dx")]) == ((g("d/dx"), g("x d/dx")), -1)
    assert canonicalize([g("x"), g("1")]) == ((g("1"), g("x")), 1)
    assert canonicalize([g("dx"), g("dx")]) == ((), 0)
    assert canonicalize([g("1"), g("d/dx")]) == ((g("d/dx"), g("1")), -1)


def test_canonicalize_keeps_repeated_odd_factors():
    word, sign = canonicalize([g("1"), g("d/dx"), g("1")])
    assert word == (g("d/dx"), g("1"), g("1"))
    # d/dx crosses a single 1
    assert sign == -1


def test_canonicalize_idempotent():
    rng = random.Random(3)
    gens = generators_upto(2, 2)
    for _ in range(300):
        factors = [rng.choice(gens) for _ in range(rng.randint(0, 6))]
        word, sign = canonicalize(factors)
        if sign:
            assert canonicalize(word) == (word, 1)


def test_wedge_examples():
    a, b = Chain({(g("d/dx"),): 1}), Chain({(g("x^2 d/dx"),): 1})
    assert format_chain(wedge(a, b)) == "d/dx & x^2 d/dx"
    assert format_chain(wedge(b, a)) == "-d/dx & x^2 d/dx"
    one = Chain({(g("1"),): 1})
    assert format_chain(wedge(one, one)) == "1 & 1"


def test_enumerate_examples():
    assert words(enumerate_basis(1, 2, -2, 2)) == ["d/dx & dx", "1 & 1"]
    assert words(enumerate_basis(1, 0, 0, 2)) == ["d/dx & x^2 d/dx"]
    assert len(enumerate_basis(1, 5, -5, 9)) == 0
    assert len(enumerate_basis(1, 3, -3, 4)) == 3


def test_basis_words_have_the_right_weight():
    for n, w, h in [(1, 3, 1), (2, 2, -1), (2, 1, 0)]:
        slc = complex_slice(n, w, h)
        for m, basis in slc.bases.items():
            assert basis.words == sorted(basis.words)
            for word in basis.words:
                assert len(word) == m
                assert word_weight(word) == (w, h)
                assert canonicalize(word) == (word, 1)


@pytest.mark.parametrize("w,h", [(w, h) for w in range(6) for h in range(-6, 3)])
def test_line_and_general_enumeration_agree(w, h):
    for m in range(1, w + 6):
        assert enumerate_basis(1, w, h, m, "line").words == enumerate_basis(1, w, h, m, "general").words


def test_m_range_examples():
    assert m_range(1, 2, -2) == (2, 5)
    assert m_range(1, 0, 0) == (1, 3)
    assert m_range(1, 1, -1) == (1, 4)


def test_m_range_empty_complex_sentinel():
    # w = 0 needs distinct vector fields whose degrees sum to m + h
    assert m_range(1, 0, -2) is None
    assert complex_slice(1, 0, -2).m_range is None


def test_m_range_below_diagonal_is_found():
    assert m_range(1, 0, -1) == (1, 2)
    assert words(enumerate_basis(1, 0, -1, 1)) == ["d/dx"]
    assert words(enumerate_basis(1, 0, -1, 2)) == ["d/dx & x d/dx"]


def test_diagonal_bases_vanish_outside_range():
    for w in range(0, 11):
        lo, hi = m_range(1, w, -w)
        for m in range(1, hi + 6):
            assert bool(len(enumerate_basis(1, w, -w, m))) == (lo <= m <= hi)


def test_closed_form_examples():
    assert words(closed_form_basis(3, 0)) == ["d/dx & 1 & dx", "1 & 1 & 1"]
    # the w = 4, k = 3 space has one word with w ones
    assert words(closed_form_basis(4, 3)) == ["d/dx & x d/dx & x^2 d/dx & 1 & 1 & 1 & 1"]
    assert len(closed_form_basis(5, 1)) == 3
    assert set(closed_form_basis(5, 1).words) == set(enumerate_basis(1, 5, -5, 6).words)
    with pytest.raises(ValueError):
        closed_form_basis(3, 4)
    with pytest.raises(ValueError):
        closed_form_basis(2, 0)


def test_ii_multiply_examples():
    assert format_chain(ii_multiply(3, parse_chain("1 & 1"))) == "1 & 1 & 1"
    # d/dx is even and crosses two ones
    assert format_chain(ii_multiply(4, parse_chain("d/dx & dx"))) == "d/dx & 1 & 1 & dx"
    assert ii_multiply(3, Chain()) == 0
    with pytest.raises(ValueError):
        ii_multiply(3, parse_chain("x d/dx"))


def test_ii_multiply_is_injective_on_words():
    for w in range(3, 11):
        for k in range(4):
            images = set()
            for word in enumerate_basis(1, 2, -2, 2 + k).words:
                img = ii_multiply(w, Chain({word: 1}))
                assert len(img) == 1
                images |= set(img.terms)
            assert images == set(enumerate_basis(1, w, -w, w + k).words)


def test_chain_parse_format_round_trip():
    text = "x d/dx & 1 & 1 + d/dx & x d/dx & dx"
    assert format_chain(parse_chain(text)) == text
    assert parse_chain("x & 1") == parse_chain("1 & x")
    assert parse_chain("d/dx & x d/dx") == -parse_chain("x d/dx & d/dx")


def test_vector_fields_and_functions_build_words():
    word, sign = canonicalize([function(0), vector_field(1, 0)])
    assert sign == -1 and format_word(word) == "d/dx & 1"
