import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from superhom.chains import complex_slice, enumerate_basis
from superhom.homology import boundary_matrix
from superhom.linalg import ExactMatrix, bareiss_rank, rank
from superhom.oracle import (
    as_multiset, koszul_sign, naive_enumerate, naive_rank, sorting_permutation,
)
from superhom.notation import format_word
from superhom.verify import check_sign_oracle, random_factors


def grids(max_side=6):
    entry = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(st.one_of(st.just(Fraction(0)), entry),
                                        min_size=c, max_size=c),
                               min_size=r, max_size=r)))


@settings(max_examples=300, deadline=None)
@given(grids())
def test_three_ranks_agree(grid):
    mat = ExactMatrix.from_dense(grid)
    assert rank(mat) == bareiss_rank(mat) == naive_rank(grid)


def test_rank_of_low_rank_products():
    rng = random.Random(5)
    for _ in range(50):
        k = rng.randint(0, 4)
        a = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(7)]
        b = [[rng.randint(-3, 3) for _ in range(6)] for _ in range(k)]
        prod = [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(6)] for i in range(7)]
        r = naive_rank(prod)
        assert r <= k
        assert rank(ExactMatrix.from_dense(prod)) == r


def test_naive_rank_examples():
    assert naive_rank([[2]]) == 1
    assert naive_rank([[int(i == j) for j in range(4)] for i in range(4)]) == 4
    slc = complex_slice(1, 2, -2)
    assert naive_rank(boundary_matrix(slc, 3).to_dense()) == 1


def test_naive_enumerate_examples():
    engine = {as_multiset(w) for w in enumerate_basis(1, 2, -2, 2).words}
    assert naive_enumerate(1, 2, -2, 2, cap=4) == engine and len(engine) == 2
    only = naive_enumerate(1, 0, 0, 1, cap=4)
    assert only == {frozenset({((1, (), (1,)), 1)})}
    assert naive_enumerate(1, 5, -5, 10, cap=8) == set()


def test_naive_enumerate_small_grid():
    for w in range(5):
        for h in range(-5, 3):
            for m in range(1, w + 5):
                if m + h < 0:
                    continue
                engine = {as_multiset(x) for x in enumerate_basis(1, w, h, m).words}
                assert naive_enumerate(1, w, h, m, cap=m + h) == engine


def test_naive_enumerate_n2():
    for w, h, m in [(1, -1, 2), (2, -1, 3), (2, 0, 3)]:
        engine = {as_multiset(x) for x in enumerate_basis(2, w, h, m).words}
        assert naive_enumerate(2, w, h, m, cap=m + h) == engine


def test_koszul_examples():
    assert koszul_sign([0, 1, 2], [0, 1, 0]) == 1
    assert koszul_sign([1, 0], [0, 0]) == -1
    assert koszul_sign([1, 0], [1, 1]) == 1
    assert koszul_sign([1, 0], [0, 1]) == -1


def test_canonicalize_matches_koszul_oracle():
    rng = random.Random(2024)
    for n in (1, 2):
        for _ in range(500):
            factors = random_factors(rng, n, rng.randint(0, 7), 2)
            assert check_sign_oracle(factors) is None, [format_word(factors)]


def test_sorting_permutation_is_stable():
    triples = [(0, (), (1,)), (1, (), (0,)), (0, (), (1,))]
    assert sorting_permutation(triples) == [1, 0, 2]
