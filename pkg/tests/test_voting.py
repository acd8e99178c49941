import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import random_profile, random_sparse_profile, random_weight, seeded
from posvote import exact
from posvote.voting import (
    Profile,
    Ranking,
    TallyMatrix,
    build_tally_matrix,
    face_of,
    ordered_set_partitions,
    perm_rank,
    perm_unrank,
    permutation_matrix,
    permute_weight,
    project_sum_zero,
    stochastic_tally,
    tally,
    tally_by_ballots,
    to_nonneg_integer_profile,
    to_stochastic_profile,
)

ELECTION = {(2, 3, 4, 1): 8, (1, 3, 2, 4): 5, (4, 3, 2, 1): 10, (2, 3, 1, 4): 8, (4, 1, 3, 2): 7}
ELECTION_Q = [[5, 7, 8, 18], [16, 0, 15, 7], [0, 31, 7, 0], [17, 0, 8, 13]]
BORDA = (F(3, 2), F(1, 2), F(-1, 2), F(-3, 2))
PLURALITY = (F(3, 4), F(-1, 4), F(-1, 4), F(-1, 4))


@pytest.fixture
def election():
    return Profile.from_ballots(4, ELECTION)


def test_perm_rank_examples():
    assert perm_rank((1, 2, 3)) == 1
    assert perm_rank((3, 2, 1)) == 6
    # oracle: position in the lexicographic enumeration
    words = sorted(itertools.permutations(range(1, 5)))
    assert perm_rank((2, 3, 4, 1)) == words.index((2, 3, 4, 1)) + 1 == 10


def test_perm_unrank_examples():
    assert perm_unrank(3, 1) == (1, 2, 3)
    assert perm_unrank(3, 6) == (3, 2, 1)
    assert perm_unrank(4, 10) == (2, 3, 4, 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_rank_unrank_round_trip(n):
    words = sorted(itertools.permutations(range(1, n + 1)))
    for ell in range(1, math.factorial(n) + 1):
        sigma = perm_unrank(n, ell)
        assert sigma == words[ell - 1]
        assert perm_rank(sigma) == ell


def test_rank_errors():
    with pytest.raises(ValueError):
        perm_rank((1, 1, 2))
    with pytest.raises(ValueError):
        perm_unrank(3, 7)


def test_permutation_matrix_matches_election_summands():
    assert permutation_matrix((1, 2, 3, 4)) == exact.identity(4)
    assert permutation_matrix((2, 3, 4, 1)) == exact.as_matrix(
        [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
    )
    assert permutation_matrix((4, 1, 3, 2)) == exact.as_matrix(
        [[0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [1, 0, 0, 0]]
    )


def test_permute_weight():
    w = (1, 0, -1)
    assert permute_weight((1, 2, 3), w) == w
    assert permute_weight((2, 1, 3), w) == (0, 1, -1)
    assert permute_weight((3, 2, 1), w) == (-1, 0, 1)


def test_permute_weight_is_matrix_product():
    rng = seeded(3)
    for sigma in itertools.permutations(range(1, 5)):
        w = random_weight(rng, 4)
        assert permute_weight(sigma, w) == exact.mat_vec(permutation_matrix(sigma), w)


def test_election_tally_matrix(election):
    q = build_tally_matrix(election)
    assert q.m == exact.as_matrix(ELECTION_Q)
    assert q.total == 38


def test_trivial_tally_matrices():
    q = build_tally_matrix(Profile.from_ballots(3, {(1, 2, 3): 1}))
    assert q.m == exact.identity(3) and q.total == 1
    q = build_tally_matrix(Profile.zeros(3))
    assert q.m == exact.zeros(3, 3) and q.total == 0


def test_election_tallies(election):
    q = build_tally_matrix(election)
    assert tally(q, BORDA) == (-20, 6, 12, 2)
    assert tally(q, PLURALITY) == (F(-9, 2), F(13, 2), F(-19, 2), F(15, 2))
    ident = TallyMatrix.from_matrix(exact.identity(4))
    assert tally(ident, BORDA) == BORDA


def test_tally_dimension_mismatch(election):
    with pytest.raises(ValueError):
        tally(build_tally_matrix(election), (1, 0, -1))


def test_face_of_examples():
    assert face_of((-20, 6, 12, 2)) == Ranking.strict((3, 2, 4, 1))
    assert face_of((F(-9, 2), F(13, 2), F(-19, 2), F(15, 2))) == Ranking.strict((4, 2, 1, 3))
    assert face_of((0, 0, 0, 0)) == Ranking(((1, 2, 3, 4),))
    assert face_of((F(47, 5), 19, F(69, 5), F(93, 5))) == Ranking.strict((2, 4, 3, 1))
    assert face_of((1, 3, 1, 0)) == Ranking(((2,), (1, 3), (4,)))


def test_ranking_parse_and_str():
    assert Ranking.parse("2,4,3,1") == Ranking.strict((2, 4, 3, 1))
    tied = Ranking.parse("2;4,3;1")
    assert tied.blocks == ((2,), (3, 4), (1,))
    assert str(tied) == "2;3,4;1"
    with pytest.raises(ValueError):
        Ranking.parse("1,2,2")
    with pytest.raises(ValueError):
        Ranking.parse("1;x")


@pytest.mark.parametrize("n, fubini", [(1, 1), (2, 3), (3, 13), (4, 75)])
def test_ordered_set_partitions_count(n, fubini):
    parts = list(ordered_set_partitions(n))
    assert len(parts) == len(set(parts)) == fubini


def test_project_sum_zero():
    assert project_sum_zero((3, 2, 1, 0)) == BORDA
    assert project_sum_zero((1, 0, 0, 0)) == PLURALITY
    assert project_sum_zero(BORDA) == BORDA
    with pytest.raises(ValueError):
        project_sum_zero((0, 1, 0))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_row_column_sums(n):
    rng = seeded(n)
    for _ in range(100):
        p = random_profile(rng, n, lo=-6, hi=6, fractional=True)
        q = build_tally_matrix(p)
        assert all(sum(row) == p.total for row in q.m)
        assert all(sum(col) == p.total for col in zip(*q.m))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_two_route_tally(n):
    rng = seeded(10 + n)
    for _ in range(20):
        p = random_sparse_profile(rng, n)
        w = random_weight(rng, n)
        assert tally_by_ballots(p, w) == tally(build_tally_matrix(p), w)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**6), c=st.fractions(-10, 10, max_denominator=9))
def test_shift_invariance(seed, c):
    rng = seeded(seed)
    q = build_tally_matrix(random_sparse_profile(rng, 4, lo=0))
    w = random_weight(rng, 4)
    shifted = tuple(x + c for x in w)
    assert face_of(tally(q, w)) == face_of(exact.mat_vec(q.m, shifted))


@given(
    r=st.lists(st.fractions(-5, 5, max_denominator=5), min_size=3, max_size=6),
    c=st.fractions(min_value=F(1, 9), max_value=50, max_denominator=9),
)
def test_scale_invariance(r, c):
    assert face_of(r) == face_of([c * x for x in r])


def test_nonneg_integer_profile_examples():
    p = Profile(3, (F(-1, 2), 0, 0, 0, 0, F(1, 2)))
    assert to_nonneg_integer_profile(p).counts == (0, 1, 1, 1, 1, 2)
    q = Profile(3, (0, 2, 1, 4, 0, 3))
    assert to_nonneg_integer_profile(q) == q
    assert to_nonneg_integer_profile(Profile(3, (F(5, 3),) * 6)) == Profile.zeros(3)


def _grid_weights(n, hi=3):
    from posvote.reachability import weight_basis

    basis = weight_basis(n)
    for coords in itertools.product(range(hi + 1), repeat=n - 1):
        yield exact.linear_combination(coords, basis)


def test_nonneg_integer_profile_preserves_faces_on_grid():
    p = Profile(3, (F(-1, 2), 0, 0, 0, 0, F(1, 2)))
    q, q_hat = build_tally_matrix(p), build_tally_matrix(to_nonneg_integer_profile(p))
    for w in _grid_weights(3, hi=6):
        assert face_of(tally(q, w)) == face_of(tally(q_hat, w))


def test_stochastic_profile_examples(election):
    single = Profile.from_ballots(3, {(1, 2, 3): 1})
    assert to_stochastic_profile(single) == single

    p_tilde = to_stochastic_profile(election)
    assert min(p_tilde.counts) >= 0 and p_tilde.total == 1
    q_tilde = build_tally_matrix(p_tilde)
    assert q_tilde.m == exact.mat_scale(F(1, 38), build_tally_matrix(election).m)
    for w in (BORDA, PLURALITY):
        a, b = tally(q_tilde, w), tally(build_tally_matrix(election), w)
        assert a == tuple(x / 38 for x in b)

    # every ballot once: the tally matrix is a multiple of J
    uniform = Profile(3, (1,) * 6)
    u = to_stochastic_profile(uniform)
    assert build_tally_matrix(u).m == tuple((F(1, 3),) * 3 for _ in range(3))
    assert min(u.counts) >= 0 and u.total == 1


def test_stochastic_tally_shift(election):
    q = build_tally_matrix(election)
    assert stochastic_tally(q) == exact.mat_scale(F(1, 38), q.m)


def test_normalizations_preserve_faces():
    rng = seeded(99)
    for n in (3, 4):
        for _ in range(5):
            p = random_profile(rng, n, lo=-4, hi=6, fractional=True)
            q = build_tally_matrix(p)
            q_hat = build_tally_matrix(to_nonneg_integer_profile(p))
            q_tilde = build_tally_matrix(to_stochastic_profile(p))
            for _ in range(50):
                w = random_weight(rng, n)
                face = face_of(tally(q, w))
                assert face_of(tally(q_hat, w)) == face
                assert face_of(tally(q_tilde, w)) == face


def test_profile_validation():
    with pytest.raises(ValueError):
        Profile(3, (1, 2, 3))
    with pytest.raises(ValueError):
        Profile.zeros(9)
    with pytest.raises(ValueError):
        Profile.from_ballots(3, {(1, 2, 2): 1})
