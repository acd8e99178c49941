from fractions import Fraction as F

import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from posvote import ParadoxSynthesizer, PositionalVoting, Profile, Ranking, ReachabilityAnalyzer
from posvote.voting import build_tally_matrix, face_of, tally

ELECTION = {(2, 3, 4, 1): 8, (1, 3, 2, 4): 5, (4, 3, 2, 1): 10, (2, 3, 1, 4): 8, (4, 1, 3, 2): 7}


@pytest.fixture
def election():
    return Profile.from_ballots(4, ELECTION)


def test_positional_voting_defaults_to_borda(election):
    est = PositionalVoting().fit(election)
    assert est.weights_ == (F(3, 2), F(1, 2), F(-1, 2), F(-3, 2))
    assert est.transform(election) == [(-20, 6, 12, 2)]
    assert est.predict([election]) == [Ranking.strict((3, 2, 4, 1))]


def test_positional_voting_params(election):
    est = PositionalVoting(weights=(1, 0, 0, 0))
    assert est.get_params() == {"weights": (1, 0, 0, 0)}
    assert est.fit_transform(election) == [(F(-9, 2), F(13, 2), F(-19, 2), F(15, 2))]
    twin = clone(est).set_params(weights=(3, 2, 1, 0))
    assert twin.fit(election).predict(election) == [Ranking.strict((3, 2, 4, 1))]


def test_positional_voting_accepts_json_and_pairs(election):
    doc = {"n": 4, "ballots": [{"ranking": list(k), "count": str(v)} for k, v in ELECTION.items()]}
    est = PositionalVoting().fit([doc, (4, ELECTION)])
    assert est.transform([doc, (4, ELECTION)]) == [(-20, 6, 12, 2)] * 2


def test_positional_voting_validation(election):
    with pytest.raises(NotFittedError):
        PositionalVoting().predict(election)
    with pytest.raises(ValueError):
        PositionalVoting(weights=(0, 1, 0, 0)).fit(election)
    with pytest.raises(ValueError):
        PositionalVoting(weights=(1, 0, 0)).fit(election)
    with pytest.raises(TypeError):
        PositionalVoting().fit(42)


def test_reachability_analyzer(election):
    est = ReachabilityAnalyzer().fit(election)
    assert est.predict(["2,4,3,1", (3, 2, 4, 1), Ranking.strict((1, 2, 3, 4))])[:2] == [True, True]
    w = est.weights_for("2,4,3,1")
    assert face_of(tally(build_tally_matrix(election), w)) == Ranking.strict((2, 4, 3, 1))
    assert len(est.t_vectors_) == 3
    assert est.explore(200, seed=3) <= set(est.rankings_) | {r for r in est.explore(200, seed=3) if not r.is_strict}


def test_reachability_analyzer_unreachable():
    uniform = Profile(3, (1,) * 6)
    est = ReachabilityAnalyzer(strict_only=False).fit(uniform)
    assert est.rankings_ == [Ranking(((1, 2, 3),))]
    assert est.weights_for("1,2,3") is None
    assert est.predict([[[1, 2, 3]]]) == [True]


def test_paradox_synthesizer():
    weights = [(3, 1, -1, -3), (1, 1, 1, -3), (17, 1, -7, -11)]
    results = [(-2, -11, 4, 9), (4, 5, 3, -12), (13, -2, -6, -5)]
    est = ParadoxSynthesizer().fit(weights, results)
    assert est.transform(weights) == [tuple(F(x) for x in r) for r in results]
    seeded = ParadoxSynthesizer(seed=1).fit(weights, results)
    assert seeded.profile_ != est.profile_
    assert seeded.transform(weights) == est.transform(weights)
