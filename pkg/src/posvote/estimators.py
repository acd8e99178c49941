"""scikit-learn style wrappers around the functional API.

Profiles play the role of samples; weighting vectors, seeds and flags are
hyperparameters, so ``get_params``/``set_params`` and ``clone`` work as usual.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from posvote import exact
from posvote._validation import check_profiles, check_ranking, check_tally, check_weights
from posvote.paradox import TargetSpec, construct_q, synthesize_profile
from posvote.reachability import (
    enumerate_reachable,
    is_face_reachable,
    random_explore,
    weight_from_coefficients,
)
from posvote.voting import build_tally_matrix, face_of, project_sum_zero, tally


class PositionalVoting(TransformerMixin, BaseEstimator):
    """Score profiles with a fixed weighting vector.

    Parameters
    ----------
    weights : sequence of rationals or None
        Points by ballot position, weakly decreasing. Shifted to sum zero
        during ``fit``. ``None`` means the Borda count for the number of
        candidates seen in ``fit``.
    """

    def __init__(self, weights=None):
        self.weights = weights

    def fit(self, X, y=None):
        profiles = check_profiles(X)
        n = profiles[0].n
        if any(p.n != n for p in profiles):
            raise ValueError("all profiles must share the number of candidates")
        if self.weights is None:
            self.weights_ = project_sum_zero(range(n - 1, -1, -1))
        else:
            self.weights_ = check_weights(self.weights, n)
        self.n_candidates_ = n
        return self

    def transform(self, X):
        """Results vector of each profile."""
        check_is_fitted(self, "weights_")
        return [tally(build_tally_matrix(p), self.weights_) for p in check_profiles(X)]

    def predict(self, X):
        """Societal ranking of each profile."""
        return [face_of(r) for r in self.transform(X)]


class ReachabilityAnalyzer(BaseEstimator):
    """Exact set of rankings a profile can produce over all weighting vectors.

    Parameters
    ----------
    strict_only : bool
        Only test strict rankings; otherwise every ordered set partition
        (n <= 5).
    """

    def __init__(self, strict_only=True):
        self.strict_only = strict_only

    def fit(self, X, y=None):
        self.tally_ = check_tally(X)
        self.report_ = enumerate_reachable(self.tally_, strict_only=self.strict_only)
        self.t_vectors_ = self.report_.t_vectors
        self.rankings_ = [w.ranking for w in self.report_.reachable]
        return self

    def predict(self, rankings):
        """Whether each ranking is reachable from the fitted profile."""
        check_is_fitted(self, "report_")
        return [is_face_reachable(self.t_vectors_, check_ranking(r)).reachable for r in rankings]

    def weights_for(self, ranking):
        """A weighting vector producing ``ranking``, or ``None``."""
        check_is_fitted(self, "report_")
        res = is_face_reachable(self.t_vectors_, check_ranking(ranking))
        if not res.reachable:
            return None
        return weight_from_coefficients(self.tally_.n, res.b)

    def explore(self, trials, seed=0):
        check_is_fitted(self, "report_")
        return random_explore(self.tally_, trials, seed)


class ParadoxSynthesizer(TransformerMixin, BaseEstimator):
    """Fit a profile that maps each weighting vector ``X[k]`` to ``y[k]``.

    Parameters
    ----------
    seed : int or None
        When set, a random kernel element is added to the synthesized profile.
    """

    def __init__(self, seed=None):
        self.seed = seed

    def fit(self, X, y):
        spec = TargetSpec(tuple(X), tuple(y))
        self.spec_ = spec
        self.q_ = construct_q(spec)
        self.profile_ = synthesize_profile(spec, seed=self.seed)
        return self

    def transform(self, X):
        """Results vectors the synthesized profile gives for weights ``X``."""
        check_is_fitted(self, "profile_")
        q = build_tally_matrix(self.profile_)
        return [tally(q, exact.as_vector(w)) for w in X]
