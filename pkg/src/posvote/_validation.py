"""Input coercion shared by the estimator wrappers."""

from __future__ import annotations

from typing import Any, Sequence

from posvote import exact
from posvote.voting import Profile, Ranking, TallyMatrix, build_tally_matrix, project_sum_zero


def check_profile(x: Any) -> Profile:
    """Accept a :class:`Profile`, a profile JSON dict, or ``(n, {ranking: count})``."""
    if isinstance(x, Profile):
        return x
    if isinstance(x, dict) and "ballots" in x:
        from posvote.serialization import profile_from_dict

        return profile_from_dict(x)
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], int):
        return Profile.from_ballots(x[0], x[1])
    raise TypeError(f"cannot interpret {type(x).__name__} as a profile")


def check_profiles(X: Any) -> list[Profile]:
    """A single profile or a sequence of them, as a list."""
    try:
        return [check_profile(X)]
    except TypeError:
        pass
    return [check_profile(x) for x in X]


def check_tally(x: Any) -> TallyMatrix:
    if isinstance(x, TallyMatrix):
        return x
    return build_tally_matrix(check_profile(x))


def check_weights(w: Sequence, n: int | None = None) -> exact.Vector:
    """Weakly decreasing weights, shifted to sum zero."""
    w = project_sum_zero(w)
    if n is not None and len(w) != n:
        raise ValueError(f"expected {n} weights, got {len(w)}")
    return w


def check_ranking(r: Any) -> Ranking:
    if isinstance(r, Ranking):
        return r
    if isinstance(r, str):
        return Ranking.parse(r)
    r = list(r)
    if r and all(isinstance(c, int) for c in r):
        return Ranking.strict(r)
    return Ranking(tuple(tuple(b) for b in r))
