"""Exact positional voting: tallies, paradoxical profiles and reachable rankings."""

from posvote.birkhoff import PermCombination, bvn_decompose, expand_in_permutations
from posvote.estimators import ParadoxSynthesizer, PositionalVoting, ReachabilityAnalyzer
from posvote.paradox import TargetSpec, saari_profile, synthesize_profile
from posvote.reachability import enumerate_reachable, is_face_reachable, random_explore
from posvote.voting import Profile, Ranking, TallyMatrix, build_tally_matrix, face_of, tally

__all__ = [
    "PermCombination",
    "ParadoxSynthesizer",
    "PositionalVoting",
    "Profile",
    "Ranking",
    "ReachabilityAnalyzer",
    "TallyMatrix",
    "TargetSpec",
    "build_tally_matrix",
    "bvn_decompose",
    "enumerate_reachable",
    "expand_in_permutations",
    "face_of",
    "is_face_reachable",
    "random_explore",
    "saari_profile",
    "synthesize_profile",
    "tally",
]
