"""Derivation transformations: each takes derivations to derivations of the same endsequent."""
from .atomic import atomize_equalities, basic_atomic, join_with_atomic_cut, to_atomic
from .embed import embed_pure
from .eqn import (
    admit_cng, cng_cut_join, eliminate_cuts_eq, eliminate_cuts_eqn, eliminate_cuts_full,
    eq_cng_interderive, l_rules_to_eq,
)
from .semishort import admit_oriented, g_transform, is_semishortening, semishorten
from .separate import is_separated, project_intuitionistic, sep_cut_step, sep_eq_step, separate
from .singleton import left_symmetry, singleton_replacement, singletonize, transpose_eq
from .trace import TransformTrace, recording

__all__ = [
    "admit_cng", "admit_oriented", "atomize_equalities", "basic_atomic", "cng_cut_join",
    "eliminate_cuts_eq", "eliminate_cuts_eqn", "eliminate_cuts_full", "embed_pure",
    "eq_cng_interderive", "g_transform", "is_semishortening", "is_separated",
    "join_with_atomic_cut", "l_rules_to_eq", "left_symmetry", "project_intuitionistic",
    "recording", "semishorten", "sep_cut_step", "sep_eq_step", "separate",
    "singleton_replacement", "singletonize", "to_atomic", "transpose_eq", "TransformTrace",
]
