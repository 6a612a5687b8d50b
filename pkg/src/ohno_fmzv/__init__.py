"""Finite multiple zeta(-star) values mod p, Ohno-type generating functions,
and exact checks of the identities relating them."""
from .fmzv import EvalContext, zeta_A, zeta_A_combo, zeta_A_naive, zeta_A_word
from .indices import IndexCombo, dual_index, hoffman_dual, index_shuffle, parse_index
from .modmath import bernoulli_table, frak_z, primes_in_range
from .series import F_series, O_series, TruncSeries, main_rhs_series
from .verify import IDENTITY_IDS, run_all, run_identity
from .words import WordPoly, build_P, build_Q, p_map, shuffle

__version__ = "0.1.0"

__all__ = [
    "EvalContext",
    "zeta_A",
    "zeta_A_combo",
    "zeta_A_naive",
    "zeta_A_word",
    "IndexCombo",
    "dual_index",
    "hoffman_dual",
    "index_shuffle",
    "parse_index",
    "bernoulli_table",
    "frak_z",
    "primes_in_range",
    "F_series",
    "O_series",
    "TruncSeries",
    "main_rhs_series",
    "IDENTITY_IDS",
    "run_all",
    "run_identity",
    "WordPoly",
    "build_P",
    "build_Q",
    "p_map",
    "shuffle",
]
