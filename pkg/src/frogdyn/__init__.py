"""Frog, blind-frog, hatted-frog and crowned-frog processes on the zigzag word."""
from .analysis import (
    bc_speed,
    cumulative_speed,
    exact_stationary,
    gamma_bc,
    gamma_from_speeds,
    gamma_zigzag,
    speeds,
    threshold_m,
)
from .blind import blind_poke
from .crowned import Crowned, move, move_inverse
from .hatted import Hatted, count_f, count_hatted, enumerate_hatted, hatted_poke
from .ring import Ring, ring_poke
from .words import InvalidInput, lcs_length, periodic_expand, zigzag_word

__version__ = "0.1.0"

__all__ = [
    "Crowned", "Hatted", "InvalidInput", "Ring", "bc_speed", "blind_poke", "count_f", "count_hatted",
    "cumulative_speed", "enumerate_hatted", "exact_stationary", "gamma_bc", "gamma_from_speeds",
    "gamma_zigzag", "hatted_poke", "lcs_length", "move", "move_inverse", "periodic_expand", "ring_poke",
    "speeds", "threshold_m", "zigzag_word",
]
