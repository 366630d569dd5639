"""Exact computations for the Gromov-Witten/Hurwitz correspondence of target curves."""

__version__ = "0.1.0"

from .characters import ClassAlgebraElement, central_character, character, dimension
from .completion import completed_cycle, completion_coefficient, descendent_class, fourier_invert
from .gw import (
    connected_absolute,
    connected_relative,
    gwh_substitution,
    relative_p1_disconnected,
    stationary_disconnected,
)
from .hurwitz import hurwitz_number, hurwitz_oracle
from .partitions import Partition, enumerate_partitions
from .shifted import p_k

__all__ = [
    "ClassAlgebraElement",
    "Partition",
    "central_character",
    "character",
    "completed_cycle",
    "completion_coefficient",
    "connected_absolute",
    "connected_relative",
    "descendent_class",
    "dimension",
    "enumerate_partitions",
    "fourier_invert",
    "gwh_substitution",
    "hurwitz_number",
    "hurwitz_oracle",
    "p_k",
    "relative_p1_disconnected",
    "stationary_disconnected",
]
