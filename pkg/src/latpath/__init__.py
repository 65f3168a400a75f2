"""Generalized Dyck, Motzkin and Schröder paths, coloured dimer models on a
segment, and the functional equations that tie them together.

Everything is exact: polynomials have integer coefficients and series are
truncated, never approximated.
"""
from .polyring import MultiPoly, RSeries, parse_poly
from .paths import LatticePath, enum_paths, enum_A_paths, path_stats
from .dimers import brute_gf, enum_configs, split_gf
from .recurrences import compute_G
from .series import EquationId, path_sum, residual, solve
from .closedforms import count

__version__ = "0.1.0"

__all__ = [
    "MultiPoly",
    "RSeries",
    "parse_poly",
    "LatticePath",
    "enum_paths",
    "enum_A_paths",
    "path_stats",
    "brute_gf",
    "enum_configs",
    "split_gf",
    "compute_G",
    "EquationId",
    "path_sum",
    "residual",
    "solve",
    "count",
]
