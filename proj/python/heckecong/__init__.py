"""Congruences between p-new Hecke eigensystems of level Gamma0(Np)."""

from ._core import (
    Error,
    c_constant,
    depth_table,
    eigensystems,
    equidistribution_interval,
    is_admissible,
    parse_linv,
    sturm_bound,
)

__all__ = [
    "Error",
    "c_constant",
    "depth_table",
    "eigensystems",
    "equidistribution_interval",
    "is_admissible",
    "parse_linv",
    "sturm_bound",
]
