"""Reinforced random walk scheme: simulation, path law, inference."""

from ._revmc import (
    canonicalize,
    f_bruteforce,
    f_closed,
    fit_grid,
    ingest,
    log_f,
    log_p_z,
    log_p_zk,
    marginal_likelihood,
    predict,
    simulate,
    transition_pairs,
    validate,
)

__all__ = [
    "canonicalize",
    "f_bruteforce",
    "f_closed",
    "fit_grid",
    "ingest",
    "log_f",
    "log_p_z",
    "log_p_zk",
    "marginal_likelihood",
    "predict",
    "simulate",
    "transition_pairs",
    "validate",
]
