"""Witness automata whose minimal DFAs have a prescribed number of states."""

import json

from ._magic import (
    ConstructionError,
    Dfa,
    Error,
    InputError,
    Nfa,
    RangeError,
    ResourceError,
    bounds_table,
    check_family,
    constructive_alphas,
    decompose_alpha,
    determinize,
    equivalent,
    generate,
    generators_for,
    is_aperiodic,
    min_dfa_size,
    min_nfa_size_exact,
    minimize,
)
from . import _magic

__all__ = [
    "ConstructionError",
    "Dfa",
    "Error",
    "InputError",
    "Nfa",
    "RangeError",
    "ResourceError",
    "bounds_table",
    "check_family",
    "constructive_alphas",
    "decompose_alpha",
    "determinize",
    "equivalent",
    "generate",
    "generators_for",
    "is_aperiodic",
    "min_dfa_size",
    "min_nfa_size_exact",
    "minimize",
    "spectrum",
    "theorem4_check",
    "verify",
    "verify_grid",
]


def verify_grid(family, n_lo, n_hi=None, alphas=None, workers=1):
    """Verify every cell of a grid and return the reports as dicts."""
    if n_hi is None:
        n_hi = n_lo
    return json.loads(_magic._verify_grid(family, n_lo, n_hi, alphas, workers))


def verify(family, n, alpha):
    """Report for a single (n, alpha) cell, one per applicable generator."""
    reports = verify_grid(family, n, n, [alpha])
    return reports[0] if len(reports) == 1 else reports


def spectrum(family, n, sigma=2, sampled=False, budget=0, seed=0, workers=1, filter="none"):
    """Achieved DFA sizes for a language family; keys of "achieved" are strings."""
    return json.loads(
        _magic._spectrum(family, n, sigma, not sampled, budget, seed, workers, filter)
    )


def theorem4_check(n, workers=1):
    return json.loads(_magic._theorem4_check(n, workers))
