"""Computational checks on twist power subgroups: Chebyshev identities, finite
symplectic groups, braid power quotients and right-angled Artin certificates."""

import json as _json

from . import _core
from ._core import (
    congruence_check,
    nu,
    q_coeffs,
    q_eval,
    quotient_order,
    symplectic_group_order,
    words_equal,
)

__all__ = [
    "chebyshev_report",
    "congruence_check",
    "coxeter_report",
    "nu",
    "q_coeffs",
    "q_eval",
    "quotient_order",
    "raag_report",
    "symplectic_group_order",
    "symplectic_report",
    "validate_report",
    "words_equal",
]


def chebyshev_report(**kwargs):
    return _json.loads(_core.chebyshev_report(**kwargs))


def symplectic_report(**kwargs):
    return _json.loads(_core.symplectic_report(**kwargs))


def coxeter_report(cells=(), **kwargs):
    return _json.loads(_core.coxeter_report(cells=list(cells), **kwargs))


def raag_report(diagram, **kwargs):
    """`diagram` is the text of a diagram file."""
    return _json.loads(_core.raag_report(diagram, **kwargs))


def validate_report(diagram, **kwargs):
    return _json.loads(_core.validate_report(diagram, **kwargs))
