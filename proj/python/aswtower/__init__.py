"""Higher a-numbers of Artin-Schreier-Witt towers over the projective line."""

from ._core import (
    InputError,
    MathError,
    anumbers,
    asymptotic_ratio,
    breaks,
    exact_r1,
    fn_brute,
    fn_closed,
    formula,
    genus,
    lattice_count,
    mu,
    newton,
    spec_digest,
    verify,
    xi,
)

__all__ = [
    "InputError",
    "MathError",
    "anumbers",
    "asymptotic_ratio",
    "breaks",
    "exact_r1",
    "fn_brute",
    "fn_closed",
    "formula",
    "genus",
    "lattice_count",
    "mu",
    "newton",
    "spec_digest",
    "verify",
    "xi",
]
