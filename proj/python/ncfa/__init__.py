"""Singular value functions, symmetric-space norms and noncommutative
Khinchine/Johnson-Schechtman inequality checks (C++ core)."""

from ._core import (
    __version__,
    footnote_norms,
    hl_submajorize,
    luxemburg_norm,
    mu,
    norm,
    orlicz_value,
    phi_moment,
    sum_mu,
    trace,
    uniform_submajorize,
    verify,
)

__all__ = [
    "__version__",
    "footnote_norms",
    "hl_submajorize",
    "luxemburg_norm",
    "mu",
    "norm",
    "orlicz_value",
    "phi_moment",
    "sum_mu",
    "trace",
    "uniform_submajorize",
    "verify",
]
