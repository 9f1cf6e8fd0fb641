"""Accelerated Fourier approximations of q(tau, w) = w e^{w tau} / (e^w - 1).

Thin wrapper over the compiled ``_bernq`` extension.
"""

from fractions import Fraction

from ._bernq import *  # noqa: F401,F403
from ._bernq import DomainError, NumericalError, _bernoulli_coefficients


def bernoulli_coefficients(k):
    """Exact coefficients of B_k(x), lowest degree first."""
    return [Fraction(c) for c in _bernoulli_coefficients(k)]


__all__ = [name for name in dir() if not name.startswith("_")]
