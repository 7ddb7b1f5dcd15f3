"""Twisted Grover zeta functions of mixed graphs."""

from ._core import *  # noqa: F401,F403
from ._core import BudgetExceeded, IdentityViolation, InputError, MixedGraph

__all__ = [name for name in dir() if not name.startswith("_")]
