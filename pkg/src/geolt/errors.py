"""Shared error types.

Budget overruns are a first-class outcome here, not a crash: long-running
constructions (subset construction, semigroup closure, profile walks) raise
BudgetError, and callers that can live with a partial answer turn it into an
"unknown" verdict instead of propagating.
"""

from __future__ import annotations


class GeoltError(Exception):
    """Base class for errors raised by this package."""


class SpecError(GeoltError):
    """Malformed input: alphabet, automaton, or group description."""


class BudgetError(GeoltError):
    """A configured resource budget was exceeded before an answer was found."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeded budget of {limit}")
        self.what = what
        self.limit = limit
