"""Shared exception types (CLI exit codes live in cli.py)."""
from __future__ import annotations


class BudgetExceededError(RuntimeError):
    """An enumeration or character-sum budget was exceeded.

    ``reached`` is the largest N that was actually completed.
    """

    def __init__(self, msg: str, reached: int | None = None):
        super().__init__(msg)
        self.reached = reached


class CacheConflictError(RuntimeError):
    """Two records for the same key disagree (including across engines)."""


class DataMissingError(RuntimeError):
    """A requested table needs volumes/counts that are not available."""

    def __init__(self, msg: str, missing: list[str] | None = None):
        super().__init__(msg)
        self.missing = missing or []
