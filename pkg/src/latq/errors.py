"""Exception types shared across the package."""

import os

DEFAULT_BUDGET = 10**7


def default_budget():
    """Enumeration cap, overridable through the ``LATQ_BUDGET`` environment variable."""
    raw = os.environ.get("LATQ_BUDGET")
    if raw:
        return int(raw)
    return DEFAULT_BUDGET


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured cap."""

    def __init__(self, needed, budget, what="enumeration"):
        super().__init__(f"{what} needs {needed} items, budget is {budget}")
        self.needed = needed
        self.budget = budget


class RankDeficient(ValueError):
    pass


class UndefinedDistance(ValueError):
    pass


class ChainSpecError(ValueError):
    """Malformed chain parameters (levels, generators, moduli)."""


class NonIntegral(ArithmeticError):
    """Raised when q^a H^-1 has a non-integer entry; ``matrix`` holds the exact rational matrix."""

    def __init__(self, matrix):
        bad = [x for row in matrix for x in row if x.denominator != 1]
        super().__init__(f"matrix has non-integer entries, e.g. {bad[0]}")
        self.matrix = matrix


class NotClosed(ValueError):
    """The chain is not closed under zero-one addition; ``witness`` is (c1, c2, level)."""

    def __init__(self, witness):
        c1, c2, level = witness
        super().__init__(f"chain not closed under zero-one addition: {c1} * {c2} leaves level {level}")
        self.witness = witness


class StackError(ValueError):
    """Decoder stack preconditions violated."""
