"""Counting standard Young tableaux.

Two closed forms (the full hook product and the first-column form), a
backtracking enumerator used as an independent oracle, and the hook-content
principal specialization.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .partitions import Partition, conjugate

DEFAULT_ORACLE_BOUND = 12


class BoundExceeded(ValueError):
    """A brute-force routine was asked for an input above its guard."""


@dataclass(frozen=True)
class HookGrid:
    shape: Partition
    hook: dict[tuple[int, int], int]

    def first_column(self) -> tuple[int, ...]:
        return tuple(self.hook[(i, 1)] for i in range(1, len(self.shape) + 1))

    def product(self) -> int:
        return prod(self.hook.values())

    def rows(self) -> list[list[int]]:
        return [[self.hook[(i, j)] for j in range(1, r + 1)] for i, r in enumerate(self.shape, 1)]


def hook_grid(lam: Partition) -> HookGrid:
    conj = conjugate(lam)
    hooks = {
        (i, j): (row - j) + (conj[j - 1] - i) + 1
        for i, row in enumerate(lam, 1)
        for j in range(1, row + 1)
    }
    return HookGrid(tuple(lam), hooks)


def first_column_hooks(lam: Partition) -> tuple[int, ...]:
    # h(i,1) = lam_i + (l - i) with l the number of rows
    l = len(lam)
    return tuple(p + l - i for i, p in enumerate(lam, 1))


@lru_cache(maxsize=None)
def syt_count(lam: Partition) -> int:
    """Number of standard Young tableaux of shape ``lam`` (hook-length formula)."""
    n = sum(lam)
    hp = hook_grid(lam).product()
    q, r = divmod(factorial(n), hp)
    assert r == 0, f"hook product {hp} does not divide {n}!"
    return q


def syt_count_frobenius(lam: Partition) -> int:
    """Same count from the first-column hooks only."""
    hs = first_column_hooks(lam)
    num = factorial(sum(lam))
    for a in range(len(hs)):
        for b in range(a + 1, len(hs)):
            num *= hs[a] - hs[b]
    # partial quotients by single factorials need not be integers
    q, r = divmod(num, prod(factorial(h) for h in hs))
    assert r == 0
    return q


def enumerate_syt_count(lam: Partition, bound: int = DEFAULT_ORACLE_BOUND) -> int:
    """Count standard fillings of ``lam`` by placing 1, 2, ... one cell at a time."""
    n = sum(lam)
    if n > bound:
        raise BoundExceeded(f"shape of size {n} exceeds the enumeration bound {bound}")
    target = list(lam)
    filled = [0] * len(lam)

    def place(k: int) -> int:
        if k == n:
            return 1
        total = 0
        for i, row in enumerate(filled):
            if row < target[i] and (i == 0 or filled[i - 1] > row):
                filled[i] += 1
                total += place(k + 1)
                filled[i] -= 1
        return total

    return place(0)


def principal_specialization(lam: Partition, N: int) -> int:
    """``s_lam(1, ..., 1)`` with ``N`` ones, by the hook-content formula."""
    if len(lam) > N:
        return 0
    grid = hook_grid(lam)
    num = prod(N + j - i for (i, j) in grid.hook)
    q, r = divmod(num, grid.product())
    assert r == 0
    return q
