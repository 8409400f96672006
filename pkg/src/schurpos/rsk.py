"""Robinson-Schensted shapes, longest increasing subsequences, and count tables.

``tabulate`` is the exhaustive ground truth; ``tabulate_by_formula`` gets the
same numbers from hook-length counts grouped by first row.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterator, Sequence

from .partitions import Partition, enumerate_partitions, is_column_even
from .tableaux import BoundExceeded, syt_count

DEFAULT_BRUTE_BOUND = 9
KINDS = ("permutations", "involutions")

Permutation = tuple[int, ...]


def check_permutation(word: Sequence[int]) -> Permutation:
    word = tuple(word)
    if sorted(word) != list(range(1, len(word) + 1)):
        raise ValueError(f"not a permutation of 1..{len(word)}: {list(word)}")
    return word


def is_involution(word: Permutation) -> bool:
    return all(word[v - 1] == i for i, v in enumerate(word, 1))


def rs_shape(word: Sequence[int]) -> Partition:
    """Shape of the insertion tableau under Schensted row insertion."""
    rows: list[list[int]] = []
    for x in word:
        for row in rows:
            i = bisect_right(row, x)
            if i == len(row):
                row.append(x)
                break
            row[i], x = x, row[i]
        else:
            rows.append([x])
    return tuple(len(r) for r in rows)


def lis_length(word: Sequence[int]) -> int:
    """Patience sorting: the number of piles is the LIS length."""
    tops: list[int] = []
    for x in word:
        i = bisect_left(tops, x)
        if i == len(tops):
            tops.append(x)
        else:
            tops[i] = x
    return len(tops)


def involutions(n: int) -> Iterator[Permutation]:
    """All involutions of ``[n]``, built from fixed points and matched pairs."""
    word = [0] * (n + 1)

    def rec(free: list[int]) -> Iterator[Permutation]:
        if not free:
            yield tuple(word[1:])
            return
        a, rest = free[0], free[1:]
        word[a] = a
        yield from rec(rest)
        for idx, b in enumerate(rest):
            word[a], word[b] = b, a
            yield from rec(rest[:idx] + rest[idx + 1 :])
            word[b] = 0
        word[a] = 0

    yield from rec(list(range(1, n + 1)))


@dataclass(frozen=True)
class ShapeClass:
    """A named predicate on partitions."""

    id: str
    predicate: Callable[[Partition], bool]

    def __call__(self, lam: Partition) -> bool:
        return self.predicate(lam)


ALL = ShapeClass("all", lambda lam: True)
THETA = ShapeClass("theta", is_column_even)


def shape_set_class(id: str, shapes) -> ShapeClass:
    members = frozenset(tuple(s) for s in shapes)
    return ShapeClass(id, members.__contains__)


def shape_class(name: str) -> ShapeClass:
    try:
        return {"all": ALL, "theta": THETA}[name]
    except KeyError:
        raise ValueError(f"unknown shape class {name!r}") from None


@dataclass(frozen=True)
class CountTable:
    n: int
    counts: tuple[int, ...]
    kind: str
    shape_class: str

    def __getitem__(self, k: int) -> int:
        """1-based access; out-of-range ``k`` reads as 0."""
        return self.counts[k - 1] if 1 <= k <= self.n else 0


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


def tabulate(
    n: int,
    kind: str = "permutations",
    shape_cls: ShapeClass = ALL,
    bound: int = DEFAULT_BRUTE_BOUND,
) -> CountTable:
    """Exhaustive count by LIS length over permutations or involutions of ``[n]``."""
    _check_kind(kind)
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the brute-force bound {bound}")
    counts = [0] * n
    words = permutations(range(1, n + 1)) if kind == "permutations" else involutions(n)
    for w in words:
        sh = rs_shape(w)
        if shape_cls(sh):
            counts[sh[0] - 1] += 1
    return CountTable(n, tuple(counts), kind, shape_cls.id)


def tabulate_by_formula(n: int, kind: str = "permutations", shape_cls: ShapeClass = ALL) -> CountTable:
    """Counts per first-row length from ``f^lam`` (squared for permutations)."""
    _check_kind(kind)
    power = 2 if kind == "permutations" else 1
    counts = tuple(
        sum(syt_count(lam) ** power for lam in enumerate_partitions(n, k) if shape_cls(lam))
        for k in range(1, n + 1)
    )
    return CountTable(n, counts, kind, shape_cls.id)
