"""Partitions, skew shapes and the coordinate-wise shape operations.

A partition is a plain tuple of positive integers in weakly decreasing order.
The empty partition is ``()``.  Every function here is pure.
"""

from __future__ import annotations

import re
from typing import Iterator, NamedTuple, Sequence

Partition = tuple[int, ...]


class PartitionError(ValueError):
    """Raised for malformed partitions or partition strings."""

    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        self.token = token


def partition(parts: Sequence[int]) -> Partition:
    """Validate ``parts`` and return the canonical tuple (zero parts stripped)."""
    out = tuple(int(p) for p in parts)
    if any(p < 0 for p in out):
        raise PartitionError(f"negative part in {list(parts)}")
    while out and out[-1] == 0:
        out = out[:-1]
    for a, b in zip(out, out[1:]):
        if b > a:
            raise PartitionError(f"parts are not weakly decreasing: {list(parts)}")
    if 0 in out:
        raise PartitionError(f"zero part inside {list(parts)}")
    return out


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 1 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*)?$")


def parse_partition(text: str) -> Partition:
    """Parse ``"3,3,2,2"`` or ``"3^2,2^2"``; ``""``, ``"-"`` and ``"()"`` give ``()``."""
    text = text.strip()
    if text in ("", "-", "()", "0"):
        return ()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    parts: list[int] = []
    for token in text.split(","):
        m = _TOKEN.match(token)
        if m is None:
            raise PartitionError(f"malformed partition token {token.strip()!r}", token.strip())
        base = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if base < 1:
            raise PartitionError(f"parts must be positive, got {token.strip()!r}", token.strip())
        parts.extend([base] * exp)
    for a, b in zip(parts, parts[1:]):
        if b > a:
            raise PartitionError(
                f"parts are not weakly decreasing at {b!r} in {text!r}", str(b)
            )
    return tuple(parts)


def format_partition(lam: Partition) -> str:
    return ",".join(map(str, lam)) if lam else "-"


def size(lam: Partition) -> int:
    return sum(lam)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    out = []
    i = len(lam)
    for j in range(1, lam[0] + 1):
        while lam[i - 1] < j:
            i -= 1
        out.append(i)
    return tuple(out)


def is_column_even(lam: Partition) -> bool:
    """True iff every column of the diagram of ``lam`` has even length."""
    return all(c % 2 == 0 for c in conjugate(lam))


def contains(outer: Partition, inner: Partition) -> bool:
    if len(inner) > len(outer):
        return False
    return all(a >= b for a, b in zip(outer, inner))


def enumerate_partitions(n: int, first_part: int | None = None) -> list[Partition]:
    """All partitions of ``n`` in descending lexicographic order.

    With ``first_part=k`` only those with largest part exactly ``k``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return [()] if first_part in (None, 0) else []
    if first_part is None:
        return list(_partitions_bounded(n, n))
    if not 1 <= first_part <= n:
        return []
    return [(first_part,) + rest for rest in _partitions_bounded(n - first_part, first_part)]


def _partitions_bounded(n: int, cap: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


def partitions_contained_in(lam: Partition) -> Iterator[Partition]:
    """Every partition ``mu`` with ``mu`` inside ``lam`` (including ``()`` and ``lam``)."""

    def rec(i: int, cap: int) -> Iterator[Partition]:
        if i == len(lam):
            yield ()
            return
        yield ()
        for p in range(min(cap, lam[i]), 0, -1):
            for rest in rec(i + 1, p):
                yield (p,) + rest

    return rec(0, lam[0] if lam else 0)


def sort_split(lam: Partition, mu: Partition) -> tuple[Partition, Partition]:
    """Merge all parts, sort decreasingly, and deal them alternately into two partitions."""
    merged = sorted(lam + mu, reverse=True)
    return tuple(merged[0::2]), tuple(merged[1::2])


class SkewShape(NamedTuple):
    outer: Partition
    inner: Partition = ()

    @property
    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)

    def __str__(self) -> str:
        return f"{format_partition(self.outer)}/{format_partition(self.inner)}"


def skew_shape(outer: Sequence[int], inner: Sequence[int] = ()) -> SkewShape:
    o, i = partition(outer), partition(inner)
    if not contains(o, i):
        raise PartitionError(f"{list(i)} is not contained in {list(o)}")
    return SkewShape(o, i)


def _strip(parts: Sequence[int]) -> Partition:
    parts = list(parts)
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


def _pad(a: Partition, b: Partition) -> tuple[list[int], list[int]]:
    n = max(len(a), len(b))
    return list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b))


def floor_ceil_average(a: Partition, b: Partition) -> tuple[Partition, Partition]:
    x, y = _pad(a, b)
    return _strip([(p + q) // 2 for p, q in zip(x, y)]), _strip(
        [(p + q + 1) // 2 for p, q in zip(x, y)]
    )


def midpoint_shapes(
    lam: Partition, mu: Partition, nu: Partition, rho: Partition
) -> tuple[SkewShape, SkewShape]:
    """Floor and ceiling midpoints of the skew shapes ``lam/mu`` and ``nu/rho``."""
    skew_shape(lam, mu)
    skew_shape(nu, rho)
    out_lo, out_hi = floor_ceil_average(lam, nu)
    in_lo, in_hi = floor_ceil_average(mu, rho)
    return SkewShape(out_lo, in_lo), SkewShape(out_hi, in_hi)


def rectangle_pair(m: int, k: int, rest: int) -> Partition:
    """The shape ``(k^m, rest^m)``; requires ``k >= rest >= 0``."""
    return partition([k] * m + [rest] * m)


def fat_hook(m: int, k: int, tail: int) -> Partition:
    """The shape ``(k^m, 1^tail)``."""
    return partition([k] * m + [1] * tail)
