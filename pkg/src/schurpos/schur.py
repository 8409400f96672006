"""Sparse Schur-basis vectors and Littlewood-Richardson arithmetic.

Products are expanded by enumerating Littlewood-Richardson tableaux row by
row.  A row is described by how many copies of each letter it receives; the
row-by-row constraints are

* column strictness: the cells holding letters ``<= j`` in row ``r`` end no
  further right than the cells holding letters ``< j`` in row ``r - 1``;
* the lattice condition on the reverse reading word: after row ``r`` the
  number of ``j``'s read so far never exceeds the number of ``j - 1``'s read
  in earlier rows.

Suffix counts are memoised on ``(row, previous row profile, letters used)``.
"""

from __future__ import annotations

import os
import threading
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Iterator, Mapping, Sequence, TypeVar

from .partitions import Partition, PartitionError, SkewShape, format_partition, is_partition
from .tableaux import syt_count

T = TypeVar("T")
R = TypeVar("R")


class DegreeMismatch(ValueError):
    pass


class CacheFormatError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


# ---------------------------------------------------------------------------
# LR tableau enumeration


def _lr_expand(inner: Partition, content: Partition) -> dict[Partition, int]:
    """``s_inner * s_content`` as ``{nu: c^nu_{inner,content}}``."""
    L = len(content)
    if L == 0:
        return {inner: 1}
    nin = len(inner)
    lam = inner + (0,) * (L + 2)
    memo: dict[tuple, dict[Partition, int]] = {}

    def rows_from(r: int, prev: tuple[int, ...] | None, used: tuple[int, ...], left: int):
        key = (r, prev, used)
        hit = memo.get(key)
        if hit is not None:
            return hit
        out: dict[Partition, int] = {}
        base = lam[r]
        J = min(r + 1, L)
        tail = lam[r + 1 : nin]
        # explicit stack: the letter loop nests L deep, too deep to recurse
        stack = [(0, base, 0, ())]
        while stack:
            j, pos, placed, a = stack.pop()
            if j < J:
                cap = content[j] - used[j]
                if prev is not None:
                    room = prev[j] - pos
                    if room < cap:
                        cap = room
                if j:
                    lat = used[j - 1] - used[j]
                    if lat < cap:
                        cap = lat
                for x in range(cap + 1):
                    stack.append((j + 1, pos + x, placed + x, a + (x,)))
                continue
            if placed == 0 and r >= nin:
                continue
            if placed == left:
                suf = (pos,) + tail
                out[suf] = out.get(suf, 0) + 1
                continue
            profile = [base]
            t = base
            for x in a:
                t += x
                profile.append(t)
            profile.extend([t] * (L - J))
            new_used = tuple(used[i] + a[i] if i < J else used[i] for i in range(L))
            sub = rows_from(r + 1, tuple(profile), new_used, left - placed)
            for suffix, c in sub.items():
                k2 = (pos,) + suffix
                out[k2] = out.get(k2, 0) + c
        memo[key] = out
        return out

    return rows_from(0, None, (0,) * L, sum(content))


def _skew_expand(outer: Partition, inner: Partition) -> dict[Partition, int]:
    """``s_{outer/inner}`` as ``{nu: c^outer_{inner,nu}}``."""
    R = len(outer)
    inn = inner + (0,) * (R - len(inner))
    if sum(outer) == sum(inner):
        return {(): 1}
    memo: dict[tuple, dict[Partition, int]] = {}

    def rows_from(r: int, prev: tuple[int, ...] | None, used: tuple[int, ...]):
        if r == R:
            content = list(used)
            while content and content[-1] == 0:
                content.pop()
            return {tuple(content): 1}
        key = (r, prev, used)
        hit = memo.get(key)
        if hit is not None:
            return hit
        out: dict[Partition, int] = {}
        base = inn[r]
        length = outer[r] - base
        J = r + 1
        padded = used + (0,) * (J - len(used))
        stack = [(0, base, length, ())]
        while stack:
            j, pos, remaining, a = stack.pop()
            if remaining and j < J:
                cap = remaining
                if prev is not None:
                    room = (prev[j] if j < len(prev) else prev[-1]) - pos
                    if room < cap:
                        cap = room
                if j:
                    lat = padded[j - 1] - padded[j]
                    if lat < cap:
                        cap = lat
                for x in range(cap + 1):
                    stack.append((j + 1, pos + x, remaining - x, a + (x,)))
                continue
            if remaining:
                continue
            a += (0,) * (J - len(a))
            profile = [base]
            t = base
            for x in a:
                t += x
                profile.append(t)
            new_used = tuple(padded[i] + a[i] for i in range(J))
            for content, c in rows_from(r + 1, tuple(profile), new_used).items():
                out[content] = out.get(content, 0) + c
        memo[key] = out
        return out

    return rows_from(0, None, ())


# ---------------------------------------------------------------------------
# product cache


def lr_key(lam: Partition, mu: Partition) -> tuple[Partition, Partition]:
    return (lam, mu) if lam >= mu else (mu, lam)


DEFAULT_CACHE_MAX_DEGREE = 32


class LRCache:
    """Thread-safe memo of LR products keyed by the normalised pair.

    Products of degree above ``max_degree`` are computed but not stored;
    at degree 40 the cache would otherwise outgrow memory while the entries
    are almost never reused.
    """

    def __init__(self, max_degree: int | None = DEFAULT_CACHE_MAX_DEGREE) -> None:
        self._data: dict[tuple[Partition, Partition], dict[Partition, int]] = {}
        self._lock = threading.Lock()
        self.added = 0
        self.max_degree = max_degree

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value: dict[Partition, int]) -> None:
        if self.max_degree is not None and sum(key[0]) + sum(key[1]) > self.max_degree:
            return
        with self._lock:
            if key not in self._data:
                self._data[key] = value
                self.added += 1

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
            self.added = 0

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key) -> bool:
        return key in self._data

    def items(self):
        return sorted(self._data.items(), reverse=True)

    def merge(self, entries: Iterable[tuple[tuple[Partition, Partition], dict[Partition, int]]]) -> int:
        n = 0
        with self._lock:
            for key, value in entries:
                if key not in self._data:
                    self._data[key] = value
                    n += 1
        return n

    # v1 text format ---------------------------------------------------

    def to_lines(self) -> Iterator[str]:
        for key, value in self.items():
            yield format_cache_line(key, value)

    def dump(self, path: str | os.PathLike) -> None:
        """Write the cache atomically (temp file then rename)."""
        path = os.fspath(path)
        tmp = f"{path}.tmp.{os.getpid()}"
        with open(tmp, "w", encoding="ascii", newline="\n") as fh:
            for line in self.to_lines():
                fh.write(line + "\n")
        os.replace(tmp, path)

    def load(self, path: str | os.PathLike) -> int:
        """Merge a v1 file; nothing is merged if any line is corrupt."""
        with open(path, encoding="ascii", errors="strict") as fh:
            entries = parse_cache_lines(fh)
        return self.merge(entries)


def _parse_cache_partition(text: str, line_no: int) -> Partition:
    if text == "-":
        return ()
    try:
        parts = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CacheFormatError(line_no, f"bad partition {text!r}") from None
    if not is_partition(parts) or not parts:
        raise CacheFormatError(line_no, f"bad partition {text!r}")
    return parts


def format_cache_line(key: tuple[Partition, Partition], value: Mapping[Partition, int]) -> str:
    lam, mu = key
    body = ";".join(
        f"{format_partition(nu)}:{value[nu]}" for nu in sorted(value, reverse=True)
    )
    return f"v1 {format_partition(lam)}|{format_partition(mu)}\t{body}"


def parse_cache_lines(lines: Iterable[str]):
    entries = []
    for line_no, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if not line:
            continue
        if not line.startswith("v1 ") or "\t" not in line:
            raise CacheFormatError(line_no, "missing 'v1 ' prefix or tab separator")
        head, body = line[3:].split("\t", 1)
        if head.count("|") != 1:
            raise CacheFormatError(line_no, "key must be '<lambda>|<mu>'")
        left, right = head.split("|")
        lam = _parse_cache_partition(left, line_no)
        mu = _parse_cache_partition(right, line_no)
        if (lam, mu) != lr_key(lam, mu):
            raise CacheFormatError(line_no, "key is not normalised")
        value: dict[Partition, int] = {}
        for item in body.split(";"):
            if item.count(":") != 1:
                raise CacheFormatError(line_no, f"bad term {item!r}")
            nu_text, coeff_text = item.split(":")
            nu = _parse_cache_partition(nu_text, line_no)
            if not coeff_text.isdigit():
                raise CacheFormatError(line_no, f"non-numeric coefficient {coeff_text!r}")
            if sum(nu) != sum(lam) + sum(mu):
                raise CacheFormatError(line_no, f"term {nu_text} has the wrong size")
            value[nu] = int(coeff_text)
        entries.append(((lam, mu), value))
    return entries


DEFAULT_CACHE = LRCache()


def _lr_raw(lam: Partition, mu: Partition, cache: LRCache | None) -> dict[Partition, int]:
    cache = DEFAULT_CACHE if cache is None else cache
    key = lr_key(lam, mu)
    hit = cache.get(key)
    if hit is not None:
        return hit
    # the content side drives the enumeration depth; keep it small
    a, b = key
    if (sum(b), len(b)) > (sum(a), len(a)):
        a, b = b, a
    value = _lr_expand(a, b)
    cache.put(key, value)
    return value


# ---------------------------------------------------------------------------
# vectors


class SchurVector:
    """Homogeneous integer combination of Schur functions."""

    __slots__ = ("degree", "_terms")

    def __init__(self, terms: Mapping[Sequence[int], int] | None = None, degree: int | None = None):
        clean: dict[Partition, int] = {}
        for key, c in (terms or {}).items():
            lam = tuple(key)
            if not is_partition(lam):
                raise PartitionError(f"not a partition: {key!r}")
            c = int(c)
            if c:
                clean[lam] = clean.get(lam, 0) + c
        clean = {k: v for k, v in clean.items() if v}
        sizes = {sum(k) for k in clean}
        if len(sizes) > 1:
            raise DegreeMismatch(f"mixed degrees {sorted(sizes)}")
        if sizes:
            d = sizes.pop()
            if degree is not None and degree != d:
                raise DegreeMismatch(f"declared degree {degree} but terms have degree {d}")
            degree = d
        self.degree = 0 if degree is None else degree
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict[Partition, int], degree: int) -> "SchurVector":
        v = object.__new__(cls)
        v.degree = degree
        v._terms = terms
        return v

    @classmethod
    def schur(cls, lam: Sequence[int]) -> "SchurVector":
        return cls({tuple(lam): 1})

    @classmethod
    def zero(cls, degree: int = 0) -> "SchurVector":
        return cls._raw({}, degree)

    @property
    def terms(self) -> Mapping[Partition, int]:
        return self._terms

    def items(self) -> list[tuple[Partition, int]]:
        """Terms in canonical (descending lexicographic) order."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, lam: Sequence[int]) -> int:
        return self._terms.get(tuple(lam), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchurVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self) -> "SchurVector":
        return SchurVector._raw({k: -v for k, v in self._terms.items()}, self.degree)

    def __add__(self, other: "SchurVector") -> "SchurVector":
        return vec_add(self, other)

    def __sub__(self, other: "SchurVector") -> "SchurVector":
        return vec_subtract(self, other)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        if isinstance(other, SchurVector):
            return vec_multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return NotImplemented

    def __repr__(self) -> str:
        if not self._terms:
            return f"SchurVector.zero({self.degree})"
        parts = []
        for lam, c in self.items():
            s = f"s({format_partition(lam)})"
            parts.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(parts)


def scale(a: SchurVector, c: int) -> SchurVector:
    if c == 0:
        return SchurVector.zero(a.degree)
    return SchurVector._raw({k: c * v for k, v in a.terms.items()}, a.degree)


def _check_degrees(a: SchurVector, b: SchurVector) -> int:
    if a and b and a.degree != b.degree:
        raise DegreeMismatch(f"degree {a.degree} vs degree {b.degree}")
    return a.degree if a else b.degree


def vec_add(a: SchurVector, b: SchurVector) -> SchurVector:
    d = _check_degrees(a, b)
    out = dict(a.terms)
    for k, v in b.terms.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return SchurVector._raw(out, d)


def vec_subtract(a: SchurVector, b: SchurVector) -> SchurVector:
    d = _check_degrees(a, b)
    out = dict(a.terms)
    for k, v in b.terms.items():
        s = out.get(k, 0) - v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return SchurVector._raw(out, d)


def lr_product(lam: Sequence[int], mu: Sequence[int], cache: LRCache | None = None) -> SchurVector:
    """Schur expansion of ``s_lam * s_mu``."""
    lam, mu = tuple(lam), tuple(mu)
    return SchurVector._raw(dict(_lr_raw(lam, mu, cache)), sum(lam) + sum(mu))


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int], cache: LRCache | None = None) -> int:
    return _lr_raw(tuple(lam), tuple(mu), cache).get(tuple(nu), 0)


def multiply_by_schur(a: SchurVector, mu: Partition, cache: LRCache | None = None) -> SchurVector:
    """``a * s_mu``."""
    out: dict[Partition, int] = defaultdict(int)
    for lam, c in a.terms.items():
        for nu, d in _lr_raw(lam, mu, cache).items():
            out[nu] += c * d
    return SchurVector._raw({k: v for k, v in out.items() if v}, a.degree + sum(mu))


def _multiply_chunk(job: tuple[dict[Partition, int], list[tuple[Partition, int]]]) -> dict[Partition, int]:
    left, right = job
    out: dict[Partition, int] = defaultdict(int)
    for mu, cm in right:
        for lam, cl in left.items():
            for nu, d in _lr_raw(lam, mu, None).items():
                out[nu] += cl * cm * d
    return dict(out)


def pool_map(func: Callable[[T], R], jobs: Sequence[T], workers: int = 1) -> list[R]:
    """``map`` that fans out over processes when ``workers > 1``; order preserved."""
    if workers <= 1 or len(jobs) <= 1:
        return [func(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(func, jobs))


def vec_multiply(a: SchurVector, b: SchurVector, cache: LRCache | None = None, workers: int = 1) -> SchurVector:
    """Bilinear extension of :func:`lr_product`."""
    degree = a.degree + b.degree
    if not a or not b:
        return SchurVector.zero(degree)
    if len(a) < len(b):
        a, b = b, a
    right = b.items()
    if workers <= 1:
        parts = [_multiply_chunk_cached(a.terms, right, cache)]
    else:
        chunks = [right[i::workers] for i in range(workers)]
        parts = pool_map(_multiply_chunk, [(dict(a.terms), c) for c in chunks if c], workers)
    out: dict[Partition, int] = defaultdict(int)
    for part in parts:
        for nu, c in part.items():
            out[nu] += c
    return SchurVector._raw({k: v for k, v in out.items() if v}, degree)


def _multiply_chunk_cached(left, right, cache):
    out: dict[Partition, int] = defaultdict(int)
    for mu, cm in right:
        for lam, cl in left.items():
            for nu, d in _lr_raw(lam, mu, cache).items():
                out[nu] += cl * cm * d
    return out


@lru_cache(maxsize=None)
def _skew_cached(outer: Partition, inner: Partition) -> tuple[tuple[Partition, int], ...]:
    return tuple(sorted(_skew_expand(outer, inner).items(), reverse=True))


def skew_expand(shape: SkewShape) -> SchurVector:
    """Schur expansion of the skew Schur function ``s_{outer/inner}``."""
    outer, inner = tuple(shape.outer), tuple(shape.inner)
    if not inner:
        return SchurVector.schur(outer)
    return SchurVector._raw(dict(_skew_cached(outer, inner)), sum(outer) - sum(inner))


@dataclass(frozen=True)
class PositivityVerdict:
    positive: bool
    witness: Partition | None = None
    coefficient: int | None = None
    terms: int = 0
    negative_terms: int = 0

    def __bool__(self) -> bool:
        return self.positive


def is_schur_positive(a: SchurVector) -> PositivityVerdict:
    """All coefficients non-negative.  The zero vector counts as positive.

    On failure the witness is the first negative term in canonical
    (descending lexicographic) order.
    """
    negatives = [lam for lam, c in a.terms.items() if c < 0]
    if not negatives:
        return PositivityVerdict(True, terms=len(a))
    w = max(negatives)
    return PositivityVerdict(False, w, a.terms[w], len(a), len(negatives))


def ex1(a: SchurVector) -> Fraction:
    """Exponential specialization at ``t = 1``: ``s_lam -> f^lam / |lam|!``."""
    total = sum(c * syt_count(lam) for lam, c in a.terms.items())
    return Fraction(total, factorial(a.degree))
