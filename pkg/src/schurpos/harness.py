"""Runnable checks for the log-concavity and Schur-positivity statements.

Every check returns one :class:`VerdictReport` per statement, with one
verdict per ``k`` in the statement's range.  Schur-side class sums are kept
in factored form (sums of products of Schur functions) so that a product
such as ``f_{n,k}^2`` is expanded one Schur factor at a time.
"""

from __future__ import annotations

import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import ceil
from typing import Any

from . import __version__
from .partitions import Partition, enumerate_partitions, fat_hook, format_partition, is_column_even, rectangle_pair
from .rsk import ALL, THETA, ShapeClass, shape_set_class, tabulate_by_formula
from .schur import (
    LRCache,
    SchurVector,
    ex1,
    is_schur_positive,
    lr_product,
    multiply_by_schur,
    pool_map,
    vec_subtract,
)
from .tableaux import syt_count

HOLDS, FAILS, VACUOUS = "holds", "fails", "vacuous"

STATEMENTS = (
    "thm1_1a",
    "thm1_1b",
    "cor2_3a",
    "cor2_3b",
    "thm3_1a",
    "thm3_1b",
    "conj_f",
    "conj_g",
    "conj_g_theta",
    "conj_i_theta_numeric",
    "conj_l_theta_numeric",
    "counterexample_f_theta",
    # numeric forms of the unrestricted conjectures
    "conj_l_numeric",
    "conj_i_numeric",
)

# maximum product degree per computation kind
DEFAULT_BUDGETS = {"f": 28, "g": 40, "g_theta": 40, "f_theta": 40, "thm3_1": 40}

CLASS_KINDS = ("f", "g", "g_theta", "f_theta")


class BudgetExceeded(RuntimeError):
    pass


def _check_budget(kind: str, degree: int, budgets: dict[str, int] | None) -> None:
    limit = {**DEFAULT_BUDGETS, **(budgets or {})}[kind]
    if degree > limit:
        raise BudgetExceeded(f"{kind}: product degree {degree} exceeds budget {limit}")


@dataclass
class Verdict:
    k: int
    status: str
    witness: dict[str, Any] | None = None
    # diagnostics for figures and tests; never serialised
    stats: dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"k": self.k, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerdictReport:
    statement: str
    params: dict[str, Any]
    verdicts: list[Verdict]
    elapsed_ms: int = 0

    @property
    def holds(self) -> bool:
        return all(v.status != FAILS for v in self.verdicts)

    @property
    def vacuous(self) -> bool:
        return all(v.status == VACUOUS for v in self.verdicts)

    def verdict(self, k: int) -> Verdict:
        for v in self.verdicts:
            if v.k == k:
                return v
        raise KeyError(k)

    def to_dict(self) -> dict[str, Any]:
        return {
            "statement": self.statement,
            "params": dict(self.params),
            "verdicts": [v.to_dict() for v in self.verdicts],
            "elapsed_ms": self.elapsed_ms,
            "tool_version": __version__,
        }


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int(round((time.perf_counter() - self.start) * 1000))


def _numeric_verdict(k: int, lhs: int, rhs: int) -> Verdict:
    if lhs == 0 and rhs == 0:
        status = VACUOUS
    else:
        status = HOLDS if lhs >= rhs else FAILS
    witness = {"lhs": str(lhs), "rhs": str(rhs)} if status == FAILS else None
    return Verdict(k, status, witness, {"lhs": lhs, "rhs": rhs})


def _positivity_verdict(k: int, diff: SchurVector, vacuous: bool = False) -> Verdict:
    pv = is_schur_positive(diff)
    stats = {"terms": pv.terms, "negative_terms": pv.negative_terms, "difference": diff}
    if vacuous:
        return Verdict(k, VACUOUS, None, stats)
    if pv.positive:
        return Verdict(k, HOLDS, None, stats)
    witness = {"partition": format_partition(pv.witness), "coefficient": str(pv.coefficient)}
    return Verdict(k, FAILS, witness, stats)


# ---------------------------------------------------------------------------
# Theorem 1.1 and its corollary


def rectangle_family(m: int, n: int, k: int) -> Partition:
    return rectangle_pair(m, k, n - k)


def hook_family(m: int, n: int, k: int) -> Partition:
    return fat_hook(m, k, m * (n - k))


def _family_ranges(n: int) -> dict[str, range]:
    return {"a": range(ceil(n / 2) + 1, n), "b": range(2, n)}


_FAMILIES = {"a": rectangle_family, "b": hook_family}


def theorem_1_1_gap(m: int, n: int, k: int, family: str) -> tuple[int, int]:
    shape = _FAMILIES[family]
    lhs = syt_count(shape(m, n, k)) ** 2
    rhs = syt_count(shape(m, n, k + 1)) * syt_count(shape(m, n, k - 1))
    return lhs, rhs


def verify_theorem_1_1(m: int, n: int) -> list[VerdictReport]:
    reports = []
    for family, ks in _family_ranges(n).items():
        with _Timer() as t:
            verdicts = [_numeric_verdict(k, *theorem_1_1_gap(m, n, k, family)) for k in ks]
        reports.append(VerdictReport(f"thm1_1{family}", {"m": m, "n": n}, verdicts, t.ms))
    return reports


def corollary_shape_class(m: int, n: int, family: str) -> ShapeClass:
    lo = ceil(n / 2) if family == "a" else 1
    shapes = [_FAMILIES[family](m, n, j) for j in range(lo, n + 1)]
    return shape_set_class(f"cor2_3{family}(m={m},n={n})", shapes)


def verify_corollary_2_3(m: int, n: int) -> list[VerdictReport]:
    """Log-concavity of both restricted sequences over ``k = 1..mn``."""
    reports = []
    for family in ("a", "b"):
        with _Timer() as t:
            cls = corollary_shape_class(m, n, family)
            perms = tabulate_by_formula(m * n, "permutations", cls)
            invs = tabulate_by_formula(m * n, "involutions", cls)
            verdicts = []
            for k in range(2, m * n):
                vl = _numeric_verdict(k, perms[k] ** 2, perms[k + 1] * perms[k - 1])
                vi = _numeric_verdict(k, invs[k] ** 2, invs[k + 1] * invs[k - 1])
                statuses = {vl.status, vi.status}
                if FAILS in statuses:
                    bad = vl if vl.status == FAILS else vi
                    seq = "l" if bad is vl else "i"
                    verdicts.append(Verdict(k, FAILS, {"sequence": seq, **bad.witness}, {"l": vl.stats, "i": vi.stats}))
                else:
                    status = VACUOUS if statuses == {VACUOUS} else HOLDS
                    verdicts.append(Verdict(k, status, None, {"l": vl.stats, "i": vi.stats}))
        reports.append(VerdictReport(f"cor2_3{family}", {"m": m, "n": n}, verdicts, t.ms))
    return reports


def numeric_log_concavity(n: int, kind: str = "permutations", shape_cls: ShapeClass = ALL) -> VerdictReport:
    """Exact check of ``c_k^2 >= c_{k+1} c_{k-1}`` for ``1 < k < n``."""
    prefix = "conj_l" if kind == "permutations" else "conj_i"
    statement = f"{prefix}_theta_numeric" if shape_cls.id == "theta" else f"{prefix}_numeric"
    with _Timer() as t:
        table = tabulate_by_formula(n, kind, shape_cls)
        verdicts = [
            _numeric_verdict(k, table[k] ** 2, table[k + 1] * table[k - 1]) for k in range(2, n)
        ]
    return VerdictReport(statement, {"n": n, "kind": kind, "class": shape_cls.id}, verdicts, t.ms)


# ---------------------------------------------------------------------------
# Theorem 3.1


def theorem_3_1_difference(m: int, n: int, k: int, family: str, cache: LRCache | None = None) -> SchurVector:
    shape = _FAMILIES[family]
    return vec_subtract(
        lr_product(shape(m, n, k), shape(m, n, k), cache),
        lr_product(shape(m, n, k + 1), shape(m, n, k - 1), cache),
    )


def hook_family_steps(m: int, n: int, k: int, cache: LRCache | None = None) -> tuple[SchurVector, SchurVector]:
    """The two positive pieces whose sum is the hook-family difference.

    The first comes from the skew midpoint inequality, the second from the
    sort-split inequality.
    """
    upper = fat_hook(m, k, m * (n - k + 1))
    lower = fat_hook(m, k, m * (n - k - 1))
    first = vec_subtract(
        lr_product(upper, lower, cache),
        lr_product(hook_family(m, n, k + 1), hook_family(m, n, k - 1), cache),
    )
    second = vec_subtract(
        lr_product(hook_family(m, n, k), hook_family(m, n, k), cache),
        lr_product(upper, lower, cache),
    )
    return first, second


def verify_theorem_3_1(
    m: int, n: int, budgets: dict[str, int] | None = None, cache: LRCache | None = None
) -> list[VerdictReport]:
    _check_budget("thm3_1", 2 * m * n, budgets)
    reports = []
    for family, ks in _family_ranges(n).items():
        with _Timer() as t:
            verdicts = []
            for k in ks:
                diff = theorem_3_1_difference(m, n, k, family, cache)
                v = _positivity_verdict(k, diff)
                v.stats["ex1"] = ex1(diff)
                if family == "b":
                    v.stats["steps_positive"] = all(
                        is_schur_positive(s).positive for s in hook_family_steps(m, n, k, cache)
                    )
                verdicts.append(v)
        reports.append(VerdictReport(f"thm3_1{family}", {"m": m, "n": n}, verdicts, t.ms))
    return reports


# ---------------------------------------------------------------------------
# class sums and the conjectures

Monomial = tuple[Partition, ...]


def class_terms(n: int, k: int, kind: str) -> list[Monomial]:
    """``kind`` in f, g, g_theta, f_theta; each term is a product of Schur factors."""
    if kind not in CLASS_KINDS:
        raise ValueError(f"unknown class-sum kind {kind!r}")
    if not 1 <= k <= n:
        return []
    shapes = enumerate_partitions(n, k)
    if kind.endswith("theta"):
        shapes = [lam for lam in shapes if is_column_even(lam)]
    square = kind.startswith("f")
    return [(lam, lam) if square else (lam,) for lam in shapes]


def expand_monomial(factors: Monomial, cache: LRCache | None = None) -> SchurVector:
    vec = SchurVector.schur(factors[0])
    for mu in factors[1:]:
        vec = multiply_by_schur(vec, mu, cache)
    return vec


def _expand_job(factors: Monomial) -> dict[Partition, int]:
    return dict(expand_monomial(factors).terms)


def expand_sum(terms: dict[Monomial, int], degree: int, cache: LRCache | None = None, workers: int = 1) -> SchurVector:
    """Expand ``sum(c * prod(s_lam for lam in factors))``."""
    monomials = sorted(m for m, c in terms.items() if c)
    out: dict[Partition, int] = defaultdict(int)
    if workers > 1:
        parts = pool_map(_expand_job, monomials, workers)
        for mono, part in zip(monomials, parts):
            c = terms[mono]
            for nu, d in part.items():
                out[nu] += c * d
    else:
        prefixes: dict[Monomial, SchurVector] = {}
        for mono in monomials:
            # reuse the longest already-expanded prefix
            vec, start = None, 0
            for cut in range(len(mono) - 1, 0, -1):
                if mono[:cut] in prefixes:
                    vec, start = prefixes[mono[:cut]], cut
                    break
            if vec is None:
                vec, start = SchurVector.schur(mono[0]), 1
            for i in range(start, len(mono)):
                vec = multiply_by_schur(vec, mono[i], cache)
                if i + 1 < len(mono):
                    prefixes[mono[: i + 1]] = vec
            c = terms[mono]
            for nu, d in vec.terms.items():
                out[nu] += c * d
    return SchurVector._raw({k: v for k, v in out.items() if v}, degree)


def build_class_sum(n: int, k: int, kind: str, cache: LRCache | None = None) -> SchurVector:
    degree = 2 * n if kind.startswith("f") else n
    terms = Counter(tuple(sorted(t, reverse=True)) for t in class_terms(n, k, kind))
    return expand_sum(terms, degree, cache)


def log_concavity_terms(n: int, k: int, kind: str) -> dict[Monomial, int]:
    """Factored ``F_k^2 - F_{k+1} F_{k-1}`` with like monomials merged."""
    out: Counter[Monomial] = Counter()
    mid = class_terms(n, k, kind)
    for a in mid:
        for b in mid:
            out[tuple(sorted(a + b, reverse=True))] += 1
    for a in class_terms(n, k + 1, kind):
        for b in class_terms(n, k - 1, kind):
            out[tuple(sorted(a + b, reverse=True))] -= 1
    return {m: c for m, c in out.items() if c}


def log_concavity_difference(
    n: int, k: int, kind: str, cache: LRCache | None = None, workers: int = 1
) -> SchurVector:
    degree = (4 if kind.startswith("f") else 2) * n
    return expand_sum(log_concavity_terms(n, k, kind), degree, cache, workers)


def _is_vacuous(n: int, k: int, kind: str) -> bool:
    mid = class_terms(n, k, kind)
    return not mid and not (class_terms(n, k + 1, kind) and class_terms(n, k - 1, kind))


def check_conjecture(
    kind: str,
    n: int,
    budgets: dict[str, int] | None = None,
    cache: LRCache | None = None,
    workers: int = 1,
) -> VerdictReport:
    """Schur positivity of ``F_k^2 - F_{k+1} F_{k-1}`` for ``k = 1..n``."""
    if kind not in ("f", "g", "g_theta"):
        raise ValueError(f"no conjecture for kind {kind!r}")
    degree = (4 if kind == "f" else 2) * n
    _check_budget(kind, degree, budgets)
    with _Timer() as t:
        verdicts = []
        for k in range(1, n + 1):
            diff = log_concavity_difference(n, k, kind, cache, workers)
            verdicts.append(_positivity_verdict(k, diff, vacuous=_is_vacuous(n, k, kind)))
    return VerdictReport(f"conj_{kind}", {"n": n}, verdicts, t.ms)


def counterexample_f_theta(
    n: int = 10,
    budgets: dict[str, int] | None = None,
    cache: LRCache | None = None,
    workers: int = 1,
) -> VerdictReport:
    """Expand ``(f^T_{n,3})^2 - f^T_{n,2} f^T_{n,4}`` over column-even shapes."""
    _check_budget("f_theta", 4 * n, budgets)
    k = 3
    with _Timer() as t:
        diff = log_concavity_difference(n, k, "f_theta", cache, workers)
        verdict = _positivity_verdict(k, diff, vacuous=_is_vacuous(n, k, "f_theta"))
    return VerdictReport("counterexample_f_theta", {"n": n}, [verdict], t.ms)
