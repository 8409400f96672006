from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from oracles import oracle_product, oracle_skew
from schurpos.partitions import (
    SkewShape,
    conjugate,
    enumerate_partitions,
    partitions_contained_in,
    sort_split,
)
from schurpos.schur import (
    CacheFormatError,
    DegreeMismatch,
    LRCache,
    SchurVector,
    ex1,
    format_cache_line,
    is_schur_positive,
    lr_product,
    parse_cache_lines,
    skew_expand,
    vec_multiply,
    vec_subtract,
)
from schurpos.tableaux import principal_specialization, syt_count

S = SchurVector.schur


def shapes_upto(n):
    return [lam for d in range(n + 1) for lam in enumerate_partitions(d)]


def test_lr_examples():
    assert lr_product((1,), (1,)) == SchurVector({(2,): 1, (1, 1): 1})
    assert lr_product((2, 1), (1,)) == SchurVector({(3, 1): 1, (2, 2): 1, (2, 1, 1): 1})
    assert lr_product((4, 2, 1), ()) == S((4, 2, 1))
    assert lr_product((), ()) == S(())


def test_lr_matches_oracle_small():
    for lam in shapes_upto(4):
        for mu in shapes_upto(4):
            if sum(lam) + sum(mu) <= 6:
                assert lr_product(lam, mu).terms == oracle_product(lam, mu), (lam, mu)


def test_lr_is_commutative_and_cache_independent():
    cold = LRCache()
    for lam in shapes_upto(4):
        for mu in shapes_upto(3):
            a = lr_product(lam, mu, cache=cold)
            assert a == lr_product(mu, lam, cache=LRCache())
            assert a == lr_product(lam, mu, cache=cold)


def test_skew_examples():
    assert skew_expand(SkewShape((3, 1), ())) == S((3, 1))
    assert skew_expand(SkewShape((2, 1), (1,))) == SchurVector({(2,): 1, (1, 1): 1})
    assert skew_expand(SkewShape((2, 2), (1,))) == S((2, 1))
    assert skew_expand(SkewShape((3, 2), (3, 2))) == S(())


def test_skew_matches_oracle():
    for outer in shapes_upto(6):
        for inner in partitions_contained_in(outer):
            assert skew_expand(SkewShape(outer, inner)).terms == oracle_skew(outer, inner), (outer, inner)


def test_skew_is_lr_transpose():
    # c^outer_{inner,nu} read from products
    for outer in shapes_upto(6):
        for inner in partitions_contained_in(outer):
            d = sum(outer) - sum(inner)
            expected = {nu: lr_product(inner, nu).coefficient(outer) for nu in enumerate_partitions(d)}
            expected = {k: v for k, v in expected.items() if v}
            assert skew_expand(SkewShape(outer, inner)).terms == expected


def test_vector_arithmetic():
    one = S((1,))
    assert vec_multiply(one, one) == SchurVector({(2,): 1, (1, 1): 1})
    assert vec_multiply(SchurVector.zero(3), S((2, 1))).is_zero()
    v = SchurVector({(2,): 1, (1, 1): 1})
    assert vec_multiply(v, S(())) == v
    assert vec_subtract(v, S((1, 1))) == S((2,))
    assert vec_subtract(v, v).is_zero()
    diff = vec_subtract(lr_product((1,), (2, 1)), lr_product((2,), (1, 1)))
    assert diff == S((2, 2))
    with pytest.raises(DegreeMismatch):
        vec_subtract(S((2,)), S((1,)))
    assert vec_subtract(S((2,)), SchurVector.zero()) == S((2,))
    assert 3 * S((1,)) - S((1,)) == 2 * S((1,))


def test_vector_rejects_mixed_degrees():
    with pytest.raises(DegreeMismatch):
        SchurVector({(2,): 1, (1,): 1})


def test_vec_multiply_workers_agree():
    a = lr_product((2, 1), (2,))
    b = lr_product((1, 1), (2, 1))
    assert vec_multiply(a, b, workers=1) == vec_multiply(a, b, workers=3)


def test_positivity():
    assert is_schur_positive(SchurVector.zero(4)).positive
    v = is_schur_positive(SchurVector({(2,): 1, (1, 1): -1}))
    assert not v.positive and v.witness == (1, 1) and v.coefficient == -1
    assert is_schur_positive(S((2, 2))).positive
    # first negative in descending lexicographic order
    v = is_schur_positive(SchurVector({(3,): -2, (2, 1): 5, (1, 1, 1): -1}))
    assert v.witness == (3,) and v.coefficient == -2 and v.negative_terms == 2


def test_ex1():
    assert ex1(S((5,))) == Fraction(1, 120)
    assert ex1(S((2, 1))) == Fraction(1, 3)
    assert ex1(SchurVector.zero(3)) == 0


def test_homomorphism_identity_small():
    for lam in shapes_upto(4):
        for mu in shapes_upto(4):
            total = sum(c * syt_count(nu) for nu, c in lr_product(lam, mu).terms.items())
            assert total == comb(sum(lam) + sum(mu), sum(lam)) * syt_count(lam) * syt_count(mu)


def test_principal_specialization_multiplicative():
    for lam in shapes_upto(6):
        for mu in shapes_upto(6):
            if sum(lam) + sum(mu) > 8:
                continue
            prod = lr_product(lam, mu)
            for N in (3, 4):
                lhs = principal_specialization(lam, N) * principal_specialization(mu, N)
                assert lhs == sum(c * principal_specialization(nu, N) for nu, c in prod.terms.items())


def test_conjugation_symmetry():
    for lam in shapes_upto(6):
        for mu in shapes_upto(6):
            if sum(lam) + sum(mu) > 9:
                continue
            a = lr_product(lam, mu)
            b = lr_product(conjugate(lam), conjugate(mu))
            assert {conjugate(nu): c for nu, c in a.terms.items()} == dict(b.terms)


partition_st = st.integers(0, 7).flatmap(lambda n: st.sampled_from(enumerate_partitions(n)))


@settings(max_examples=60, deadline=None)
@given(partition_st, partition_st)
def test_sort_split_positivity_random(lam, mu):
    a, b = sort_split(lam, mu)
    assert is_schur_positive(lr_product(a, b) - lr_product(lam, mu)).positive


def test_cache_line_round_trip(tmp_path):
    cache = LRCache()
    for lam, mu in [((2, 1), (2, 1)), ((1,), ()), ((3,), (1, 1))]:
        lr_product(lam, mu, cache=cache)
    path = tmp_path / "lr.v1"
    cache.dump(path)
    text = path.read_text()
    assert "v1 2,1|2,1\t4,2:1;4,1,1:1;3,3:1;3,2,1:2;" in text
    assert "v1 1|-\t1:1" in text
    fresh = LRCache()
    assert fresh.load(path) == 3
    assert fresh.items() == cache.items()
    fresh.dump(tmp_path / "again.v1")
    assert (tmp_path / "again.v1").read_text() == text


def test_cache_line_format():
    assert format_cache_line(((1,), (1,)), {(2,): 1, (1, 1): 1}) == "v1 1|1\t2:1;1,1:1"


@pytest.mark.parametrize(
    "bad",
    [
        "v1 1|1\t2:x;1,1:1",
        "v1 1|1 2:1",
        "v2 1|1\t2:1",
        "v1 1|2\t3:1",
        "v1 1|1\t2:1;1,2:1",
        "v1 1|1\t3:1",
    ],
)
def test_cache_rejects_corrupt_lines(bad):
    lines = ["v1 1|1\t2:1;1,1:1", bad]
    with pytest.raises(CacheFormatError) as err:
        parse_cache_lines(lines)
    assert err.value.line_no == 2


def test_cache_load_is_all_or_nothing(tmp_path):
    path = tmp_path / "bad.v1"
    path.write_text("v1 1|1\t2:1;1,1:1\nv1 2|1\t3:one\n")
    cache = LRCache()
    with pytest.raises(CacheFormatError):
        cache.load(path)
    assert len(cache) == 0


def test_long_columns_do_not_exhaust_the_stack():
    col = (1,) * 30
    expected = {(2,) * i + (1,) * (60 - 2 * i): 1 for i in range(31)}
    assert dict(lr_product(col, col, LRCache()).terms) == expected
    assert dict(lr_product((2,) * 13, (1,) * 26, LRCache()).terms) == dict(
        lr_product((1,) * 26, (2,) * 13, LRCache()).terms
    )
    hook = skew_expand(SkewShape((2,) * 40, (1,) * 39))
    assert dict(hook.terms) == {(2,) + (1,) * 39: 1}
