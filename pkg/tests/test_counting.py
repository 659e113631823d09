from math import isqrt

import pytest

from markoff_minimal.counting import (
    Decomposition1BC,
    NoDecomposition,
    count_1bc,
    decompose_m1,
    enumerate_1bc,
    exists_1bc,
)
from markoff_minimal.errors import DomainError
from markoff_minimal.kernel import factorize, legendre5


def brute_1bc(m):
    """Minimal (1, b, c): b^2 + 1 <= m, c the larger root of c^2 - 3bc + b^2 + 1 - m."""
    out = []
    for b in range(1, isqrt(m - 1) + 1):
        disc = 9 * b * b - 4 * (b * b + 1 - m)
        r = isqrt(disc)
        if r * r == disc and (3 * b + r) % 2 == 0:
            c = (3 * b + r) // 2
            if c >= 3 * b:
                out.append((1, b, c))
    return out


@pytest.mark.parametrize(
    "m, alpha, A, B, C",
    [(50, 0, 7, 1, 1), (26, 1, 1, 1, 1), (12, 0, 1, 1, 11), (2, 0, 1, 1, 1), (6, 0, 1, 1, 5)],
)
def test_decompose_examples(m, alpha, A, B, C):
    d = decompose_m1(m)
    assert isinstance(d, Decomposition1BC)
    assert (d.alpha, d.A, d.B, d.C) == (alpha, A, B, C)


def test_decompose_failure_names_prime():
    d = decompose_m1(8)
    assert isinstance(d, NoDecomposition) and d.offending_prime == 7


def test_decompose_rejects_small_m():
    with pytest.raises(DomainError):
        decompose_m1(1)


@pytest.mark.parametrize("m, expected", [(12, True), (8, False), (2, True), (3, False)])
def test_exists_examples(m, expected):
    assert exists_1bc(m) is expected


@pytest.mark.parametrize("m, count", [(12, 2), (50, 1), (42, 2), (8, 0), (2, 1)])
def test_count_examples(m, count):
    assert count_1bc(m).count == count


@pytest.mark.parametrize("m, triples", [(101, [(1, 10, 30)]), (8, []), (12, [(1, 1, 5), (1, 2, 7)])])
def test_enumerate_examples(m, triples):
    assert [t.abc for t in enumerate_1bc(m)] == triples


def test_formula_matches_enumeration():
    for m in range(2, 5001):
        res = count_1bc(m)
        got = [t.abc for t in enumerate_1bc(m)]
        assert got == brute_1bc(m), m
        assert res.count == len(got), m
        assert res.exists == exists_1bc(m) == bool(got), m


def test_formula_matches_enumeration_sampled_large():
    for m in range(10**6, 10**6 + 3000, 7):
        assert count_1bc(m).count == len(brute_1bc(m)), m


def test_decomposition_invariants():
    for m in range(2, 20001):
        d = decompose_m1(m)
        if isinstance(d, NoDecomposition):
            p = d.offending_prime
            assert legendre5(p) == -1 and factorize(m - 1).exponent(p) % 2 == 1
            continue
        assert 25**d.alpha * d.A**2 * d.B**2 * d.C == m - 1
        assert all(e == 1 for _, e in factorize(d.C))
        assert all(legendre5(p) == -1 for p, _ in factorize(d.A))
        assert all(legendre5(p) == 1 for p, _ in factorize(d.B))
        assert legendre5(d.C) in (0, 1)
        res = count_1bc(m)
        assert res.l == legendre5(d.C)
        assert [t[0] for t in res.terms] == factorize(d.B).divisors()
