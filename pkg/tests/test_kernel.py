import math

import pytest
from hypothesis import given, strategies as st

from markoff_minimal.errors import DomainError
from markoff_minimal.kernel import (
    factorize,
    is_probable_prime,
    isqrt_ceil,
    isqrt_exact,
    isqrt_floor,
    legendre5,
    qr_solvable_mod4N,
    two_square_reps,
)


def trial_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


@pytest.mark.parametrize("n, root, exact", [(0, 0, True), (49, 7, True), (50, 7, False)])
def test_isqrt_examples(n, root, exact):
    assert isqrt_exact(n) == (root, exact)


def test_isqrt_rejects_negative():
    with pytest.raises(DomainError):
        isqrt_floor(-1)


def test_isqrt_bracket_up_to_1e6():
    for n in range(10**6 + 1):
        r = isqrt_floor(n)
        assert r * r <= n < (r + 1) * (r + 1)


@given(st.integers(min_value=0, max_value=10**200))
def test_isqrt_bracket_huge(n):
    r = isqrt_floor(n)
    assert r * r <= n < (r + 1) ** 2
    c = isqrt_ceil(n)
    assert c * c >= n and (c == 0 or (c - 1) ** 2 < n)


@pytest.mark.parametrize("n, expected", [(11, 1), (7, -1), (25, 0), (-1, 1), (-2, -1)])
def test_legendre5_examples(n, expected):
    assert legendre5(n) == expected


def test_legendre5_is_periodic_and_matches_euler():
    for n in range(-10, 10):
        assert legendre5(n) == legendre5(n + 5)
        euler = pow(n, 2, 5)  # Euler's criterion: n^((5-1)/2) mod 5
        assert legendre5(n) == {0: 0, 1: 1, 4: -1}[euler]


@pytest.mark.parametrize(
    "n, factors",
    [(1, ()), (104, ((2, 3), (13, 1))), (61235, ((5, 1), (37, 1), (331, 1)))],
)
def test_factorize_examples(n, factors):
    assert factorize(n).factors == factors


def test_factorize_zero_rejected():
    with pytest.raises(DomainError):
        factorize(0)


def test_factorize_reconstructs_up_to_1e5():
    for n in range(1, 10**5 + 1):
        fac = factorize(n)
        assert math.prod(p**e for p, e in fac) == n
        assert all(e >= 1 for _, e in fac)
        assert [p for p, _ in fac] == sorted(p for p, _ in fac)
    for n in range(1, 3000):
        assert all(trial_prime(p) for p, _ in factorize(n))


def test_factorize_uses_rho_for_large_semiprimes():
    p, q = 1_000_000_007, 998_244_353
    fac = factorize(p * q * 4)
    assert fac.factors == ((2, 2), (q, 1), (p, 1))
    assert not fac.probable
    big = (1 << 89) - 1  # Mersenne prime beyond 2^64
    fac = factorize(big * 3)
    assert fac.factors == ((3, 1), (big, 1)) and fac.probable


def test_primality_agrees_with_trial_division():
    for n in range(20000):
        assert is_probable_prime(n) == trial_prime(n)
    # strong pseudoprimes to several small bases
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383):
        assert not is_probable_prime(n)


@pytest.mark.parametrize("m, reps", [(50, [(1, 7), (5, 5)]), (3, []), (5, [(1, 2)]), (9, [])])
def test_two_square_examples(m, reps):
    assert two_square_reps(m) == reps


def test_two_squares_exhaustive_up_to_1e4():
    expected = {}
    for a in range(1, 101):
        for b in range(a, 101):
            if a * a + b * b <= 10**4:
                expected.setdefault(a * a + b * b, []).append((a, b))
    for m in range(1, 10**4 + 1):
        assert two_square_reps(m) == expected.get(m, [])


@pytest.mark.parametrize("d, N, expected", [(5, 11, True), (5, 7, False), (5, 1, True)])
def test_qr_examples(d, N, expected):
    assert qr_solvable_mod4N(d, N) is expected


def test_qr_rejects_bad_discriminant():
    with pytest.raises(DomainError):
        qr_solvable_mod4N(6, 5)


def test_qr_matches_scan_for_d5():
    for N in range(1, 2001):
        scan = any((x * x - 5) % (4 * N) == 0 for x in range(2 * N))
        assert qr_solvable_mod4N(5, N) == scan


def test_qr_large_modulus_branch_matches_scan(monkeypatch):
    import markoff_minimal.kernel as kernel

    monkeypatch.setattr(kernel, "QR_SCAN_LIMIT", 0)
    for d in (5, 8, 12, 13, 20, 32, 77, 140, 0, 1, -3):
        for N in range(1, 400):
            scan = any((x * x - d) % (4 * N) == 0 for x in range(2 * N))
            assert kernel.qr_solvable_mod4N(d, N) == scan, (d, N)
