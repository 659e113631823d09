"""Exact integer primitives: square roots, primality, factorization, residues.

Everything here works on Python ints, so there is no overflow at any size.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import DomainError

TRIAL_DIVISION_LIMIT = 10**6
QR_SCAN_LIMIT = 10**5

# First twelve primes: deterministic Miller-Rabin for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_PROVEN_BELOW = 1 << 64


def isqrt_floor(n: int) -> int:
    """Largest r with r*r <= n."""
    if n < 0:
        raise DomainError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def isqrt_exact(n: int) -> tuple[int, bool]:
    """Return ``(isqrt_floor(n), r*r == n)``."""
    r = isqrt_floor(n)
    return r, r * r == n


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def isqrt_ceil(n: int) -> int:
    """Smallest r >= 0 with r*r >= n (0 for n <= 0)."""
    if n <= 0:
        return 0
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def legendre5(n: int) -> int:
    """Legendre symbol (n/5): 0, +1 for n = +-1 mod 5, -1 for n = +-2 mod 5."""
    r = n % 5
    if r == 0:
        return 0
    return 1 if r in (1, 4) else -1


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases.

    The answer is proven correct for n < 2**64; above that it is a strong
    probable-prime test (see :func:`primality_is_proven`).
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primality_is_proven(n: int) -> bool:
    return n < _MR_PROVEN_BELOW


@lru_cache(maxsize=None)
def _small_primes(limit: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a non-trivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ascending ``(prime, exponent)`` pairs.

    ``probable`` is set when some reported prime is at least 2**64, where the
    primality test is not proven.
    """

    n: int
    factors: tuple[tuple[int, int], ...]
    probable: bool = False

    @property
    def w(self) -> int:
        """Number of distinct prime divisors."""
        return len(self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def divisors(self) -> list[int]:
        """All positive divisors, ascending."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)


def factorize(n: int, seed: int = 0) -> Factorization:
    """Complete factorization: trial division, then Pollard-Brent rho."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    counts: dict[int, int] = {}
    rest = n
    for p in _small_primes(TRIAL_DIVISION_LIMIT):
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            counts[p] = e
    if rest > 1:
        rng = random.Random(seed)
        stack = [rest]
        while stack:
            x = stack.pop()
            if x < TRIAL_DIVISION_LIMIT**2 or is_probable_prime(x):
                # below 10^12 the trial division above already left only primes
                counts[x] = counts.get(x, 0) + 1
                continue
            f = _pollard_brent(x, rng)
            stack.extend((f, x // f))
    factors = tuple(sorted(counts.items()))
    probable = any(not primality_is_proven(p) for p, _ in factors)
    return Factorization(n, factors, probable)


def two_square_reps(m: int) -> list[tuple[int, int]]:
    """All (a, b) with 0 < a <= b and a^2 + b^2 = m, ascending in a."""
    reps = []
    for a in range(1, math.isqrt(m // 2) + 1):
        b, exact = isqrt_exact(m - a * a)
        if exact:
            reps.append((a, b))
    return reps


def is_sum_of_two_nonzero_squares(m: int) -> bool:
    return bool(two_square_reps(m))


def _square_mod_prime_power(d: int, p: int, k: int) -> bool:
    """Whether x^2 = d (mod p^k) has a solution."""
    q = p**k
    d %= q
    if d == 0:
        return True
    j = 0
    while d % p == 0:
        d //= p
        j += 1
    if j % 2:
        return False
    k -= j
    # d is now a unit mod p^k; any odd-p root lifts by Hensel
    if p != 2:
        return pow(d, (p - 1) // 2, p) == 1
    if k == 1:
        return True
    if k == 2:
        return d % 4 == 1
    return d % 8 == 1


def qr_solvable_mod4N(d: int, N: int) -> bool:
    """Whether d = x^2 (mod 4N) for some integer x."""
    if N < 1:
        raise DomainError(f"modulus N must be positive, got {N}")
    if d % 4 not in (0, 1):
        raise DomainError(f"d={d} is not 0 or 1 mod 4")
    mod = 4 * N
    if N <= QR_SCAN_LIMIT:
        target = d % mod
        return any(x * x % mod == target for x in range(2 * N + 1))
    return all(_square_mod_prime_power(d, p, e) for p, e in factorize(mod))
