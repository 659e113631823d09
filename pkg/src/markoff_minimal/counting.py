"""Existence and closed-form count of minimal triples (1, b, c).

Write m - 1 = 5^(2 alpha) A^2 B^2 C with C square-free. Every prime of A
has (p/5) = -1 and every prime of B has (p/5) = +1. A triple (1, b, c)
exists iff no prime p | C has (p/5) = -1. When one exists, the number of
minimal ones is sum over d | B of 2^(w(B^2 C / d^2) + l - 1), where
l = (C/5).

Here (p/5) is always :func:`~markoff_minimal.kernel.legendre5`. Since
5 = 1 (mod 4), reciprocity makes (p/5) and (5/p) equal for odd p != 5.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import DomainError, InvariantViolation
from .forms import enumerate_minimal_via_forms
from .kernel import factorize, legendre5
from .triples import MTriple


@dataclass(frozen=True)
class Decomposition1BC:
    """m - 1 = 5^(2 alpha) A^2 B^2 C = S^2 C."""

    m: int
    alpha: int
    A: int
    B: int
    C: int
    # prime factorizations, used for w() and divisor iteration
    B_factors: tuple[tuple[int, int], ...]
    C_primes: tuple[int, ...]

    @property
    def S(self) -> int:
        return 5**self.alpha * self.A * self.B


@dataclass(frozen=True)
class NoDecomposition:
    """Why m - 1 admits no (1, b, c) triple: a prime with (p/5) = -1 divides C."""

    m: int
    offending_prime: int


def decompose_m1(m: int) -> Decomposition1BC | NoDecomposition:
    if m < 2:
        raise DomainError(f"m must be at least 2, got {m}")
    fac = factorize(m - 1)
    alpha = 0
    A_parts, B_parts, C_primes = [], [], []
    for p, e in fac:
        half = e // 2
        if e % 2:
            if legendre5(p) == -1:
                return NoDecomposition(m, p)
            C_primes.append(p)
        if p == 5:
            alpha = half
        elif half:
            (A_parts if legendre5(p) == -1 else B_parts).append((p, half))
    dec = Decomposition1BC(
        m=m,
        alpha=alpha,
        A=prod(p**h for p, h in A_parts),
        B=prod(p**h for p, h in B_parts),
        C=prod(C_primes),
        B_factors=tuple(B_parts),
        C_primes=tuple(C_primes),
    )
    _check_decomposition(dec)
    return dec


def _check_decomposition(dec: Decomposition1BC) -> None:
    if 25**dec.alpha * dec.A**2 * dec.B**2 * dec.C != dec.m - 1:
        raise InvariantViolation(f"decomposition of m-1={dec.m - 1} does not multiply back")
    if any(legendre5(p) == -1 for p in dec.C_primes) or dec.C % 25 == 0:
        raise InvariantViolation(f"bad square-free part C={dec.C} for m={dec.m}")
    if dec.A % 5 == 0 or dec.B % 5 == 0:
        raise InvariantViolation(f"5 divides A or B for m={dec.m}")
    if any(legendre5(p) != 1 for p, _ in dec.B_factors):
        raise InvariantViolation(f"prime of B={dec.B} is not a residue mod 5 (m={dec.m})")


def exists_1bc(m: int) -> bool:
    return isinstance(decompose_m1(m), Decomposition1BC)


@dataclass(frozen=True)
class CountResult:
    exists: bool
    count: int
    l: int | None
    terms: tuple[tuple[int, int], ...]
    decomposition: Decomposition1BC | NoDecomposition


def _divisors_with_factors(factors):
    """(d, factorization of B / d) pairs over all d | B, ascending in d."""
    pairs = [(1, {})]
    for p, e in factors:
        pairs = [(d * p**i, {**rest, p: e - i}) for d, rest in pairs for i in range(e + 1)]
    return sorted(pairs, key=lambda x: x[0])


def count_1bc(m: int) -> CountResult:
    """Closed-form number of minimal triples (1, b, c) for m."""
    dec = decompose_m1(m)
    if isinstance(dec, NoDecomposition):
        return CountResult(False, 0, None, (), dec)
    l = legendre5(dec.C)
    if l == -1:
        raise InvariantViolation(f"(C/5) = -1 for C={dec.C}, m={m}")
    terms = []
    for d, cofactor in _divisors_with_factors(dec.B_factors):
        # w(B^2 C / d^2): primes of B/d together with those of C
        primes = {p for p, e in cofactor.items() if e} | set(dec.C_primes)
        terms.append((d, 2 ** (len(primes) + l - 1)))
    return CountResult(True, sum(t for _, t in terms), l, tuple(terms), dec)


def enumerate_1bc(m: int) -> list[MTriple]:
    """Minimal triples with first entry 1, read from the quadratic-form enumeration."""
    return [t for t in enumerate_minimal_via_forms(m) if t.a == 1]
