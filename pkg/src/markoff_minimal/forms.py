"""Fundamental solutions of F(x, y) = x^2 - 3a xy + y^2 = m - a^2.

Fix a with a^2 < m and put N = m - a^2. Write V = sqrt(N / (3a + 2)) and
U = sqrt(N (3a + 2)). A solution (u, v) with v >= 0 is fundamental exactly
when 0 < v < V, or v = 0 and u = sqrt(N), or v = V and u = (U + 3aV)/2.
The fundamental solutions for a correspond one-to-one with T_a, the minimal
triples having a as first or second entry (rewritten to start with a).
That correspondence gives a second way to list all minimal triples.

V and U are never formed as reals. Every comparison against V is done on
v^2 (3a + 2) versus N.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .enumeration import MinimalSet, build_minimal_set
from .errors import DomainError, InvariantViolation
from .kernel import factorize, isqrt_ceil, isqrt_exact, isqrt_floor, legendre5
from .triples import MTriple


@dataclass(frozen=True)
class FormContext:
    m: int
    a: int

    def __post_init__(self):
        if self.m < 2:
            raise DomainError(f"m must be at least 2, got {self.m}")
        if not (0 < self.a and self.a * self.a < self.m):
            raise DomainError(f"need 0 < a and a^2 < m, got a={self.a}, m={self.m}")

    @property
    def N(self) -> int:
        return self.m - self.a * self.a

    @property
    def d(self) -> int:
        """Discriminant 9a^2 - 4."""
        return 9 * self.a * self.a - 4

    @property
    def k(self) -> int:
        """3a + 2, so that V^2 = N / k and U^2 = N k."""
        return 3 * self.a + 2

    def F(self, x: int, y: int) -> int:
        return x * x - 3 * self.a * x * y + y * y

    def cmp_V(self, v: int) -> int:
        """Sign of v - V for v >= 0."""
        lhs = v * v * self.k
        return (lhs > self.N) - (lhs < self.N)


class FundamentalSolution(NamedTuple):
    u: int
    v: int


def fundamental_case(ctx: FormContext, s: FundamentalSolution) -> int:
    """Which of the three fundamental cases (1, 2, 3) holds for s, or 0 for none."""
    u, v = s
    if v < 0 or ctx.F(u, v) != ctx.N:
        return 0
    if v == 0:
        return 2 if u > 0 else 0
    side = ctx.cmp_V(v)
    if side < 0:
        return 1
    if side == 0 and 2 * u == v * (6 * ctx.a + 2):
        return 3
    return 0


def fundamental_solutions(ctx: FormContext) -> list[FundamentalSolution]:
    """All fundamental solutions for (m, a), sorted by (v, u)."""
    a, N, k = ctx.a, ctx.N, ctx.k
    sols = []
    r, exact = isqrt_exact(N)
    if exact:
        sols.append(FundamentalSolution(r, 0))
    v = 1
    while v * v * k <= N:
        # u^2 - 3av u + (v^2 - N) = 0
        disc = ctx.d * v * v + 4 * N
        root, exact = isqrt_exact(disc)
        if exact and (3 * a * v + root) % 2 == 0:
            roots = sorted({(3 * a * v - root) // 2, (3 * a * v + root) // 2})
            if v * v * k < N:
                sols.extend(FundamentalSolution(u, v) for u in roots)
            else:
                sols.extend(FundamentalSolution(u, v) for u in roots if 2 * u == v * (6 * a + 2))
        v += 1
    for s in sols:
        if fundamental_case(ctx, s) == 0:
            raise InvariantViolation(f"{s} is not fundamental for m={ctx.m}, a={ctx.a}")
    return sols


def in_T(ctx: FormContext, t: tuple[int, int, int]) -> bool:
    """Whether (a, b, c) lies in T_a: it, or it with a and b swapped, is minimal."""
    a, b, c = t
    if a != ctx.a or b <= 0:
        return False
    if a * a + b * b + c * c - 3 * a * b * c != ctx.m:
        return False
    return max(a, b) <= c and 3 * a * b <= c


def triple_to_fundamental(ctx: FormContext, t: tuple[int, int, int]) -> FundamentalSolution:
    """Image of a T_a element under the bijection onto fundamental solutions."""
    if not in_T(ctx, t):
        raise DomainError(f"{t} is not in T_a for m={ctx.m}, a={ctx.a}")
    a, b, c = t
    phi = c - 3 * a * b
    if phi == 0:
        return FundamentalSolution(b, 0)
    if ctx.cmp_V(b) <= 0:
        return FundamentalSolution(c, b)
    return FundamentalSolution(-b, phi)


def fundamental_to_triple(ctx: FormContext, s: FundamentalSolution) -> tuple[int, int, int]:
    """Inverse of :func:`triple_to_fundamental`."""
    a = ctx.a
    u, v = s
    if v == 0:
        t = (a, u, 3 * a * u)
    elif u > 0:
        t = (a, v, u)
    else:
        t = (a, -u, v - 3 * a * u)
    if not in_T(ctx, t):
        raise InvariantViolation(f"{s} mapped to {t}, which is not in T_a (m={ctx.m}, a={a})")
    return t


def contexts(m: int) -> list[FormContext]:
    """One context per a with 0 < a and a^2 < m."""
    out = []
    a = 1
    while a * a < m:
        out.append(FormContext(m, a))
        a += 1
    return out


def T_set(ctx: FormContext, minimal: Iterable[MTriple]) -> list[tuple[int, int, int]]:
    """T_a read off a list of minimal triples."""
    out = set()
    for t in minimal:
        if t.a == ctx.a:
            out.add((t.a, t.b, t.c))
        if t.b == ctx.a:
            out.add((t.b, t.a, t.c))
    return sorted(out)


def _ordered(t: tuple[int, int, int], m: int) -> MTriple:
    a, b, c = t
    if a > b:
        a, b = b, a
    return MTriple(a, b, c, m)


def enumerate_minimal_via_forms(m: int) -> MinimalSet:
    """All minimal triples for m, read off the fundamental solutions for each a."""
    if m < 2:
        raise DomainError(f"m must be at least 2, got {m}")
    found = []
    for ctx in contexts(m):
        for s in fundamental_solutions(ctx):
            found.append(_ordered(fundamental_to_triple(ctx, s), m))
    return build_minimal_set(m, found)


class IdentityCheck(NamedTuple):
    lhs: int
    rhs: int
    ok: bool


def check_count_identity(m: int, minimal: MinimalSet | None = None) -> IdentityCheck:
    """Compare sum_a |S_a| with 2 * #minimal - #improper, also checking |S_a| = |T_a| per a.

    ``minimal`` defaults to the quadratic-form enumeration; pass the
    brute-force set to make the check independent of the forms route.
    """
    if minimal is None:
        minimal = enumerate_minimal_via_forms(m)
    lhs = 0
    per_a_ok = True
    for ctx in contexts(m):
        n_s = len(fundamental_solutions(ctx))
        lhs += n_s
        per_a_ok &= n_s == len(T_set(ctx, minimal.triples))
    improper = sum(1 for t in minimal.triples if t.a == t.b)
    rhs = 2 * len(minimal) - improper
    return IdentityCheck(lhs, rhs, lhs == rhs and per_a_ok)


def wn_count(N: int) -> int | None:
    """Number of primitive fundamental solutions of x^2 - 3xy + y^2 = N.

    None when no primitive representation exists: 25 | N, or some prime
    p | N has (p/5) = -1. Otherwise 2^w(N), halved when 5 | N.
    """
    if N < 2:
        raise DomainError(f"N must be at least 2, got {N}")
    if N % 25 == 0:
        return None
    fac = factorize(N)
    if any(legendre5(p) == -1 for p, _ in fac):
        return None
    return 2 ** (fac.w - 1) if N % 5 == 0 else 2**fac.w


def fundamental_solutions_in_range(a: int, n_lo: int, n_hi: int) -> dict[int, list[FundamentalSolution]]:
    """Fundamental solutions for every N in [n_lo, n_hi] at once, keyed by N.

    Uses the closed description of the fundamental region: for v >= 1 a
    solution is fundamental iff u >= (3a+1) v or u <= -(v+1). On each branch
    F grows monotonically in |u|, so each branch is a contiguous run.
    """
    if a < 1:
        raise DomainError(f"a must be positive, got {a}")
    n_lo = max(n_lo, 1)
    out: dict[int, list[FundamentalSolution]] = {}
    if n_hi < n_lo:
        return out
    k = 3 * a + 2
    d = 9 * a * a - 4
    for u in range(isqrt_ceil(n_lo), isqrt_floor(n_hi) + 1):
        out.setdefault(u * u, []).append(FundamentalSolution(u, 0))
    v = 1
    while v * v * k <= n_hi:
        w = 3 * a * v
        vv = v * v
        # F >= n_lo  <=>  |2u - 3av| >= sqrt(4 n_lo + d v^2)
        s = isqrt_ceil(4 * n_lo + d * vv)
        t = max(v + 1, (s - w + 1) // 2)
        while True:
            n = t * t + w * t + vv
            if n > n_hi:
                break
            out.setdefault(n, []).append(FundamentalSolution(-t, v))
            t += 1
        u = max((3 * a + 1) * v, (s + w + 1) // 2)
        while True:
            n = u * u - w * u + vv
            if n > n_hi:
                break
            out.setdefault(n, []).append(FundamentalSolution(u, v))
            u += 1
        v += 1
    for sols in out.values():
        sols.sort(key=lambda s: (s.v, s.u))
    return out


class RangeForms(NamedTuple):
    triples: dict[int, list[tuple[int, int, int]]]
    s_counts: dict[int, Counter]


def minimal_triples_in_range_via_forms(lo: int, hi: int) -> RangeForms:
    """Minimal triples for every m in [lo, hi] from the batch fundamental solutions.

    Also returns, per m, a Counter of |S_a| keyed by a.
    """
    if lo < 2 or hi < lo:
        raise DomainError(f"invalid range [{lo}, {hi}]")
    found: dict[int, set[tuple[int, int, int]]] = {}
    s_counts: dict[int, Counter] = {}
    a = 1
    while a * a < hi:
        aa = a * a
        for n, sols in fundamental_solutions_in_range(a, lo - aa, hi - aa).items():
            m = n + aa
            s_counts.setdefault(m, Counter())[a] += len(sols)
            bucket = found.setdefault(m, set())
            for u, v in sols:
                if v == 0:
                    b, c = u, 3 * a * u
                elif u > 0:
                    b, c = v, u
                else:
                    b, c = -u, v - 3 * a * u
                bucket.add((a, b, c) if a <= b else (b, a, c))
        a += 1
    return RangeForms({m: sorted(v) for m, v in found.items()}, s_counts)
