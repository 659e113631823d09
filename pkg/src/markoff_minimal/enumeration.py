"""Exhaustive search for minimal triples inside their a priori bounds.

For a minimal triple, a <= sqrt(m/2), a <= b <= sqrt(m - a^2) and
3ab <= c <= 3ab + sqrt(m - a^2 - b^2).  Walking that box and keeping the
solutions finds every minimal triple; this is the reference enumerator the
quadratic-form route in :mod:`markoff_minimal.forms` is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, NamedTuple

from .errors import DomainError, InvariantViolation
from .kernel import isqrt_ceil, isqrt_exact, isqrt_floor
from .triples import MTriple, is_minimal, ord_of, order_class

# Above this m the innermost c-loop is replaced by solving the quadratic in c.
C_SCAN_LIMIT = 1000

InnerMode = Literal["auto", "scan", "solve"]


class CountSummary(NamedTuple):
    total: int
    n1: int
    n2: int
    n3: int
    n_improper: int


@dataclass(frozen=True)
class MinimalSet:
    """The minimal triples of one m, sorted, with their partition by order."""

    m: int
    triples: tuple[MTriple, ...]
    by_order: dict[int, tuple[MTriple, ...]] = field(compare=False)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    @property
    def abc(self) -> list[tuple[int, int, int]]:
        return [t.abc for t in self.triples]


def build_minimal_set(m: int, triples: Iterable[MTriple], check_order: bool = True) -> MinimalSet:
    """Sort, deduplicate and partition; ``check_order`` uses the two-way order check."""
    uniq = tuple(sorted(set(triples)))
    groups: dict[int, list[MTriple]] = {1: [], 2: [], 3: []}
    for t in uniq:
        if t.m != m:
            raise DomainError(f"triple {t} belongs to m={t.m}, not m={m}")
        ok, phi = is_minimal(t)
        if not ok:
            raise InvariantViolation(f"{t} is not minimal for m={m}")
        k = ord_of(t) if check_order else order_class(t.a, t.b, phi)
        groups[k].append(t)
    if len(groups[2]) % 2 or len(groups[3]) % 3:
        raise InvariantViolation(
            f"m={m}: order classes of sizes {len(groups[2])} (order 2) and "
            f"{len(groups[3])} (order 3) are not multiples of 2 and 3"
        )
    return MinimalSet(m, uniq, {k: tuple(v) for k, v in groups.items()})


def _c_candidates(m: int, a: int, b: int, inner: str):
    base = 3 * a * b
    rest = m - a * a - b * b
    if inner == "scan":
        for c in range(max(base, b), base + isqrt_floor(rest) + 1):
            if a * a + b * b + c * c - 3 * a * b * c == m:
                yield c
        return
    # c^2 - 3ab c + (a^2 + b^2 - m) = 0, discriminant 9a^2b^2 + 4 rest
    root, exact = isqrt_exact(base * base + 4 * rest)
    if exact and (base + root) % 2 == 0:
        c = (base + root) // 2
        if c >= max(base, b):
            yield c


def enumerate_minimal_bruteforce(
    m: int, inner: InnerMode = "auto", shortcut_mod4: bool = False
) -> MinimalSet:
    """All minimal triples for m by bounded search.

    ``inner`` selects the c-loop ("scan") or a direct quadratic solve
    ("solve"); "auto" scans for m <= C_SCAN_LIMIT. With ``shortcut_mod4``
    the m = 3 (mod 4) case returns immediately; otherwise the search still
    runs and its emptiness is asserted.
    """
    if m < 2:
        raise DomainError(f"m must be at least 2, got {m}")
    if inner == "auto":
        inner = "scan" if m <= C_SCAN_LIMIT else "solve"
    elif inner not in ("scan", "solve"):
        raise DomainError(f"unknown inner mode {inner!r}")
    if shortcut_mod4 and m % 4 == 3:
        return build_minimal_set(m, ())
    found = []
    for a in range(1, isqrt_floor(m // 2) + 1):
        for b in range(a, isqrt_floor(m - a * a) + 1):
            for c in _c_candidates(m, a, b, inner):
                found.append(MTriple(a, b, c, m))
    if m % 4 == 3 and found:
        raise InvariantViolation(f"m={m} = 3 mod 4 but solutions {found[:3]} were found")
    return build_minimal_set(m, found)


def count_summary(s: MinimalSet) -> CountSummary:
    improper = sum(1 for t in s.triples if t.a == t.b)
    return CountSummary(len(s), len(s.by_order[1]), len(s.by_order[2]), len(s.by_order[3]), improper)


def minimal_triples_in_range(lo: int, hi: int) -> dict[int, list[tuple[int, int, int]]]:
    """Every minimal triple with lo <= m <= hi, keyed by m.

    Walks (a, b, phi) with c = 3ab + phi, so m = a^2 + b^2 + phi * c; for
    fixed (a, b) the value of m grows with phi. Lists are sorted.
    """
    if lo < 2 or hi < lo:
        raise DomainError(f"invalid range [{lo}, {hi}]")
    out: dict[int, list[tuple[int, int, int]]] = {}
    a = 1
    while 2 * a * a <= hi:
        b = a
        while a * a + b * b <= hi:
            base = 3 * a * b
            need = lo - a * a - b * b
            # smallest phi >= 0 with phi^2 + base*phi >= need
            phi = 0 if need <= 0 else max(0, (isqrt_ceil(4 * need + base * base) - base + 1) // 2)
            while True:
                c = base + phi
                m = a * a + b * b + phi * c
                if m > hi:
                    break
                if m >= lo:
                    out.setdefault(m, []).append((a, b, c))
                phi += 1
            b += 1
        a += 1
    for v in out.values():
        v.sort()
    return out
