"""Triples of the equation a^2 + b^2 + c^2 = 3abc + m and their algebra.

A :class:`MTriple` can only be built when the equation holds, so every
function here that returns one also re-checks the equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import DomainError, InvariantViolation, TripleError
from .kernel import isqrt_floor

Index = Literal[1, 2, 3]


def residual(m: int, a: int, b: int, c: int) -> int:
    return a * a + b * b + c * c - 3 * a * b * c - m


@dataclass(frozen=True, order=True)
class MTriple:
    """A solution (a, b, c) for parameter m. Compares lexicographically by (a, b, c)."""

    a: int
    b: int
    c: int
    m: int

    def __post_init__(self):
        if self.m <= 1:
            raise DomainError(f"m must exceed 1, got {self.m}")
        if residual(self.m, self.a, self.b, self.c) != 0:
            raise TripleError(self.m, self.a, self.b, self.c)

    @property
    def abc(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def phi(self) -> int:
        """c - 3ab; non-negative exactly for minimal triples."""
        return self.c - 3 * self.a * self.b

    @property
    def is_positive(self) -> bool:
        return self.a > 0 and self.b > 0 and self.c > 0

    @property
    def is_ordered(self) -> bool:
        return 0 < self.a <= self.b <= self.c

    @property
    def is_proper(self) -> bool:
        return len({self.a, self.b, self.c}) == 3

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def make_triple(m: int, a: int, b: int, c: int) -> MTriple:
    """Validate and build a triple; raises :class:`TripleError` with the residual."""
    return MTriple(a, b, c, m)


def vieta(i: Index, t: MTriple) -> MTriple:
    """Vieta involution replacing component i by (3 * product of the others) - itself."""
    a, b, c = t.abc
    if i == 1:
        return MTriple(3 * b * c - a, b, c, t.m)
    if i == 2:
        return MTriple(a, 3 * a * c - b, c, t.m)
    if i == 3:
        return MTriple(a, b, 3 * a * b - c, t.m)
    raise DomainError(f"vieta index must be 1, 2 or 3, got {i}")


def sign_transform(i: Index, t: MTriple) -> MTriple:
    """Negate the two components other than component i."""
    a, b, c = t.abc
    if i == 1:
        return MTriple(a, -b, -c, t.m)
    if i == 2:
        return MTriple(-a, b, -c, t.m)
    if i == 3:
        return MTriple(-a, -b, c, t.m)
    raise DomainError(f"sign index must be 1, 2 or 3, got {i}")


def order_components(t: MTriple) -> MTriple:
    if not t.is_positive:
        raise DomainError(f"cannot order {t}: components must be positive")
    a, b, c = sorted(t.abc)
    return MTriple(a, b, c, t.m)


def is_minimal(t: MTriple) -> tuple[bool, int]:
    """Return ``(minimal, phi)`` for an ordered triple.

    Minimality is decided twice, by 3ab <= c and by a^2 + b^2 <= m; the two
    tests are equivalent for ordered solutions and must agree.
    """
    if not t.is_ordered:
        raise DomainError(f"{t} is not an ordered positive triple")
    phi = t.phi
    by_phi = phi >= 0
    by_norm = t.a * t.a + t.b * t.b <= t.m
    if by_phi != by_norm:
        raise InvariantViolation(
            f"{t}, m={t.m}: 3ab <= c gives {by_phi} but a^2+b^2 <= m gives {by_norm}"
        )
    return by_phi, phi


def _require_minimal(t: MTriple) -> int:
    ok, phi = is_minimal(t)
    if not ok:
        raise DomainError(f"{t} is not minimal for m={t.m}")
    return phi


def order_class(a: int, b: int, phi: int) -> int:
    """Order of a minimal triple from (a, b, phi): 1 if phi == 0, else #{a, b, phi}."""
    return 1 if phi == 0 else len({a, b, phi})


def derived_minimal_triples(t: MTriple) -> tuple[MTriple, MTriple]:
    """The two neighbours o(phi, a, 3a*phi + b) and o(phi, b, 3b*phi + a), ordered."""
    phi = t.phi
    m = t.m
    first = order_components(MTriple(phi, t.a, 3 * t.a * phi + t.b, m))
    second = order_components(MTriple(phi, t.b, 3 * t.b * phi + t.a, m))
    return first, second


def derived_via_involutions(t: MTriple) -> tuple[MTriple, MTriple]:
    """Same neighbours as :func:`derived_minimal_triples`, built as S1 V2 V3 and S2 V1 V3."""
    w = vieta(3, t)
    first = sign_transform(1, vieta(2, w))
    second = sign_transform(2, vieta(1, w))
    # S1 V2 V3 (a,b,c) = (a, 3a*phi + b, phi); S2 V1 V3 (a,b,c) = (3b*phi + a, b, phi)
    return order_components(first), order_components(second)


def ord_of(t: MTriple) -> int:
    """Order (1, 2 or 3) of a minimal triple, computed two independent ways."""
    phi = _require_minimal(t)
    by_set = order_class(t.a, t.b, phi)
    if phi == 0:
        return by_set
    derived = derived_minimal_triples(t)
    for d in derived:
        if not is_minimal(d)[0]:
            raise InvariantViolation(f"neighbour {d} of minimal {t} (m={t.m}) is not minimal")
    by_count = len({t, *derived})
    if by_count != by_set:
        raise InvariantViolation(
            f"order of {t} (m={t.m}): #{{a,b,phi}}={by_set} but derived count={by_count}"
        )
    return by_set


@dataclass(frozen=True)
class Descent:
    minimal: MTriple
    path: tuple[MTriple, ...]


def descend(t: MTriple) -> Descent:
    """Walk an ordered triple down to its minimal triple.

    Applies V3 and re-orders until the V3 image would have a non-positive
    third component. ``path`` lists each ordered triple reached after ``t``.
    """
    if not t.is_ordered:
        raise DomainError(f"{t} is not an ordered positive triple")
    path = []
    cur = t
    while True:
        nxt = 3 * cur.a * cur.b - cur.c
        if nxt <= 0:
            break
        if nxt >= cur.c:
            raise InvariantViolation(f"descent from {cur} (m={cur.m}) did not decrease")
        a, b, c = sorted((cur.a, cur.b, nxt))
        cur = MTriple(a, b, c, t.m)
        path.append(cur)
    if not is_minimal(cur)[0]:
        raise InvariantViolation(f"descent of {t} stopped at non-minimal {cur}")
    return Descent(cur, tuple(path))


def root_of(t: MTriple) -> MTriple:
    """Root of the solution tree generated by a minimal triple."""
    _require_minimal(t)
    if t.is_proper:
        return t
    if t.a != t.b:
        raise InvariantViolation(f"improper minimal triple {t} has a != b")
    return MTriple(t.a, t.c, 3 * t.a * t.c - t.b, t.m)


def minimal_bounds_hold(t: MTriple) -> bool:
    """Exact integer form of the size bounds every minimal triple obeys."""
    a, b, c, m = t.a, t.b, t.c, t.m
    rest = m - a * a - b * b
    if rest < 0:
        return False
    if a > isqrt_floor(m // 2):
        return False
    if c * c <= m:
        return False
    if c != 3 * a * b and c >= m:
        return False
    return 3 * a * b <= c <= 3 * a * b + isqrt_floor(rest)
