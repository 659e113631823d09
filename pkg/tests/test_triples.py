import random

import pytest

from markoff_minimal.enumeration import enumerate_minimal_bruteforce
from markoff_minimal.forms import enumerate_minimal_via_forms
from markoff_minimal.errors import DomainError, TripleError
from markoff_minimal.tree import expand, roots
from markoff_minimal.triples import (
    MTriple,
    derived_minimal_triples,
    derived_via_involutions,
    descend,
    is_minimal,
    make_triple,
    minimal_bounds_hold,
    ord_of,
    order_components,
    root_of,
    sign_transform,
    vieta,
)


def T(m, a, b, c):
    return make_triple(m, a, b, c)


def test_make_triple_valid():
    assert T(5, 1, 2, 6).abc == (1, 2, 6)
    assert T(12, 1, 5, 14).abc == (1, 5, 14)


def test_make_triple_reports_residual():
    with pytest.raises(TripleError) as info:
        T(5, 1, 2, 7)
    # 1 + 4 + 49 - 3*1*2*7 - 5
    assert info.value.residual == 7


def test_m_at_most_one_rejected():
    with pytest.raises(DomainError):
        MTriple(0, 0, 1, 1)


def test_vieta_examples():
    assert vieta(1, T(5, 1, 2, 6)).abc == (35, 2, 6)
    assert vieta(3, T(5, 1, 2, 6)).abc == (1, 2, 0)
    t = T(12, 1, 2, 7)
    assert vieta(3, vieta(3, t)) == t


def test_sign_examples():
    t = T(5, 1, 2, 6)
    assert sign_transform(1, t).abc == (1, -2, -6)
    assert sign_transform(3, t).abc == (-1, -2, 6)
    assert sign_transform(2, sign_transform(2, t)) == t


@pytest.mark.parametrize(
    "m, given, ordered",
    [(12, (5, 1, 1), (1, 1, 5)), (5, (6, 2, 1), (1, 2, 6)), (45, (4, 2, 25), (2, 4, 25))],
)
def test_order_components(m, given, ordered):
    assert order_components(T(m, *given)).abc == ordered


def test_order_components_rejects_nonpositive():
    with pytest.raises(DomainError):
        order_components(T(5, 1, 2, 0))


@pytest.mark.parametrize(
    "m, abc, minimal, phi",
    [(5, (1, 2, 6), True, 0), (12, (1, 2, 7), True, 1), (5, (2, 6, 35), False, 35 - 36)],
)
def test_is_minimal(m, abc, minimal, phi):
    assert is_minimal(T(m, *abc)) == (minimal, phi)


@pytest.mark.parametrize("m, abc, order", [(5, (1, 2, 6), 1), (12, (1, 1, 5), 2), (32, (1, 2, 9), 3)])
def test_ord_of_examples(m, abc, order):
    assert ord_of(T(m, *abc)) == order


def test_descend_examples():
    d = descend(T(5, 6, 16, 287))
    assert d.minimal.abc == (1, 2, 6)
    assert [t.abc for t in d.path] == [(1, 6, 16), (1, 2, 6)]
    assert descend(T(12, 1, 5, 14)).minimal.abc == (1, 1, 5)
    d = descend(T(5, 1, 2, 6))
    assert d.minimal.abc == (1, 2, 6) and d.path == ()


def test_root_examples():
    assert root_of(T(5, 1, 2, 6)).abc == (1, 2, 6)
    assert root_of(T(12, 1, 1, 5)).abc == (1, 5, 14)
    assert root_of(T(8, 2, 2, 12)).abc == (2, 12, 70)


def _tree_nodes(max_m=100, depth=6):
    for m in range(2, max_m + 1):
        for r in roots(m):
            yield from (n.triple for n in expand(m, r, depth).nodes)


@pytest.fixture(scope="module")
def tree_sample():
    rng = random.Random(1)
    nodes = list(_tree_nodes())
    return rng.sample(nodes, 3000)


def test_involutions_preserve_equation(tree_sample):
    for t in tree_sample:
        for i in (1, 2, 3):
            # construction re-validates the equation
            assert vieta(i, vieta(i, t)) == t
            assert sign_transform(i, sign_transform(i, t)) == t


@pytest.fixture(scope="module")
def ordered_solutions():
    """Every minimal triple with m <= 2000 plus its tree nodes down to depth 4."""
    out = []
    for m in range(2, 2001):
        for t in enumerate_minimal_bruteforce(m):
            out.append(t)
            out.extend(n.triple for n in expand(m, root_of(t), 4).nodes)
    return out


def test_ordered_triples_satisfy_3ab_below_b_plus_c(ordered_solutions):
    for t in ordered_solutions:
        assert 3 * t.a * t.b < t.b + t.c


def test_improper_ordered_triples_are_minimal_with_equal_first_pair(ordered_solutions):
    improper = [t for t in ordered_solutions if not t.is_proper]
    assert improper
    for t in improper:
        assert t.a == t.b and is_minimal(t)[0]


def test_no_solution_has_equal_top_pair():
    # b == c would need a^2 + 2b^2 = 3ab^2 + m, impossible for a >= 1
    for m in range(2, 2001):
        for a in range(1, 30):
            for b in range(a, 60):
                assert a * a + 2 * b * b - 3 * a * b * b != m


def test_minimal_bounds_and_factor_identity():
    for m in range(2, 2001):
        for t in enumerate_minimal_bruteforce(m):
            assert minimal_bounds_hold(t)
            if t.a == t.b:
                assert 9 * m - 4 == (3 * t.c - 2) * (3 * t.c - 9 * t.a**2 + 2)


def test_order_two_ways_agree():
    for m in range(2, 5001):
        for t in enumerate_minimal_via_forms(m):
            ord_of(t)  # raises on disagreement
            if t.phi:
                assert derived_minimal_triples(t) == derived_via_involutions(t)


def test_descend_returns_generating_minimal():
    for m in range(2, 101):
        for r in roots(m):
            minimal = descend(r).minimal
            for node in expand(m, r, 6).nodes:
                assert descend(node.triple).minimal == minimal
