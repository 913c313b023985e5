import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import isprime

from liegal.errors import GroupClosureError
from liegal.groups import FiniteGroup


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(range(n), lambda a, b: (a + b) % n, 0)


def symmetric(n: int) -> FiniteGroup:
    # (p * q)(i) = p(q(i))
    perms = list(itertools.permutations(range(n)))
    return FiniteGroup(perms, lambda p, q: tuple(p[q[i]] for i in range(n)), tuple(range(n)))


def alternating(n: int) -> FiniteGroup:
    def even(p):
        return sum(1 for i, j in itertools.combinations(range(n), 2) if p[i] > p[j]) % 2 == 0

    perms = [p for p in itertools.permutations(range(n)) if even(p)]
    return FiniteGroup(perms, lambda p, q: tuple(p[q[i]] for i in range(n)), tuple(range(n)))


def test_klein_four_is_elementary_abelian():
    V = FiniteGroup([(a, b) for a in range(2) for b in range(2)], lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2), (0, 0))
    a = V.analyze()
    assert a.abelian and a.elementary_abelian and not a.cyclic
    assert a.exponent == 2


def test_s3_is_metabelian_and_not_abelian():
    a = symmetric(3).analyze()
    assert a.order == 6
    assert not a.abelian and a.metabelian and a.solvable
    assert a.derived_orders == (6, 3, 1)
    assert a.center_order == 1


def test_s4_is_solvable_but_not_metabelian():
    a = symmetric(4).analyze()
    assert a.derived_orders == (24, 12, 4, 1)
    assert a.solvable and not a.metabelian


def test_a5_is_perfect():
    a = alternating(5).analyze()
    assert a.order == 60
    assert a.derived_orders == (60,)
    assert not a.solvable


def test_inverse_and_element_order():
    G = symmetric(3)
    swap = G.index((1, 0, 2))
    assert G.inverse(swap) == swap
    assert G.element_order(G.index((1, 2, 0))) == 3
    assert G.generated([swap, G.index((1, 2, 0))]) == frozenset(range(6))


def test_closure_is_checked():
    G = FiniteGroup([0, 1], lambda a, b: (a + b) % 3, 0)
    assert not G.is_closed()
    with pytest.raises(GroupClosureError):
        G.analyze()
    with pytest.raises(GroupClosureError):
        FiniteGroup([1, 2], lambda a, b: a * b, 0)
    with pytest.raises(ValueError):
        FiniteGroup([0, 0], lambda a, b: 0, 0)


@given(st.integers(1, 40))
def test_cyclic_groups(n):
    a = cyclic(n).analyze()
    assert a.cyclic and a.abelian and a.metabelian
    assert a.exponent == n
    assert a.center_order == n
    assert a.elementary_abelian == (n == 1 or isprime(n))
