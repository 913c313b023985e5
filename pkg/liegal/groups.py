"""
liegal.groups – Structure of small finite groups
================================================

A ``FiniteGroup`` wraps an explicit list of hashable elements and their
multiplication.  The Cayley table is built on first use; building it also
proves closure, since every product has to be found among the elements.
Everything after that (inverses, orders, commutator subgroups, the derived
series) works on integer indices into the table.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import lcm
from typing import Callable, Hashable, Iterable, Optional, Sequence

from sympy import factorint

from liegal.errors import GroupClosureError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupAnalysis:
    order: int
    abelian: bool
    cyclic: bool
    elementary_abelian: bool
    metabelian: bool
    solvable: bool
    derived_orders: tuple[int, ...]
    exponent: int
    center_order: int

    def as_dict(self) -> dict[str, bool]:
        return {
            "abelian": self.abelian,
            "cyclic": self.cyclic,
            "elementary_abelian": self.elementary_abelian,
            "metabelian": self.metabelian,
            "solvable": self.solvable,
        }


class FiniteGroup:
    def __init__(self, elements: Sequence[Hashable], multiply: Callable, identity: Hashable):
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("group elements must be distinct")
        if identity not in self._index:
            raise GroupClosureError("identity is not among the elements")
        self.identity = self._index[identity]
        self._multiply = multiply
        self._table: Optional[list[list[int]]] = None
        self._inverse: Optional[list[int]] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, element: Hashable) -> int:
        return self._index[element]

    @property
    def table(self) -> list[list[int]]:
        if self._table is None:
            rows = []
            for a in self.elements:
                row = []
                for b in self.elements:
                    prod = self._multiply(a, b)
                    try:
                        row.append(self._index[prod])
                    except KeyError:
                        raise GroupClosureError("the element set is not closed under multiplication")
                rows.append(row)
            self._table = rows
            log.debug("Cayley table of order %d built", self.order)
        return self._table

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        if self._inverse is None:
            inv = [-1] * self.order
            for a, row in enumerate(self.table):
                inv[a] = row.index(self.identity)
            self._inverse = inv
        return self._inverse[i]

    def element_order(self, i: int) -> int:
        k, cur = 1, i
        while cur != self.identity:
            cur = self.mul(cur, i)
            k += 1
        return k

    def is_closed(self) -> bool:
        try:
            self.table
        except GroupClosureError:
            return False
        return True

    def generated(self, indices: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by *indices* (closure under products)."""
        gens = list(dict.fromkeys(indices))
        group = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in group:
                        group.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(group)

    def commutator_subgroup(self, subgroup: Iterable[int]) -> frozenset[int]:
        sub = sorted(subgroup)
        comms = {
            self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b))
            for a in sub
            for b in sub
        }
        return self.generated(comms)

    def derived_series(self) -> list[frozenset[int]]:
        series = [frozenset(range(self.order))]
        while True:
            nxt = self.commutator_subgroup(series[-1])
            if nxt == series[-1]:
                return series
            series.append(nxt)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.order) for j in range(i + 1, self.order))

    def center_order(self) -> int:
        t = self.table
        return sum(1 for i in range(self.order) if all(t[i][j] == t[j][i] for j in range(self.order)))

    def analyze(self) -> GroupAnalysis:
        series = self.derived_series()
        orders = [self.element_order(i) for i in range(self.order)]
        abelian = self.is_abelian()
        exponent = lcm(*orders)
        primes = list(factorint(self.order)) if self.order > 1 else []
        elementary = abelian and (self.order == 1 or (len(primes) == 1 and exponent == primes[0]))
        return GroupAnalysis(
            order=self.order,
            abelian=abelian,
            cyclic=max(orders) == self.order,
            elementary_abelian=elementary,
            metabelian=len(series) <= 3 and len(series[-1]) == 1,
            solvable=len(series[-1]) == 1,
            derived_orders=tuple(len(s) for s in series),
            exponent=exponent,
            center_order=self.center_order(),
        )

