"""Finite abelian groups and their second cohomology with U(1) coefficients.

Cocycles are exact tables of :class:`~modcat.scalars.PhaseQ` indexed by
element positions in lexicographic order of the coordinate vectors.
Classes are enumerated by alternating bicharacters and compared through the
commutator ``psi(g,h)/psi(h,g)``, which is a complete invariant for abelian
groups.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product

import numpy as np

from .errors import IncompleteTable, InputError, TooLarge
from .scalars import ONE, PhaseQ

__all__ = [
    "AbelianGroup",
    "Cocycle2",
    "is_cocycle",
    "cohomology_classes",
    "coboundary_equiv",
    "coboundary",
    "commutator",
    "trivial_cocycle",
    "bicharacter_cocycle",
    "abelian_groups_of_order",
    "MAX_ORDER",
]

MAX_ORDER = 256

Element = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """Product of cyclic groups ``Z_{n_1} x ... x Z_{n_r}``."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if any(n < 1 for n in orders):
            raise InputError("cyclic orders must be >= 1")
        object.__setattr__(self, "orders", orders)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    def elements(self) -> list[Element]:
        return [tuple(e) for e in product(*(range(n) for n in self.orders))]

    @cached_property
    def _index(self) -> dict[Element, int]:
        return {e: i for i, e in enumerate(self.elements())}

    def index(self, g: Element) -> int:
        return self._index[tuple(x % n for x, n in zip(g, self.orders))]

    @property
    def identity(self) -> Element:
        return tuple(0 for _ in self.orders)

    def add(self, g: Element, h: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def neg(self, g: Element) -> Element:
        return tuple((-a) % n for a, n in zip(g, self.orders))

    @cached_property
    def mul_table(self) -> list[list[int]]:
        els = self.elements()
        return [[self.index(self.add(g, h)) for h in els] for g in els]

    @cached_property
    def inverse(self) -> list[int]:
        return [self.index(self.neg(g)) for g in self.elements()]

    def to_json(self) -> dict:
        return {"orders": list(self.orders)}

    @classmethod
    def from_json(cls, obj) -> "AbelianGroup":
        if isinstance(obj, dict):
            obj = obj["orders"]
        return cls(tuple(obj))


@dataclass(frozen=True)
class Cocycle2:
    """A 2-cochain ``psi: G x G -> U(1)`` as a dense table of phases."""

    group: AbelianGroup
    table: tuple[tuple[PhaseQ, ...], ...]

    def __post_init__(self):
        n = self.group.order
        try:
            table = tuple(tuple(row) for row in self.table)
        except TypeError as exc:
            raise IncompleteTable("cocycle table must be a square array") from exc
        if len(table) != n or any(len(row) != n for row in table):
            raise IncompleteTable(f"cocycle table must be {n} x {n}")
        if any(not isinstance(x, PhaseQ) for row in table for x in row):
            raise IncompleteTable("cocycle table entries must be PhaseQ")
        object.__setattr__(self, "table", table)

    def __call__(self, i: int, j: int) -> PhaseQ:
        return self.table[i][j]

    def __mul__(self, other: "Cocycle2") -> "Cocycle2":
        return Cocycle2(self.group, tuple(tuple(a * b for a, b in zip(r1, r2))
                                          for r1, r2 in zip(self.table, other.table)))

    def inverse(self) -> "Cocycle2":
        return Cocycle2(self.group, tuple(tuple(~a for a in row) for row in self.table))

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "table": [[p.to_json() for p in row] for row in self.table]}

    @classmethod
    def from_json(cls, obj: dict) -> "Cocycle2":
        try:
            group = AbelianGroup.from_json(obj["group"])
            table = tuple(tuple(PhaseQ.from_json(p) for p in row) for row in obj["table"])
        except (KeyError, TypeError) as exc:
            raise IncompleteTable(f"malformed cocycle: {exc}") from exc
        return cls(group, table)


def trivial_cocycle(g: AbelianGroup) -> Cocycle2:
    n = g.order
    return Cocycle2(g, tuple(tuple(ONE for _ in range(n)) for _ in range(n)))


def _as_integers(psi: Cocycle2) -> tuple[np.ndarray, int]:
    """The table as integers modulo the common denominator L."""
    L = math.lcm(*(p.den for row in psi.table for p in row))
    return np.array([[p.num * (L // p.den) for p in row] for row in psi.table], dtype=np.int64), L


def is_cocycle(g: AbelianGroup, psi: Cocycle2) -> bool:
    """Exact normalized 2-cocycle test."""
    if psi.group.order != g.order or len(psi.table) != g.order:
        raise IncompleteTable("cocycle table does not match the group")
    t, L = _as_integers(psi)
    mt = np.array(g.mul_table)
    e = g.index(g.identity)
    if t[e].any() or t[:, e].any():
        return False
    # psi(a,b) psi(ab,c) = psi(b,c) psi(a,bc), all triples at once
    lhs = t[:, :, None] + t[mt[:, :, None], np.arange(g.order)[None, None, :]]
    rhs = t[None, :, :] + t[np.arange(g.order)[:, None, None], mt[None, :, :]]
    return not np.mod(lhs - rhs, L).any()


def coboundary(g: AbelianGroup, phi) -> Cocycle2:
    """``(d phi)(a,b) = phi(a) phi(b) / phi(ab)`` for a 1-cochain given as a list of PhaseQ."""
    mt = g.mul_table
    n = g.order
    return Cocycle2(g, tuple(tuple(phi[a] * phi[b] * ~phi[mt[a][b]] for b in range(n)) for a in range(n)))


def commutator(psi: Cocycle2) -> tuple[tuple[PhaseQ, ...], ...]:
    """``psi(a,b) / psi(b,a)``; invariant under multiplication by coboundaries."""
    t = psi.table
    n = len(t)
    return tuple(tuple(t[a][b] * ~t[b][a] for b in range(n)) for a in range(n))


def coboundary_equiv(g: AbelianGroup, psi1: Cocycle2, psi2: Cocycle2) -> bool:
    return commutator(psi1) == commutator(psi2)


def bicharacter_cocycle(g: AbelianGroup, coeffs: dict[tuple[int, int], int]) -> Cocycle2:
    """``psi(x,y) = prod_{i<j} exp(2 pi i c_ij x_i y_j / gcd(n_i, n_j))``."""
    els = g.elements()
    orders = g.orders

    def value(x, y):
        f = Fraction(0)
        for (i, j), c in coeffs.items():
            f += Fraction(c * x[i] * y[j], math.gcd(orders[i], orders[j]))
        return PhaseQ.from_fraction(f)

    return Cocycle2(g, tuple(tuple(value(x, y) for y in els) for x in els))


def cohomology_classes(g: AbelianGroup) -> list[Cocycle2]:
    """One bicharacter representative per class of H^2(G, U(1)); trivial class first."""
    if g.order > MAX_ORDER:
        raise TooLarge(f"|G| = {g.order} exceeds {MAX_ORDER}")
    pairs = [(i, j) for i, j in combinations(range(len(g.orders)), 2)
             if math.gcd(g.orders[i], g.orders[j]) > 1]
    ranges = [range(math.gcd(g.orders[i], g.orders[j])) for i, j in pairs]
    return [bicharacter_cocycle(g, dict(zip(pairs, cs))) for cs in product(*ranges)]


def abelian_groups_of_order(n: int) -> list[AbelianGroup]:
    """All abelian groups of order n up to isomorphism, as invariant factors ``d_1 | d_2 | ...``."""
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, prefix: tuple[int, ...]):
        if remaining == 1:
            out.append(prefix)
            return
        lo = prefix[-1] if prefix else 2
        for d in range(lo, remaining + 1):
            if remaining % d == 0 and (not prefix or d % prefix[-1] == 0):
                rec(remaining // d, prefix + (d,))

    if n == 1:
        return [AbelianGroup((1,))]
    rec(n, ())
    return [AbelianGroup(t) for t in out]
