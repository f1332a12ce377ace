"""Crystallographic root systems in simple-root coordinates.

Conventions: Bourbaki node numbering, ``cartan[i][j] = <alpha_j, alpha_i^vee>``
(0-based storage, 1-based node labels in the public API) and
``s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i``.  A root is a tuple of
integer coefficients in the simple-root basis.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

from .errors import InvalidDiagram, InvalidRank, NotARoot

Root = tuple[int, ...]

RANK_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

_FACTOR = re.compile(r"^([A-Ga-g])(\d+)$")


def _check_rank(letter: str, rank: int) -> None:
    lo, hi = RANK_BOUNDS[letter]
    if rank < lo or (hi is not None and rank > hi):
        raise InvalidRank(f"{letter}{rank}: rank must be in [{lo}, {hi or 'inf'}]")


def cartan_factor(letter: str, rank: int) -> list[list[int]]:
    """Cartan matrix of one simple factor, 0-based, Bourbaki numbering."""
    _check_rank(letter, rank)
    n = rank
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, cij=-1, cji=-1):
        # 1-based node labels
        C[i - 1][j - 1] = cij
        C[j - 1][i - 1] = cji

    if letter in "ABC":
        for i in range(1, n):
            bond(i, i + 1)
        if letter == "B" and n >= 2:
            # alpha_n short
            bond(n - 1, n, -1, -2)
        elif letter == "C" and n >= 2:
            # alpha_n long
            bond(n - 1, n, -2, -1)
    elif letter == "D":
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 2, n)
    elif letter == "E":
        bond(1, 3)
        bond(2, 4)
        for i in range(3, n):
            bond(i, i + 1)
    elif letter == "F":
        bond(1, 2)
        bond(2, 3, -1, -2)
        bond(3, 4)
    elif letter == "G":
        # alpha_1 short, alpha_2 long
        bond(1, 2, -3, -1)
    return C


@dataclass(frozen=True)
class DynkinDiagram:
    """Concatenation of simple factors, e.g. ``(("A", 2), ("A", 1))``.

    Nodes are numbered 1..rank globally, factor by factor.
    """

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise InvalidDiagram("a diagram needs at least one factor")
        norm = []
        for letter, rank in self.factors:
            letter = str(letter).upper()
            if letter not in RANK_BOUNDS:
                raise InvalidDiagram(f"unknown type letter {letter!r}")
            _check_rank(letter, int(rank))
            norm.append((letter, int(rank)))
        object.__setattr__(self, "factors", tuple(norm))

    @classmethod
    def parse(cls, text: str) -> "DynkinDiagram":
        """Parse ``"D6"`` or ``"A2xA1"``."""
        parts = [p.strip() for p in str(text).strip().split("x")]
        factors = []
        for p in parts:
            m = _FACTOR.match(p)
            if not m:
                raise InvalidDiagram(f"cannot parse diagram factor {p!r} in {text!r}")
            factors.append((m.group(1).upper(), int(m.group(2))))
        return cls(tuple(factors))

    def __str__(self):
        return "x".join(f"{t}{r}" for t, r in self.factors)

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.factors)

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        C = [[0] * n for _ in range(n)]
        off = 0
        for letter, r in self.factors:
            block = cartan_factor(letter, r)
            for i in range(r):
                for j in range(r):
                    C[off + i][off + j] = block[i][j]
            off += r
        return tuple(tuple(row) for row in C)

    @cached_property
    def edges(self) -> dict[tuple[int, int], int]:
        """``{(i, j): multiplicity}`` for i < j, 1-based."""
        C = self.cartan
        out = {}
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                if C[i][j]:
                    out[(i + 1, j + 1)] = C[i][j] * C[j][i]
        return out


def _as_nodes(K: Iterable[int] | None, rank: int) -> frozenset[int]:
    if K is None:
        return frozenset(range(1, rank + 1))
    K = frozenset(int(k) for k in K)
    bad = [k for k in K if not 1 <= k <= rank]
    if bad:
        raise InvalidDiagram(f"node indices {sorted(bad)} out of range 1..{rank}")
    return K


def height(beta: Root) -> int:
    return sum(beta)


def is_positive(beta: Root) -> bool:
    return all(c >= 0 for c in beta) and any(beta)


def is_negative(beta: Root) -> bool:
    return all(c <= 0 for c in beta) and any(beta)


def support(beta: Root) -> frozenset[int]:
    return frozenset(i + 1 for i, c in enumerate(beta) if c)


def _canonical(roots: Iterable[Root]) -> tuple[Root, ...]:
    return tuple(sorted(roots, key=lambda b: (height(b), b)))


class RootSystem:
    """Root system of a Dynkin diagram.

    Use :func:`build_root_system`, which caches one instance per diagram.
    """

    def __init__(self, diagram: DynkinDiagram):
        self.diagram = diagram
        self.cartan = diagram.cartan
        self.rank = diagram.rank
        self.positive_roots = self._close_positive()
        self._root_set = frozenset(self.positive_roots) | frozenset(
            tuple(-c for c in b) for b in self.positive_roots
        )

    def __repr__(self):
        return f"RootSystem({self.diagram})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and other.diagram == self.diagram

    def __hash__(self):
        return hash(("RootSystem", self.diagram))

    def __reduce__(self):
        return (build_root_system, (self.diagram,))

    def simple_root(self, i: int) -> Root:
        return tuple(int(k == i - 1) for k in range(self.rank))

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(self.simple_root(i) for i in self.diagram.nodes)

    @property
    def roots(self) -> frozenset[Root]:
        return self._root_set

    def is_root(self, beta) -> bool:
        return tuple(beta) in self._root_set

    def _reflect(self, i: int, beta: Root) -> Root:
        row = self.cartan[i]
        pairing = sum(c * b for c, b in zip(row, beta))
        if not pairing:
            return beta
        out = list(beta)
        out[i] -= pairing
        return tuple(out)

    def _close_positive(self) -> tuple[Root, ...]:
        found = set()
        frontier = [self.simple_root(i) for i in range(1, self.rank + 1)]
        found.update(frontier)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(self.rank):
                    gamma = self._reflect(i, beta)
                    if gamma not in found and is_positive(gamma):
                        found.add(gamma)
                        nxt.append(gamma)
            frontier = nxt
        return _canonical(found)

    def reflect(self, i: int, beta) -> Root:
        """Simple reflection ``s_i`` applied to the root ``beta``."""
        beta = tuple(int(c) for c in beta)
        if len(beta) != self.rank or beta not in self._root_set:
            raise NotARoot(f"{beta} is not a root of {self.diagram}")
        if not 1 <= i <= self.rank:
            raise InvalidDiagram(f"node {i} out of range 1..{self.rank}")
        return self._reflect(i - 1, beta)

    def nodes(self, K=None) -> frozenset[int]:
        return _as_nodes(K, self.rank)

    def sub_roots(self, K) -> list[Root]:
        """All roots (positive then negative) whose support lies in ``K``."""
        K = _as_nodes(K, self.rank)
        pos = [b for b in self.positive_roots if support(b) <= K]
        return pos + [tuple(-c for c in b) for b in pos]

    def sub_roots_by_closure(self, K) -> list[Root]:
        """Same set as :meth:`sub_roots`, computed as the orbit of the simple
        roots in ``K`` under the reflections ``s_k``, ``k`` in ``K``."""
        K = sorted(_as_nodes(K, self.rank))
        seen = {self.simple_root(k) for k in K}
        frontier = list(seen)
        while frontier:
            nxt = []
            for beta in frontier:
                for k in K:
                    gamma = self._reflect(k - 1, beta)
                    if gamma not in seen:
                        seen.add(gamma)
                        nxt.append(gamma)
            frontier = nxt
        pos = _canonical(b for b in seen if is_positive(b))
        return list(pos) + [tuple(-c for c in b) for b in pos]

    def components(self, K=None) -> list[tuple[int, ...]]:
        """Connected components of the subdiagram on ``K``, sorted."""
        K = _as_nodes(K, self.rank)
        left = set(K)
        comps = []
        while left:
            start = min(left)
            comp = {start}
            stack = [start]
            while stack:
                i = stack.pop()
                for j in list(left):
                    if j not in comp and self.cartan[i - 1][j - 1]:
                        comp.add(j)
                        stack.append(j)
            left -= comp
            comps.append(tuple(sorted(comp)))
        return sorted(comps)

    def component_type(self, comp) -> str:
        """Cartan type (e.g. ``"D4"``) of a connected node set."""
        comp = tuple(sorted(comp))
        r = len(comp)
        npos = sum(1 for b in self.positive_roots if support(b) <= set(comp))
        bonds = {
            (i, j): self.cartan[i - 1][j - 1]
            for i in comp
            for j in comp
            if i != j and self.cartan[i - 1][j - 1]
        }
        worst = min(bonds.values(), default=0)
        if worst == -3:
            return "G2"
        if worst == -2:
            if r == 4 and npos == 24:
                return "F4"
            (i, _), = [(i, j) for (i, j), c in bonds.items() if c == -2]
            degree = sum(1 for (a, _) in bonds if a == i)
            return f"B{r}" if degree == 1 else f"C{r}"
        if npos == r * (r + 1) // 2:
            return f"A{r}"
        if npos == r * (r - 1):
            return f"D{r}"
        return {36: "E6", 63: "E7", 120: "E8"}[npos]

    def subdiagram_type(self, K) -> str:
        """Type string of the subdiagram on ``K``, e.g. ``"A1xA3"``; ``"-"`` if empty."""
        comps = self.components(K)
        if not comps:
            return "-"
        return "x".join(self.component_type(c) for c in comps)


@lru_cache(maxsize=None)
def _build(diagram: DynkinDiagram) -> RootSystem:
    return RootSystem(diagram)


def build_root_system(diagram) -> RootSystem:
    """Root system for a :class:`DynkinDiagram` or a literal such as ``"D6"``."""
    if not isinstance(diagram, DynkinDiagram):
        diagram = DynkinDiagram.parse(diagram)
    return _build(diagram)


def reflect(rs: RootSystem, i: int, beta) -> Root:
    return rs.reflect(i, beta)


def sub_roots(rs: RootSystem, K) -> list[Root]:
    return rs.sub_roots(K)
