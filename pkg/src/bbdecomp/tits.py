"""Tits indices, the *-action and parabolic data (I, J)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .cosets import DoubleCosetRep
from .errors import BadAutomorphism, InvalidDiagram, MissingSigma0, NotInvariant, OrbitEscape
from .root_system import DynkinDiagram
from .weyl import WeylElement


@dataclass(frozen=True)
class DiagramAutomorphism:
    """Permutation of nodes in one-line image notation, 1-based."""

    perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))

    @classmethod
    def identity(cls, n: int) -> "DiagramAutomorphism":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> "DiagramAutomorphism":
        p = list(range(1, n + 1))
        p[i - 1], p[j - 1] = j, i
        return cls(tuple(p))

    def __str__(self):
        return ",".join(map(str, self.perm))

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def image(self, K: Iterable[int]) -> frozenset[int]:
        return frozenset(self.perm[k - 1] for k in K)

    def compose(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        """``self`` after ``other``."""
        return DiagramAutomorphism(tuple(self.perm[other.perm[i] - 1] for i in range(len(self.perm))))

    def check(self, diagram: DynkinDiagram) -> None:
        n = diagram.rank
        if len(self.perm) != n or sorted(self.perm) != list(range(1, n + 1)):
            raise BadAutomorphism(f"{list(self.perm)} is not a permutation of 1..{n}")
        C = diagram.cartan
        for i in range(n):
            for j in range(n):
                if C[self.perm[i] - 1][self.perm[j] - 1] != C[i][j]:
                    raise BadAutomorphism(
                        f"{list(self.perm)} does not preserve the bond between nodes {i + 1} and {j + 1} of {diagram}"
                    )

    def is_identity(self) -> bool:
        return self.perm == tuple(range(1, len(self.perm) + 1))


def _nodes(K) -> frozenset[int]:
    return frozenset(int(k) for k in K)


@dataclass(frozen=True)
class TitsIndex:
    diagram: DynkinDiagram
    sigma0: frozenset[int] = frozenset()
    galois_gens: tuple[DiagramAutomorphism, ...] = ()

    def __post_init__(self):
        if not isinstance(self.diagram, DynkinDiagram):
            object.__setattr__(self, "diagram", DynkinDiagram.parse(self.diagram))
        object.__setattr__(self, "sigma0", _nodes(self.sigma0))
        gens = tuple(g if isinstance(g, DiagramAutomorphism) else DiagramAutomorphism(g) for g in self.galois_gens)
        object.__setattr__(self, "galois_gens", gens)

    def star_group(self) -> list[DiagramAutomorphism]:
        """All elements of the group generated by ``galois_gens``."""
        e = DiagramAutomorphism.identity(self.diagram.rank)
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for g in frontier:
                for h in self.galois_gens:
                    gh = h.compose(g)
                    if gh not in seen:
                        seen.add(gh)
                        nxt.append(gh)
            frontier = nxt
        return sorted(seen, key=lambda g: g.perm)


@dataclass(frozen=True)
class ParabolicDatum:
    index: TitsIndex
    I: frozenset[int] = field(default_factory=frozenset)
    J: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "I", _nodes(self.I))
        object.__setattr__(self, "J", _nodes(self.J))


def validate(pd: ParabolicDatum) -> ParabolicDatum:
    """Return ``pd`` if its invariants hold, raise otherwise."""
    idx = pd.index
    n = idx.diagram.rank
    for name, K in (("sigma0", idx.sigma0), ("I", pd.I), ("J", pd.J)):
        bad = sorted(k for k in K if not 1 <= k <= n)
        if bad:
            raise InvalidDiagram(f"{name} contains nodes {bad} outside 1..{n}")
    for g in idx.galois_gens:
        g.check(idx.diagram)
        if g.image(idx.sigma0) != idx.sigma0:
            raise NotInvariant("sigma0", g)
    if not idx.sigma0 <= pd.I:
        raise MissingSigma0(f"I={sorted(pd.I)} does not contain sigma0={sorted(idx.sigma0)}")
    for g in idx.galois_gens:
        if g.image(pd.I) != pd.I:
            raise NotInvariant("I", g)
        if g.image(pd.J) != pd.J:
            raise NotInvariant("J", g)
    return pd


def apply_star(aut: DiagramAutomorphism, w: WeylElement) -> WeylElement:
    """``sigma(w)``: relabel rows and columns of the action matrix, so that
    ``sigma(s_i) = s_sigma(i)``."""
    aut.check(w.rs.diagram)
    return _relabel(aut, w)


def _relabel(aut: DiagramAutomorphism, w: WeylElement) -> WeylElement:
    p = np.array(aut.perm) - 1
    M = np.empty_like(w.matrix)
    M[np.ix_(p, p)] = w.matrix
    inv = None
    if w._inv is not None:
        inv = np.empty_like(w._inv)
        inv[np.ix_(p, p)] = w._inv
    return WeylElement(w.rs, M, inv)


def star_orbits(pd: ParabolicDatum, E: Sequence[DoubleCosetRep]) -> list[list[DoubleCosetRep]]:
    """Partition ``E`` into orbits of the group generated by the *-action."""
    group = [g for g in pd.index.star_group() if not g.is_identity()]
    if not group:
        return [[rep] for rep in sorted(E, key=lambda r: (r.twist, r.word))]
    for g in group:
        g.check(pd.index.diagram)
    by_key = {rep.element.key: k for k, rep in enumerate(E)}
    orbit_of = [-1] * len(E)
    orbits: list[list[DoubleCosetRep]] = []
    for k, rep in enumerate(E):
        if orbit_of[k] >= 0:
            continue
        members = {k}
        for g in group:
            img = _relabel(g, rep.element)
            m = by_key.get(img.key)
            if m is None:
                raise OrbitEscape(f"{g} maps {rep} outside the set of minimal representatives")
            members.add(m)
        for m in members:
            orbit_of[m] = len(orbits)
        orbits.append(sorted((E[m] for m in members), key=lambda r: (r.twist, r.word)))
    for orb in orbits:
        if len({r.twist for r in orb}) != 1:
            raise OrbitEscape(f"orbit {orb} mixes twists")
    orbits.sort(key=lambda o: (o[0].twist, o[0].word))
    return orbits
