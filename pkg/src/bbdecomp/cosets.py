"""Minimal-length representatives of parabolic double cosets.

The right-coset space ``W_I \\ W`` is realised as the ``W``-orbit of the
dominant weight ``sum(omega_i for i not in I)``, whose stabiliser is exactly
``W_I``.  The coset ``W_I w`` corresponds to ``w^{-1} . marker``, so right
multiplication by ``s_i`` becomes the left action of ``s_i`` on weights.
Breadth-first search from the marker gives every coset together with its
minimal lift; ``W`` itself is never built.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import CosetSpaceTooLarge
from .root_system import RootSystem
from .weyl import (
    WeylElement,
    default_guard,
    descents,
    from_word,
    group_order,
    multiply,
    reduced_word,
    simple_reflection,
)


@dataclass(frozen=True)
class DoubleCosetRep:
    element: WeylElement
    word: tuple[int, ...]
    twist: int
    j_w: frozenset[int]

    def __repr__(self):
        word = "".join(f"s{i}" for i in self.word) or "1"
        return f"DoubleCosetRep({word}, twist={self.twist}, J_w={sorted(self.j_w)})"


@dataclass
class CosetSpace:
    """Orbit data for ``W_I \\ W``.

    ``depth[c]`` is the length of the minimal element of coset ``c``;
    ``parent[c]``/``via[c]`` record the BFS tree, so the minimal lift of
    ``c`` is ``lift(parent[c]) * s_via[c]``.  ``neighbors[i, c]`` is the
    coset of ``c * s_(i+1)``.
    """

    rs: RootSystem
    I: frozenset[int]
    weights: list[tuple[int, ...]]
    depth: np.ndarray
    parent: np.ndarray
    via: np.ndarray
    neighbors: np.ndarray
    _lifts: dict = field(default_factory=dict, repr=False)
    _inverse_lifts: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.weights)

    def lift_word(self, c: int) -> tuple[int, ...]:
        word = []
        while c:
            word.append(int(self.via[c]) + 1)
            c = int(self.parent[c])
        return tuple(reversed(word))

    def lift(self, c: int) -> tuple[WeylElement, tuple[int, ...]]:
        """Minimal element of coset ``c`` and its canonical reduced word."""
        hit = self._lifts.get(c)
        if hit is None:
            w = from_word(self.rs, self.lift_word(c))
            hit = self._lifts[c] = (w, tuple(reduced_word(w)))
        return hit

    def lift_inverse(self, c: int) -> tuple[WeylElement, tuple[int, ...]]:
        """Inverse of :meth:`lift` with its canonical reduced word."""
        hit = self._inverse_lifts.get(c)
        if hit is None:
            w = self.lift(c)[0].inverse()
            hit = self._inverse_lifts[c] = (w, tuple(reduced_word(w)))
        return hit


def coset_space_size(rs: RootSystem, I) -> int:
    return group_order(rs) // group_order(rs, I)


@lru_cache(maxsize=1024)
def _coset_space(rs: RootSystem, I: frozenset[int], guard: int) -> CosetSpace:
    size = coset_space_size(rs, I)
    if size > guard:
        raise CosetSpaceTooLarge(size, guard)
    n = rs.rank
    C = rs.cartan
    cols = [tuple(C[j][i] for j in range(n)) for i in range(n)]
    marker = tuple(0 if i + 1 in I else 1 for i in range(n))

    weights = [marker]
    index = {marker: 0}
    depth = [0]
    parent = [0]
    via = [-1]
    nbr = [[] for _ in range(n)]
    head = 0
    while head < len(weights):
        x = weights[head]
        d = depth[head] + 1
        for i in range(n):
            xi = x[i]
            if xi == 0:
                nbr[i].append(head)
                continue
            y = tuple(a - xi * b for a, b in zip(x, cols[i]))
            k = index.get(y)
            if k is None:
                k = len(weights)
                index[y] = k
                weights.append(y)
                depth.append(d)
                parent.append(head)
                via.append(i)
            nbr[i].append(k)
        head += 1
    return CosetSpace(
        rs=rs,
        I=I,
        weights=weights,
        depth=np.array(depth, dtype=np.int64),
        parent=np.array(parent, dtype=np.int64),
        via=np.array(via, dtype=np.int64),
        neighbors=np.array(nbr, dtype=np.int64).reshape(n, len(weights)),
    )


def coset_space(rs: RootSystem, I, guard: int | None = None) -> CosetSpace:
    guard = default_guard() if guard is None else guard
    return _coset_space(rs, rs.nodes(I), guard)


def component_roots(rep, I, J) -> frozenset[int]:
    """``J_w = {alpha in I : w^{-1} alpha in R_J}`` for a rep or a bare element.

    ``w^{-1} alpha`` is always a root, so membership in ``R_J`` is a support test.
    """
    w = rep.element if isinstance(rep, DoubleCosetRep) else rep
    rs = w.rs
    I = sorted(rs.nodes(I))
    if not I:
        return frozenset()
    J = rs.nodes(J)
    outside = [k for k in range(rs.rank) if k + 1 not in J]
    cols = w.inverse_matrix[:, [i - 1 for i in I]]
    inside = ~(cols[outside] != 0).any(axis=0)
    return frozenset(i for i, ok in zip(I, inside) if ok)


def _make_rep(w: WeylElement, I, J, word=None) -> DoubleCosetRep:
    word = tuple(reduced_word(w)) if word is None else word
    return DoubleCosetRep(element=w, word=word, twist=len(word), j_w=component_roots(w, I, J))


def _orbit_minima(rs: RootSystem, I: frozenset[int], J: frozenset[int], guard: int) -> tuple[CosetSpace, np.ndarray]:
    """Cosets of ``W_I \\ W`` holding the minimal element of each ``W_J``-orbit."""
    cs = _coset_space(rs, I, guard)
    N = len(cs)
    if J:
        src = np.concatenate([np.arange(N)] * len(J))
        dst = np.concatenate([cs.neighbors[j - 1] for j in sorted(J)])
        graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
        _, labels = connected_components(graph, directed=False)
    else:
        labels = np.arange(N)
    # shallowest coset per W_J-orbit; BFS order breaks ties by lift word
    order = np.lexsort((np.arange(N), cs.depth, labels))
    first = np.ones(N, dtype=bool)
    first[1:] = labels[order][1:] != labels[order][:-1]
    return cs, order[first]


@lru_cache(maxsize=8192)
def _reps(rs: RootSystem, I: frozenset[int], J: frozenset[int], guard: int) -> tuple[DoubleCosetRep, ...]:
    if coset_space_size(rs, J) < coset_space_size(rs, I):
        # inversion swaps W_I\W/W_J with W_J\W/W_I and keeps minimality
        cs, chosen = _orbit_minima(rs, J, I, guard)
        lifts = [cs.lift_inverse(int(c)) for c in chosen]
    else:
        cs, chosen = _orbit_minima(rs, I, J, guard)
        lifts = [cs.lift(int(c)) for c in chosen]
    reps = [_make_rep(w, I, J, word) for w, word in lifts]
    reps.sort(key=lambda r: (r.twist, r.word))
    return tuple(reps)


def minimal_double_coset_reps(rs: RootSystem, I, J, guard: int | None = None) -> list[DoubleCosetRep]:
    """The set ``E`` of minimal-length representatives of ``W_I \\ W / W_J``.

    Sorted by twist, then by reduced word.  The smaller of ``W_I \\ W`` and
    ``W_J \\ W`` is walked; :class:`~bbdecomp.errors.CosetSpaceTooLarge` is
    raised if it exceeds ``guard``.
    """
    guard = default_guard() if guard is None else guard
    return list(_reps(rs, rs.nodes(I), rs.nodes(J), guard))


def factorize(w: WeylElement, I, J) -> tuple[WeylElement, DoubleCosetRep, WeylElement]:
    """Write ``w = a * b * c`` with ``a`` in ``W_I``, ``c`` in ``W_J`` and
    ``l(w) = l(a) + l(b) + l(c)``.

    ``a`` collects left descents in ``I`` and ``c`` right descents in ``J``,
    smallest index first; neither factor is unique in general.
    """
    rs = w.rs
    I, J = rs.nodes(I), rs.nodes(J)
    a_word: list[int] = []
    c_word: list[int] = []
    cur = w
    while True:
        left = descents(cur, "left") & I
        if left:
            i = min(left)
            cur = multiply(simple_reflection(rs, i), cur)
            a_word.append(i)
            continue
        right = descents(cur, "right") & J
        if right:
            j = min(right)
            cur = multiply(cur, simple_reflection(rs, j))
            c_word.insert(0, j)
            continue
        break
    return from_word(rs, a_word), _make_rep(cur, I, J), from_word(rs, c_word)


def count_split_summands(rs: RootSystem, J, guard: int | None = None) -> int:
    """``|W / W_J|``, the number of summands once everything splits."""
    return len(coset_space(rs, J, guard))
