"""Weyl group elements as integer action matrices on the root lattice.

Column ``j`` of ``WeylElement.matrix`` holds the simple-root coordinates of
``w(alpha_j)``.  Matrices are the canonical form: equality and hashing go
through them, reduced words are derived on demand.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .errors import GroupTooLarge, MixedSystems
from .root_system import Root, RootSystem

DEFAULT_GUARD = 10**7


def default_guard() -> int:
    """Enumeration guard, overridable with the ``MOTIVE_GUARD`` environment variable."""
    env = os.environ.get("MOTIVE_GUARD")
    return int(env) if env else DEFAULT_GUARD


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


@lru_cache(maxsize=None)
def simple_matrices(rs: RootSystem) -> tuple[np.ndarray, ...]:
    """Action matrices of ``s_1, ..., s_n`` (0-based tuple)."""
    n = rs.rank
    C = np.array(rs.cartan, dtype=np.int64)
    out = []
    for i in range(n):
        S = np.eye(n, dtype=np.int64)
        S[i, :] -= C[i, :]
        out.append(_frozen(S))
    return tuple(out)


@lru_cache(maxsize=None)
def _positive_array(rs: RootSystem) -> np.ndarray:
    return _frozen(np.array(rs.positive_roots, dtype=np.int64))


class WeylElement:
    """An element of ``W(rs)``; immutable."""

    __slots__ = ("rs", "matrix", "_inv", "_key")

    def __init__(self, rs: RootSystem, matrix, inverse=None):
        self.rs = rs
        self.matrix = _frozen(matrix)
        self._inv = None if inverse is None else _frozen(inverse)
        self._key = self.matrix.tobytes()

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.rs == other.rs and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        word = "".join(f"s{i}" for i in self.reduced_word()) or "1"
        return f"WeylElement({self.rs.diagram}, {word})"

    def __mul__(self, other):
        return multiply(self, other)

    def __call__(self, beta) -> Root:
        return apply(self, beta)

    @property
    def key(self) -> bytes:
        return self._key

    @property
    def inverse_matrix(self) -> np.ndarray:
        if self._inv is None:
            inv = np.rint(np.linalg.inv(self.matrix)).astype(np.int64)
            if not np.array_equal(self.matrix @ inv, np.eye(self.rs.rank, dtype=np.int64)):
                raise ValueError("matrix is not invertible over the integers")
            self._inv = _frozen(inv)
        return self._inv

    def inverse(self) -> "WeylElement":
        return inverse(self)

    def length(self) -> int:
        return length(self)

    def descents(self, side: str = "right") -> frozenset[int]:
        return descents(self, side)

    def reduced_word(self) -> list[int]:
        return reduced_word(self)


def _check_same(*elements: WeylElement) -> RootSystem:
    rs = elements[0].rs
    for e in elements[1:]:
        if e.rs != rs:
            raise MixedSystems(f"elements of {rs.diagram} and {e.rs.diagram} cannot be combined")
    return rs


def identity(rs: RootSystem) -> WeylElement:
    eye = np.eye(rs.rank, dtype=np.int64)
    return WeylElement(rs, eye, eye)


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    S = simple_matrices(rs)[i - 1]
    return WeylElement(rs, S, S)


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    """Product ``s_{w[0]} s_{w[1]} ...`` of simple reflections (1-based)."""
    S = simple_matrices(rs)
    n = rs.rank
    M = np.eye(n, dtype=np.int64)
    Minv = np.eye(n, dtype=np.int64)
    for i in word:
        if not 1 <= i <= n:
            raise ValueError(f"node {i} out of range 1..{n}")
        M = M @ S[i - 1]
        Minv = S[i - 1] @ Minv
    return WeylElement(rs, M, Minv)


def multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    rs = _check_same(u, v)
    inv = None
    if u._inv is not None and v._inv is not None:
        inv = v._inv @ u._inv
    return WeylElement(rs, u.matrix @ v.matrix, inv)


def inverse(w: WeylElement) -> WeylElement:
    return WeylElement(w.rs, w.inverse_matrix, w.matrix)


def apply(w: WeylElement, beta) -> Root:
    v = w.matrix @ np.asarray(beta, dtype=np.int64)
    return tuple(int(c) for c in v)


def _count_negative_images(M: np.ndarray, pos: np.ndarray) -> int:
    if len(pos) == 0:
        return 0
    images = pos @ M.T
    return int(np.count_nonzero((images < 0).any(axis=1)))


def length(w: WeylElement) -> int:
    """``#(R+ cap w R-)``: positive roots sent negative by ``w^{-1}``."""
    return _count_negative_images(w.inverse_matrix, _positive_array(w.rs))


def length_by_inversions(w: WeylElement) -> int:
    """``#{beta > 0 : w(beta) < 0}``; agrees with :func:`length`."""
    return _count_negative_images(w.matrix, _positive_array(w.rs))


def _negative_columns(M: np.ndarray) -> frozenset[int]:
    return frozenset(int(i) + 1 for i in np.flatnonzero((M < 0).any(axis=0)))


def descents(w: WeylElement, side: str = "right") -> frozenset[int]:
    """Right descents ``{i : w(alpha_i) < 0}``; left descents are those of ``w^{-1}``."""
    if side == "right":
        return _negative_columns(w.matrix)
    if side == "left":
        return _negative_columns(w.inverse_matrix)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def reduced_word_from_inverse(winv: np.ndarray, cartan) -> list[int]:
    # plain-int column updates; numpy overhead dominates at rank <= 8
    n = len(cartan)
    cols = [list(map(int, winv[:, j])) for j in range(n)]
    links = [[(j, cartan[i][j]) for j in range(n) if j != i and cartan[i][j]] for i in range(n)]
    word = []
    while True:
        for i in range(n):
            if min(cols[i]) < 0:
                break
        else:
            return word
        word.append(i + 1)
        # (s_i w)^{-1} = w^{-1} s_i: column j picks up -C[i][j] times column i
        ci = cols[i]
        for j, c in links[i]:
            cols[j] = [a - c * b for a, b in zip(cols[j], ci)]
        cols[i] = [-b for b in ci]


def reduced_word(w: WeylElement) -> list[int]:
    """Lexicographically smallest reduced word (strip the smallest left descent)."""
    return reduced_word_from_inverse(w.inverse_matrix, w.rs.cartan)


def longest_element(rs: RootSystem, K=None) -> WeylElement:
    """Longest element of ``W_K``, built by stripping ascents."""
    K = sorted(rs.nodes(K))
    S = simple_matrices(rs)
    M = np.eye(rs.rank, dtype=np.int64)
    word = []
    while True:
        asc = [k for k in K if not (M[:, k - 1] < 0).any()]
        if not asc:
            break
        M = M @ S[asc[0] - 1]
        word.append(asc[0])
    return from_word(rs, word)


def degrees(rs: RootSystem, K=None) -> list[int]:
    """Degrees of the basic invariants of ``W_K``.

    The exponents form the partition conjugate to the height distribution
    of the positive roots of ``R_K``.
    """
    K = rs.nodes(K)
    heights = [sum(b) for b in rs.positive_roots if all(c == 0 or i + 1 in K for i, c in enumerate(b))]
    per_height = [sum(1 for h in heights if h == k) for k in range(1, max(heights, default=0) + 1)]
    exponents = [sum(1 for p in per_height if p >= j) for j in range(1, len(K) + 1)]
    return sorted(m + 1 for m in exponents)


def group_order(rs: RootSystem, K=None) -> int:
    out = 1
    for d in degrees(rs, K):
        out *= d
    return out


def enumerate_group(rs: RootSystem, K=None, guard: int | None = None) -> Iterator[WeylElement]:
    """Stream ``W_K`` by breadth-first search from the identity.

    Elements come out by length, ties broken by row-major matrix order.
    Raises :class:`GroupTooLarge` before doing any work if ``|W_K| > guard``.
    """
    for level in _levels(rs, K, guard):
        for M in level:
            yield WeylElement(rs, M)


def _levels(rs: RootSystem, K=None, guard: int | None = None) -> Iterator[np.ndarray]:
    K = sorted(rs.nodes(K))
    guard = default_guard() if guard is None else guard
    order = group_order(rs, K)
    if order > guard:
        raise GroupTooLarge(order, guard)
    n = rs.rank
    S = simple_matrices(rs)
    gens = np.stack([S[k - 1] for k in K]) if K else np.zeros((0, n, n), dtype=np.int64)
    level = np.eye(n, dtype=np.int64)[None]
    prev: set[bytes] = set()
    while len(level):
        flat = level.reshape(len(level), -1)
        level = level[np.lexsort(flat.T[::-1])]
        yield level
        if not K:
            return
        cand = np.einsum("gij,bjk->gbik", gens, level).reshape(-1, n, n)
        cand = np.unique(cand.reshape(len(cand), -1), axis=0).reshape(-1, n, n)
        keep = [i for i, c in enumerate(cand) if c.tobytes() not in prev]
        prev = {m.tobytes() for m in level}
        level = cand[keep]


@dataclass(frozen=True)
class LengthPolynomial:
    """Integer polynomial; ``coeffs[k]`` is the coefficient of ``t^k``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LengthPolynomial":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        return sum(c * t**k for k, c in enumerate(self.coeffs))

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return LengthPolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LengthPolynomial(tuple(out))

    def __floordiv__(self, other):
        """Exact division; raises ``ArithmeticError`` if a remainder is left."""
        num = list(self.coeffs)
        den = other.coeffs
        if den == (0,):
            raise ZeroDivisionError("division by the zero polynomial")
        lead = den[-1]
        if len(num) < len(den):
            if any(num):
                raise ArithmeticError(f"{self} is not divisible by {other}")
            return LengthPolynomial((0,))
        quot = [0] * (len(num) - len(den) + 1)
        for k in range(len(quot) - 1, -1, -1):
            c, r = divmod(num[k + len(den) - 1], lead)
            if r:
                raise ArithmeticError(f"{self} is not divisible by {other}")
            quot[k] = c
            for j, d in enumerate(den):
                num[k + j] -= c * d
        if any(num):
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return LengthPolynomial(tuple(quot))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            coef = str(c) if (c != 1 or not mono) else ""
            terms.append(coef + mono)
        return " + ".join(terms) or "0"


@lru_cache(maxsize=4096)
def _poincare(rs: RootSystem, K: frozenset[int], guard: int) -> LengthPolynomial:
    return LengthPolynomial(tuple(len(level) for level in _levels(rs, K, guard)))


def poincare_polynomial(rs: RootSystem, K=None, guard: int | None = None) -> LengthPolynomial:
    """Length generating function of ``W_K``, by enumeration."""
    guard = default_guard() if guard is None else guard
    return _poincare(rs, rs.nodes(K), guard)


def poincare_from_degrees(rs: RootSystem, K=None) -> LengthPolynomial:
    """Product of ``[d]_t = 1 + t + ... + t^(d-1)`` over the degrees of ``W_K``."""
    return _degree_product(rs, rs.nodes(K))


@lru_cache(maxsize=4096)
def _degree_product(rs: RootSystem, K: frozenset[int]) -> LengthPolynomial:
    out = LengthPolynomial((1,))
    for d in degrees(rs, K):
        out = out * LengthPolynomial((1,) * d)
    return out
