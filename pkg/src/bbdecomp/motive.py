"""Assemble the motivic decomposition and check it.

Each summand is one *-orbit of minimal double-coset representatives.  It
carries the Tate twist ``l(w)`` and, per geometric piece, the subset
``J_w`` of ``I`` that names the homogeneous variety of the Levi factor.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .cosets import DoubleCosetRep, minimal_double_coset_reps
from .errors import IdentityFailed
from .root_system import RootSystem, build_root_system
from .tits import ParabolicDatum, star_orbits, validate
from .weyl import LengthPolynomial, poincare_from_degrees


@dataclass(frozen=True)
class LeviDiagram:
    """Subdiagram of the Dynkin diagram induced on ``I``."""

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    type: str

    @classmethod
    def induced(cls, rs: RootSystem, I) -> "LeviDiagram":
        I = rs.nodes(I)
        edges = tuple(
            (i, j, m) for (i, j), m in sorted(rs.diagram.edges.items()) if i in I and j in I
        )
        return cls(tuple(sorted(I)), edges, rs.subdiagram_type(I))


@dataclass(frozen=True)
class Summand:
    twist: int
    pieces: tuple[DoubleCosetRep, ...]
    levi: LeviDiagram

    @property
    def orbit_size(self) -> int:
        return len(self.pieces)


@dataclass(frozen=True)
class MotiveDecomposition:
    datum: ParabolicDatum
    root_system: RootSystem
    summands: tuple[Summand, ...]

    @property
    def twists(self) -> list[int]:
        return [s.twist for s in self.summands]

    @property
    def reps(self) -> list[DoubleCosetRep]:
        return sorted((p for s in self.summands for p in s.pieces), key=lambda r: (r.twist, r.word))

    @property
    def piece_count(self) -> int:
        return sum(len(s.pieces) for s in self.summands)


def decompose(pd: ParabolicDatum, guard: int | None = None) -> MotiveDecomposition:
    validate(pd)
    rs = build_root_system(pd.index.diagram)
    E = minimal_double_coset_reps(rs, pd.I, pd.J, guard)
    levi = LeviDiagram.induced(rs, pd.I)
    summands = tuple(
        Summand(twist=orbit[0].twist, pieces=tuple(orbit), levi=levi) for orbit in star_orbits(pd, E)
    )
    md = MotiveDecomposition(pd, rs, summands)
    if md.piece_count != len(E):
        raise AssertionError(f"{md.piece_count} pieces for {len(E)} representatives")
    return md


@dataclass(frozen=True)
class ConservationReport:
    passed: bool
    lhs: LengthPolynomial
    rhs: LengthPolynomial


def conservation_check(md: MotiveDecomposition, strict: bool = True) -> ConservationReport:
    """Compare ``sum_w t^l(w) W_I(t)/W_{J_w}(t)`` with ``W(t)/W_J(t)``.

    Poincare polynomials come from the degree product, so no group is
    enumerated.  Both quotients are checked to be exact.  With ``strict`` a
    mismatch raises :class:`~bbdecomp.errors.IdentityFailed`.
    """
    rs = md.root_system
    I, J = md.datum.I, md.datum.J
    WI = poincare_from_degrees(rs, I)
    lhs = LengthPolynomial((0,))
    pieces = Counter((rep.twist, rep.j_w) for summand in md.summands for rep in summand.pieces)
    for (twist, j_w), mult in sorted(pieces.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))):
        cells = WI // poincare_from_degrees(rs, j_w)
        lhs = lhs + LengthPolynomial.monomial(twist, mult) * cells
    rhs = poincare_from_degrees(rs) // poincare_from_degrees(rs, J)
    passed = lhs == rhs
    if strict and not passed:
        raise IdentityFailed(lhs, rhs)
    return ConservationReport(passed, lhs, rhs)


def nilpotence_bound(d: int, n_k: int, n_bar: int) -> int:
    """``(d + 1) ** (n_bar - n_k)``, exact."""
    d, n_k, n_bar = int(d), int(n_k), int(n_bar)
    if d < 0:
        raise ValueError(f"d must be non-negative, got {d}")
    if n_k < 1:
        raise ValueError(f"n_k must be positive, got {n_k}")
    if n_bar < n_k:
        raise ValueError(f"n_bar ({n_bar}) must be at least n_k ({n_k})")
    return (d + 1) ** (n_bar - n_k)
