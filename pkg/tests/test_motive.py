import pytest
from hypothesis import given
from hypothesis import strategies as st

from bbdecomp import (
    DiagramAutomorphism,
    ParabolicDatum,
    TitsIndex,
    build_root_system,
    conservation_check,
    decompose,
    nilpotence_bound,
    poincare_polynomial,
)
from bbdecomp.errors import IdentityFailed, NotInvariant
from bbdecomp.motive import MotiveDecomposition, Summand
from bbdecomp.weyl import LengthPolynomial


def split(name, I, J):
    return ParabolicDatum(TitsIndex(name), I, J)


@pytest.mark.parametrize("n", range(1, 9))
def test_projective_space(n):
    md = decompose(split(f"A{n}", set(), set(range(2, n + 1))))
    assert md.twists == list(range(n + 1))
    assert all(p.j_w == frozenset() for s in md.summands for p in s.pieces)


@pytest.mark.parametrize("m", range(2, 7))
def test_odd_quadric(m):
    S = set(range(1, m + 1))
    md = decompose(split(f"B{m}", S - {1}, S - {1}))
    assert md.twists == [0, 1, 2 * m - 1]
    middle = md.summands[1].pieces[0]
    assert middle.word == (1,)
    assert middle.j_w == S - {1, 2}


def test_d6_example_with_galois():
    swap = DiagramAutomorphism((1, 2, 3, 4, 6, 5))
    pd = ParabolicDatum(TitsIndex("D6", {2, 3, 4, 5, 6}, (swap,)), {2, 3, 4, 5, 6}, {1, 3, 4, 5, 6})
    md = decompose(pd)
    assert md.twists == [0, 2, 9]
    assert md.summands[0].levi.type == "D5"
    assert md.summands[0].levi.nodes == (2, 3, 4, 5, 6)
    assert [s.pieces[0].j_w for s in md.summands] == [{3, 4, 5, 6}, {2, 4, 5, 6}, {3, 4, 5, 6}]


def test_decompose_validates():
    with pytest.raises(NotInvariant):
        decompose(ParabolicDatum(TitsIndex("A3", set(), ((3, 2, 1),)), set(), {1}))


def test_conservation_examples():
    rs = build_root_system("A2")
    r = conservation_check(decompose(split("A2", {1, 2}, {1, 2})))
    assert r.passed and r.lhs.coeffs == r.rhs.coeffs == (1,)
    r = conservation_check(decompose(split("A2", {1}, {2})))
    assert r.lhs.coeffs == r.rhs.coeffs == (1, 1, 1)
    r = conservation_check(decompose(split("B2", {2}, {2})))
    assert r.rhs == poincare_polynomial(build_root_system("B2")) // LengthPolynomial((1, 1))
    assert r.rhs.coeffs == (1, 1, 1, 1) and r.lhs == r.rhs
    assert rs  # keeps the A2 system cached across cases


def test_conservation_failure_is_reported():
    md = decompose(split("A2", {1}, {2}))
    bogus = MotiveDecomposition(md.datum, md.root_system, md.summands + (md.summands[0],))
    with pytest.raises(IdentityFailed) as exc:
        conservation_check(bogus)
    assert exc.value.lhs != exc.value.rhs
    assert not conservation_check(bogus, strict=False).passed


@pytest.mark.parametrize("name", ["A4", "B3", "C4", "D4", "F4", "G2", "A2xB2"])
def test_split_case_is_length_profile(name):
    rs = build_root_system(name)
    md = decompose(split(name, set(), set()))
    hist = [0] * (len(rs.positive_roots) + 1)
    for t in md.twists:
        hist[t] += 1
    assert tuple(hist) == poincare_polynomial(rs).coeffs
    assert md.piece_count == len(md.summands) == poincare_polynomial(rs)(1)


def test_piece_count_conservation():
    swap = DiagramAutomorphism((5, 4, 3, 2, 1))
    md = decompose(ParabolicDatum(TitsIndex("A5", {3}, (swap,)), {3}, {1, 5}))
    assert md.piece_count == len(md.reps) == sum(len(s.pieces) for s in md.summands)
    assert any(len(s.pieces) == 2 for s in md.summands)
    assert all(isinstance(s, Summand) for s in md.summands)
    assert conservation_check(md).passed


def test_nilpotence_bound_examples():
    assert nilpotence_bound(5, 4, 4) == 1
    assert nilpotence_bound(3, 1, 3) == 16
    assert nilpotence_bound(0, 1, 30) == 1
    assert nilpotence_bound(10, 1, 21) == 11**20
    for bad in [(-1, 1, 2), (1, 0, 2), (1, 3, 2)]:
        with pytest.raises(ValueError):
            nilpotence_bound(*bad)


@given(st.integers(0, 50), st.integers(1, 40), st.integers(0, 60))
def test_nilpotence_bound_exact(d, n_k, gap):
    value = nilpotence_bound(d, n_k, n_k + gap)
    expected = 1
    for _ in range(gap):
        expected *= d + 1
    assert value == expected


def test_conservation_without_enumerating_w():
    S = frozenset(range(1, 9))
    md = decompose(split("E8", S - {1}, S - {8}))
    report = conservation_check(md)
    assert report.passed and report.rhs(1) == 240
