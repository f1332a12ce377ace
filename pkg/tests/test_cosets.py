import numpy as np
import pytest

from bbdecomp import (
    build_root_system,
    component_roots,
    count_split_summands,
    factorize,
    from_word,
    identity,
    length,
    minimal_double_coset_reps,
)
from bbdecomp.cosets import coset_space
from bbdecomp.errors import CosetSpaceTooLarge
from bbdecomp.weyl import descents, enumerate_group, group_order

from oracles import condition_one, condition_two, full_group, minimal_reps, subsets


def test_a2_example():
    rs = build_root_system("A2")
    E = minimal_double_coset_reps(rs, {1}, {2})
    # exhaustive check over S_3
    G = full_group(rs.cartan)
    oracle = [G.mats[v[0]] for v in minimal_reps(G, {1}, {2})]
    assert sorted(r.element.matrix.tobytes() for r in E) == sorted(m.tobytes() for m in oracle)
    assert [r.word for r in E] == [(), (2, 1)]
    assert [r.twist for r in E] == [0, 2]


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_dn_two_planes(n):
    rs = build_root_system(f"D{n}")
    S = set(range(1, n + 1))
    E = minimal_double_coset_reps(rs, S - {1}, S - {2})
    w3 = list(range(1, n + 1)) + list(range(n - 2, 1, -1))
    assert [r.element for r in E] == [identity(rs), from_word(rs, [1, 2]), from_word(rs, w3)]
    assert [r.twist for r in E] == [0, 2, 2 * n - 3]


@pytest.mark.parametrize("name", ["A3", "B4", "G2", "E6"])
def test_whole_diagram(name):
    rs = build_root_system(name)
    E = minimal_double_coset_reps(rs, None, None)
    assert [r.element for r in E] == [identity(rs)]


def test_component_roots_examples():
    for name, I, J in [("B3", {1, 2}, {2, 3}), ("D5", {2, 3, 4, 5}, {1, 3, 4, 5})]:
        rs = build_root_system(name)
        assert component_roots(identity(rs), I, J) == frozenset(I) & frozenset(J)
    for n in range(5, 9):
        rs = build_root_system(f"D{n}")
        S = set(range(1, n + 1))
        assert component_roots(from_word(rs, [1, 2]), S - {1}, S - {2}) == {2} | set(range(4, n + 1))
    rs = build_root_system("D4")
    assert component_roots(from_word(rs, [1, 2]), {2, 3, 4}, {1, 3, 4}) == {2}


def test_rep_invariants():
    rs = build_root_system("F4")
    for I in subsets(4):
        for J in subsets(4):
            for r in minimal_double_coset_reps(rs, I, J):
                assert not descents(r.element, "left") & I
                assert not descents(r.element, "right") & J
                assert r.twist == length(r.element) == len(r.word)
                assert r.j_w <= I


@pytest.mark.parametrize("name", ["A3", "B3", "G2", "D4", "A2xA1"])
def test_matches_brute_force(name):
    rs = build_root_system(name)
    G = full_group(rs.cartan)
    for I in subsets(rs.rank):
        for J in subsets(rs.rank):
            mins = minimal_reps(G, I, J)
            assert all(len(v) == 1 for v in mins)
            expect = sorted(G.mats[v[0]].tobytes() for v in mins)
            got = sorted(r.element.matrix.tobytes() for r in minimal_double_coset_reps(rs, I, J))
            assert got == expect
            c1, c2 = condition_one(G, I, J), condition_two(G, I, J)
            assert np.array_equal(c1, c2)
            assert sorted(G.mats[k].tobytes() for k in np.flatnonzero(c1)) == expect


@pytest.mark.parametrize("name", ["A3", "B3", "D4"])
def test_special_pairs(name):
    rs = build_root_system(name)
    W = set(enumerate_group(rs))
    assert {r.element for r in minimal_double_coset_reps(rs, set(), set())} == W
    for K in subsets(rs.rank):
        left_min = {w for w in W if not descents(w, "right") & K}
        assert {r.element for r in minimal_double_coset_reps(rs, set(), K)} == left_min
        assert len(minimal_double_coset_reps(rs, K, set())) == len(W) // group_order(rs, K)


def _check_factorization(w, I, J):
    a, b, c = factorize(w, I, J)
    assert a * b.element * c == w
    assert length(a) + b.twist + length(c) == length(w)
    assert set(a.reduced_word()) <= set(I)
    assert set(c.reduced_word()) <= set(J)
    E = minimal_double_coset_reps(w.rs, I, J)
    assert b.element in {r.element for r in E}
    return a, b, c


def test_factorize_examples():
    rs = build_root_system("A2")
    w = from_word(rs, [1, 2, 1])
    a, b, c = _check_factorization(w, {1}, {2})
    assert a == from_word(rs, [1]) and b.word == (2, 1) and c == identity(rs)
    for r in minimal_double_coset_reps(rs, {1}, {2}):
        a, b, c = factorize(r.element, {1}, {2})
        assert a == identity(rs) and b.element == r.element and c == identity(rs)
    s1 = from_word(rs, [1])
    a, b, c = factorize(s1, {1}, {2})
    assert (a, b.element, c) == (s1, identity(rs), identity(rs))


@pytest.mark.parametrize("name", ["A4", "B4", "D4", "F4"])
def test_factorize_random(name):
    rs = build_root_system(name)
    rng = np.random.default_rng(11)
    for _ in range(1000):
        I = frozenset(int(i) for i in np.flatnonzero(rng.integers(0, 2, rs.rank)) + 1)
        J = frozenset(int(i) for i in np.flatnonzero(rng.integers(0, 2, rs.rank)) + 1)
        w = from_word(rs, rng.integers(1, rs.rank + 1, size=rng.integers(0, 25)))
        _check_factorization(w, I, J)


def test_count_split_summands():
    assert count_split_summands(build_root_system("D5"), range(1, 6)) == 1
    for n in range(1, 9):
        rs = build_root_system(f"A{n}")
        assert count_split_summands(rs, set(range(2, n + 1))) == n + 1
    assert count_split_summands(build_root_system("B2"), set()) == 8
    rs = build_root_system("E7")
    for i in range(1, 8):
        J = set(range(1, 8)) - {i}
        assert count_split_summands(rs, J) == group_order(rs) // group_order(rs, J)


def test_coset_guard():
    rs = build_root_system("E8")
    with pytest.raises(CosetSpaceTooLarge):
        minimal_double_coset_reps(rs, set(), {1})
    with pytest.raises(CosetSpaceTooLarge):
        coset_space(rs, {2, 3, 4, 5, 6, 7, 8}, guard=100)
    assert len(coset_space(rs, {2, 3, 4, 5, 6, 7, 8})) == 2160
