import pytest
from conftest import hecke, matrix_group, subsets, system
from oracles import n_poly

from klext import IndexNotInQuotient
from klext.ext import (
    AFFINE_NEGATIVE,
    AFFINE_POSITIVE,
    FINITE,
    BlockSpec,
    ExtEvaluator,
    InvalidBlock,
    check_koszul_inversion_finite,
    ext_table,
    index_set,
)
from klext.laurent import ONE, LaurentPoly


def test_regular_degeneration_a2():
    H = hecke("A2")
    W = H.system
    t = ext_table(H, BlockSpec(W, frozenset(), frozenset(), FINITE))
    assert len(t.index) == 6
    for x in t.index:
        for z in t.index:
            p = t[(x, z)]
            assert p == H.h(z.inverse(), x.inverse())
            if W.bruhat_leq(z, x):
                assert p == LaurentPoly.monomial(x.length - z.length)
            else:
                assert not p


def test_singleton_block():
    H = hecke("A2")
    W = H.system
    t = ext_table(H, BlockSpec(W, W.parse_subset("s1"), W.parse_subset("s2"), FINITE))
    assert [str(x) for x in t.index] == ["s2"]
    assert t.matrix() == [[ONE]]
    assert "simple" in t.meta["orientation"]


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_finite_entries_against_oracle(name):
    H, G = hecke(name), matrix_group(name, 9)
    W = H.system
    for I in subsets(W):
        for J in subsets(W):
            if len(I) + len(J) > W.rank + 1:
                continue
            t = ext_table(H, BlockSpec(W, I, J, FINITE))
            for x in t.index:
                for z in t.index:
                    expected = n_poly(G, I, G.from_word(z.inverse().word), G.from_word(x.inverse().word))
                    assert t[(x, z)].coeffs == expected
                    assert all(a > 0 for _, a in t[(x, z)].items())
                assert t[(x, x)] == ONE


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "G2", "B3"])
def test_koszul_inversion(name):
    H = hecke(name)
    W = H.system
    for I in subsets(W):
        for J in subsets(W):
            rep = check_koszul_inversion_finite(H, I, J)
            assert rep.passed, rep.line()


@pytest.mark.parametrize("name,small,big", [("A1~", 6, 10), ("A2~", 4, 7), ("C2~", 4, 6)])
def test_affine_truncation_stability(name, small, big):
    H = hecke(name)
    W = H.system
    proper = [I for I in subsets(W) if len(I) < W.rank]
    for case in (AFFINE_NEGATIVE, AFFINE_POSITIVE):
        for I in proper:
            for J in proper:
                a = ext_table(H, BlockSpec(W, I, J, case, small))
                b = ext_table(H, BlockSpec(W, I, J, case, big))
                assert set(a.index) <= set(b.index)
                assert a.index == [x for x in b.index if x.length <= small]
                assert a.entries == b.restrict(a.index).entries


def test_affine_index_sets():
    W = system("A1~")
    I, J = W.parse_subset("s1"), W.parse_subset("s0")
    neg = index_set(BlockSpec(W, I, J, AFFINE_NEGATIVE, 7))
    pos = index_set(BlockSpec(W, I, J, AFFINE_POSITIVE, 7))
    assert [str(x) for x in pos] == ["s1", "s1,s0,s1", "s1,s0,s1,s0,s1", "s1,s0,s1,s0,s1,s0,s1"]
    assert all(x.length <= 7 for x in neg)
    for x in neg:
        assert x.has_descent(W.index("s0"), "left")


def test_block_validation():
    A2, A1t = system("A2"), system("A1~")
    with pytest.raises(InvalidBlock):
        BlockSpec(A2, frozenset(), frozenset(), AFFINE_NEGATIVE, 4)
    with pytest.raises(InvalidBlock):
        BlockSpec(A1t, frozenset(), frozenset(), FINITE)
    with pytest.raises(InvalidBlock):
        BlockSpec(A1t, frozenset({0, 1}), frozenset(), AFFINE_POSITIVE, 4)
    with pytest.raises(InvalidBlock):
        BlockSpec(A1t, frozenset(), frozenset(), AFFINE_POSITIVE, None)
    with pytest.raises(InvalidBlock):
        BlockSpec(A2, frozenset(), frozenset(), "sideways")
    assert BlockSpec(A1t, frozenset(), frozenset(), "affine-pos", 3).case == AFFINE_POSITIVE


def test_entries_outside_the_block_are_rejected():
    H = hecke("A2")
    W = H.system
    ev = ExtEvaluator(H, BlockSpec(W, W.parse_subset("s1"), W.parse_subset("s2"), FINITE))
    with pytest.raises(IndexNotInQuotient):
        ev.poly(W.identity, W.parse_word("s2"))
