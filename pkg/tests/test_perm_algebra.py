from math import comb

import pytest

from bch_resum.errors import ArityMismatch
from bch_resum.perm_algebra import (PermSum, SignedPerm, algebra_mul, alternating_s_sum, cycle,
                                    expand_P, marching, reversal, s_perms, shuffles)
from oracles import shuffles_brute


def test_reversal_maps():
    assert reversal(1).map == (1,)
    assert reversal(2).map == (2, 1)
    assert reversal(4).map == (4, 3, 2, 1)
    with pytest.raises(ValueError):
        reversal(0)


def test_composition_and_inverse():
    a = SignedPerm((2, 3, 1), -1)
    b = SignedPerm((3, 1, 2))
    assert (a * b).apply("xyz") == a.apply(b.apply("xyz"))
    e = a * a.inverse()
    assert e.map == (1, 2, 3) and e.sign == 1


def test_apply_prefix_leaves_out_final():
    assert reversal(4).apply_prefix(["x1", "x2", "x3", "x4"], 3) == ["x4", "x3", "x2"]


def test_invalid_perm():
    with pytest.raises(ValueError):
        SignedPerm((1, 1, 2))
    with pytest.raises(ValueError):
        SignedPerm((1, 2), 0)


def test_expand_P_small():
    assert expand_P(1).lines() == ["+1 1"]
    assert expand_P(2).lines() == ["+1 1 2", "-1 2 1"]
    assert expand_P(4).lines() == ["+1 1 2 3 4", "-1 2 1 3 4", "-1 2 3 1 4", "-1 2 3 4 1",
                                   "+1 3 2 1 4", "+1 3 2 4 1", "+1 3 4 2 1", "-1 4 3 2 1"]


@pytest.mark.parametrize("n", range(1, 11))
def test_expand_P_size_and_reversal_eigen(n):
    p = expand_P(n)
    assert len(p) == p.num_maps() == 2 ** (n - 1)
    lhs = algebra_mul(PermSum(n, [reversal(n)]), p)
    assert lhs == (p if n % 2 == 1 else -p)


def test_marching_examples():
    assert marching(3, 1).lines() == ["+1 1 2 3", "+1 2 1 3", "+1 2 3 1"]
    assert len(marching(4, 2)) == 6
    assert marching(5, 0) == PermSum.one(5) == marching(5, 5)


@pytest.mark.parametrize("n", range(1, 8))
def test_marching_matches_brute_force(n):
    for m in range(n + 1):
        maps = [mp for mp, c in marching(n, m).canonical()]
        assert all(c == 1 for _, c in marching(n, m).canonical())
        assert len(maps) == comb(n, m)
        assert maps == shuffles(n, m) == shuffles_brute(n, m)


@pytest.mark.parametrize("n", range(2, 9))
def test_marching_annihilates_P(n):
    p = expand_P(n)
    for m in range(1, n):
        assert algebra_mul(marching(n, m), p).is_zero()


def test_unit_and_mismatch():
    assert algebra_mul(PermSum.one(3), expand_P(3)) == expand_P(3)
    with pytest.raises(ArityMismatch):
        algebra_mul(expand_P(2), expand_P(3))
    promoted = algebra_mul(expand_P(2), PermSum.one(3), promote=True)
    assert promoted == expand_P(2).promote(3)


def test_s_perms():
    assert s_perms(1, 1) == PermSum.one(1)
    assert sorted(s_perms(3, 2).lines()) == ["+1 2 1 3", "+1 2 3 1"]
    with pytest.raises(ValueError):
        s_perms(3, 4)


@pytest.mark.parametrize("n", range(1, 9))
def test_alternating_s_sum_is_P(n):
    assert alternating_s_sum(n) == expand_P(n)


def test_cycle():
    assert cycle(2, 4).map == (1, 3, 4, 2)
    assert cycle(3, 3).map == (1, 2, 3)


def test_canonical_drops_zero_terms():
    p = PermSum(2, [SignedPerm((1, 2)), SignedPerm((1, 2), -1)])
    assert p.is_zero() and p == PermSum.zero(2)
