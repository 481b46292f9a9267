"""Property-based checks over random regular inputs."""
import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bch_resum import g_series as gs
from bch_resum import hyper_eval as hx
from bch_resum.perm_algebra import SignedPerm, algebra_mul, expand_P, marching, PermSum

real = st.floats(-2.0, 2.0, allow_nan=False)


def regular(n, margin=0.2):
    return st.lists(real, min_size=n, max_size=n).filter(
        lambda L: hx.ArgTuple(tuple(L)).min_contiguous() >= margin)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6).flatmap(regular))
def test_perm_vs_original(L):
    gp = gs.g_perm(L)
    assert abs(gp - gs.g_original(L)) <= 1e-10 * max(1, abs(gp))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(regular), st.floats(-2, 2))
def test_overcomplete_shift(L, lam):
    xs = np.array(gs.x_values(L))
    base = gs.g_overcomplete(xs)
    assert abs(base - gs.g_overcomplete(xs + lam)) <= 1e-11 * max(1, abs(base))


@settings(max_examples=100, deadline=None)
@given(real, real)
def test_coth_angle_addition(a, b):
    assume(min(abs(a), abs(b), abs(a + b)) > 0.05)
    ca, cb = hx.coth_x(a), hx.coth_x(b)
    assert abs(ca * cb + 1 - hx.coth_x(a + b) * (ca + cb)) <= 1e-12 * max(1, abs(ca * cb))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8).flatmap(regular))
def test_h_reversal(L):
    ys = np.cumsum(L)
    v = hx.h_eval(ys)
    assert abs(v - hx.h_eval(ys[::-1])) <= 1e-12 * max(1, abs(v))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 7).flatmap(regular))
def test_identity_52(L):
    assert gs.check_identity_52(L).passed


@given(st.permutations(list(range(1, 6))), st.permutations(list(range(1, 6))))
def test_perm_inverse_and_associativity(p, q):
    a, b = SignedPerm(tuple(p), -1), SignedPerm(tuple(q))
    e = a * a.inverse()
    assert e.map == tuple(range(1, 6)) and e.sign == 1
    c = SignedPerm((2, 1, 3, 5, 4))
    assert (a * b) * c == a * (b * c)


@given(st.integers(2, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))))
def test_marching_kills_P(nm):
    n, m = nm
    assert algebra_mul(marching(n, m), expand_P(n)) == PermSum.zero(n)
