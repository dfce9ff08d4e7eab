from fractions import Fraction
from math import factorial

from hypothesis import given, strategies as st

from genosc.seqcore import (
    EPSeq, PolyN, ep_at, ep_difference, ep_is_constant, ep_linear_dependence,
    nullspace_vector, parse_rational, poly_eval, rational_str,
)

from helpers import epseqs, polys, small_rationals

F = Fraction
n = PolyN.n()


def test_poly_eval_examples():
    assert poly_eval(PolyN((2, 3, 1)), 3) == 20
    assert poly_eval(PolyN.zero(), 17) == 0
    assert poly_eval(PolyN((1, 2, 1)), 0) == 1


def test_zero_poly_degree_sentinel():
    assert PolyN.zero().degree == -1
    assert PolyN((0, 0, 0)).degree == -1
    assert PolyN((1, 0)).degree == 0


def test_ep_at_examples():
    s = EPSeq((1,), PolyN.zero())
    assert ep_at(s, 0) == 1
    assert ep_at(s, 5) == 0
    assert ep_at(EPSeq((), PolyN((1, 2))), 4) == 9


def test_ep_difference_examples():
    # A^(0) for laguerre alpha=0 is 2n+1; its difference is the constant 2
    assert ep_difference(EPSeq.poly(PolyN((1, 2)))) == EPSeq.const(2)
    assert ep_difference(EPSeq((1,), PolyN.zero())) == EPSeq((-1,), PolyN.zero())
    assert ep_difference(EPSeq.const(F(7, 3))).is_zero()


def test_ep_is_constant_examples():
    assert ep_is_constant(EPSeq.const(2)) == 2
    assert ep_is_constant(EPSeq((-1,), PolyN.zero())) is None
    assert ep_is_constant(EPSeq.poly(PolyN((1, 2)))) is None


def test_linear_dependence_examples():
    s = EPSeq((3, 1), PolyN((1, 1, 1)))
    assert ep_linear_dependence([s, s]) == [1, -1]
    got = ep_linear_dependence([EPSeq.poly(n), EPSeq.const(1), EPSeq.poly(n + 1)])
    assert got == [1, 1, -1]
    assert ep_linear_dependence([EPSeq((1,), PolyN.zero()), EPSeq.const(1)]) is None


def test_canonical_form_absorbs_matching_prefix():
    assert EPSeq((0, 1), n * n) == EPSeq.poly(n * n)
    assert EPSeq((0, 5), n * n).prefix == (0, 5)
    assert EPSeq((0, 5), n * n).n0 == 2


def test_shift_with_fill():
    s = EPSeq.poly(n * n + 1)
    back = s.shifted(-1, fill=0)
    assert back.values(4) == [0, 1, 2, 5]
    assert s.shifted(2).values(3) == [5, 10, 17]


def test_rational_serialization():
    assert rational_str(F(3, 6)) == "1/2"
    assert rational_str(F(4, 2)) == "2"
    assert rational_str(F(-1, 3)) == "-1/3"
    assert parse_rational("-7/14") == F(-1, 2)
    assert parse_rational(3) == 3


def test_nullspace_vector_none_for_independent():
    assert nullspace_vector([[1, 0], [0, 1]]) is None


@given(epseqs())
def test_canonicalization_idempotent(s):
    again = EPSeq(s.prefix, s.tail)
    assert again == s
    padded = EPSeq(s.aligned_prefix(s.n0 + 3), s.tail)
    assert padded == s
    for k in range(51):
        assert padded.at(k) == s.at(k)


@given(epseqs())
def test_canonical_n0_minimal(s):
    assert s.n0 == 0 or s.prefix[-1] != s.tail(s.n0 - 1)


@given(epseqs())
def test_difference_matches_pointwise(s):
    d = ep_difference(s)
    for k in range(51):
        assert d.at(k) == s.at(k + 1) - s.at(k)


@given(epseqs(), epseqs(), small_rationals)
def test_pointwise_ring_operations(s, t, c):
    for k in range(12):
        assert (s + t).at(k) == s.at(k) + t.at(k)
        assert (s - t).at(k) == s.at(k) - t.at(k)
        assert (s * t).at(k) == s.at(k) * t.at(k)
        assert (s * c).at(k) == s.at(k) * c
        assert s.shifted(1).at(k) == s.at(k + 1)


@given(polys(max_degree=5), st.integers(-4, 4))
def test_poly_shift(p, c):
    q = p.shift(c)
    for k in range(-3, 8):
        assert q(k) == p(k + c)


@given(polys(max_degree=5, coeffs=st.integers(-5, 5)))
def test_iterated_difference_of_polynomial(p):
    d = p.degree
    s = EPSeq.poly(p)
    for _ in range(max(d, 0)):
        s = ep_difference(s)
    if d >= 0:
        assert ep_is_constant(s) == factorial(d) * p.leading()
    assert ep_difference(s).is_zero()


@given(st.lists(epseqs(max_prefix=2, max_degree=2), min_size=1, max_size=4))
def test_linear_dependence_sound(seqs):
    c = ep_linear_dependence(seqs)
    if c is None:
        return
    assert any(x != 0 for x in c)
    top = max(s.n0 for s in seqs) + max(s.tail.degree for s in seqs) + 2
    for k in range(top + 1):
        assert sum(ci * s.at(k) for ci, s in zip(c, seqs)) == 0
    combo = EPSeq.zero()
    for ci, s in zip(c, seqs):
        combo = combo + s * ci
    assert combo.is_zero()


@given(epseqs(max_prefix=2, max_degree=2), epseqs(max_prefix=2, max_degree=2), small_rationals)
def test_linear_dependence_finds_planted_relation(s, t, c):
    combo = s + t * c
    got = ep_linear_dependence([s, t, combo])
    assert got is not None
