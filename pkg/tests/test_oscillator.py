import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from genosc.classify import difference_table
from genosc.errors import InvalidSpecError
from genosc.oscillator import b_diagonals, build_ladder, commutator_diag, verify_relations
from genosc.recurrence import RecurrenceSpec, hermite, laguerre
from genosc.seqcore import EPSeq, PolyN

from helpers import poly_spec, specs

F = Fraction
n = PolyN.n()
SQ2 = math.sqrt(2)


def test_build_ladder_hermite():
    ap, am, nop = build_ladder(hermite(), 3)
    assert np.allclose(np.diag(ap.entries, -1), [1, SQ2], atol=1e-15)
    assert np.allclose(am.entries, ap.entries.T)
    assert np.array_equal(nop.entries, np.diag([0.0, 1.0, 2.0]))


def test_build_ladder_smallest():
    s = poly_spec(F(9, 4), 1)
    _, am, _ = build_ladder(s, 2)
    expected = np.zeros((2, 2))
    expected[0, 1] = SQ2 * 1.5
    assert np.allclose(am.entries, expected, atol=1e-15)


def test_build_ladder_laguerre_negative_sign():
    ap, _, _ = build_ladder(laguerre(0), 3)
    assert np.allclose(np.diag(ap.entries, -1), [-SQ2, -2 * SQ2], atol=1e-15)


def test_build_ladder_rejects_invalid():
    with pytest.raises(InvalidSpecError):
        build_ladder(RecurrenceSpec(EPSeq.poly(n - 3)), 4)


def test_b_diagonals():
    bN, bNI = b_diagonals(laguerre(0))
    assert bNI.seq == EPSeq.poly((n + 1) ** 2)
    assert bN.seq == EPSeq((0,), n * n)
    bN, _ = b_diagonals(poly_spec(1))
    assert bN.seq == EPSeq((0,), PolyN((1,)))
    _, bNI = b_diagonals(hermite())
    assert bNI.seq == EPSeq.poly(PolyN((F(1, 2), F(1, 2))))


def test_commutator_diag_examples():
    assert commutator_diag(poly_spec(1)).seq == EPSeq((2,), PolyN.zero())
    assert commutator_diag(poly_spec(1, 1)).seq == EPSeq.const(2)
    got = commutator_diag(laguerre(0)).seq
    assert got == EPSeq.poly(4 * n + 2) and got.n0 == 0


@pytest.mark.parametrize("spec", [hermite(), laguerre(F(1, 2))], ids=["hermite", "laguerre1/2"])
def test_verify_relations_pass(spec):
    reports = verify_relations(spec, 8, 1e-10)
    assert len(reports) == 3
    assert all(r.passed for r in reports)
    assert max(r.max_residual for r in reports) < 1e-12
    assert all(r.checked_indices == 7 for r in reports)


def test_verify_relations_detects_inconsistent_ladder():
    spec = hermite()
    bent = spec.b2 + EPSeq((0, 0, 1), PolyN.zero())
    reports = {r.relation: r for r in verify_relations(spec, 8, 1e-10, plus_b2=bent)}
    assert not reports["a-a+ = 2B(N+I)"].passed
    assert reports["[N,a+-] = +-a+-"].passed


def test_verify_relations_exact_mode_is_exact():
    for spec in (hermite(), laguerre(1)):
        assert all(r.max_residual == 0.0 for r in verify_relations(spec, 10, exact=True))


def test_relation_report_json():
    rep = verify_relations(hermite(), 4)[0]
    assert set(rep.to_json()) == {"relation", "max_residual", "checked_indices", "pass"}


def test_truncation_corner_is_excluded():
    # the last diagonal entry of the truncated a-a+ is wrong by construction
    ap, am, _ = build_ladder(hermite(), 6)
    prod = am.entries @ ap.entries
    assert prod[5, 5] == 0.0
    assert all(r.passed for r in verify_relations(hermite(), 6))


@given(specs(), st.integers(3, 32))
@settings(max_examples=40, deadline=None)
def test_relations_hold_for_random_specs(s, M):
    assert all(r.passed for r in verify_relations(s, M, 1e-10))


@given(specs())
def test_commutator_diag_is_twice_first_difference_row(s):
    assert commutator_diag(s).seq == 2 * difference_table(s, 0)[0]


@given(specs(), st.integers(3, 12))
@settings(deadline=None)
def test_sign_flip_invariance(s, M):
    flipped = replace(s, b_sign=-s.b_sign)
    ap, am, _ = build_ladder(s, M)
    fp, fm, _ = build_ladder(flipped, M)
    assert np.allclose(am.entries @ ap.entries, fm.entries @ fp.entries, atol=1e-12)
    assert np.allclose(ap.entries @ am.entries, fp.entries @ fm.entries, atol=1e-12)
    assert commutator_diag(s) == commutator_diag(flipped)
