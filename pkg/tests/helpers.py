"""Shared strategies, corpora and independent oracles for the test-suite."""
import random
from fractions import Fraction

from hypothesis import strategies as st

from genosc.recurrence import RecurrenceSpec, hermite, laguerre
from genosc.seqcore import EPSeq, PolyN

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
pos_rationals = st.fractions(min_value=Fraction(1, 6), max_value=5, max_denominator=6)
nonneg_rationals = st.fractions(min_value=0, max_value=5, max_denominator=6)


@st.composite
def polys(draw, max_degree=3, coeffs=small_rationals):
    return PolyN(tuple(draw(st.lists(coeffs, max_size=max_degree + 1))))


@st.composite
def epseqs(draw, max_prefix=3, max_degree=3):
    prefix = draw(st.lists(small_rationals, max_size=max_prefix))
    return EPSeq(tuple(prefix), draw(polys(max_degree)))


@st.composite
def positive_b2(draw, max_prefix=2, min_degree=0, max_degree=2):
    """b2 sequences that are positive for every n >= 0."""
    deg = draw(st.integers(min_degree, max_degree))
    coeffs = [draw(pos_rationals)] + [draw(nonneg_rationals) for _ in range(deg)]
    if deg:
        coeffs[-1] = draw(pos_rationals)
    prefix = draw(st.lists(pos_rationals, max_size=max_prefix))
    return EPSeq(tuple(prefix), PolyN(tuple(coeffs)))


@st.composite
def specs(draw, max_prefix=2, min_degree=0, max_degree=2):
    b2 = draw(positive_b2(max_prefix, min_degree, max_degree))
    a = draw(st.one_of(st.just(EPSeq.zero()), epseqs(max_prefix=1, max_degree=1)))
    sign = draw(st.sampled_from([1, -1]))
    return RecurrenceSpec(b2, a, sign, "random")


def poly_spec(*coeffs, a=None, label=None, sign=1):
    return RecurrenceSpec(EPSeq.poly(PolyN(coeffs)), a or EPSeq.zero(), sign,
                          label or f"b2 coeffs {coeffs}")


def corpus():
    """Fixed mixed corpus of symbolic specs (symmetric and not)."""
    n = PolyN.n()
    out = [laguerre(a) for a in (0, Fraction(1, 2), 1, Fraction(5, 2), Fraction(-1, 2))]
    out += [hermite()]
    out += [
        poly_spec(1),
        poly_spec(3, a=EPSeq.poly(n)),
        poly_spec(2, 1),
        poly_spec(1, 1, label="b2 = n + 1"),
        poly_spec(1, 0, 1, a=EPSeq.poly(2 * n + 1), label="n^2 + 1"),
        poly_spec(2, 3, 1, label="(n+1)(n+2)"),
        poly_spec(Fraction(1, 3), Fraction(4, 3), 1, a=EPSeq.const(-2)),
        poly_spec(5, 2, Fraction(1, 2)),
        poly_spec(1, 2, 1, 1, a=EPSeq.poly(n * n)),
        poly_spec(2, 0, 0, 1),
        poly_spec(1, 1, 1, 1, 1),
        poly_spec(4, 4, sign=-1),
        RecurrenceSpec(EPSeq((5,), PolyN((1,))), EPSeq.zero(), 1, "spike then 1"),
        RecurrenceSpec(EPSeq((2, 7), PolyN((1, 2, 1))), EPSeq.poly(n), -1, "laguerre tail, bad head"),
        RecurrenceSpec(EPSeq((), PolyN((Fraction(7, 2), Fraction(9, 2), 1))),
                       EPSeq.poly(2 * n + Fraction(7, 2)), -1, "laguerre 5/2 by hand"),
        RecurrenceSpec(EPSeq((Fraction(1, 2),), PolyN((3, 1))), EPSeq((1,), PolyN()), 1, "prefix affine"),
    ]
    return out


def difference_rows_bruteforce(b2_values, j_max):
    """Plain-list finite differences of b_n^2 with b_{-1} = 0."""
    rows = [[b2_values[0]] + [b2_values[k] - b2_values[k - 1] for k in range(1, len(b2_values))]]
    for _ in range(j_max):
        prev = rows[-1]
        rows.append([prev[k + 1] - prev[k] for k in range(len(prev) - 1)])
    return rows


def random_rational(rng, lo, hi, max_den=5):
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)
