"""Ladder and number operators on span{P_0, ..., P_{M-1}}.

``a+ P_n = sqrt(2) b_n P_{n+1}``, ``a- P_n = sqrt(2) b_{n-1} P_{n-1}`` and
``N P_n = n P_n``.  Matrices here are floating point (or sympy in exact
mode); they exist to check the exact sequence layer from the outside.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .recurrence import RecurrenceSpec, ensure_valid
from .seqcore import EPSeq

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class TruncatedOperator:
    dim: int
    entries: np.ndarray
    label: str = ""

    def __matmul__(self, other):
        return TruncatedOperator(self.dim, self.entries @ other.entries,
                                 f"({self.label})({other.label})")


@dataclass(frozen=True)
class DiagonalSeq:
    seq: EPSeq
    role: str  # "B(N)", "B(N+I)" or "commutator"


def _b2_window(s: RecurrenceSpec, M: int) -> list:
    return [s.b2_at(n) for n in range(M)]


def build_ladder(s: RecurrenceSpec, M: int, *, plus_b2: Optional[EPSeq] = None):
    """Return ``(a_plus, a_minus, n_op)`` as M x M float matrices.

    ``plus_b2`` replaces b2 inside ``a_plus`` only; it exists so tests can
    feed a deliberately inconsistent pair of ladder operators.
    """
    ensure_valid(s)
    if M < 2:
        raise ValueError("truncation M must be at least 2")
    b = [s.b_sign * math.sqrt(v) for v in _b2_window(s, M)]
    b_plus = b if plus_b2 is None else [s.b_sign * math.sqrt(plus_b2.at(n)) for n in range(M)]
    ap = np.zeros((M, M))
    am = np.zeros((M, M))
    for n in range(M - 1):
        ap[n + 1, n] = SQRT2 * b_plus[n]
        am[n, n + 1] = SQRT2 * b[n]
    nop = np.diag(np.arange(M, dtype=float))
    return (TruncatedOperator(M, ap, "a+"), TruncatedOperator(M, am, "a-"),
            TruncatedOperator(M, nop, "N"))


def b_diagonals(s: RecurrenceSpec):
    """``(B(N), B(N+I))`` as exact sequences; ``B(N)`` reads ``b_{n-1}**2``."""
    ensure_valid(s)
    s.require_symbolic()
    return (DiagonalSeq(s.b2.shifted(-1, fill=0), "B(N)"),
            DiagonalSeq(s.b2, "B(N+I)"))


def commutator_diag(s: RecurrenceSpec) -> DiagonalSeq:
    """Diagonal of ``[a-, a+] = 2 (B(N+I) - B(N))``."""
    bN, bNI = b_diagonals(s)
    return DiagonalSeq(2 * (bNI.seq - bN.seq), "commutator")


# ---------------------------------------------------------------------------
# relation checks


@dataclass(frozen=True)
class RelationReport:
    relation: str
    max_residual: float
    checked_indices: int
    passed: bool

    def to_json(self) -> dict:
        return {"relation": self.relation, "max_residual": float(self.max_residual),
                "checked_indices": self.checked_indices, "pass": self.passed}


def default_tolerance(s: RecurrenceSpec, M: int) -> float:
    if M <= 64:
        return 1e-10
    scale = max(abs(float(v)) for v in _b2_window(s, M))
    return 1e-10 * M * max(scale, 1.0)


def _float_residuals(s, M, plus_b2):
    ap, am, nop = (t.entries for t in build_ladder(s, M, plus_b2=plus_b2))
    b2 = np.array([float(v) for v in _b2_window(s, M)])
    bN = np.concatenate([[0.0], b2[:-1]])
    k = M - 1
    r1 = am @ ap - 2 * np.diag(b2)
    r2 = ap @ am - 2 * np.diag(bN)
    r3p = nop @ ap - ap @ nop - ap
    r3m = nop @ am - am @ nop + am
    inner = lambda r: float(np.max(np.abs(r[:k, :k])))  # noqa: E731
    return inner(r1), inner(r2), max(inner(r3p), inner(r3m))


def _exact_residuals(s, M, plus_b2):
    import sympy

    ensure_valid(s)
    b2 = _b2_window(s, M)
    b2p = b2 if plus_b2 is None else [plus_b2.at(n) for n in range(M)]
    rat = lambda q: sympy.Rational(q.numerator, q.denominator)  # noqa: E731
    ap = sympy.zeros(M, M)
    am = sympy.zeros(M, M)
    for n in range(M - 1):
        ap[n + 1, n] = s.b_sign * sympy.sqrt(2 * rat(b2p[n]))
        am[n, n + 1] = s.b_sign * sympy.sqrt(2 * rat(b2[n]))
    nop = sympy.diag(*range(M))
    dB = sympy.diag(*[2 * rat(v) for v in b2])
    dBN = sympy.diag(0, *[2 * rat(v) for v in b2[:-1]])
    k = M - 1

    def inner(r):
        vals = [abs(sympy.nsimplify(r[i, j])) for i in range(k) for j in range(k)]
        return max(vals)

    return (inner(am * ap - dB), inner(ap * am - dBN),
            max(inner(nop * ap - ap * nop - ap), inner(nop * am - am * nop + am)))


RELATIONS = ("a-a+ = 2B(N+I)", "a+a- = 2B(N)", "[N,a+-] = +-a+-")


def verify_relations(s: RecurrenceSpec, M: int, tol: Optional[float] = None, *,
                     exact: bool = False, plus_b2: Optional[EPSeq] = None) -> list:
    """Check the three oscillator relations on interior indices ``0..M-2``.

    Index ``M-1`` is excluded: truncating before multiplying loses the
    ``a- a+`` contribution that would come from ``P_M``.  With ``exact=True``
    the matrices are built with sympy surds and residuals are exact
    (reported as floats, so 0.0 means an exact identity).
    """
    ensure_valid(s)
    if M < 3:
        raise ValueError("verify_relations needs M >= 3")
    if tol is None:
        tol = default_tolerance(s, M)
    residuals = (_exact_residuals if exact else _float_residuals)(s, M, plus_b2)
    return [RelationReport(name, float(r), M - 1, float(r) <= tol)
            for name, r in zip(RELATIONS, residuals)]
