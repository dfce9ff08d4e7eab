"""Dimension verdicts from difference tables of ``b_n**2``.

Row 0 of the table is ``A0(n) = b_n**2 - b_{n-1}**2`` with ``b_{-1} = 0``;
row ``j + 1`` is the forward difference of row ``j``.  The algebra is
four-dimensional exactly when row 1 is constant, which happens exactly when
``b_n**2 = (a0 + a2 n)(1 + n)``.  Both tests run and must agree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import SpecError
from .liealg import lie_closure
from .recurrence import RecurrenceSpec, ensure_valid, symmetrize, validate
from .seqcore import EPSeq, PolyN, ep_difference, ep_is_constant, rational_str

FINITE = "FiniteDim4"
INFINITE = "Infinite"
CONSISTENT = "ConsistentWithFinite"
WITNESSED = "InfiniteWitnessed"


@dataclass(frozen=True)
class Witness:
    j: int
    n1: int
    v1: Fraction
    n2: int
    v2: Fraction

    def to_json(self) -> dict:
        return {"j": self.j, "n1": self.n1, "v1": rational_str(self.v1),
                "n2": self.n2, "v2": rational_str(self.v2)}


@dataclass(frozen=True)
class Verdict:
    kind: str
    a0: Optional[Fraction] = None
    a2: Optional[Fraction] = None
    witness: Optional[Witness] = None
    note: str = ""

    @property
    def finite(self) -> bool:
        return self.kind in (FINITE, CONSISTENT)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "note": self.note}
        if self.a0 is not None:
            out["a0"] = rational_str(self.a0)
            out["a2"] = rational_str(self.a2)
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


@dataclass(frozen=True)
class DifferenceTable:
    rows: tuple

    def __getitem__(self, j) -> EPSeq:
        return self.rows[j]

    def __len__(self):
        return len(self.rows)


def first_row(b2: EPSeq) -> EPSeq:
    return b2 - b2.shifted(-1, fill=0)


def difference_table(s: RecurrenceSpec, j_max: int = 3) -> DifferenceTable:
    ensure_valid(s)
    s.require_symbolic()
    rows = [first_row(s.b2)]
    for _ in range(j_max):
        rows.append(ep_difference(rows[-1]))
    return DifferenceTable(tuple(rows))


def check_factorization(b2: PolyN) -> Optional[tuple]:
    """``(a0, a2)`` if ``b2 = (a0 + a2 n)(1 + n)``, else None.

    >>> check_factorization(PolyN((1, 2, 1)))
    (Fraction(1, 1), Fraction(1, 1))
    """
    if b2.degree > 2:
        return None
    c0, c1, c2 = (b2.coeff(i) for i in range(3))
    if c1 != c0 + c2:
        return None
    return c0, c2


def _nonconstancy_witness(j: int, row: EPSeq) -> Witness:
    v1 = row.at(0)
    for n in range(1, row.n0 + max(row.tail.degree, 0) + 2):
        if row.at(n) != v1:
            return Witness(j, 0, v1, n, row.at(n))
    raise AssertionError("row is constant")


def classify(s: RecurrenceSpec) -> Verdict:
    ensure_valid(s)
    s.require_symbolic()
    table = difference_table(s, 1)
    const = ep_is_constant(table[1])
    factored = None if s.b2.prefix else check_factorization(s.b2.tail)
    if (const is None) != (factored is None):
        raise AssertionError(
            f"difference test and factorization disagree for {s.label!r}")
    if factored is not None:
        a0, a2 = factored
        if const != 2 * a2 or table[0].at(0) != a0:
            raise AssertionError("difference table and factorization give different (a0, a2)")
        return Verdict(FINITE, a0, a2,
                       note=f"b2 = ({PolyN((a0, a2))})(n + 1); Lie dimension 4")
    w = _nonconstancy_witness(1, table[1])
    return Verdict(INFINITE, witness=w,
                   note=f"A^(1) not constant: A^(1)({w.n1}) = {w.v1}, A^(1)({w.n2}) = {w.v2}")


def classify_prefix(b2_values: Sequence, j_max: int = 3) -> Verdict:
    """Verdict from finitely many values ``b_0**2, ..., b_{L-1}**2``.

    Finite data can refute finiteness but never prove it, so the best
    outcome is :data:`CONSISTENT`.
    """
    vals = [Fraction(v) for v in b2_values]
    if len(vals) < 4:
        raise SpecError("classify_prefix needs at least 4 values of b2")
    bad = next((n for n, v in enumerate(vals) if v <= 0), None)
    if bad is not None:
        raise SpecError(f"b2 not positive at n={bad} (value {vals[bad]})")
    rows = [[vals[0]] + [vals[n] - vals[n - 1] for n in range(1, len(vals))]]
    for _ in range(max(j_max, 1)):
        prev = rows[-1]
        rows.append([prev[n + 1] - prev[n] for n in range(len(prev) - 1)])
    row1 = rows[1]
    for n in range(1, len(row1)):
        if row1[n] != row1[0]:
            w = Witness(1, 0, row1[0], n, row1[n])
            return Verdict(WITNESSED, witness=w,
                           note=f"A^(1) not constant on the first {len(vals)} values")
    a0, a2 = vals[0], row1[0] / 2
    return Verdict(CONSISTENT, a0, a2,
                   note=f"first {len(vals)} values fit b2 = ({PolyN((a0, a2))})(n + 1); "
                        "finite data cannot prove finiteness")


# ---------------------------------------------------------------------------
# aggregated report


@dataclass
class Report:
    label: str
    validation: dict
    table: list = field(default_factory=list)
    verdict: Optional[Verdict] = None
    symmetrized_verdict: Optional[Verdict] = None
    closure: Optional[dict] = None
    agreement: Optional[bool] = None

    def to_json(self) -> dict:
        out = {"label": self.label, "validation": self.validation}
        if self.verdict is not None:
            out["verdict"] = self.verdict.to_json()
        if self.table:
            out["difference_table"] = self.table
        if self.symmetrized_verdict is not None:
            out["symmetrized_verdict"] = self.symmetrized_verdict.to_json()
            out["symmetrization_invariant"] = self.symmetrized_verdict == self.verdict
        if self.closure is not None:
            out["closure"] = self.closure
        if self.agreement is not None:
            out["verdicts_agree"] = self.agreement
        return out


def closure_agrees(verdict: Verdict, closure) -> bool:
    if verdict.kind == FINITE:
        return closure.closed and closure.dim == 4
    return not closure.closed


def classification_report(s: RecurrenceSpec, j_max: int = 3, max_dim: int = 24,
                          max_depth: int = 8) -> Report:
    rep = validate(s)
    report = Report(s.label, rep.to_json())
    if not rep.valid:
        return report
    if not s.symbolic:
        report.verdict = classify_prefix(s.window, j_max)
        return report
    report.table = [row.to_json() for row in difference_table(s, j_max).rows]
    report.verdict = classify(s)
    report.symmetrized_verdict = classify(symmetrize(s))
    closure = lie_closure(s, max_dim=max_dim, max_depth=max_depth)
    label = "Lie dimension" if closure.closed else (
        "infinite-dimensional (witnessed: growth past budget)"
        if report.verdict.kind == INFINITE else "growth witness")
    report.closure = dict(closure.to_json(), interpretation=label)
    report.agreement = closure_agrees(report.verdict, closure)
    return report
