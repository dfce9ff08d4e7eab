"""Exact shift-operator algebra and commutator closure.

A shift operator is a finite sum ``sum_k f_k(N) L^k`` where ``L^k`` is
``(a+)^k`` for ``k > 0``, ``(a-)^|k|`` for ``k < 0`` and the identity for
``k = 0``; each ``f_k`` is an :class:`EPSeq`.  On the polynomial basis::

    f(N) L^k P_n = f(n + k) beta_k(n) P_{n+k}

with ``beta_k(n)`` the product of the ladder entries ``sqrt(2) b_i`` picked up
along the way.  Products of two such operators are again of this form, and
every product of ladder entries that survives is a product of ``2 b_i**2``
factors, so the algebra is exact over the rationals.

For ``k > 0`` the values ``f(0..k-1)`` never act (the image of ``L^k`` starts
at ``P_k``); canonical form overwrites them with the tail so that equal
operators have equal coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import ClosureAbort
from .oscillator import TruncatedOperator
from .recurrence import RecurrenceSpec, ensure_valid
from .seqcore import EPSeq, PolyN


def _canonical_coeff(k: int, f: EPSeq) -> EPSeq:
    if k > 0 and f.n0:
        return f.with_values_below(k, [f.tail(i) for i in range(min(k, f.n0))])
    return f


@dataclass(frozen=True)
class ShiftOp:
    terms: tuple = ()  # sorted ((shift, EPSeq), ...)

    def __post_init__(self):
        items = dict(self.terms) if not isinstance(self.terms, dict) else self.terms
        clean = []
        for k in sorted(items):
            f = items[k]
            if not isinstance(f, EPSeq):
                f = EPSeq.const(f) if not isinstance(f, PolyN) else EPSeq.poly(f)
            f = _canonical_coeff(k, f)
            if not f.is_zero():
                clean.append((k, f))
        object.__setattr__(self, "terms", tuple(clean))

    @classmethod
    def single(cls, k: int, f) -> ShiftOp:
        return cls({k: f})

    @property
    def shifts(self) -> tuple:
        return tuple(k for k, _ in self.terms)

    def coeff(self, k: int) -> EPSeq:
        for kk, f in self.terms:
            if kk == k:
                return f
        return EPSeq.zero()

    def is_zero(self) -> bool:
        return not self.terms

    def max_degree(self) -> int:
        return max((f.tail.degree for _, f in self.terms), default=-1)

    def __add__(self, other: ShiftOp) -> ShiftOp:
        out = dict(self.terms)
        for k, f in other.terms:
            out[k] = out[k] + f if k in out else f
        return ShiftOp(out)

    def __neg__(self) -> ShiftOp:
        return ShiftOp({k: -f for k, f in self.terms})

    def __sub__(self, other: ShiftOp) -> ShiftOp:
        return self + (-other)

    def scale(self, c) -> ShiftOp:
        c = Fraction(c)
        return ShiftOp({k: f * c for k, f in self.terms})

    def __str__(self):
        if not self.terms:
            return "0"
        names = {0: "", 1: " a+", -1: " a-"}
        parts = []
        for k, f in self.terms:
            lad = names.get(k, f" (a+)^{k}" if k > 0 else f" (a-)^{-k}")
            parts.append(f"{f}{lad}")
        return " + ".join(parts)

    def to_json(self):
        if len(self.terms) == 1:
            k, f = self.terms[0]
            return {"shift": k, "coeff": f.to_json()}
        return {"terms": [{"shift": k, "coeff": f.to_json()} for k, f in self.terms]}


IDENTITY = ShiftOp.single(0, 1)
NUMBER = ShiftOp.single(0, PolyN.n())
RAISE = ShiftOp.single(1, 1)
LOWER = ShiftOp.single(-1, 1)
GENERATORS = (IDENTITY, NUMBER, RAISE, LOWER)
GENERATOR_NAMES = ("I", "N", "a+", "a-")


@lru_cache(maxsize=4096)
def _contact_factor(b2: EPSeq, j: int, k: int) -> EPSeq:
    """Scalar picked up when ``L^j`` acts after ``L^k``, indexed by the output.

    Equals ``beta_k(n) beta_j(n+k) / beta_{j+k}(n)`` at ``n = t - j - k``, with
    ``b2`` read as zero at negative indices (``b_{-1} = 0``).
    """
    one = EPSeq.const(1)
    if j * k >= 0:
        return one
    out = one
    if j < 0 < k:
        m, p = -j, k
        offsets = range(max(0, p - m), p)
    else:
        p, m = j, -k
        offsets = range(-m, -m + min(p, m))
    for i in offsets:
        out = out * (2 * b2.shifted(i - j - k, fill=0))
    return out


def _b2_of(s: RecurrenceSpec) -> EPSeq:
    s.require_symbolic()
    return s.b2


def shiftop_mul(A: ShiftOp, B: ShiftOp, s: RecurrenceSpec) -> ShiftOp:
    """Product ``A B`` in normal form.

    >>> from genosc.recurrence import laguerre
    >>> print(shiftop_mul(LOWER, RAISE, laguerre(0)))
    [tail 2*n^2 + 4*n + 2]
    """
    b2 = _b2_of(s)
    out = {}
    for j, f in A.terms:
        for k, g in B.terms:
            h = f * g.shifted(-j, fill=0) * _contact_factor(b2, j, k)
            d = j + k
            out[d] = out[d] + h if d in out else h
    return ShiftOp(out)


def shiftop_commutator(A: ShiftOp, B: ShiftOp, s: RecurrenceSpec) -> ShiftOp:
    return shiftop_mul(A, B, s) - shiftop_mul(B, A, s)


def _beta(s: RecurrenceSpec, k: int, n: int) -> float:
    if k > 0:
        return math.prod(math.sqrt(2) * s.b_at(n + i) for i in range(k))
    if n < -k:
        return 0.0
    return math.prod(math.sqrt(2) * s.b_at(n - i) for i in range(1, -k + 1))


def shiftop_to_matrix(A: ShiftOp, s: RecurrenceSpec, M: int) -> TruncatedOperator:
    ensure_valid(s)
    out = np.zeros((M, M))
    for k, f in A.terms:
        for n in range(M):
            t = n + k
            if 0 <= t < M:
                out[t, n] = float(f.at(t)) * _beta(s, k, n)
    return TruncatedOperator(M, out, str(A))


# ---------------------------------------------------------------------------
# span bookkeeping


class Span:
    """Incrementally echelonized span of shift operators.

    Each operator is coordinatized by its coefficient values at ``0..W_k-1``
    per shift level ``k``.  A difference of two coefficients has prefix no
    longer than the longest prefix seen and degree no higher than the highest
    degree seen, so ``W_k`` = (longest prefix + highest degree + 1) makes equal
    coordinates mean equal operators.  Growing ``W_k`` only appends coordinates, so pivots survive.
    """

    def __init__(self, ops: Sequence[ShiftOp] = ()):
        self.extent = {}  # shift -> (longest prefix, highest degree)
        self.widths = {}
        self.rows = []  # [pivot, coords, op]
        self.members = []
        for op in ops:
            self.add(op)


    def _coords(self, op: ShiftOp) -> dict:
        c = {}
        for k, f in op.terms:
            for n in range(self.widths[k]):
                v = f.at(n)
                if v:
                    c[(k, n)] = v
        return c

    def _grow(self, op: ShiftOp):
        grown = False
        for k, f in op.terms:
            n0, deg = self.extent.get(k, (0, 0))
            n0, deg = max(n0, f.n0), max(deg, f.tail.degree)
            self.extent[k] = (n0, deg)
            if n0 + deg + 1 > self.widths.get(k, 0):
                self.widths[k] = n0 + deg + 1
                grown = True
        if grown:
            for row in self.rows:
                row[1] = self._coords(row[2])

    def reduce(self, op: ShiftOp):
        """Return ``(residual_op, residual_coords)`` after eliminating the span."""
        self._grow(op)
        c = self._coords(op)
        res = op
        for pivot, row, rop in self.rows:
            v = c.get(pivot)
            if not v:
                continue
            for key, x in row.items():
                y = c.get(key, 0) - v * x
                if y:
                    c[key] = y
                else:
                    c.pop(key, None)
            res = res - rop.scale(v)
        return res, c

    def contains(self, op: ShiftOp) -> bool:
        return not self.reduce(op)[1]

    def add(self, op: ShiftOp) -> Optional[ShiftOp]:
        """Add ``op``; return its nonzero residual, or None if already spanned."""
        res, c = self.reduce(op)
        if not c:
            return None
        pivot = min(c)
        v = c[pivot]
        self.rows.append([pivot, {key: x / v for key, x in c.items()}, res.scale(1 / v)])
        self.members.append(res)
        return res

    def __len__(self):
        return len(self.rows)


def reduce_against_basis(candidate: ShiftOp, basis: Sequence[ShiftOp]) -> Optional[ShiftOp]:
    res, c = Span(basis).reduce(candidate)
    return res if c else None


# ---------------------------------------------------------------------------
# closure


@dataclass
class ClosureResult:
    status: str  # "Closed" or "BudgetExceeded"
    basis: list
    dim: int
    depth_reached: int
    growth_log: list = field(default_factory=list)
    aborted: bool = False
    note: str = ""

    @property
    def closed(self) -> bool:
        return self.status == "Closed"

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "dim": self.dim,
            "depth": self.depth_reached,
            "basis": [op.to_json() for op in self.basis],
            "growth_log": [list(x) for x in self.growth_log],
        }
        if self.note:
            out["note"] = self.note
        return out


def lie_closure(s: RecurrenceSpec, max_dim: int = 24, max_depth: int = 8,
                degree_cap: int = 16) -> ClosureResult:
    """Close ``{I, N, a+, a-}`` under commutators, one pass per depth level.

    Each pass commutes every pair of the current basis not yet tried
    (lexicographic order), reduces against the growing span and keeps
    independent residuals.
    """
    ensure_valid(s)
    s.require_symbolic()
    if max_dim < 4 or max_depth < 2:
        raise ValueError("need max_dim >= 4 and max_depth >= 2")
    span = Span(GENERATORS)
    basis = list(span.members)
    log = [(0, len(basis))]
    tried = set()

    def budget(depth, note, aborted=False):
        return ClosureResult("BudgetExceeded", list(basis), len(basis), depth, log,
                             aborted, note)

    for depth in range(1, max_depth + 1):
        snapshot = len(basis)
        added = 0
        for i, j in combinations(range(snapshot), 2):
            if (i, j) in tried:
                continue
            tried.add((i, j))
            c = shiftop_commutator(basis[i], basis[j], s)
            if c.max_degree() > degree_cap:
                log.append((depth, len(basis)))
                return budget(depth, f"aborted: coefficient degree {c.max_degree()} "
                                     f"exceeds cap {degree_cap} (growth witness)", True)
            res = span.add(c)
            if res is not None:
                basis.append(res)
                added += 1
                if len(basis) > max_dim:
                    log.append((depth, len(basis)))
                    return budget(depth, f"dim {len(basis)} > max_dim {max_dim}")
        log.append((depth, len(basis)))
        if not added:
            for A, B in combinations(basis, 2):
                if not span.contains(shiftop_commutator(A, B, s)):
                    raise ClosureAbort("closure check failed: commutator left the span")
            return ClosureResult("Closed", basis, len(basis), depth, log)
    return budget(max_depth, f"still growing after depth {max_depth}")

