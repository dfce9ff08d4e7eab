"""Exact polynomials in the index n and eventually-polynomial sequences.

Scalars are :class:`fractions.Fraction`.  An :class:`EPSeq` is a sequence
``s(0), s(1), ...`` that agrees with a fixed polynomial from some index on,
with finitely many exceptional values in front of it.  That is exactly the
class needed to carry boundary spikes such as ``b_{-1} = 0`` effects.

>>> s = EPSeq((1,), PolyN.zero())
>>> [s.at(n) for n in range(3)]
[Fraction(1, 1), Fraction(0, 1), Fraction(0, 1)]
>>> ep_difference(s)
EPSeq(prefix=(Fraction(-1, 1),), tail=PolyN(coeffs=()))
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

Rational = Fraction


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(x)


def rational_str(x: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is one."""
    return str(Fraction(x))


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rationals must be given as 'p/q' strings, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


# ---------------------------------------------------------------------------
# polynomials in n


@dataclass(frozen=True)
class PolyN:
    """Polynomial in the index variable ``n``; ``coeffs[i]`` multiplies n**i."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = [to_rational(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def zero(cls) -> PolyN:
        return cls(())

    @classmethod
    def const(cls, c) -> PolyN:
        return cls((c,))

    @classmethod
    def n(cls) -> PolyN:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        # zero polynomial has degree -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, n) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return PolyN(tuple(self.coeff(i) + other.coeff(i) for i in range(m)))

    __radd__ = __add__

    def __neg__(self):
        return PolyN(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return PolyN.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyN(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        out = PolyN.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, c: int) -> PolyN:
        """Return the polynomial ``n -> p(n + c)``."""
        if c == 0 or self.degree <= 0:
            return self
        out = [Fraction(0)] * len(self.coeffs)
        for i, a in enumerate(self.coeffs):
            # a (n + c)^i
            for k in range(i + 1):
                out[k] += a * comb(i, k) * Fraction(c) ** (i - k)
        return PolyN(tuple(out))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("n" if i == 1 else f"n^{i}")
            if mono and c == 1:
                term = mono
            elif mono and c == -1:
                term = "-" + mono
            elif mono:
                term = f"{c}*{mono}"
            else:
                term = str(c)
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")


def _as_poly(x) -> PolyN:
    return x if isinstance(x, PolyN) else PolyN.const(to_rational(x))


def poly_eval(p: PolyN, n: int) -> Fraction:
    return p(n)


# ---------------------------------------------------------------------------
# eventually polynomial sequences


@dataclass(frozen=True)
class EPSeq:
    """Sequence equal to ``prefix[n]`` for ``n < len(prefix)``, ``tail(n)`` after.

    Always stored canonically: the last prefix value never coincides with the
    tail, so two equal sequences have equal fields.
    """

    prefix: tuple = ()
    tail: PolyN = PolyN()

    def __post_init__(self):
        tail = self.tail if isinstance(self.tail, PolyN) else _as_poly(self.tail)
        pre = [to_rational(v) for v in self.prefix]
        while pre and pre[-1] == tail(len(pre) - 1):
            pre.pop()
        object.__setattr__(self, "prefix", tuple(pre))
        object.__setattr__(self, "tail", tail)

    @classmethod
    def poly(cls, p) -> EPSeq:
        return cls((), _as_poly(p))

    @classmethod
    def const(cls, c) -> EPSeq:
        return cls((), PolyN.const(c))

    @classmethod
    def zero(cls) -> EPSeq:
        return cls((), PolyN.zero())

    @property
    def n0(self) -> int:
        return len(self.prefix)

    def at(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("EPSeq is indexed by n >= 0")
        return self.prefix[n] if n < len(self.prefix) else self.tail(n)

    def values(self, count: int) -> list:
        return [self.at(n) for n in range(count)]

    def is_zero(self) -> bool:
        return not self.prefix and self.tail.is_zero()

    def aligned_prefix(self, n0: int) -> tuple:
        """Values at ``0..n0-1`` (``n0`` may exceed the canonical length)."""
        return tuple(self.at(n) for n in range(n0))

    def _pointwise(self, other, op):
        other = other if isinstance(other, EPSeq) else EPSeq.const(other)
        m = max(self.n0, other.n0)
        pre = tuple(op(self.at(n), other.at(n)) for n in range(m))
        return EPSeq(pre, op(self.tail, other.tail))

    def __add__(self, other):
        return self._pointwise(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._pointwise(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return EPSeq.const(other) - self if not isinstance(other, EPSeq) else other - self

    def __mul__(self, other):
        return self._pointwise(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __neg__(self):
        return EPSeq(tuple(-v for v in self.prefix), -self.tail)

    def shifted(self, c: int, fill=0) -> EPSeq:
        """Return ``n -> s(n + c)``; arguments below zero read as ``fill``."""
        if c >= 0:
            return EPSeq(self.prefix[c:], self.tail.shift(c))
        pad = (to_rational(fill),) * (-c)
        return EPSeq(pad + self.prefix, self.tail.shift(c))

    def with_values_below(self, k: int, values: Sequence) -> EPSeq:
        """Overwrite the first ``k`` entries."""
        tail_len = max(self.n0, k)
        pre = list(self.aligned_prefix(tail_len))
        pre[:k] = [to_rational(v) for v in values]
        return EPSeq(tuple(pre), self.tail)

    def __str__(self):
        if not self.prefix:
            return f"[tail {self.tail}]"
        pre = ", ".join(str(v) for v in self.prefix)
        return f"[prefix ({pre}); tail {self.tail}]"

    def to_json(self) -> dict:
        return {
            "prefix": [rational_str(v) for v in self.prefix],
            "tail": [rational_str(c) for c in self.tail.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> EPSeq:
        return cls(
            tuple(parse_rational(v) for v in obj.get("prefix", [])),
            PolyN(tuple(parse_rational(c) for c in obj.get("tail", []))),
        )


def ep_at(s: EPSeq, n: int) -> Fraction:
    return s.at(n)


def ep_difference(s: EPSeq) -> EPSeq:
    """Forward difference ``n -> s(n+1) - s(n)``."""
    return s.shifted(1) - s


def ep_is_constant(s: EPSeq) -> Optional[Fraction]:
    if s.prefix or s.tail.degree > 0:
        return None
    return s.tail.coeff(0)


# ---------------------------------------------------------------------------
# exact linear algebra over the rationals


def rref(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    mat = [[to_rational(x) for x in r] for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        lead = mat[r][c]
        mat[r] = [x / lead for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace_vector(columns: Sequence[Sequence]) -> Optional[list]:
    """One nonzero ``c`` with ``sum(c_i * columns[i]) == 0``, or None.

    The free variable with the largest index is set to one and the result is
    scaled so the first nonzero entry is one.
    """
    k = len(columns)
    if k == 0:
        return None
    dim = len(columns[0])
    rows = [[columns[i][r] for i in range(k)] for r in range(dim)]
    red, pivots = rref(rows) if dim else ([], [])
    free = [i for i in range(k) if i not in pivots]
    if not free:
        return None
    f = free[-1]
    c = [Fraction(0)] * k
    c[f] = Fraction(1)
    for row, p in zip(red, pivots):
        c[p] = -row[f]
    lead = next(x for x in c if x != 0)
    return [x / lead for x in c]


def coordinates(seqs: Sequence[EPSeq], n0: Optional[int] = None,
                width: Optional[int] = None) -> list:
    """Coordinate vectors (aligned prefix values followed by tail coefficients).

    Two sequences are equal iff their coordinate vectors at a common alignment
    are equal, so linear relations among sequences are linear relations among
    these vectors.
    """
    if n0 is None:
        n0 = max((s.n0 for s in seqs), default=0)
    if width is None:
        width = max((s.tail.degree + 1 for s in seqs), default=0)
    return [list(s.aligned_prefix(n0)) + [s.tail.coeff(i) for i in range(width)]
            for s in seqs]


def ep_linear_dependence(seqs: Iterable[EPSeq]) -> Optional[list]:
    seqs = list(seqs)
    if not seqs:
        raise ValueError("need at least one sequence")
    return nullspace_vector(coordinates(seqs))
