"""Three-term recurrence data ``x P_n = b_n P_{n+1} + a_n P_n + b_{n-1} P_{n-1}``.

A :class:`RecurrenceSpec` stores the diagonal ``a_n`` and the squares
``b_n**2`` as exact sequences, plus one sign shared by every ``b_n``.
Only ``b_n**2`` matters for the oscillator algebra; the sign only shows up in
matrix realizations and point evaluation of the polynomials.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import isqrt
from typing import NamedTuple, Optional, Sequence, Union

from .errors import InvalidSpecError, MomentError, PrefixOnlyError, SpecError
from .expr import parse_coeff_expr
from .seqcore import EPSeq, PolyN, parse_rational, rational_str, rref


@dataclass(frozen=True)
class RecurrenceSpec:
    b2: Optional[EPSeq]
    a: EPSeq = field(default_factory=EPSeq.zero)
    b_sign: int = 1
    label: str = ""
    # known values of b_n**2 when no closed form is available
    window: Optional[tuple] = None

    def __post_init__(self):
        if self.b_sign not in (1, -1):
            raise SpecError("b_sign must be +1 or -1")
        if self.b2 is None and not self.window:
            raise SpecError("spec needs b2 or a window of b2 values")
        if self.window is not None:
            object.__setattr__(self, "window", tuple(Fraction(v) for v in self.window))

    @property
    def symbolic(self) -> bool:
        return self.b2 is not None

    def require_symbolic(self):
        if self.b2 is None:
            raise PrefixOnlyError(
                f"spec {self.label!r} only has finitely many b2 values; "
                "use classify_prefix for window data")

    def b2_at(self, n: int) -> Fraction:
        """``b_n**2`` with the ``b_{-1} = 0`` convention for negative n."""
        if n < 0:
            return Fraction(0)
        if self.b2 is not None:
            return self.b2.at(n)
        if n >= len(self.window):
            raise PrefixOnlyError(f"b2 is only known for n < {len(self.window)}")
        return self.window[n]

    def a_at(self, n: int) -> Fraction:
        return self.a.at(n)

    def b_at(self, n: int) -> float:
        return self.b_sign * math.sqrt(self.b2_at(n))


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    index: Optional[int] = None
    value: Optional[Fraction] = None
    message: str = "ok"

    def to_json(self) -> dict:
        out = {"valid": self.valid, "message": self.message}
        if self.index is not None:
            out["index"] = self.index
            out["value"] = rational_str(self.value)
        return out


def cauchy_bound(p: PolyN) -> Fraction:
    """Every real root of ``p`` has absolute value below this bound."""
    lead = p.leading()
    return 1 + max((abs(c / lead) for c in p.coeffs[:-1]), default=Fraction(0))


def first_nonpositive(s: EPSeq) -> Optional[int]:
    """Smallest n with ``s(n) <= 0``, or None if ``s`` is positive everywhere."""
    for n, v in enumerate(s.prefix):
        if v <= 0:
            return n
    tail, n0 = s.tail, s.n0
    if tail.is_zero():
        return n0
    # past the root bound the sign is the sign of the leading coefficient
    last = max(n0, math.ceil(cauchy_bound(tail)))
    for n in range(n0, last + 1):
        if tail(n) <= 0:
            return n
    if tail.leading() < 0:
        return last + 1
    return None


def validate(s: RecurrenceSpec) -> ValidationReport:
    if s.b2 is None:
        bad = next((n for n, v in enumerate(s.window) if v <= 0), None)
    else:
        bad = first_nonpositive(s.b2)
    if bad is None:
        return ValidationReport(True)
    v = s.b2_at(bad)
    return ValidationReport(False, bad, v, f"b2 not positive at n={bad} (value {v})")


def ensure_valid(s: RecurrenceSpec) -> None:
    rep = validate(s)
    if not rep.valid:
        raise InvalidSpecError(rep.message, rep)


# ---------------------------------------------------------------------------
# families


def laguerre(alpha=0) -> RecurrenceSpec:
    alpha = Fraction(alpha)
    if alpha <= -1:
        raise SpecError(f"laguerre alpha must exceed -1, got {alpha}")
    n = PolyN.n()
    return RecurrenceSpec(
        b2=EPSeq.poly((n + 1) * (n + alpha + 1)),
        a=EPSeq.poly(2 * n + alpha + 1),
        b_sign=-1,
        label=f"laguerre(alpha={alpha})",
    )


def hermite() -> RecurrenceSpec:
    # orthonormal Hermite for the normal law of variance 1/2
    return RecurrenceSpec(
        b2=EPSeq.poly(PolyN((Fraction(1, 2), Fraction(1, 2)))),
        a=EPSeq.zero(),
        b_sign=1,
        label="hermite",
    )


FAMILIES = {"laguerre": laguerre, "hermite": hermite}


def builtin_family(name: str, params: dict = None) -> RecurrenceSpec:
    params = dict(params or {})
    if name not in FAMILIES:
        raise SpecError(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}")
    if name == "laguerre":
        return laguerre(Fraction(params.get("alpha", 0)))
    return hermite()


def symmetrize(s: RecurrenceSpec) -> RecurrenceSpec:
    if s.a.is_zero():
        return s
    return replace(s, a=EPSeq.zero(), label=f"{s.label} [symmetrized]")


# ---------------------------------------------------------------------------
# moments


@dataclass(frozen=True)
class MomentSequence:
    moments: tuple

    def __post_init__(self):
        mu = tuple(Fraction(m) for m in self.moments)
        object.__setattr__(self, "moments", mu)
        if not mu or mu[0] != 1:
            raise MomentError("moment sequence must start with mu_0 = 1")

    @property
    def K(self) -> int:
        return len(self.moments) - 1

    def functional(self, p: Sequence[Fraction]) -> Fraction:
        """Apply the moment functional to a polynomial in x (coefficient list)."""
        if len(p) > len(self.moments):
            raise MomentError(f"need moments up to order {len(p) - 1}")
        return sum((c * m for c, m in zip(p, self.moments)), Fraction(0))

    def hankel_determinants(self) -> list:
        """Leading principal minors of the Hankel matrix ``[mu_{i+j}]``."""
        out = []
        for m in range(self.K // 2 + 1):
            rows = [[self.moments[i + j] for j in range(m + 1)] for i in range(m + 1)]
            out.append(_det(rows))
        return out


def _det(rows) -> Fraction:
    mat = [list(r) for r in rows]
    det = Fraction(1)
    size = len(mat)
    for c in range(size):
        piv = next((i for i in range(c, size) if mat[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        for i in range(c + 1, size):
            f = mat[i][c] / mat[c][c]
            mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
    return det


def _xmul(p):
    return [Fraction(0)] + list(p)


def _axpy(alpha, x, y):
    """alpha*x + y for coefficient lists."""
    m = max(len(x), len(y))
    x = list(x) + [Fraction(0)] * (m - len(x))
    y = list(y) + [Fraction(0)] * (m - len(y))
    return [alpha * u + v for u, v in zip(x, y)]


def _pmul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, u in enumerate(p):
        for j, v in enumerate(q):
            out[i + j] += u * v
    return out


def moments_to_recurrence(m: Union[MomentSequence, Sequence], count: int):
    """Recurrence coefficients ``(a_0.., b_0**2..)`` of the orthonormal system.

    Runs the monic Stieltjes recursion in exact arithmetic:
    ``pi_{k+1} = (x - a_k) pi_k - b_{k-1}**2 pi_{k-1}`` with
    ``a_k = L(x pi_k**2) / L(pi_k**2)`` and ``b_k**2 = L(pi_{k+1}**2) / L(pi_k**2)``.
    """
    if not isinstance(m, MomentSequence):
        m = MomentSequence(tuple(m))
    if count < 1:
        raise MomentError("count must be positive")
    if m.K < 2 * count:
        raise MomentError(
            f"{count} recurrence coefficients need moments up to order {2 * count}, "
            f"got up to {m.K}")
    a, b2 = [], []
    prev, cur = [Fraction(0)], [Fraction(1)]
    h_cur = m.functional(_pmul(cur, cur))
    for k in range(count):
        xc = _xmul(cur)
        a_k = m.functional(_pmul(xc, cur)) / h_cur
        nxt = _axpy(-a_k, cur, xc)
        if k > 0:
            nxt = _axpy(-b2[-1], prev, nxt)
        h_next = m.functional(_pmul(nxt, nxt))
        if h_next <= 0:
            raise MomentError(
                f"Hankel matrix is not positive definite at order {k + 1} "
                "(invalid or finitely supported measure)")
        a.append(a_k)
        b2.append(h_next / h_cur)
        prev, cur, h_cur = cur, nxt, h_next
    return a, b2


def monic_polynomials(a: Sequence, b2: Sequence, size: int) -> list:
    """Monic ``pi_0..pi_{size-1}`` from the recurrence (coefficient lists in x)."""
    polys = [[Fraction(1)]]
    prev = [Fraction(0)]
    for k in range(size - 1):
        cur = polys[-1]
        nxt = _axpy(-Fraction(a[k]), cur, _xmul(cur))
        if k > 0:
            nxt = _axpy(-Fraction(b2[k - 1]), prev, nxt)
        prev = cur
        polys.append(nxt)
    return polys


def monic_gram(a: Sequence, b2: Sequence, moments, size: int):
    """Gram matrix ``L(pi_i pi_j)`` and the expected norms ``prod_{k<i} b_k**2``.

    The orthonormal polynomials are ``P_i = pi_i / (b_0 ... b_{i-1})``, so
    ``<P_i, P_j> = delta_ij`` holds exactly iff the Gram matrix equals
    ``diag(norms)``.
    """
    if not isinstance(moments, MomentSequence):
        moments = MomentSequence(tuple(moments))
    polys = monic_polynomials(a, b2, size)
    gram = [[moments.functional(_pmul(p, q)) for q in polys] for p in polys]
    norms = [Fraction(1)]
    for k in range(size - 1):
        norms.append(norms[-1] * Fraction(b2[k]))
    return gram, norms


def laguerre_moments(alpha, count: int) -> list:
    """Moments ``(alpha+1)_k`` of ``x**alpha e**-x / Gamma(alpha+1)``."""
    alpha = Fraction(alpha)
    out = [Fraction(1)]
    for k in range(count - 1):
        out.append(out[-1] * (alpha + 1 + k))
    return out


def gaussian_moments(variance, count: int) -> list:
    variance = Fraction(variance)
    out = []
    for k in range(count):
        if k % 2:
            out.append(Fraction(0))
        else:
            # (k-1)!! variance^(k/2)
            dfact = math.prod(range(k - 1, 0, -2))
            out.append(dfact * variance ** (k // 2))
    return out


# ---------------------------------------------------------------------------
# point evaluation


class PolyValue(NamedTuple):
    value: Union[Fraction, float]
    exact: bool


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def polynomial_eval(s: RecurrenceSpec, n: int, x) -> PolyValue:
    """``P_n(x)`` through the recurrence, exactly when every needed ``b_k`` is rational.

    >>> polynomial_eval(laguerre(0), 1, 0)
    PolyValue(value=Fraction(1, 1), exact=True)
    """
    ensure_valid(s)
    if n == 0:
        return PolyValue(Fraction(1), True)
    roots = [rational_sqrt(s.b2_at(k)) for k in range(n)]
    if all(r is not None for r in roots):
        x = Fraction(x)
        b = [s.b_sign * r for r in roots]
        zero = Fraction(0)
    else:
        x = float(x)
        b = [s.b_at(k) for k in range(n)]
        zero = 0.0
    prev, cur = zero, zero + 1
    for k in range(n):
        b_prev = b[k - 1] if k > 0 else zero
        a_k = s.a_at(k) if isinstance(zero, Fraction) else float(s.a_at(k))
        prev, cur = cur, ((x - a_k) * cur - b_prev * prev) / b[k]
    return PolyValue(cur, isinstance(zero, Fraction))


# ---------------------------------------------------------------------------
# JSON spec files


def _seq_field(obj, name: str) -> tuple:
    """Decode one coefficient field; returns ``(EPSeq or None, window or None)``."""
    if obj == "zero":
        return EPSeq.zero(), None
    if not isinstance(obj, dict):
        raise SpecError(f"field {name!r}: expected an object or \"zero\"")
    try:
        params = {k: parse_rational(v) for k, v in obj.get("params", {}).items()}
        if "values" in obj:
            vals = tuple(parse_rational(v) for v in obj["values"])
            return None, vals
        if "expr" in obj:
            return EPSeq.poly(parse_coeff_expr(obj["expr"], params)), None
        if "tail_expr" in obj:
            prefix = tuple(parse_rational(v) for v in obj.get("prefix", []))
            return EPSeq(prefix, parse_coeff_expr(obj["tail_expr"], params)), None
    except (SpecError, ValueError, TypeError) as exc:
        raise SpecError(f"field {name!r}: {exc}") from exc
    raise SpecError(f"field {name!r}: needs 'expr', 'tail_expr' or 'values'")


def spec_from_json(obj) -> RecurrenceSpec:
    if not isinstance(obj, dict):
        raise SpecError("spec must be a JSON object")
    label = obj.get("label", "")
    if "family" in obj:
        params = {}
        if "alpha" in obj:
            try:
                params["alpha"] = parse_rational(obj["alpha"])
            except ValueError as exc:
                raise SpecError(f"field 'alpha': {exc}") from exc
        spec = builtin_family(obj["family"], params)
        return replace(spec, label=label or spec.label)
    if "moments" in obj:
        try:
            mu = [parse_rational(v) for v in obj["moments"]]
        except ValueError as exc:
            raise SpecError(f"field 'moments': {exc}") from exc
        count = obj.get("count")
        if not isinstance(count, int) or isinstance(count, bool):
            raise SpecError("field 'count': expected an integer")
        a, b2 = moments_to_recurrence(mu, count)
        return RecurrenceSpec(None, EPSeq(tuple(a), PolyN.zero()), 1,
                              label or "moments", window=tuple(b2))
    if "b2" not in obj:
        raise SpecError("spec needs one of 'family', 'moments' or 'b2'")
    b2, window = _seq_field(obj["b2"], "b2")
    a, a_window = _seq_field(obj.get("a", "zero"), "a")
    if a is None:
        a = EPSeq(a_window, PolyN.zero())
    sign = obj.get("b_sign", "+")
    if sign not in ("+", "-"):
        raise SpecError("field 'b_sign': expected '+' or '-'")
    return RecurrenceSpec(b2, a, 1 if sign == "+" else -1, label, window=window)


def load_spec(path) -> RecurrenceSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: malformed JSON ({exc.msg}, line {exc.lineno})") from exc
    spec = spec_from_json(obj)
    return spec if spec.label else replace(spec, label=str(path))
