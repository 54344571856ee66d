"""Exact arithmetic on compactly supported piecewise polynomials.

Every object of this package that has a closed piecewise form (B-splines,
spline wavelets, their Taylor-kernel lifts, cardinal-series truncations)
is carried by :class:`PiecewisePolynomial`: strictly increasing
dyadic-rational breakpoints ``t_0 < t_1 < ... < t_L`` and, for each
interval ``[t_i, t_{i+1})``, polynomial coefficients in the *local*
variable ``x - t_i``.  The local anchoring matters: lifted basis pieces
carry coefficients up to ~1e5 in the global variable, and re-anchoring at
the left endpoint keeps float conversions free of catastrophic
cancellation.

Conventions:
  * pieces are half-open ``[t_i, t_{i+1})``; the function is exactly 0
    outside ``[t_0, t_L]`` and also *at* ``t_L`` (matching ``N_1 =
    indicator of [0, 1)``),
  * exact mode stores ``fractions.Fraction`` coefficients and breakpoints
    with power-of-two denominators; float mode stores floats,
  * all operations are pure and all values immutable, so everything here
    is safe to share across threads.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence, Union

import numpy as np

Rational = Fraction
Scalar = Union[int, float, Fraction]

__all__ = [
    "Rational",
    "PiecewisePolynomial",
    "OrderError",
    "SmoothnessError",
    "MomentError",
    "bspline",
    "evaluate",
    "differentiate",
    "inner_product",
    "taylor_lift",
    "moments",
]


class OrderError(ValueError):
    """Spline order outside the supported range."""


class SmoothnessError(ValueError):
    """Differentiation would produce jumps or distributions, not a function."""


class MomentError(ValueError):
    """Taylor-kernel lift applied to a function with nonvanishing moments."""


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def _trim(coeffs: list) -> tuple:
    """Drop trailing zero coefficients; () encodes the zero polynomial."""
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _poly_eval(coeffs: Sequence, x):
    if not coeffs:
        return 0 * x
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _poly_mul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _trim(out)


def _poly_shift(coeffs: Sequence, delta: Fraction) -> tuple:
    """Coefficients of p(u + delta) given those of p(u)."""
    if delta == 0 or not coeffs:
        return _trim(list(coeffs))
    n = len(coeffs)
    out = [Fraction(0)] * n
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        for k in range(i + 1):
            out[k] += c * math.comb(i, k) * delta ** (i - k)
    return _trim(out)


def _poly_deriv(coeffs: Sequence) -> tuple:
    return _trim([k * coeffs[k] for k in range(1, len(coeffs))])


def _poly_antideriv(coeffs: Sequence) -> tuple:
    return _trim([Fraction(0)] + [Fraction(c, k + 1) for k, c in enumerate(coeffs)])


def _poly_defint(coeffs: Sequence, w: Fraction) -> Fraction:
    """Integral of the local polynomial over [0, w]."""
    acc = Fraction(0)
    for k, c in enumerate(coeffs):
        acc += Fraction(c, k + 1) * w ** (k + 1)
    return acc


@dataclass(frozen=True)
class PiecewisePolynomial:
    """Compactly supported piecewise polynomial on dyadic breakpoints.

    ``pieces[i]`` holds the coefficients (constant term first) of the
    polynomial on ``[breakpoints[i], breakpoints[i+1])`` in the local
    variable ``x - breakpoints[i]``.  An empty coefficient tuple encodes
    an identically-zero piece.
    """

    breakpoints: tuple
    pieces: tuple
    exact: bool = True

    def __post_init__(self):
        if len(self.breakpoints) < 2:
            raise ValueError("need at least two breakpoints")
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise ValueError("piece count must be breakpoint count - 1")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly increasing")
        if self.exact:
            for t in self.breakpoints:
                if not isinstance(t, Fraction):
                    raise TypeError("exact mode requires Fraction breakpoints")
                if not _is_dyadic(t):
                    raise ValueError(f"breakpoint {t} is not a dyadic rational")

    # -- construction -------------------------------------------------

    @classmethod
    def make(cls, breakpoints, pieces) -> "PiecewisePolynomial":
        """Canonical exact constructor: trims zero pieces at both ends."""
        bp = [Fraction(t) for t in breakpoints]
        pc = [_trim([Fraction(c) for c in p]) for p in pieces]
        lo = 0
        while lo < len(pc) and not pc[lo]:
            lo += 1
        hi = len(pc)
        while hi > lo and not pc[hi - 1]:
            hi -= 1
        if lo == hi:
            return cls.zero()
        return cls(tuple(bp[lo : hi + 1]), tuple(pc[lo:hi]))

    @classmethod
    def zero(cls) -> "PiecewisePolynomial":
        return cls((Fraction(0), Fraction(1)), ((),))

    @property
    def is_zero(self) -> bool:
        return all(not p for p in self.pieces)

    @property
    def support(self):
        return (self.breakpoints[0], self.breakpoints[-1])

    @property
    def degree(self) -> int:
        return max((len(p) - 1 for p in self.pieces if p), default=-1)

    # -- evaluation ----------------------------------------------------

    @cached_property
    def _bp_float(self) -> np.ndarray:
        return np.array([float(t) for t in self.breakpoints])

    @cached_property
    def _coef_float(self) -> np.ndarray:
        width = max(1, self.degree + 1)
        mat = np.zeros((len(self.pieces), width))
        for i, p in enumerate(self.pieces):
            for k, c in enumerate(p):
                mat[i, k] = float(c)
        return mat

    def __call__(self, x):
        if isinstance(x, (int, Fraction)) and self.exact:
            x = Fraction(x)
            if x < self.breakpoints[0] or x >= self.breakpoints[-1]:
                return Fraction(0)
            i = bisect_right(self.breakpoints, x) - 1
            return _poly_eval(self.pieces[i], x - self.breakpoints[i])
        return float(self.eval_array(np.array([float(x)]))[0])

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized float evaluation; exactly 0 outside the support."""
        xs = np.asarray(xs, dtype=float)
        shape = xs.shape
        flat = np.atleast_1d(xs).ravel()
        bp = self._bp_float
        idx = np.searchsorted(bp, flat, side="right") - 1
        inside = (idx >= 0) & (idx < len(self.pieces))
        safe = np.where(inside, idx, 0)
        u = flat - bp[safe]
        coef = self._coef_float[safe]
        out = np.zeros_like(flat)
        for k in range(coef.shape[1] - 1, -1, -1):
            out = out * u + coef[:, k]
        return np.where(inside, out, 0.0).reshape(shape)

    # -- algebra -------------------------------------------------------

    def _require_exact(self):
        if not self.exact:
            raise ValueError("operation requires exact mode")

    def _piece_on(self, a: Fraction, b: Fraction) -> tuple:
        """Local coefficients (anchored at a) of self restricted to [a, b)."""
        if a < self.breakpoints[0] or a >= self.breakpoints[-1]:
            return ()
        i = bisect_right(self.breakpoints, a) - 1
        return _poly_shift(self.pieces[i], a - self.breakpoints[i])

    def __add__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        self._require_exact()
        other._require_exact()
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        bp = sorted(set(self.breakpoints) | set(other.breakpoints))
        pieces = []
        for a, b in zip(bp, bp[1:]):
            pa = self._piece_on(a, b)
            pb = other._piece_on(a, b)
            n = max(len(pa), len(pb))
            pieces.append([ (pa[k] if k < len(pa) else 0) + (pb[k] if k < len(pb) else 0) for k in range(n) ])
        return PiecewisePolynomial.make(bp, pieces)

    def __neg__(self) -> "PiecewisePolynomial":
        return PiecewisePolynomial(self.breakpoints, tuple(tuple(-c for c in p) for p in self.pieces), self.exact)

    def __sub__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        return self + (-other)

    def __mul__(self, scalar) -> "PiecewisePolynomial":
        self._require_exact()
        s = Fraction(scalar)
        if s == 0:
            return PiecewisePolynomial.zero()
        return PiecewisePolynomial(self.breakpoints, tuple(tuple(s * c for c in p) for p in self.pieces), True)

    __rmul__ = __mul__

    def translate(self, shift) -> "PiecewisePolynomial":
        """The function x -> f(x - shift)."""
        self._require_exact()
        s = Fraction(shift)
        return PiecewisePolynomial(tuple(t + s for t in self.breakpoints), self.pieces, True)

    def compose_dyadic(self, a, b) -> "PiecewisePolynomial":
        """The function x -> f(a*x - b) for dyadic a > 0 and dyadic b."""
        self._require_exact()
        a = Fraction(a)
        b = Fraction(b)
        if a <= 0:
            raise ValueError("scaling factor must be positive")
        bp = tuple((t + b) / a for t in self.breakpoints)
        pieces = tuple(tuple(c * a**k for k, c in enumerate(p)) for p in self.pieces)
        return PiecewisePolynomial(bp, pieces, True)

    def antiderivative(self):
        """Cumulative integral from -infinity.

        Returns ``(F, tail)`` where F carries the antiderivative on the
        support and ``tail`` is its constant value to the right of the
        support (the total integral).  F is compactly supported as a
        PiecewisePolynomial only when ``tail == 0``; callers must check.
        """
        self._require_exact()
        run = Fraction(0)
        pieces = []
        for i, p in enumerate(self.pieces):
            anti = list(_poly_antideriv(p))
            if not anti:
                anti = [Fraction(0)]
            anti[0] = run
            w = self.breakpoints[i + 1] - self.breakpoints[i]
            run = _poly_eval(anti, w)
            pieces.append(anti)
        return PiecewisePolynomial.make(self.breakpoints, pieces), run

    def derivative_raw(self, order: int = 1) -> "PiecewisePolynomial":
        """Piecewise derivative without any smoothness checking."""
        self._require_exact()
        pieces = self.pieces
        for _ in range(order):
            pieces = tuple(_poly_deriv(p) for p in pieces)
        return PiecewisePolynomial.make(self.breakpoints, pieces)

    def _one_sided(self, order: int):
        """Per-breakpoint (left, right) values of the order-th derivative.

        Outside the support the function is identically 0, so the left
        value at t_0 and the right value at t_L are 0.
        """
        pieces = self.pieces
        for _ in range(order):
            pieces = tuple(_poly_deriv(p) for p in pieces)
        vals = []
        for i, t in enumerate(self.breakpoints):
            left = Fraction(0) if i == 0 else _poly_eval(pieces[i - 1], t - self.breakpoints[i - 1])
            right = Fraction(0) if i == len(self.pieces) else _poly_eval(pieces[i], Fraction(0))
            vals.append((left, right))
        return vals

    def smoothness_class(self, upto: int = None) -> int:
        """Largest q <= upto such that derivatives 0..q are continuous.

        Returns -1 for a discontinuous function.  Continuity is checked
        exactly at every breakpoint, including the support endpoints
        against the zero extension.
        """
        self._require_exact()
        limit = self.degree if upto is None else upto
        q = -1
        for order in range(limit + 1):
            if all(l == r for l, r in self._one_sided(order)):
                q = order
            else:
                break
        return q

    def integrate(self, a, b) -> Fraction:
        """Exact integral of self over [a, b]."""
        self._require_exact()
        a, b = Fraction(a), Fraction(b)
        if b < a:
            return -self.integrate(b, a)
        lo = max(a, self.breakpoints[0])
        hi = min(b, self.breakpoints[-1])
        if hi <= lo:
            return Fraction(0)
        cuts = [lo] + [t for t in self.breakpoints if lo < t < hi] + [hi]
        acc = Fraction(0)
        for u, v in zip(cuts, cuts[1:]):
            acc += _poly_defint(self._piece_on(u, v), v - u)
        return acc

    # -- conversion / serialization -------------------------------------

    def as_float(self) -> "PiecewisePolynomial":
        if not self.exact:
            return self
        return PiecewisePolynomial(
            tuple(float(t) for t in self.breakpoints),
            tuple(tuple(float(c) for c in p) for p in self.pieces),
            exact=False,
        )

    def to_json_dict(self) -> dict:
        if self.exact:
            return {
                "breakpoints": [[t.numerator, t.denominator] for t in self.breakpoints],
                "pieces": [[[c.numerator, c.denominator] for c in p] for p in self.pieces],
            }
        return {
            "breakpoints": [float(format(t, ".17g")) for t in self.breakpoints],
            "pieces": [[float(format(c, ".17g")) for c in p] for p in self.pieces],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "PiecewisePolynomial":
        doc = json.loads(text)
        first = doc["breakpoints"][0]
        if isinstance(first, list):
            bp = [Fraction(n, d) for n, d in doc["breakpoints"]]
            pieces = [[Fraction(n, d) for n, d in p] for p in doc["pieces"]]
            return cls.make(bp, pieces)
        return cls(tuple(doc["breakpoints"]), tuple(tuple(p) for p in doc["pieces"]), exact=False)

    def global_coefficients(self, i: int) -> tuple:
        """Piece i rewritten in the global variable x (for golden tests)."""
        return _poly_shift(self.pieces[i], -self.breakpoints[i])


# -- named operations ----------------------------------------------------


@lru_cache(maxsize=None)
def bspline(m: int) -> PiecewisePolynomial:
    """Order-m cardinal B-spline: support [0, m], degree m-1, C^{m-2}.

    Built from the truncated-power representation
    ``sum_j (-1)^j C(m,j) (x-j)_+^{m-1} / (m-1)!``, which agrees with the
    indicator-convolution recursion (the recursion is kept as the test
    oracle).
    """
    if m < 1:
        raise OrderError(f"B-spline order must be >= 1, got {m}")
    fact = Fraction(1, math.factorial(m - 1))
    mono = [Fraction(0)] * (m - 1) + [Fraction(1)]
    pieces = []
    for i in range(m):
        acc = [Fraction(0)] * m
        for j in range(i + 1):
            c = fact * (-1) ** j * math.comb(m, j)
            for k, v in enumerate(_poly_shift(mono, Fraction(i - j))):
                acc[k] += c * v
        pieces.append(acc)
    return PiecewisePolynomial.make(range(m + 1), pieces)


def evaluate(p: PiecewisePolynomial, x):
    """p(x) with the half-open piece convention; 0 outside the support."""
    return p(x)


def differentiate(p: PiecewisePolynomial, order: int) -> PiecewisePolynomial:
    """Order-fold derivative, refusing inputs where it would not be a function.

    Requires derivatives 0..order to be continuous across every breakpoint
    (support endpoints included, against the zero extension): the hat
    function N_2 cannot be differentiated once, N_{2m} can be
    differentiated m times for m >= 2.  Distributional derivatives are
    deliberately unsupported.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    p._require_exact()
    if p.smoothness_class(upto=order) < order:
        raise SmoothnessError(
            f"input is not C^{order} across its breakpoints; "
            f"order-{order} derivative would not be a function"
        )
    return p.derivative_raw(order)


def inner_product(p: PiecewisePolynomial, q: PiecewisePolynomial) -> Fraction:
    """Exact integral of p*q over the intersection of supports."""
    p._require_exact()
    q._require_exact()
    lo = max(p.breakpoints[0], q.breakpoints[0])
    hi = min(p.breakpoints[-1], q.breakpoints[-1])
    if hi <= lo:
        return Fraction(0)
    cuts = sorted({lo, hi} | {t for t in p.breakpoints if lo < t < hi} | {t for t in q.breakpoints if lo < t < hi})
    acc = Fraction(0)
    for a, b in zip(cuts, cuts[1:]):
        acc += _poly_defint(_poly_mul(p._piece_on(a, b), q._piece_on(a, b)), b - a)
    return acc


def moments(p: PiecewisePolynomial, max_order: int) -> tuple:
    """Exact moments (integral of x^a * p(x) for a = 0..max_order)."""
    p._require_exact()
    out = []
    for a in range(max_order + 1):
        acc = Fraction(0)
        for i, piece in enumerate(p.pieces):
            if not piece:
                continue
            t = p.breakpoints[i]
            w = p.breakpoints[i + 1] - t
            # x^a = (u + t)^a in the local variable u
            xa = _poly_shift([Fraction(0)] * a + [Fraction(1)], t)
            acc += _poly_defint(_poly_mul(piece, xa), w)
        out.append(acc)
    return tuple(out)


def taylor_lift(p: PiecewisePolynomial, m: int) -> PiecewisePolynomial:
    """m-fold Taylor-kernel integral x -> int_{-inf}^x p(t)(x-t)^{m-1}/(m-1)! dt.

    Defined only when p has m vanishing moments (checked exactly); the
    moment condition kills the tail, so the result is again compactly
    supported, with the same support and degree raised by m.  Inverse of
    m-fold differentiation on such inputs.
    """
    if m < 1:
        raise ValueError("lift order must be >= 1")
    p._require_exact()
    ms = moments(p, m - 1)
    if any(v != 0 for v in ms):
        raise MomentError(
            f"not liftable: moments 0..{m - 1} must vanish exactly, got {ms}"
        )
    out = p
    for _ in range(m):
        out, tail = out.antiderivative()
        assert tail == 0, "vanishing moments guarantee a zero tail"
    return out
