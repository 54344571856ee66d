"""Biorthogonal Chui-Wang analysis and synthesis.

Analysis coefficients pair the input against the primal wavelets,

    mu_{j,k}(f) = <f, 2^j psi_m(2^j . - k)>          for j >= 0,
    mu_{-1,k}(f) = <f, N_m(. + c - k)>,  c = floor(m/2),   coarse level,

and synthesis expands against the duals, which are never materialized as
piecewise polynomials (their support is the whole line): psi*_{j,k} is
evaluated through the truncated series sum_n a_n psi(2^j x - k - n), and
the coarse dual N*_m(. - k) through sum_n b_n N_m(. - k + c - n).

Two deliberate normalizations, both pinned by the round-trip tests:

  * the coarse level carries no 2^j weight: with matching shifts,
    <N*_m(. - k'), N_m(. + c - k)> = delta_{k,k'} exactly, so the
    unweighted pairing reconstructs the V_0 part (a literal 2^j weight
    at j = -1 would halve it);
  * the centering shift is the *integer* floor(m/2), which equals the
    conventional m/2 for even orders.  For odd orders a literal m/2
    shift would put the coarse functions on the half-integer lattice,
    whose span is not the integer-knot space V_0 that the wavelet
    ladder complements: biorthogonality still holds shift-consistently,
    but expansions of V_0 elements then leak irrecoverably.

Exact inputs (piecewise polynomials) are paired by exact integration;
sampled inputs are routed through the fundamental spline interpolant of
their grid and then integrated with composite Gauss-Legendre that is
exact for the resulting piecewise polynomials, so quadrature error
inherits the interpolation error instead of adding a knob.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .basis import FaberBasisSpec, build_basis, DyadicIndex
from .dualcoeffs import DualCoeffTable, dual_scaling_coeffs
from .piecewise import PiecewisePolynomial, bspline, inner_product
from .sampling import SampledFunction, _dense, _table_dense, spline_interpolate
from .wavelets import wavelet

__all__ = [
    "QuadratureResolutionError",
    "WaveletExpansion",
    "mu_coeff",
    "wavelet_analyze",
    "wavelet_synthesize",
]


class QuadratureResolutionError(ValueError):
    """Samples are coarser than the wavelet knot spacing at this level."""


@dataclass(frozen=True)
class WaveletExpansion:
    """Level-indexed sparse map {j: {k: mu_{j,k}}}, j from -1 to J."""

    m: int
    levels: dict = field(repr=False)

    def coeff(self, j: int, k: int) -> float:
        return self.levels.get(j, {}).get(k, 0.0)

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "levels": [
                {"j": j, "coeffs": {str(k): v for k, v in sorted(lev.items())}}
                for j, lev in sorted(self.levels.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "WaveletExpansion":
        levels = {int(e["j"]): {int(k): float(v) for k, v in e["coeffs"].items()} for e in doc["levels"]}
        return cls(m=int(doc["m"]), levels=levels)


def _center(m: int) -> int:
    return m // 2


@lru_cache(maxsize=None)
def _primal(m: int, j: int, k: int) -> PiecewisePolynomial:
    if j == -1:
        return bspline(m).translate(k - _center(m))
    return wavelet(m).psi.compose_dyadic(2**j, k)


def _mu_exact(f: PiecewisePolynomial, m: int, idx: DyadicIndex) -> float:
    weight = Fraction(2) ** idx.j if idx.j >= 0 else Fraction(1)
    return float(weight * inner_product(f, _primal(m, idx.j, idx.k)))


def _mu_sampled(f: SampledFunction, m: int, idx: DyadicIndex, basis: FaberBasisSpec) -> float:
    primal = _primal(m, idx.j, idx.k)
    if idx.j >= 0 and f.N < idx.j + 1:
        raise QuadratureResolutionError(
            f"level {idx.j} knots at 2^-{idx.j + 1} need samples at least that fine, got 2^-{f.N}"
        )
    lo = max(primal.breakpoints[0], Fraction(f.k_lo, 2**f.N))
    hi = min(primal.breakpoints[-1], Fraction(f.k_hi, 2**f.N))
    if hi <= lo:
        return 0.0
    # partition at the finer of the sample grid and the knot grid
    level = max(f.N, idx.j + 1, 1)
    i_lo = int(lo * 2**level)
    i_hi = int(hi * 2**level)
    nodes, gl_w = np.polynomial.legendre.leggauss(2 * m)
    h = 0.5 / 2**level
    cells = (np.arange(i_lo, i_hi) + 0.5) / 2**level
    pts = (cells[:, None] + h * nodes[None, :]).ravel()
    interp = spline_interpolate(f, m, pts, basis)
    psi_vals = primal.as_float().eval_array(pts)
    integrand = (interp * psi_vals).reshape(len(cells), -1)
    total = float(np.dot(integrand.sum(axis=0), gl_w) * h)
    return float(np.ldexp(total, max(idx.j, 0)))


def mu_coeff(f, m: int, idx: DyadicIndex, basis: FaberBasisSpec = None) -> float:
    """Analysis coefficient mu_{j,k}(f).

    Exact for piecewise-polynomial f; for sampled f the value is the
    exact pairing of the fundamental spline interpolant of the samples.
    """
    if isinstance(f, PiecewisePolynomial):
        return _mu_exact(f, m, idx)
    if basis is None:
        basis = build_basis(m)
    return _mu_sampled(f, m, idx, basis)


def wavelet_analyze(f, m: int, J: int, basis: FaberBasisSpec = None) -> WaveletExpansion:
    """All coefficients mu_{j,k}(f) for levels -1..J over the support of f."""
    if J < 0:
        raise ValueError("J must be >= 0")
    if isinstance(f, PiecewisePolynomial):
        lo, hi = (float(t) for t in f.support)
    else:
        lo, hi = f.k_lo / 2**f.N, f.k_hi / 2**f.N
        if basis is None:
            basis = build_basis(m)
    levels = {}
    c = _center(m)
    lev = {}
    for k in range(math.ceil(lo + c - m), math.floor(hi + c) + 1):
        v = mu_coeff(f, m, DyadicIndex(-1, k), basis)
        if v != 0.0:
            lev[k] = v
    levels[-1] = lev
    for j in range(J + 1):
        lev = {}
        k_min = math.ceil(lo * 2**j) - (2 * m - 1)
        k_max = math.floor(hi * 2**j)
        for k in range(k_min, k_max + 1):
            v = mu_coeff(f, m, DyadicIndex(j, k), basis)
            if v != 0.0:
                lev[k] = v
        levels[j] = lev
    return WaveletExpansion(m=m, levels=levels)


def wavelet_synthesize(
    exp: WaveletExpansion,
    dual_table: DualCoeffTable,
    xs,
    scaling_table: DualCoeffTable = None,
) -> np.ndarray:
    """Evaluate sum_{j,k} mu_{j,k} psi*_{j,k} on a grid.

    ``dual_table`` supplies the a_n window for the wavelet levels; the
    coarse level needs the scaling duals, built at a matching window when
    not provided.
    """
    m = exp.m
    if scaling_table is None:
        w = (dual_table.window[1] - dual_table.window[0]) // 2
        scaling_table = dual_scaling_coeffs(m, w)
    xs = np.asarray(xs, dtype=float)
    out = np.zeros_like(xs)
    psi_f = wavelet(m).psi.as_float()
    nm_f = bspline(m).as_float()
    a0, a_arr = _table_dense(dual_table)
    b0, b_arr = _table_dense(scaling_table)
    for j in sorted(exp.levels):
        lev = exp.levels[j]
        if not lev:
            continue
        k0, mu = _dense(lev)
        if j == -1:
            h = np.convolve(mu, b_arr)
            c0 = k0 + b0
            for i, hc in enumerate(h):
                if hc != 0.0:
                    out += hc * nm_f.eval_array(xs + _center(m) - (c0 + i))
        else:
            h = np.convolve(mu, a_arr)
            c0 = k0 + a0
            arg = np.ldexp(xs, j)
            for i, hc in enumerate(h):
                if hc != 0.0:
                    out += hc * psi_f.eval_array(arg - (c0 + i))
    return out
