"""Dual wavelet and dual scaling coefficients via palindromic-root residues.

The dual of psi_m inside its own wavelet space is an infinite combination
psi*_m = sum_n a_n psi_m(. - n) whose coefficients invert the
autocorrelation filter:  sum_n a_n d(l - n) = delta_{0,l}.  Writing the
autocorrelation as a palindromic polynomial  t(z) = sum d_n z^n  of degree
4(m-1), the a_n are the Fourier coefficients of 1/t on the unit circle,
and a contour-integral evaluation turns them into residue sums over the
roots of t: with ``center = 2(m-1) - 1`` and d_top the leading
coefficient,

    a_n = +(1/d_top) * sum_{|z_i|<1} z_i^{center-n} / prod_{j != i}(z_i - z_j)   (n <= center)
    a_n = -(1/d_top) * sum_{|z_i|>1} z_i^{center-n} / prod_{j != i}(z_i - z_j)   (n >= center),

where each product runs over *all* other roots.  Both branches agree at
n = center because the residues of 1/t sum to zero.  The same machinery
with the degree-2(m-1) B-spline autocorrelation g_n and ``center = m - 2``
yields the dual scaling coefficients b_n, which are also the coefficients
of the cardinal interpolant of order 2m.

Everything is validated downstream against the brute-force biorthogonality
convolution, never trusted from the formula alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath as mp
import numpy as np

from .wavelets import AutocorrSequence, autocorr, scaling_crosscorr

__all__ = [
    "RootSplit",
    "DualCoeffTable",
    "UnitCircleError",
    "ResidueConsistencyError",
    "palindromic_roots",
    "dual_wavelet_coeffs",
    "dual_scaling_coeffs",
    "verify_biorthogonality",
]

_POLISH_STEPS = 5
_POLISH_DPS = 60
_IMAG_DROP_TOL = 1e-10
_CONSISTENCY_TOL = 1e-9
_PAIRING_TOL = 1e-9
DEFAULT_GUARD = 1e-8


class UnitCircleError(ArithmeticError):
    """A root sits on (or too near) the unit circle; the filter is not invertible."""


class ResidueConsistencyError(ArithmeticError):
    """Inside and outside residue branches disagree at the junction index."""


@dataclass(frozen=True)
class RootSplit:
    """Roots of a palindromic polynomial split by the unit circle.

    Stored as mpmath complex numbers, sorted by (|z|, Re z, Im z); the
    inside and outside sets have equal size and are reciprocal images of
    each other within ``pairing_tol``.
    """

    inside: tuple
    outside: tuple
    pairing_tol: float

    @property
    def all_roots(self) -> tuple:
        return self.inside + self.outside

    def inside_floats(self) -> list:
        return [complex(z) for z in self.inside]

    def outside_floats(self) -> list:
        return [complex(z) for z in self.outside]


@dataclass(frozen=True)
class DualCoeffTable:
    """Window of exponentially decaying dual coefficients.

    ``coeffs[n]`` multiplies the shift-n primal function; the window is
    centred on the residue junction index ``center`` (2(m-1)-1 for wavelet
    duals, m-2 for scaling duals).  The values themselves peak at n = 0
    and are symmetric about it.  ``truncation_bound`` is the fitted
    C * decay_rate**n_window tail estimate.
    """

    m: int
    kind: str
    center: int
    coeffs: dict = field(repr=False)
    decay_rate: float
    truncation_bound: float
    formula_constant_matched: bool = True

    def __getitem__(self, n: int) -> float:
        return self.coeffs.get(n, 0.0)

    @property
    def window(self) -> tuple:
        return (min(self.coeffs), max(self.coeffs))

    def items(self):
        return sorted(self.coeffs.items())


def _polish(roots, ints):
    """Newton-polish float eigenvalue roots on the exact integer polynomial."""
    deg = len(ints) - 1

    def p(z):
        acc = mp.mpc(0)
        for c in reversed(ints):
            acc = acc * z + c
        return acc

    def dp(z):
        acc = mp.mpc(0)
        for k in range(deg, 0, -1):
            acc = acc * z + k * ints[k]
        return acc

    polished = []
    for z0 in roots:
        z = mp.mpc(z0)
        for _ in range(_POLISH_STEPS):
            pz, dpz = p(z), dp(z)
            if pz == 0 or dpz == 0:
                break  # exact root, or a multiple root (caught by the circle guard)
            z = z - pz / dpz
        if abs(z.imag) < mp.mpf(10) ** (-_POLISH_DPS + 15):
            z = mp.mpc(z.real, 0)
        polished.append(z)
    return polished


def _closed_form_palindromic_quartic(ints):
    """Roots of d0 + d1 z + d2 z^2 + d1 z^3 + d0 z^4 via w = z + 1/z.

    Each w gives z^2 - w z + 1 = 0, solved with the stable large-root /
    reciprocal pairing (the two roots multiply to 1 exactly).
    """
    d0, d1, d2 = ints[0], ints[1], ints[2]
    roots = []
    disc = mp.sqrt(mp.mpc(d1 * d1 - 4 * d0 * (d2 - 2 * d0)))
    for sign in (1, -1):
        w = (-d1 + sign * disc) / (2 * d0)
        s = mp.sqrt(w * w - 4)
        big = (w + s) / 2 if abs(w + s) >= abs(w - s) else (w - s) / 2
        roots.extend([big, 1 / big])
    return roots


def palindromic_roots(seq: AutocorrSequence, guard: float = DEFAULT_GUARD) -> RootSplit:
    """Find and split the roots of the integer-normalized sequence polynomial.

    Degree <= 4 uses the closed-form reciprocal substitution; higher
    degrees use companion-matrix eigenvalues.  Either way the roots are
    Newton-polished on the exact integer polynomial at 60 digits.  A root
    with ||z| - 1| < guard aborts: it contradicts the Riesz-sequence lower
    bound and signals a broken input sequence.
    """
    ints = list(seq.normalized)
    deg = len(ints) - 1
    if deg % 2 != 0:
        raise ValueError("palindromic sequence must have even degree")
    with mp.workdps(_POLISH_DPS):
        if deg == 2:
            d0, d1 = ints[0], ints[1]
            s = mp.sqrt(mp.mpc(d1 * d1 - 4 * d0 * d0))
            big = (-d1 + s) / (2 * d0) if abs(-d1 + s) >= abs(-d1 - s) else (-d1 - s) / (2 * d0)
            start = [big, 1 / big]
        elif deg == 4:
            start = _closed_form_palindromic_quartic(ints)
        else:
            start = [mp.mpc(z) for z in np.roots(np.array(ints[::-1], dtype=float))]
        roots = _polish(start, ints)

        for z in roots:
            if abs(abs(z) - 1) < guard:
                raise UnitCircleError(
                    f"root {complex(z)} is within {guard} of the unit circle"
                )
        inside = sorted((z for z in roots if abs(z) < 1), key=lambda z: (abs(z), z.real, z.imag))
        outside = sorted((z for z in roots if abs(z) > 1), key=lambda z: (abs(z), z.real, z.imag))
        if len(inside) != len(outside):
            raise UnitCircleError("inside/outside root counts differ")
        pair_dev = 0.0
        for z in inside:
            w = 1 / z
            dev = min(float(abs(w - u)) for u in outside)
            pair_dev = max(pair_dev, dev * float(abs(z)))  # relative to the pair scale
        if pair_dev > _PAIRING_TOL:
            raise UnitCircleError(f"reciprocal pairing off by {pair_dev}")
        return RootSplit(inside=tuple(inside), outside=tuple(outside), pairing_tol=pair_dev)


def _residue_table(seq: AutocorrSequence, split: RootSplit, center: int, n_window: int, kind: str, m: int) -> DualCoeffTable:
    d_top = seq.values[-1]  # exact leading coefficient of sum d_n z^n
    with mp.workdps(_POLISH_DPS):
        roots = list(split.all_roots)
        inv_d_top = mp.mpf(d_top.denominator) / mp.mpf(d_top.numerator)
        denoms = []
        for i, z in enumerate(roots):
            den = mp.mpc(1)
            for j, w in enumerate(roots):
                if j != i:
                    den *= z - w
            denoms.append(den)
        n_in = len(split.inside)

        def branch(n, use_inside):
            idx = range(n_in) if use_inside else range(n_in, len(roots))
            s = mp.mpc(0)
            for i in idx:
                s += roots[i] ** (center - n) / denoms[i]
            s = s * inv_d_top
            return s if use_inside else -s

        lo, hi = center - n_window, center + n_window
        coeffs = {}
        for n in range(lo, hi + 1):
            val = branch(n, use_inside=(n <= center))
            if abs(val.imag) > _IMAG_DROP_TOL:
                raise ResidueConsistencyError(
                    f"residue at n={n} has imaginary part {float(val.imag)}"
                )
            coeffs[n] = float(val.real)
        both = [branch(center, True), branch(center, False)]
        if abs(both[0] - both[1]) > _CONSISTENCY_TOL:
            raise ResidueConsistencyError(
                f"branch disagreement at n={center}: {complex(both[0])} vs {complex(both[1])}"
            )

    rho = max(float(abs(z)) for z in split.inside)
    fit_c = max(abs(v) / rho ** abs(n - center) for n, v in coeffs.items())
    # series tail C rho^w, floored at the float64 resolution of the table
    table = DualCoeffTable(
        m=m,
        kind=kind,
        center=center,
        coeffs=coeffs,
        decay_rate=rho,
        truncation_bound=fit_c * (rho**n_window + 2.0**-52),
    )
    # The residue prefactor is validated, not trusted: the zero-lag
    # biorthogonality sum must come out +1.
    r0 = math.fsum(table[n] * float(seq.lag(-n)) for n in coeffs)
    if abs(r0 + 1.0) < 1e-6:
        flipped = DualCoeffTable(
            m=m,
            kind=kind,
            center=center,
            coeffs={n: -v for n, v in coeffs.items()},
            decay_rate=rho,
            truncation_bound=table.truncation_bound,
            formula_constant_matched=False,
        )
        return flipped
    return table


@lru_cache(maxsize=None)
def dual_wavelet_coeffs(m: int, n_window: int, guard: float = DEFAULT_GUARD) -> DualCoeffTable:
    """Coefficients a_n of psi*_m = sum a_n psi_m(. - n) on a finite window."""
    if n_window < 1:
        raise ValueError("n_window must be >= 1")
    seq = autocorr(m)
    split = palindromic_roots(seq, guard)
    return _residue_table(seq, split, center=2 * (m - 1) - 1, n_window=n_window, kind="wavelet", m=m)


@lru_cache(maxsize=None)
def dual_scaling_coeffs(m: int, n_window: int, guard: float = DEFAULT_GUARD) -> DualCoeffTable:
    """Coefficients b_n of N*_m = sum b_n N_m(. + m/2 - n) on a finite window.

    These coincide with the cardinal-interpolant coefficients of order 2m:
    L^{2m}(x) = sum b_n N_{2m}(x + m - n) satisfies L^{2m}(j) = delta_{j0}.
    """
    if n_window < 1:
        raise ValueError("n_window must be >= 1")
    seq = scaling_crosscorr(m)
    split = palindromic_roots(seq, guard)
    return _residue_table(seq, split, center=m - 2, n_window=n_window, kind="scaling", m=m)


def verify_biorthogonality(table: DualCoeffTable, seq: AutocorrSequence, lags: int) -> float:
    """Max over |l| <= lags of |sum_n a_n c_{l-n} - delta_{0,l}|.

    Exact correlation values against the float table; the residual is
    dominated by the table truncation, so callers should size the window
    so that table.truncation_bound is below the tolerance they test.
    """
    c = {l: float(v) for l, v in seq.lags().items()}
    worst = 0.0
    for l in range(-lags, lags + 1):
        s = math.fsum(v * c.get(l - n, 0.0) for n, v in table.coeffs.items())
        worst = max(worst, abs(s - (1.0 if l == 0 else 0.0)))
    return worst
