"""The Faber-spline basis: cardinal start, lifted levels, Kronecker pairing.

Shows the two kinds of basis function (the cardinal interpolant at the
coarse level, the lifted dual-wavelet series above it) and demonstrates
that the sampling functionals pick out exactly their own basis function.
"""

import numpy as np

from fabersplines import DyadicIndex, SampledFunction, build_basis, eval_L, eval_s, lambda_coeff

basis = build_basis(2)
print(f"order 2m = 4 basis, truncation 1e-12 -> window n_max = {basis.n_max}")

print("\n=== Cardinal interpolant L (level -1) ===")
print("L at the integers -3..3:", np.round([eval_L(basis, float(j)) for j in range(-3, 4)], 12))
xs = np.linspace(-2, 2, 9)
print("L on a half-integer grid:", np.round(eval_L(basis, xs), 6))

print("\n=== Lifted basis functions s_{j,k} ===")
print("s_{0,0} at the integers (must vanish):",
      np.round([eval_s(basis, DyadicIndex(0, 0), float(n)) for n in range(-2, 6)], 12))
print("s_{0,0} samples on [0, 3]:",
      np.round(eval_s(basis, DyadicIndex(0, 0), np.linspace(0, 3, 7)), 6))
print("dyadic structure: s_{1,3}(x) == s_{0,0}(2x-3):",
      np.allclose(eval_s(basis, DyadicIndex(1, 3), xs), eval_s(basis, DyadicIndex(0, 0), 2 * xs - 3)))

print("\n=== Kronecker pairing lambda_{l,n}(s_{j,k}) = delta ===")
for (j, k) in [(0, 0), (1, 2), (2, -1)]:
    f = SampledFunction.from_callable(
        lambda x: eval_s(basis, DyadicIndex(j, k), x), 3, -40.0, 44.0
    )
    row = {(l, n): lambda_coeff(f, 2, DyadicIndex(l, n))
           for l in (0, 1, 2) for n in (-1, 0, 2)}
    hits = {key: round(v, 9) for key, v in row.items() if abs(v) > 1e-8}
    print(f"  s_({j},{k}): nonzero functionals -> {hits}")
