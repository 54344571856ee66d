"""Spline wavelets and their Taylor-kernel lifts, in exact arithmetic.

Builds the order-m wavelets from B-splines, verifies the structural
facts exactly (support, vanishing moments, orthogonality to the scaling
shifts), and prints the lifted piece table that seeds the Faber basis.
"""

from fractions import Fraction

from fabersplines import bspline, inner_product, moments, taylor_lift, wavelet

print("=== B-splines ===")
n4 = bspline(4)
print(f"N_4 support {tuple(map(str, n4.support))}, degree {n4.degree}")
print("N_4 at the integers:", [str(n4(Fraction(k))) for k in range(5)])

print("\n=== Chui-Wang wavelets ===")
for m in (2, 3, 4):
    psi = wavelet(m).psi
    print(f"m={m}: support {tuple(map(str, psi.support))}, degree {psi.degree}, "
          f"moments {[str(v) for v in moments(psi, m - 1)]}")

psi2 = wavelet(2).psi
print("\nOrthogonality of psi_2 to the hat translates (exact):")
print("  <psi_2, N_2(.-k)> for k=-2..4:",
      [str(inner_product(psi2, bspline(2).translate(k))) for k in range(-2, 5)])
print("Cross-scale: <psi_2, psi_2(2.-k)> for k=-3..8 all zero:",
      all(inner_product(psi2, psi2.compose_dyadic(2, k)) == 0 for k in range(-3, 9)))

print("\n=== The lifted basis piece v (m=2) ===")
v = taylor_lift(psi2, 2)
print("v = second Taylor-kernel integral of psi_2; same support", tuple(map(str, v.support)))
for i in range(len(v.pieces)):
    coeffs = v.global_coefficients(i)
    poly = " + ".join(f"({36 * c})t^{k}" for k, c in enumerate(coeffs) if c)
    print(f"  on [{v.breakpoints[i]}, {v.breakpoints[i + 1]}):  (1/36) * [ {poly} ]")
print("v vanishes at the integers:", [str(v(Fraction(k))) for k in range(4)])
