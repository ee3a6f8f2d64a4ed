"""Slope structure of an eigenvariety fiber: the spectral-halo picture.

For f = x^3 over F_7 the T-adic Newton polygon of the Fredholm series
C(psi_0, s) has slopes in arithmetic progressions: blocks of size
d = deg f with increment r = p - 1 and residues j/d.  Seeing three full
blocks requires T-precision past the hull height 72, so this runs at
b = 80; a couple of seconds of work.

Run:  python3 demos/03_newton_polygon_slopes.py
"""

from tadic import Geometry, PrecisionProfile, TowerInput
from tadic.pipeline import run_slopes

p, b, smax = 7, 80, 9
tower = TowerInput(p, Geometry.AFFINE_LINE, {3: 1})
d = tower.degree
D = -(-d * b // (p - 1)) + 2 * d
prof = PrecisionProfile.create(p, a=6, b=b, smax=smax, dmax=1, degree=d, D=D)
print(f"f = x^3 over F_7, matrix size {D + 1}, T-precision {b}")

res = run_slopes(tower, prof)

print("\nNewton polygon points (k, v_T(c_k)):")
for pt in res.polygon.points:
    tag = "" if pt.exact else "  (lower bound only)"
    print(f"  ({pt.index:2d}, {pt.valuation:3d}){tag}")

print("\nhull vertices:", list(res.polygon.hull))
print("slopes:", [str(s.slope) for s in res.polygon.slopes])

rep = res.report
print(f"\nslope decomposition into blocks of d = {rep.block_degree}:")
print(f"  increment r = {rep.increment_r}  (p - 1 = {p - 1})")
print(f"  residues beta_j = {[str(x) for x in rep.residues]}")
for c in rep.classifications:
    print(f"  block {c.block} position {c.position}: slope {str(c.slope):>4s}  {c.quality}")

hb = res.hodge
print(f"\nHodge-type lower bound (p-1)k(k-1)/(2d): "
      f"{'holds' if hb['holds'] else 'violated: ' + str(hb['violations'])}")
