"""Walk through the p-adic ingredients of a tower's splitting function.

Run:  python3 demos/01_splitting_function.py
"""

from tadic import (
    Geometry,
    PrecisionProfile,
    TowerInput,
    build_Ef,
    pi_from_T,
)
from tadic.series import artin_hasse_fractions
from tadic.splitting import fiber_character_value, norm_of_ef_at_orbit
from tadic.unramified import default_modulus
from tadic.zp import teichmuller_int

p = 2
prof = PrecisionProfile.create(p, a=6, b=8, smax=4, dmax=4)
print(f"profile: p={p}, {prof.a} reported digits, {prof.guard} guard digits, T^{prof.b}")

# Teichmuller lifts: the root-of-unity representatives in Z_p
print("\nTeichmuller lift of 2 in Z_3 (27-adic):", teichmuller_int(2, 3, 3).residue)

# The Artin-Hasse exponential is p-integral even though exp is not
coeffs = artin_hasse_fractions(p, 8)
print("\nArtin-Hasse E(t) coefficients (exact):", [str(c) for c in coeffs])

# pi is the T-adic analogue of Dwork's pi: E(pi) = 1 + T
pi = pi_from_T(prof)
print("pi =", list(pi.vals[:4]), f"... mod (2^{prof.work}, T^{prof.b})")
print("   (starts T - T^2: the reversion of E(t) = 1 + t + t^2 + ...)")

# The splitting function of the tower f = x: a single factor E(pi x)
tower = TowerInput(p, Geometry.AFFINE_LINE, {1: 1})
ef = build_Ef(tower, prof)
print(f"\nE_f for f = x has exponents {ef.series.exponents()}")
for u in ef.series.exponents()[:4]:
    print(f"  coeff of x^{u}: {list(ef.ef(u).vals[:5])} (v_T >= {u})")

# Dwork's splitting lemma in action: the norm of E_f at a Teichmuller
# point equals (1+T)^(trace of f there)
m = default_modulus(p, 2)
for coords in [(1, 0), (0, 1), (1, 1)]:
    lhs = norm_of_ef_at_orbit(ef, coords, m)
    rhs = fiber_character_value(tower, coords, m, prof)
    ok = lhs.reduced(prof.a).agrees_with(rhs.reduced(prof.a))
    print(f"fiber identity at F_4 point {coords}: {'ok' if ok else 'FAIL'}")
