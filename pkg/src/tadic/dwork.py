"""Canonical Dwork operators and their finite matrices.

theta0 acts on functions and theta1 on differentials; both are adjoint to
the degree-p Frobenius x -> x^p in the sense theta(sigma(a) m) = a theta(m).
In the monomial bases they are index maps:

    theta0(x^u)       = p x^(u/p)            if p | u, else 0
    theta1(x^u dx)    = x^((u+1)/p - 1) dx   if p | u + 1, else 0   (affine)
    theta1(x^u dx/x)  = x^(u/p) dx/x         if p | u, else 0       (torus)

These closed forms are validated against an independent oracle that
computes the trace of the multiplication matrix of the degree-p subring
extension in exact rational arithmetic (`theta0_trace_oracle`,
`theta1_trace_oracle`); the matrix assembly refuses to run if the two
disagree on low monomials.

The nuclear operator of a tower is psi_i = theta_i composed with
multiplication by the splitting function; `assemble_matrix` produces its
matrix in the plain monomial basis, where entry (v, u) inherits the
T-adic decay of the splitting function.  The weighted-basis bound (weight
parameter c) is recorded and checked as a certificate but the entries are
stored unweighted; the finite principal minors of the two presentations
are similar, so every Fredholm determinant is unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CertificateError
from .profile import PrecisionProfile
from .splitting import SplittingFunction
from .xseries import Geometry, XSeries
from .zp import ZpTSeries


def theta0_apply(g: XSeries) -> XSeries:
    """Trace to the degree-p subring followed by the inverse Frobenius,
    on functions: keeps exponents divisible by p, each scaled by p."""
    if g.differential:
        raise ValueError("theta0 acts on functions")
    p = g.prof.p
    out = {}
    for u, c in g.coeffs.items():
        if u % p == 0:
            out[u // p] = c.scale(p)
    return XSeries(g.prof, g.geometry, g.bound, out)


def theta1_apply(g: XSeries) -> XSeries:
    """The trace map on differentials; no factor of p survives."""
    if not g.differential:
        raise ValueError("theta1 acts on differentials")
    p = g.prof.p
    out = {}
    if g.geometry is Geometry.AFFINE_LINE:
        for u, c in g.coeffs.items():
            if (u + 1) % p == 0:
                out[(u + 1) // p - 1] = c
    else:
        for u, c in g.coeffs.items():
            if u % p == 0:
                out[u // p] = c
    return XSeries(g.prof, g.geometry, g.bound, out, differential=True)


# independent oracle ---------------------------------------------------------

def _subring_trace(p: int, u: int) -> dict[int, Fraction]:
    """Trace of multiplication by x^u on the rank-p extension of the
    subring generated by y = x^p, in the basis 1, x, ..., x^(p-1).
    Returns a Laurent polynomial in y as {exponent: coefficient}."""
    tr: dict[int, Fraction] = {}
    for j in range(p):
        r = (u + j) % p
        q = (u + j - r) // p
        if r == j:
            tr[q] = tr.get(q, Fraction(0)) + 1
    return tr


def theta0_trace_oracle(p: int, u: int) -> dict[int, int]:
    """theta0 on x^u computed from the multiplication-matrix trace and
    the inverse Frobenius y^q -> x^q."""
    out = {}
    for q, c in _subring_trace(p, u).items():
        if c:
            assert c.denominator == 1
            out[q] = int(c)
    return out


def theta1_trace_oracle(p: int, u: int, geometry: Geometry) -> dict[int, int]:
    """theta1 on the u-th differential basis element, via the function
    computation: on the affine line x^u dx = (1/p) x^(u-p+1) d(x^p), on
    the torus x^u dx/x = (1/p) x^u d(x^p)/x^p.  The 1/p must cancel."""
    if geometry is Geometry.AFFINE_LINE:
        shift = u - p + 1
    else:
        shift = u
    out = {}
    for q, c in _subring_trace(p, shift).items():
        val = c / p
        if val:
            if val.denominator != 1:
                raise CertificateError("differential trace not integral")
            out[q] = int(val)
    return out


def verify_theta_formulas(prof: PrecisionProfile, geometry: Geometry) -> None:
    """Build gate: the index formulas must agree with the rational trace
    oracle on all monomials |u| <= 3p."""
    p = prof.p
    bound = 3 * p + 1
    lo = 0 if geometry is Geometry.AFFINE_LINE else -3 * p
    for u in range(lo, 3 * p + 1):
        g = XSeries.monomial(prof, geometry, bound, u)
        got = {e: c for e, c in theta0_apply(g).coeffs.items()}
        want = theta0_trace_oracle(p, u)
        got_ints = {e: c.vals[0] % prof.p ** prof.a for e, c in got.items()}
        want_ints = {e: c % prof.p ** prof.a for e, c in want.items() if c % prof.p ** prof.a}
        if got_ints != want_ints:
            raise CertificateError(f"theta0 disagrees with trace oracle at u={u}")
        hi_range = bound - 1 if geometry is Geometry.AFFINE_LINE else bound
        if (geometry is Geometry.AFFINE_LINE and 0 <= u <= hi_range) or \
           (geometry is Geometry.TORUS and lo <= u <= hi_range):
            gd = XSeries.monomial(prof, geometry, bound, u, differential=True)
            gotd = {e: c.vals[0] % prof.p ** prof.a
                    for e, c in theta1_apply(gd).coeffs.items()}
            wantd = {e: c % prof.p ** prof.a
                     for e, c in theta1_trace_oracle(p, u, geometry).items()
                     if c % prof.p ** prof.a}
            if gotd != wantd:
                raise CertificateError(f"theta1 disagrees with trace oracle at u={u}")


# matrices -------------------------------------------------------------------

@dataclass
class NuclearMatrix:
    """Matrix of psi_i = theta_i o (E_f *) in the plain monomial basis.

    Row/column index k corresponds to exponent basis_offset + k; for
    differentials on the affine line the function-space exponent is the
    basis exponent plus one."""

    entries: list[list[ZpTSeries]]
    degree_index: int
    weight_c: int
    basis_offset: int
    geometry: Geometry
    prof: PrecisionProfile

    @property
    def size(self) -> int:
        return len(self.entries)

    def exponent(self, index: int) -> int:
        return self.basis_offset + index

    def function_exponent(self, index: int) -> int:
        u = self.exponent(index)
        if self.degree_index == 1 and self.geometry is Geometry.AFFINE_LINE:
            return u + 1
        return u

    def entry(self, v: int, u: int) -> ZpTSeries:
        return self.entries[v][u]


def basis_exponents(geometry: Geometry, i: int, D: int) -> tuple[int, int]:
    """(offset, size) of the monomial basis used for degree i."""
    if geometry is Geometry.AFFINE_LINE:
        if i == 0:
            return 0, D + 1          # 1, x, ..., x^D
        return 0, D                  # dx, x dx, ..., x^(D-1) dx
    return -D, 2 * D + 1             # x^-D .. x^D (dx/x twisted for i = 1)


_VERIFIED: set[tuple[int, str]] = set()


def assemble_matrix(ef: SplittingFunction, i: int, prof: PrecisionProfile) -> NuclearMatrix:
    """Matrix of psi_i over the monomial basis, built column by column by
    applying theta_i to E_f times the basis element.  Verifies the theta
    formulas against the rational trace oracle once per (p, geometry),
    the mod-T degeneration, and the T-adic decay certificate."""
    if i not in (0, 1):
        raise ValueError("degree index must be 0 or 1")
    geometry = ef.series.geometry
    key = (prof.p, geometry.value)
    if key not in _VERIFIED:
        verify_theta_formulas(prof, geometry)
        _VERIFIED.add(key)

    D = prof.D
    if D < prof.p:
        raise ValueError("degree bound too small: need D >= p")
    offset, size = basis_exponents(geometry, i, D)
    # working window for products: theta pulls back from exponents up to
    # p * D, and the splitting function's own support must fit
    window = max(prof.p * D, ef.series.bound, D) + 1
    wide_zero = ZpTSeries.zero(prof.p, prof.b, prof.work)

    ef_wide = XSeries(prof, geometry, window,
                      {u: c for u, c in ef.series.coeffs.items()},
                      differential=False)

    cols: list[list[ZpTSeries]] = []
    for col in range(size):
        u = offset + col
        mono = XSeries.monomial(prof, geometry, window, u, differential=(i == 1))
        image = theta0_apply(ef_wide * mono) if i == 0 else theta1_apply(ef_wide * mono)
        colv = []
        for row in range(size):
            v = offset + row
            colv.append(image.coeffs.get(v, wide_zero))
        cols.append(colv)
    entries = [[cols[u][v] for u in range(size)] for v in range(size)]

    mat = NuclearMatrix(entries=entries, degree_index=i, weight_c=max(ef.source.degree, 1),
                        basis_offset=offset, geometry=geometry, prof=prof)
    _check_matrix_certificates(mat, ef)
    return mat


def _check_matrix_certificates(mat: NuclearMatrix, ef: SplittingFunction) -> None:
    """Decay and degeneration certificates.

    Plain-basis decay: v_T(entry(v,u)) >= ceil(|p v' - u'| / d) since the
    entry is (p or 1 times) the splitting-function coefficient at
    p v' - u'.  The weighted-basis entries carry the extra factor
    pi^(floor(|u|/c) - floor(|v|/c)), whose exponent plus the plain decay
    stays nonnegative, which is the contraction making psi nuclear; both
    facts are checked.  Mod T the matrix must degenerate to theta_i."""
    p = mat.prof.p
    d = mat.weight_c
    scale = p if mat.degree_index == 0 else 1
    for v in range(mat.size):
        vf = mat.function_exponent(v)
        for u in range(mat.size):
            uf = mat.function_exponent(u)
            e = mat.entries[v][u]
            j = p * vf - uf
            if mat.geometry is Geometry.AFFINE_LINE and j < 0:
                if not e.is_zero():
                    raise CertificateError(f"entry ({v},{u}) should vanish")
                continue
            # beyond T^b nothing is observable, so the bound caps at b
            need = min(-(-abs(j) // d), mat.prof.b)
            vt = e.vT()
            if vt.value < need:
                raise CertificateError(
                    f"entry ({v},{u}) has v_T {vt.value} < decay bound {need}")
            wu = abs(mat.exponent(u)) // d
            wv = abs(mat.exponent(v)) // d
            if not e.is_zero() and need + wu - wv < 0:
                raise CertificateError(
                    f"weighted decay negative at ({v},{u}): "
                    f"{need} + {wu} - {wv}")
            # mod T the factor E_f is 1, so only the theta index map survives
            t0 = e.vals[0] % p ** mat.prof.a
            expect = (scale if j == 0 else 0) % p ** mat.prof.a
            if t0 != expect:
                raise CertificateError(
                    f"entry ({v},{u}) mod T is {t0}, expected {expect}")
