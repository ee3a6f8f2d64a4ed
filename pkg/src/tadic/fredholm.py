"""Characteristic series of nuclear matrices and L-function assembly.

Two independent routes to the same L-function are kept deliberately
separate so they can cross-check each other:

  * `char_series` computes det(1 - s M) mod s^(smax+1) by a truncated
    Samuelson-Berkowitz expansion.  Writing M_k for the leading principal
    k x k block and (R, C, a) for the bordering row, column and corner,

        det(1 - s M_{k+1})
            = det(1 - s M_k) * (1 - a s - sum_j s^(j+2) R M_k^j C),

    so the determinant is a product of N explicitly computable factors.
    Only ring additions and multiplications occur: no division, hence no
    p-adic precision loss and manifest integrality of the coefficients.

  * `power_traces` computes tr(M^d) by iterated matrix products, and
    `l_from_traces` assembles exp(-sum S_d s^d / d).

T-series multiplications inside the matrix work are Kronecker-packed:
a coefficient vector becomes one big integer with guard bits sized so a
whole row-times-column accumulation cannot overflow a limb.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dwork import NuclearMatrix
from .errors import CertificateError
from .zp import ZpTSeries, ppow


@dataclass(frozen=True)
class FredholmSeries:
    """det(1 - s Theta) truncated in s; coefficients in Z_p[[T]] mod T^b."""

    coeffs: tuple[ZpTSeries, ...]
    provenance: str = ""

    @property
    def smax(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> ZpTSeries:
        return self.coeffs[k]

    def assert_integral(self) -> None:
        """The representation cannot hold negative p-powers; what is
        checked is that no coefficient lost working digits, i.e. the
        computation really was division free."""
        w = self.coeffs[0].prec[0]
        for c in self.coeffs:
            if any(k < w for k in c.prec):
                raise CertificateError("Fredholm coefficient lost precision")
        if self.coeffs[0].vals[0] != 1 or any(v != 0 for v in self.coeffs[0].vals[1:]):
            raise CertificateError("Fredholm series must start at 1")


@dataclass(frozen=True)
class LFunctionSeries:
    """L-series truncated in s, tagged with the route that produced it."""

    coeffs: tuple[ZpTSeries, ...]
    route: str

    @property
    def smax(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> ZpTSeries:
        return self.coeffs[k]

    def effective_precision(self) -> int:
        return min(min(c.prec) for c in self.coeffs)


# packed matrix helpers -------------------------------------------------------

class _Packed:
    """A square matrix of T-series flattened to Kronecker-packed ints."""

    __slots__ = ("p", "b", "w", "m", "beta", "mask", "rows", "n")

    def __init__(self, mat: NuclearMatrix):
        entries = mat.entries
        self.n = len(entries)
        first = entries[0][0]
        self.p, self.b = first.p, first.b
        w = first.uniform_prec()
        if w is None:
            raise CertificateError("matrix entries must carry uniform precision")
        self.w = w
        self.m = ppow(self.p, w)
        # headroom: a limb may accumulate n full row-column convolutions
        top = self.b * max(self.n, 1) * (self.m - 1) ** 2
        self.beta = top.bit_length() + 1
        self.mask = (1 << self.beta) - 1
        self.rows = [[self._pack(e) for e in row] for row in entries]

    def _pack(self, s: ZpTSeries) -> int:
        acc = 0
        for j in range(self.b - 1, -1, -1):
            acc = (acc << self.beta) | (s.vals[j] % self.m)
        return acc

    def _renorm(self, acc: int) -> int:
        out = 0
        for j in range(self.b - 1, -1, -1):
            out = (out << self.beta) | (((acc >> (self.beta * j)) & self.mask) % self.m)
        return out

    def unpack(self, acc: int) -> ZpTSeries:
        vals = [((acc >> (self.beta * j)) & self.mask) % self.m for j in range(self.b)]
        return ZpTSeries(self.p, self.b, vals, (self.w,) * self.b)

    def submatrix_vec(self, k: int, vec: list[int]) -> list[int]:
        """(M_k v) with renormalized limbs."""
        rows = self.rows
        out = []
        for i in range(k):
            row = rows[i]
            acc = 0
            for j in range(k):
                x = vec[j]
                if x:
                    acc += row[j] * x
            out.append(self._renorm(acc))
        return out

    def row_dot(self, i: int, k: int, vec: list[int]) -> int:
        row = self.rows[i]
        acc = 0
        for j in range(k):
            x = vec[j]
            if x:
                acc += row[j] * x
        return self._renorm(acc)

    def matmul(self, other_rows: list[list[int]]) -> list[list[int]]:
        n = self.n
        cols = [[other_rows[i][j] for i in range(n)] for j in range(n)]
        out = []
        for i in range(n):
            row = self.rows[i]
            orow = []
            for j in range(n):
                col = cols[j]
                acc = 0
                for t in range(n):
                    x = row[t]
                    if x:
                        acc += x * col[t]
                orow.append(self._renorm(acc))
            out.append(orow)
        return out


def _poly_mul_trunc(a: list[ZpTSeries], t: list[ZpTSeries], smax: int) -> list[ZpTSeries]:
    out: list[ZpTSeries | None] = [None] * (smax + 1)
    for i, ai in enumerate(a):
        if i > smax:
            break
        for j, tj in enumerate(t):
            if i + j > smax:
                break
            term = ai * tj
            out[i + j] = term if out[i + j] is None else out[i + j] + term
    zero = a[0] - a[0]
    return [c if c is not None else zero for c in out]


def char_series(M: NuclearMatrix, smax: int) -> FredholmSeries:
    """det(1 - s M) mod s^(smax+1), division free."""
    pk = _Packed(M)
    p, b, w = pk.p, pk.b, pk.w
    one = ZpTSeries.one(p, b, w)
    zero = ZpTSeries.zero(p, b, w)
    result = [one] + [zero] * smax
    for k in range(pk.n):
        factor = [one, -pk.unpack(pk.rows[k][k])]
        if k > 0 and smax >= 2:
            vec = [pk.rows[i][k] for i in range(k)]   # the bordering column
            for j in range(smax - 1):
                factor.append(-pk.unpack(pk.row_dot(k, k, vec)))
                if j < smax - 2:
                    vec = pk.submatrix_vec(k, vec)
        result = _poly_mul_trunc(result, factor, smax)
    out = FredholmSeries(tuple(result), provenance=f"psi_{M.degree_index}")
    out.assert_integral()
    return out


def power_traces(M: NuclearMatrix, dmax: int) -> list[ZpTSeries]:
    """tr(M^d) for d = 1..dmax by repeated matrix products."""
    pk = _Packed(M)
    traces = []
    cur = pk.rows
    for _ in range(dmax):
        acc = 0
        for i in range(pk.n):
            acc += cur[i][i]
        traces.append(pk.unpack(pk._renorm(acc)))
        if len(traces) < dmax:
            cur = pk.matmul(cur)
    return traces


def l_from_traces(sums: list[ZpTSeries], smax: int) -> LFunctionSeries:
    """exp(-sum_d S_d s^d / d) mod s^(smax+1).

    The recurrence k h_k = -sum_j S_j h_{k-j} divides once by k per
    coefficient, which is the only precision sink on this route."""
    if len(sums) < smax:
        raise ValueError(f"need {smax} power sums, got {len(sums)}")
    first = sums[0]
    p, b = first.p, first.b
    w = max(max(c.prec) for c in sums) if sums else 1
    h = [ZpTSeries.one(p, b, w)]
    for k in range(1, smax + 1):
        acc = ZpTSeries.zero(p, b, w)
        for j in range(1, k + 1):
            acc = acc + sums[j - 1] * h[k - j]
        h.append((-acc).divexact(k))
    return LFunctionSeries(tuple(h), route="oracle")


def series_inverse_in_s(coeffs: tuple[ZpTSeries, ...]) -> list[ZpTSeries]:
    """Inverse of an s-series with constant term 1; division free."""
    c0 = coeffs[0]
    if c0.vals[0] != 1 or any(v != 0 for v in c0.vals[1:]):
        raise ValueError("series must have constant term 1")
    n = len(coeffs) - 1
    inv = [c0]
    for k in range(1, n + 1):
        acc = None
        for j in range(1, k + 1):
            term = coeffs[j] * inv[k - j]
            acc = term if acc is None else acc + term
        inv.append(-acc)
    return inv


def l_from_char_series(c0: FredholmSeries, c1: FredholmSeries) -> LFunctionSeries:
    """L = C(psi_0, s) / C(psi_1, s); the denominator has constant term 1
    so the division is a formal series inverse."""
    smax = c0.smax
    inv1 = series_inverse_in_s(c1.coeffs)
    out = _poly_mul_trunc(list(c0.coeffs), inv1, smax)
    return LFunctionSeries(tuple(out), route="trace-formula")


def l_trace_formula(M0: NuclearMatrix, M1: NuclearMatrix, smax: int) -> LFunctionSeries:
    return l_from_char_series(char_series(M0, smax), char_series(M1, smax))
