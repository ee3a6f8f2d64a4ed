"""Truncated power series over Z_p[[T]]: exp, log, the Artin-Hasse
exponential, and the distinguished element pi with E(pi) = 1 + T.

TSeriesPoly models a polynomial truncation of a series in one formal
variable (t or s) whose coefficients live in Z_p[[T]] mod (p^w, T^b).
The Artin-Hasse series is computed in exact rational arithmetic first and
reduced afterwards, so no p-adic digits are lost and p-integrality of the
result is a checkable certificate rather than an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CertificateError, PrecisionError
from .zp import ZpApprox, ZpTSeries, ppow


@dataclass(frozen=True)
class TSeriesPoly:
    """Coefficients of a series in `var`, truncated at index `order`."""

    var: str
    coeffs: tuple[ZpTSeries, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> ZpTSeries:
        return self.coeffs[k]

    def _like(self, coeffs) -> "TSeriesPoly":
        return TSeriesPoly(self.var, tuple(coeffs))

    def __add__(self, other: "TSeriesPoly") -> "TSeriesPoly":
        if self.var != other.var or self.order != other.order:
            raise ValueError("mismatched series")
        return self._like(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "TSeriesPoly") -> "TSeriesPoly":
        if self.var != other.var or self.order != other.order:
            raise ValueError("mismatched series")
        return self._like(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __mul__(self, other: "TSeriesPoly") -> "TSeriesPoly":
        if self.var != other.var or self.order != other.order:
            raise ValueError("mismatched series")
        n = self.order
        out = [None] * (n + 1)
        for i, a in enumerate(self.coeffs):
            for j in range(n + 1 - i):
                term = a * other.coeffs[j]
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        return self._like(out)


def series_exp(g: TSeriesPoly, order: int | None = None) -> TSeriesPoly:
    """exp of a series with zero constant term, by the derivative
    recurrence k*h_k = sum_j (j*g_j) h_{k-j}.  Division by k costs
    v_p(k) digits per step."""
    if not g.coeffs[0].is_zero():
        raise ValueError("series_exp requires zero constant term")
    n = g.order if order is None else min(order, g.order)
    p, b = g.coeffs[0].p, g.coeffs[0].b
    w = max(max(c.prec) for c in g.coeffs)
    h = [ZpTSeries.one(p, b, w)]
    dg = [g.coeffs[j].scale(j) for j in range(n + 1)]
    for k in range(1, n + 1):
        acc = ZpTSeries.zero(p, b, w)
        for j in range(1, k + 1):
            acc = acc + dg[j] * h[k - j]
        h.append(acc.divexact(k))
    return TSeriesPoly(g.var, tuple(h + [ZpTSeries.zero(p, b, w)] * (g.order - n)))


def series_log(g: TSeriesPoly, order: int | None = None) -> TSeriesPoly:
    """log of a series with constant term 1; inverse of series_exp."""
    c0 = g.coeffs[0]
    if not (c0 - ZpTSeries.one(c0.p, c0.b, max(c0.prec))).is_zero():
        raise ValueError("series_log requires constant term 1")
    n = g.order if order is None else min(order, g.order)
    p, b = c0.p, c0.b
    w = max(max(c.prec) for c in g.coeffs)
    ell = [ZpTSeries.zero(p, b, w)]
    for k in range(1, n + 1):
        acc = g.coeffs[k].scale(k)
        for j in range(1, k):
            acc = acc - ell[j].scale(j) * g.coeffs[k - j]
        ell.append(acc.divexact(k))
    return TSeriesPoly(g.var, tuple(ell + [ZpTSeries.zero(p, b, w)] * (g.order - n)))


def artin_hasse_fractions(p: int, order: int) -> list[Fraction]:
    """Exact rational coefficients of exp(sum t^(p^i)/p^i) up to t^order.

    This is the independent oracle for the reduced series: the recurrence
    runs in Fraction arithmetic, and every coefficient must come out with
    denominator prime to p."""
    # derivative coefficients of the exponent g = sum t^(p^i)/p^i
    dg = [Fraction(0)] * (order + 1)
    q = 1
    i = 0
    while q <= order:
        dg[q] = Fraction(q, p ** i)   # j * g_j with j = p^i
        q *= p
        i += 1
    h = [Fraction(1)] + [Fraction(0)] * order
    for k in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            if dg[j]:
                acc += dg[j] * h[k - j]
        h[k] = acc / k
    for k, c in enumerate(h):
        if c.denominator % p == 0:
            raise CertificateError(f"Artin-Hasse coefficient t^{k} not p-integral")
    return h


def artin_hasse_units(prof, order: int) -> list[ZpApprox]:
    """Artin-Hasse coefficients reduced mod p^work."""
    p = prof.p
    w = prof.work
    m = ppow(p, w)
    out = []
    for c in artin_hasse_fractions(p, order):
        r = (c.numerator % m) * pow(c.denominator % m, -1, m) % m
        out.append(ZpApprox(p, r, w))
    return out


def artin_hasse(prof, order: int) -> TSeriesPoly:
    """The Artin-Hasse exponential E(t) mod (p^work, t^(order+1)),
    with constant and linear coefficients both 1."""
    if order < 1:
        raise ValueError("order must be >= 1")
    units = artin_hasse_units(prof, order)
    if units[0].residue != 1 or units[1].residue != 1:
        raise CertificateError("Artin-Hasse series must start 1 + t + ...")
    b = prof.b
    return TSeriesPoly("t", tuple(ZpTSeries.from_scalar(u, b) for u in units))


def _eval_poly_at_series(units: list[ZpApprox], x: ZpTSeries) -> ZpTSeries:
    """Horner evaluation of a scalar-coefficient polynomial at a T-series."""
    b = x.b
    acc = ZpTSeries.from_scalar(units[-1], b)
    for c in reversed(units[:-1]):
        acc = acc * x + ZpTSeries.from_scalar(c, b)
    return acc


def pi_from_T(prof) -> ZpTSeries:
    """The unique series pi = T - ... with E(pi) = 1 + T, computed by
    Newton iteration on E(pi) - (1 + T).  E'(t) has unit constant term,
    so each division is by a unit and costs no precision."""
    p, b, w = prof.p, prof.b, prof.work
    units = artin_hasse_units(prof, max(b - 1, 1))
    dunits = [u * k for k, u in enumerate(units)][1:] or [ZpApprox(p, 1, w)]
    one_plus_T = ZpTSeries.from_ints(p, b, [1, 1], w)
    pi = ZpTSeries.from_ints(p, b, [0, 1], w)
    steps = 0
    while True:
        err = _eval_poly_at_series(units, pi) - one_plus_T
        if err.is_zero():
            break
        steps += 1
        if steps > b.bit_length() + 4:
            raise PrecisionError("pi iteration failed to converge")
        deriv = _eval_poly_at_series(dunits, pi)
        pi = pi - err * deriv.inverse()
    if not (_eval_poly_at_series(units, pi) - one_plus_T).is_zero():
        raise CertificateError("E(pi) != 1 + T after iteration")
    return pi
