"""Exact truncated arithmetic in Z_p and Z_p[[T]].

Elements carry their own precision.  A ZpApprox holds a residue mod
p^known together with the number of known digits; arithmetic never
reports more digits than its inputs justify (min rule for sums and
products, explicit digit loss for exact divisions).  A ZpTSeries is a
vector of b such coefficients, one per power of T.

Apparent zeros are never certified: a residue of 0 at k known digits
means only v_p >= k, and valuations of such elements are returned as
tagged lower bounds.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import PrecisionError

_PPOW: dict[tuple[int, int], int] = {}


def ppow(p: int, k: int) -> int:
    key = (p, k)
    m = _PPOW.get(key)
    if m is None:
        m = p ** k
        _PPOW[key] = m
    return m


def vp_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("vp_int of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class Valuation(NamedTuple):
    """A valuation together with its certainty.  When `exact` is False the
    value is only a lower bound (the element is indistinguishable from 0
    at the known precision)."""

    value: int
    exact: bool


class ZpApprox:
    """A p-adic integer known mod p^known."""

    __slots__ = ("p", "residue", "known")

    def __init__(self, p: int, residue: int, known: int):
        if known <= 0:
            raise PrecisionError("no p-adic digits left")
        self.p = p
        self.known = known
        self.residue = residue % ppow(p, known)

    def __repr__(self) -> str:
        return f"ZpApprox({self.residue} mod {self.p}^{self.known})"

    def _coerce(self, other) -> "ZpApprox":
        if isinstance(other, ZpApprox):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, int):
            # exact integers enter at our own precision
            return ZpApprox(self.p, other, self.known)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = min(self.known, o.known)
        return ZpApprox(self.p, self.residue + o.residue, k)

    __radd__ = __add__

    def __neg__(self) -> "ZpApprox":
        return ZpApprox(self.p, -self.residue, self.known)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = min(self.known, o.known)
        return ZpApprox(self.p, self.residue - o.residue, k)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = min(self.known, o.known)
        return ZpApprox(self.p, self.residue * o.residue, k)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ZpApprox":
        return ZpApprox(self.p, pow(self.residue, n, ppow(self.p, self.known)), self.known)

    def divexact(self, n: int) -> "ZpApprox":
        """Divide by a nonzero integer, removing v_p(n) known digits.

        The unit part is inverted exactly; the p-power part must divide the
        residue, otherwise the value is (at this precision) not divisible
        and the division cannot be represented."""
        if n == 0:
            raise ZeroDivisionError("division by zero")
        v = vp_int(n, self.p)
        unit = n // ppow(self.p, v) if v else n
        if v:
            if self.known - v <= 0:
                raise PrecisionError(f"dividing by p^{v} exhausts {self.known} digits")
            if self.residue % ppow(self.p, v) != 0:
                raise PrecisionError(
                    f"residue {self.residue} not divisible by p^{v} at known precision"
                )
            k = self.known - v
            r = self.residue // ppow(self.p, v)
        else:
            k = self.known
            r = self.residue
        return ZpApprox(self.p, r * pow(unit, -1, ppow(self.p, k)), k)

    def unit_inverse(self) -> "ZpApprox":
        if self.residue % self.p == 0:
            raise ZeroDivisionError("not a unit at known precision")
        return ZpApprox(self.p, pow(self.residue, -1, ppow(self.p, self.known)), self.known)

    def reduced(self, digits: int) -> "ZpApprox":
        return ZpApprox(self.p, self.residue, min(self.known, digits))

    def is_zero(self) -> bool:
        """Indistinguishable from zero at known precision."""
        return self.residue == 0

    def vp(self) -> Valuation:
        if self.residue == 0:
            return Valuation(self.known, False)
        return Valuation(vp_int(self.residue, self.p), True)

    def agrees_with(self, other: "ZpApprox") -> bool:
        """Equality of residues at the joint known precision."""
        k = min(self.known, other.known)
        m = ppow(self.p, k)
        return self.residue % m == other.residue % m


def teichmuller_int(c: int, p: int, digits: int) -> ZpApprox:
    """The Teichmuller lift of c mod p in Z_p: the unique root of
    x^p = x congruent to c, found by iterating the p-power map."""
    m = ppow(p, digits)
    t = c % m
    for _ in range(digits + 2):
        t2 = pow(t, p, m)
        if t2 == t:
            break
        t = t2
    else:
        raise AssertionError("Teichmuller iteration failed to stabilize")
    return ZpApprox(p, t, digits)


# T-series layer ------------------------------------------------------------

_PACK: dict[tuple[int, int, int, int], tuple[int, int]] = {}


def _pack_params(p: int, w: int, b: int, nacc: int) -> tuple[int, int]:
    """Bits per limb and limb mask for Kronecker-packed multiplication,
    with headroom for accumulating `nacc` products."""
    key = (p, w, b, nacc)
    got = _PACK.get(key)
    if got is None:
        top = b * nacc * (ppow(p, w) - 1) ** 2
        beta = top.bit_length() + 1
        got = (beta, (1 << beta) - 1)
        _PACK[key] = got
    return got


class ZpTSeries:
    """An element of Z_p[[T]] mod T^b with per-coefficient p-adic precision.

    vals[j] is the residue of the T^j coefficient mod p^prec[j].
    """

    __slots__ = ("p", "b", "vals", "prec")

    def __init__(self, p: int, b: int, vals, prec):
        self.p = p
        self.b = b
        vals = tuple(vals)
        prec = tuple(prec)
        if len(vals) != b or len(prec) != b:
            raise ValueError("coefficient vector must have length b")
        norm = []
        for v, k in zip(vals, prec):
            if k <= 0:
                raise PrecisionError("no p-adic digits left in series coefficient")
            norm.append(v % ppow(p, k))
        self.vals = tuple(norm)
        self.prec = prec

    # construction helpers

    @classmethod
    def zero(cls, p: int, b: int, known: int) -> "ZpTSeries":
        return cls(p, b, (0,) * b, (known,) * b)

    @classmethod
    def one(cls, p: int, b: int, known: int) -> "ZpTSeries":
        return cls(p, b, (1,) + (0,) * (b - 1), (known,) * b)

    @classmethod
    def from_ints(cls, p: int, b: int, ints, known: int) -> "ZpTSeries":
        ints = list(ints)[:b]
        ints += [0] * (b - len(ints))
        return cls(p, b, ints, (known,) * b)

    @classmethod
    def from_scalar(cls, c: ZpApprox, b: int) -> "ZpTSeries":
        return cls(c.p, b, (c.residue,) + (0,) * (b - 1), (c.known,) * b)

    def coeff(self, j: int) -> ZpApprox:
        return ZpApprox(self.p, self.vals[j], self.prec[j])

    def __repr__(self) -> str:
        return f"ZpTSeries(p={self.p}, {list(self.vals)})"

    def _check(self, other: "ZpTSeries") -> None:
        if self.p != other.p or self.b != other.b:
            raise ValueError("mismatched series rings")

    # ring operations

    def __add__(self, other: "ZpTSeries") -> "ZpTSeries":
        self._check(other)
        p = self.p
        vals = [a + c for a, c in zip(self.vals, other.vals)]
        prec = [min(x, y) for x, y in zip(self.prec, other.prec)]
        return ZpTSeries(p, self.b, vals, prec)

    def __sub__(self, other: "ZpTSeries") -> "ZpTSeries":
        self._check(other)
        vals = [a - c for a, c in zip(self.vals, other.vals)]
        prec = [min(x, y) for x, y in zip(self.prec, other.prec)]
        return ZpTSeries(self.p, self.b, vals, prec)

    def __neg__(self) -> "ZpTSeries":
        return ZpTSeries(self.p, self.b, [-v for v in self.vals], self.prec)

    def uniform_prec(self) -> int | None:
        k = self.prec[0]
        for x in self.prec:
            if x != k:
                return None
        return k

    def __mul__(self, other: "ZpTSeries") -> "ZpTSeries":
        self._check(other)
        w1 = self.uniform_prec()
        w2 = other.uniform_prec()
        if w1 is not None and w2 is not None:
            w = min(w1, w2)
            return _mul_packed(self, other, w)
        return _mul_tracked(self, other)

    def scale(self, c) -> "ZpTSeries":
        """Multiply every coefficient by an integer or a ZpApprox."""
        if isinstance(c, ZpApprox):
            if c.p != self.p:
                raise ValueError("mixed primes")
            vals = [v * c.residue for v in self.vals]
            prec = [min(k, c.known) for k in self.prec]
            return ZpTSeries(self.p, self.b, vals, prec)
        return ZpTSeries(self.p, self.b, [v * c for v in self.vals], self.prec)

    def divexact(self, n: int) -> "ZpTSeries":
        out = [self.coeff(j).divexact(n) for j in range(self.b)]
        return ZpTSeries(self.p, self.b, [c.residue for c in out], [c.known for c in out])

    def inverse(self) -> "ZpTSeries":
        """Inverse of a series whose constant term is a p-adic unit."""
        c0 = self.coeff(0)
        i0 = c0.unit_inverse()
        inv_vals = [i0.residue]
        inv_prec = [i0.known]
        for k in range(1, self.b):
            acc = ZpApprox(self.p, 0, inv_prec[0])
            for j in range(1, k + 1):
                term = self.coeff(j) * ZpApprox(self.p, inv_vals[k - j], inv_prec[k - j])
                acc = acc - term
            q = acc * i0
            inv_vals.append(q.residue)
            inv_prec.append(q.known)
        return ZpTSeries(self.p, self.b, inv_vals, inv_prec)

    # queries

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.vals)

    def vT(self) -> Valuation:
        """T-adic order: least index with a coefficient visibly nonzero.
        If every coefficient vanishes at its known precision the order is
        only bounded below by b."""
        for j, v in enumerate(self.vals):
            if v != 0:
                return Valuation(j, True)
        return Valuation(self.b, False)

    def vp(self) -> Valuation:
        """Minimum of the coefficient p-adic valuations."""
        best = None
        for j in range(self.b):
            v = self.coeff(j).vp()
            if best is None or v.value < best.value or (v.value == best.value and v.exact):
                best = v
        return best

    def at_T0(self) -> ZpApprox:
        return self.coeff(0)

    def agrees_with(self, other: "ZpTSeries") -> bool:
        self._check(other)
        for j in range(self.b):
            if not self.coeff(j).agrees_with(other.coeff(j)):
                return False
        return True

    def reduced(self, digits: int) -> "ZpTSeries":
        return ZpTSeries(
            self.p, self.b, self.vals, [min(k, digits) for k in self.prec]
        )

    def residues(self, digits: int) -> tuple[int, ...]:
        m = ppow(self.p, digits)
        if any(k < digits for k in self.prec):
            raise PrecisionError("requested more digits than known")
        return tuple(v % m for v in self.vals)


def _mul_packed(a: ZpTSeries, c: ZpTSeries, w: int) -> ZpTSeries:
    p, b = a.p, a.b
    m = ppow(p, w)
    beta, mask = _pack_params(p, w, b, 1)
    na = 0
    nc = 0
    for j in range(b - 1, -1, -1):
        na = (na << beta) | (a.vals[j] % m)
        nc = (nc << beta) | (c.vals[j] % m)
    prod = na * nc
    vals = []
    for j in range(b):
        vals.append(((prod >> (beta * j)) & mask) % m)
    return ZpTSeries(p, b, vals, (w,) * b)


def _mul_tracked(a: ZpTSeries, c: ZpTSeries) -> ZpTSeries:
    # every output index is reached by the i = 0 row, so all of prec is set
    p, b = a.p, a.b
    vals = [0] * b
    prec = [10 ** 9] * b
    for i in range(b):
        av = a.vals[i]
        ak = a.prec[i]
        for j in range(b - i):
            vals[i + j] += av * c.vals[j]
            k = min(ak, c.prec[j])
            if k < prec[i + j]:
                prec[i + j] = k
    return ZpTSeries(p, b, vals, prec)


def valuation(x, kind: str) -> Valuation:
    """Dispatcher: kind 'vp' for the p-adic valuation, 'vT' for the
    T-adic order.  Inexact results (apparent zeros) carry exact=False."""
    if kind == "vp":
        return x.vp()
    if kind == "vT":
        if not isinstance(x, ZpTSeries):
            raise ValueError("vT needs a T-series")
        return x.vT()
    raise ValueError(f"unknown valuation kind {kind!r}")


def one_plus_T_pow(c: ZpApprox, prof) -> ZpTSeries:
    """The binomial series (1+T)^c for a p-adic integer exponent c.

    Coefficient k is C(c, k) = c(c-1)...(c-k+1) / k!; the division by k!
    costs v_p(k!) digits, so coefficient k is known to c.known - v_p(k!)
    digits."""
    p, b = c.p, prof.b
    vals = [1]
    prec = [c.known]
    num = ZpApprox(p, 1, c.known)
    for k in range(1, b):
        num = num * (c - (k - 1))
        binom = num.divexact(math.factorial(k))
        vals.append(binom.residue)
        prec.append(binom.known)
    return ZpTSeries(p, b, vals, prec)
