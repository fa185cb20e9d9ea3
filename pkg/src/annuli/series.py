"""Truncated Laurent series over an arbitrary coefficient ring.

The Puiseux machinery only ever needs a finite exponent window, so a series
is a value ``sum cs[i] * sigma^(val+i)`` known up to O(sigma^prec) with
``prec = val + len(cs)``.  All coefficient decisions go through the carrier
ring, so dynamic-evaluation splits propagate out of every operation.
"""

from __future__ import annotations

from ._ratio import QQ
from .laurent import LaurentPoly
from .scalars import Scalar


class TruncationCap(ArithmeticError):
    """A series window was exhausted before the required data resolved."""


class TS:
    __slots__ = ("ring", "val", "cs")

    def __init__(self, ring, val: int, cs: list):
        self.ring = ring
        self.val = val
        self.cs = list(cs)

    # -- basics -----------------------------------------------------------------

    @property
    def prec(self) -> int:
        return self.val + len(self.cs)

    @staticmethod
    def zero(ring, prec: int) -> "TS":
        return TS(ring, prec, [])

    @staticmethod
    def one_term(ring, c, e: int, prec: int) -> "TS":
        if prec <= e:
            return TS(ring, prec, [])
        cs = [c] + [ring.zero()] * (prec - e - 1)
        return TS(ring, e, cs)

    def copy(self) -> "TS":
        return TS(self.ring, self.val, list(self.cs))

    def coeff(self, e: int):
        if e < self.val or e >= self.prec:
            if e >= self.prec:
                raise TruncationCap(f"coefficient at {e} beyond precision {self.prec}")
            return self.ring.zero()
        return self.cs[e - self.val]

    def normalized(self, decide: bool = False) -> "TS":
        """Strip leading zeros; decide=True forces branchwise decisions (splits)."""
        r = self.ring
        test = r.decide_zero if decide else r.is_zero
        i = 0
        while i < len(self.cs) and test(self.cs[i]):
            i += 1
        return TS(r, self.val + i, self.cs[i:])

    def is_zero_to_prec(self) -> bool:
        r = self.ring
        return all(r.is_zero(c) for c in self.cs)

    def order(self) -> int:
        """Exact order of the series; TruncationCap if it looks like zero."""
        n = self.normalized(decide=True)
        if not n.cs:
            raise TruncationCap("series is zero to working precision")
        return n.val

    def truncate(self, prec: int) -> "TS":
        if prec >= self.prec:
            return self
        keep = max(0, prec - self.val)
        return TS(self.ring, self.val if keep else prec, self.cs[:keep])

    def shift(self, k: int) -> "TS":
        return TS(self.ring, self.val + k, self.cs)

    # -- ring operations ----------------------------------------------------------

    def add(self, other: "TS") -> "TS":
        r = self.ring
        prec = min(self.prec, other.prec)
        val = min(self.val, other.val, prec)
        cs = [r.zero()] * (prec - val)
        for src in (self, other):
            for i, c in enumerate(src.cs):
                e = src.val + i
                if e < prec:
                    cs[e - val] = r.add(cs[e - val], c)
        return TS(r, val, cs)

    def neg(self) -> "TS":
        r = self.ring
        return TS(r, self.val, [r.neg(c) for c in self.cs])

    def sub(self, other: "TS") -> "TS":
        return self.add(other.neg())

    def mul(self, other: "TS") -> "TS":
        r = self.ring
        if not self.cs or not other.cs:
            return TS(r, min(self.prec + other.val, other.prec + self.val), [])
        prec = min(self.prec + other.val, other.prec + self.val)
        val = self.val + other.val
        cs = [r.zero()] * (prec - val)
        for i, a in enumerate(self.cs):
            if r.is_zero(a):
                continue
            for j, b in enumerate(other.cs):
                e = i + j
                if e >= len(cs):
                    break
                cs[e] = r.add(cs[e], r.mul(a, b))
        return TS(r, val, cs)

    def scale(self, c) -> "TS":
        r = self.ring
        return TS(r, self.val, [r.mul(c, x) for x in self.cs])

    def scale_scalar(self, q: Scalar) -> "TS":
        return self.scale(self.ring.from_scalar(q))

    def inv(self) -> "TS":
        """Inverse of a unit-leading series (splits if leading is a zero divisor)."""
        f = self.normalized()
        r = self.ring
        if not f.cs:
            raise ZeroDivisionError("inverse of zero series")
        n = len(f.cs)
        a0i = r.inv(f.cs[0])
        out = [r.zero()] * n
        out[0] = a0i
        for k in range(1, n):
            acc = r.zero()
            for j in range(1, k + 1):
                acc = r.add(acc, r.mul(f.cs[j], out[k - j]))
            out[k] = r.neg(r.mul(a0i, acc))
        return TS(r, -f.val, out)

    def pow_int(self, k: int) -> "TS":
        if k < 0:
            return self.inv().pow_int(-k)
        r = self.ring
        if k == 0:
            width = len(self.cs) or 1
            return TS(r, 0, [r.one()] + [r.zero()] * (width - 1))
        out = self
        for _ in range(k - 1):
            out = out.mul(self)
        return out

    # -- transcendental helpers (char 0) --------------------------------------------

    def _derivative(self) -> "TS":
        r = self.ring
        cs = []
        for i, c in enumerate(self.cs):
            e = self.val + i
            cs.append(r.mul(c, r.from_scalar(Scalar(QQ(e)))))
        return TS(r, self.val - 1, cs)

    def log_unit(self) -> "TS":
        """log of a series with val 0 and leading coefficient 1."""
        r = self.ring
        assert self.val == 0
        fp = self._derivative()
        g = fp.mul(self.inv())  # g = f'/f, val >= -? ; here val >= 0 - 1
        n = len(self.cs)
        cs = [r.zero()] * n
        for k in range(1, n):
            cs[k] = r.mul(g.coeff(k - 1), r.from_scalar(Scalar(QQ(1, k))))
        return TS(r, 0, cs)

    def exp_pos(self) -> "TS":
        """exp of a series with val >= 1, to the same window end."""
        r = self.ring
        prec = self.prec
        n = prec
        g = [r.zero()] * n
        for i, c in enumerate(self.cs):
            e = self.val + i
            if 0 < e < n:
                g[e] = c
        out = [r.zero()] * n
        out[0] = r.one()
        for k in range(1, n):
            acc = r.zero()
            for j in range(1, k + 1):
                if r.is_zero(g[j]):
                    continue
                acc = r.add(acc, r.mul(r.mul(g[j], r.from_scalar(Scalar(QQ(j)))), out[k - j]))
            out[k] = r.mul(acc, r.from_scalar(Scalar(QQ(1, k))))
        return TS(r, 0, out)

    def nth_root_monic(self, n: int) -> "TS":
        """(1 + h)^(1/n) for a series with val 0 and leading coefficient 1."""
        lg = self.log_unit()
        return lg.scale_scalar(Scalar(QQ(1, n))).exp_pos()

    def reversion(self) -> "TS":
        """Compositional inverse of a series with val 1 and unit linear coefficient.

        Lagrange inversion: t_j = (1/j) [tau^(j-1)] (tau / f)^j.
        """
        r = self.ring
        f = self.normalized()
        if f.val != 1:
            raise ValueError("reversion needs valuation exactly 1")
        n = len(f.cs)
        u = f.shift(-1).inv().truncate(n)  # tau/f(tau), val 0, unit
        out = [r.zero()] * n  # out[j-1] = t_j
        upow = u
        for j in range(1, n + 1):
            cj = upow.coeff(j - 1) if j - 1 < upow.prec else None
            if cj is None:
                break
            out[j - 1] = r.mul(cj, r.from_scalar(Scalar(QQ(1, j))))
            if j < n:
                upow = upow.mul(u).truncate(n)
        return TS(r, 1, out)

    def compose_laurent(self, lp: LaurentPoly, window_end: int) -> "TS":
        """Evaluate a Laurent polynomial at this series (val must be >= 1 or <= -1
        consistently positive); returns a series up to O(sigma^window_end)."""
        r = self.ring
        if lp.is_zero():
            return TS(r, window_end, [])
        sup = lp.support()
        out = None
        inv = None
        pw_cache: dict[int, TS] = {}

        def power(k: int) -> TS:
            nonlocal inv
            if k in pw_cache:
                return pw_cache[k]
            if k == 0:
                ts = TS(r, 0, [r.one()] + [r.zero()] * max(0, window_end - 1))
            elif k > 0:
                half = power(k // 2)
                ts = half.mul(half)
                if k % 2:
                    ts = ts.mul(self)
            else:
                if inv is None:
                    inv = self.inv()
                half = power(-((-k) // 2))
                ts = half.mul(half)
                if k % 2:
                    ts = ts.mul(inv)
            ts = ts.truncate(window_end)
            pw_cache[k] = ts
            return ts

        for e in sup:
            term = power(e).scale_scalar(lp.coeffs[e])
            out = term if out is None else out.add(term)
        return out

    def to_repr(self) -> str:
        r = self.ring
        parts = []
        for i, c in enumerate(self.cs):
            if r.is_zero(c):
                continue
            parts.append(f"({r.to_repr(c)})*s^{self.val + i}")
        parts.append(f"O(s^{self.prec})")
        return " + ".join(parts)


def _mul_trunc(ring, a: list, b: list, n: int) -> list:
    out = [ring.zero()] * n
    for i, u in enumerate(a):
        if i >= n or ring.is_zero(u):
            continue
        for j, v in enumerate(b):
            if i + j >= n:
                break
            out[i + j] = ring.add(out[i + j], ring.mul(u, v))
    return out


def laurent_at_shifted_point(ring, f: LaurentPoly, center, window: int) -> TS:
    """Series of f(c + tau) in tau, where c is a unit of `ring`, to O(tau^window).

    Uses exact Taylor shift for the numerator and a geometric series for the
    t^-a denominator part.
    """
    pole = max(0, -f.bot()) if not f.is_zero() else 0
    num = f.shift(pole)
    # numerator Taylor shift: N(c + tau) = sum N^(k)(c)/k! tau^k
    deg = num.top() if not num.is_zero() else 0
    width = window
    cs = [ring.zero()] * width
    # Horner in (c + tau): iterate coefficients high -> low
    acc = [ring.zero()] * width  # acc(tau) polynomial, low->high
    for e in range(deg, -1, -1):
        # acc = acc * (c + tau) + num[e]
        new = [ring.zero()] * width
        for i, a in enumerate(acc):
            if ring.is_zero(a):
                continue
            new[i] = ring.add(new[i], ring.mul(a, center))
            if i + 1 < width:
                new[i + 1] = ring.add(new[i + 1], a)
        ce = num[e]
        if not ce.is_zero():
            new[0] = ring.add(new[0], ring.from_scalar(ce))
        acc = new
    numer = TS(ring, 0, acc)
    if pole == 0:
        return numer
    # (c + tau)^(-pole) = c^(-pole) * (1 + tau/c)^(-pole) via series inverse
    base = TS(ring, 0, [center] + [ring.one()] + [ring.zero()] * max(0, width - 2))
    base_inv = base.inv().truncate(width)
    out = numer
    for _ in range(pole):
        out = out.mul(base_inv).truncate(width)
    return out
