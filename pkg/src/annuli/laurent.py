"""Sparse Laurent polynomials over Q(sqrt(d)) and the dense polynomial kernels.

A :class:`LaurentPoly` maps integer exponents to nonzero :class:`Scalar`
coefficients; the zero polynomial is the empty map.  Plain polynomials
(nonnegative support) reuse the same type; the gcd / resultant / squarefree
kernels below work on dense coefficient lists internally.
"""

from __future__ import annotations

from typing import Iterable

from ._ratio import int_gcd
from .scalars import Scalar, ZERO, ONE


class EvalAtPole(ZeroDivisionError):
    """Evaluation at t = 0 of a Laurent polynomial with negative exponents."""


class NotDivisible(ArithmeticError):
    """Exact division requested but a remainder was left."""


class ConstantComponent(ValueError):
    """A curve component is constant where a genuine exponent is required."""


class LaurentPoly:
    """Finite map exponent -> nonzero Scalar, immutable in spirit."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, Scalar] | None = None):
        cc = {}
        if coeffs:
            for e, c in coeffs.items():
                c = c if isinstance(c, Scalar) else Scalar.of(c)
                if not c.is_zero():
                    cc[int(e)] = c
        self.coeffs = cc

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def const(c) -> "LaurentPoly":
        return LaurentPoly({0: Scalar.of(c)})

    @staticmethod
    def term(c, e: int) -> "LaurentPoly":
        return LaurentPoly({e: Scalar.of(c)})

    @staticmethod
    def t(e: int = 1) -> "LaurentPoly":
        return LaurentPoly({e: ONE})

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[int, object]]) -> "LaurentPoly":
        d: dict[int, Scalar] = {}
        for e, c in pairs:
            c = Scalar.of(c)
            if e in d:
                raise ValueError(f"duplicate exponent {e}")
            d[e] = c
        return LaurentPoly(d)

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {0}

    def top(self) -> int:
        if not self.coeffs:
            raise ConstantComponent("zero polynomial has no top exponent")
        return max(self.coeffs)

    def bot(self) -> int:
        if not self.coeffs:
            raise ConstantComponent("zero polynomial has no bottom exponent")
        return min(self.coeffs)

    def lc(self) -> Scalar:
        return self.coeffs[self.top()]

    def tc(self) -> Scalar:
        """Trailing (bottom) coefficient."""
        return self.coeffs[self.bot()]

    def __getitem__(self, e: int) -> Scalar:
        return self.coeffs.get(e, ZERO)

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def exponent_gcd(self) -> int:
        g = 0
        for e in self.coeffs:
            g = int_gcd(g, abs(e))
        return int(g)

    def field_tag(self) -> int:
        for c in self.coeffs.values():
            if c.d != 1:
                return c.d
        return 1

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if isinstance(other, (int, Scalar)):
            other = LaurentPoly.const(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = out
        return r

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = {e: -c for e, c in self.coeffs.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, (int, Scalar)):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Scalar)):
            c = Scalar.of(other)
            if c.is_zero():
                return LaurentPoly()
            r = LaurentPoly.__new__(LaurentPoly)
            r.coeffs = {e: v * c for e, v in self.coeffs.items()}
            return r
        out: dict[int, Scalar] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                p = c1 * c2
                s = out.get(e)
                s = p if s is None else s + p
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = out
        return r

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = {e + k: c for e, c in self.coeffs.items()}
        return r

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({e - 1: c * Scalar.of(e) for e, c in self.coeffs.items() if e != 0})

    def compose_inv_t(self) -> "LaurentPoly":
        """The substitution t -> 1/t (exponent negation)."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = {-e: c for e, c in self.coeffs.items()}
        return r

    def rescale_t(self, lam: Scalar) -> "LaurentPoly":
        """The substitution t -> lam * t."""
        return LaurentPoly({e: c * lam**e for e, c in self.coeffs.items()})

    def eval(self, x: Scalar) -> Scalar:
        x = Scalar.of(x)
        if x.is_zero():
            if self.coeffs and self.bot() < 0:
                raise EvalAtPole("evaluation at 0 with negative exponents present")
            return self[0]
        out = ZERO
        xinv = None
        for e, c in self.coeffs.items():
            if e >= 0:
                out = out + c * x**e
            else:
                if xinv is None:
                    xinv = x.inv()
                out = out + c * xinv ** (-e)
        return out

    def eval_in(self, ring, x):
        """Evaluate at an element of an arbitrary coefficient ring."""
        out = ring.zero()
        xinv = None
        for e, c in self.coeffs.items():
            ce = ring.from_scalar(c)
            if e >= 0:
                out = ring.add(out, ring.mul(ce, ring.pow(x, e)))
            else:
                if xinv is None:
                    xinv = ring.inv(x)
                out = ring.add(out, ring.mul(ce, ring.pow(xinv, -e)))
        return out

    # -- exact division ----------------------------------------------------------

    def divexact(self, g: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / g in the Laurent ring; NotDivisible otherwise."""
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        sf, sg = self.bot(), g.bot()
        fl = _dense(self.shift(-sf))
        gl = _dense(g.shift(-sg))
        q, r = _divmod_dense(fl, gl)
        if any(not c.is_zero() for c in r):
            raise NotDivisible("exact Laurent division left a remainder")
        return _from_dense(q).shift(sf - sg)

    # -- misc ---------------------------------------------------------------------

    def monic(self) -> "LaurentPoly":
        if self.is_zero():
            return self
        return self * self.lc().inv()

    def poly_part_and_pole(self) -> tuple["LaurentPoly", int]:
        """Write self = A(t) / t^a with A(0) != 0 (a may be <= 0 for zero-rooted A)."""
        if self.is_zero():
            return self, 0
        b = self.bot()
        return self.shift(-b), -b

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            cs = repr(c)
            if "+" in cs[1:] or "-" in cs[1:] or "*" in cs:
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            else:
                te = "t" if e == 1 else f"t^{e}"
                parts.append(te if cs == "1" else f"-{te}" if cs == "-1" else f"{cs}*{te}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# dense kernels (plain polynomials, coefficient lists low -> high)
# ---------------------------------------------------------------------------


def _dense(f: LaurentPoly) -> list[Scalar]:
    if f.is_zero():
        return []
    if f.bot() < 0:
        raise ValueError("dense form requires nonnegative exponents")
    out = [ZERO] * (f.top() + 1)
    for e, c in f.coeffs.items():
        out[e] = c
    return out


def _from_dense(cs: list[Scalar]) -> LaurentPoly:
    return LaurentPoly({e: c for e, c in enumerate(cs)})


def _trim(cs: list[Scalar]) -> list[Scalar]:
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _divmod_dense(f: list[Scalar], g: list[Scalar]) -> tuple[list[Scalar], list[Scalar]]:
    f = list(f)
    _trim(f)
    g = list(g)
    _trim(g)
    if not g:
        raise ZeroDivisionError
    dg = len(g) - 1
    inv_lc = g[-1].inv()
    q = [ZERO] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and f:
        d = len(f) - 1 - dg
        c = f[-1] * inv_lc
        q[d] = c
        for i, gc in enumerate(g):
            f[d + i] = f[d + i] - c * gc
        _trim(f)
    return q, f


def poly_divmod(f: LaurentPoly, g: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division of plain polynomials over the field."""
    q, r = _divmod_dense(_dense(f), _dense(g))
    return _from_dense(q), _from_dense(r)


def poly_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Monic gcd of plain polynomials; gcd(f, 0) = monic(f)."""
    a, b = _dense(f), _dense(g)
    while b and _trim(list(b)):
        _, r = _divmod_dense(a, b)
        a, b = b, r
    a = _trim(list(a))
    out = _from_dense(a)
    return out.monic()


def squarefree_part(f: LaurentPoly) -> LaurentPoly:
    """f / gcd(f, f') made monic; input a nonzero plain polynomial."""
    if f.is_zero():
        raise ZeroDivisionError("squarefree part of zero")
    g = poly_gcd(f, f.derivative())
    return f.divexact(g).monic()


def resultant(f: LaurentPoly, g: LaurentPoly) -> Scalar:
    """Res_t(f, g) over the scalar field via a subresultant-style PRS.

    Fraction-free in spirit: the remainder sequence is the plain Euclidean one
    over the field (scalars are already exact rationals), with the classical
    degree/leading-coefficient bookkeeping for the resultant value.
    """
    a, b = _trim(_dense(f)), _trim(_dense(g))
    if not a or not b:
        return ZERO
    res = ONE
    sign_flips = 0
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            res = res * b[0] ** da
            break
        _, r = _divmod_dense(a, b)
        r = _trim(r)
        if not r:
            return ZERO
        dr = len(r) - 1
        res = res * b[-1] ** (da - dr)
        sign_flips += da * db
        a, b = b, r
    if sign_flips % 2:
        res = -res
    return res


def content_and_primitive(f: LaurentPoly) -> tuple[Scalar, LaurentPoly]:
    """Rational content (positive leading convention) and the primitive part.

    Over Q(sqrt d) "content" is taken as the rational gcd of all numerators of
    both components over the lcm of denominators; enough to tame growth.
    """
    if f.is_zero():
        return ONE, f
    from ._ratio import QQ

    num_g = 0
    den_l = 1
    for c in f.coeffs.values():
        for q in (c.a, c.b):
            if q != 0:
                num_g = int_gcd(num_g, abs(q.numerator))
                den_l = den_l * q.denominator // int_gcd(den_l, q.denominator)
    cont = Scalar(QQ(int(num_g), int(den_l)))
    return cont, f * cont.inv()


def make_poly(*coeffs) -> LaurentPoly:
    """Convenience: make_poly(c0, c1, ...) = c0 + c1 t + ..."""
    return LaurentPoly({i: Scalar.of(c) for i, c in enumerate(coeffs)})


def laurent_exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact quotient in the Laurent ring; NotDivisible when a remainder stays."""
    return f.divexact(g)


def laurent_arith(f: LaurentPoly, g, op: str):
    """Named-op entry point matching the kernel contract."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "compose_inv_t":
        return f.compose_inv_t()
    if op == "derivative":
        return f.derivative()
    if op == "eval":
        return f.eval(g)
    raise ValueError(f"unknown op {op!r}")
