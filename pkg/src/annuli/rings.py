"""Coefficient rings with dynamic evaluation (D5-style splitting).

Conjugate algebraic points are handled without factorization: computations run
in ``base[s]/(m)`` for a squarefree modulus ``m``; whenever a zero divisor must
be decided or inverted, a :class:`SplitEvent` carrying a nontrivial
factorization of the modulus is raised and the caller re-runs the computation
on each branch (:func:`explore_branches`).

Rings form towers: a :class:`Quotient` may sit over another Quotient (used to
adjoin roots of units for standard Puiseux forms).  Splits at any level
propagate out with the key of the level that must be refined.
"""

from __future__ import annotations

from typing import Callable

from .laurent import LaurentPoly
from .scalars import DivisionByZero, Scalar, ONE, ZERO


class SplitEvent(Exception):
    """The modulus at tower level `key` factors as f1 * f2 (both nontrivial)."""

    def __init__(self, key: str, f1: tuple, f2: tuple):
        super().__init__(f"modulus split at level {key!r}")
        self.key = key
        self.f1 = f1
        self.f2 = f2


class ScalarField:
    """The base field Q(sqrt d); elements are plain Scalars."""

    level_key = None

    def zero(self):
        return ZERO

    def one(self):
        return ONE

    def from_scalar(self, c: Scalar):
        return c

    def from_base(self, x):
        return x

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def pow(self, x, k: int):
        out = ONE
        b = x
        while k:
            if k & 1:
                out = out * b
            b = b * b
            k >>= 1
        return out

    def inv(self, x):
        return x.inv()

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def decide_zero(self, x) -> bool:
        return x.is_zero()

    def eq(self, x, y) -> bool:
        return self.is_zero(self.sub(x, y))

    def as_scalar(self, x) -> Scalar | None:
        return x

    def to_repr(self, x) -> str:
        return repr(x)


SCALARS = ScalarField()


def _trim(ring, cs: list) -> list:
    while cs and ring.is_zero(cs[-1]):
        cs.pop()
    return cs


class Quotient:
    """base[s] / (modulus), modulus monic squarefree, elements = dense tuples."""

    def __init__(self, base, modulus: list, key: str):
        modulus = _trim(base, list(modulus))
        if len(modulus) < 2:
            raise ValueError("modulus must have positive degree")
        lc = modulus[-1]
        if not base.is_zero(base.sub(lc, base.one())):
            inv = base.inv(lc)
            modulus = [base.mul(c, inv) for c in modulus]
        self.base = base
        self.mod = modulus
        self.deg = len(modulus) - 1
        self.key = key

    # -- representation ---------------------------------------------------------

    def _wrap(self, cs: list) -> tuple:
        cs = list(cs)
        if len(cs) > self.deg:
            cs = self._reduce(cs)
        while len(cs) < self.deg:
            cs.append(self.base.zero())
        return tuple(cs)

    def _reduce(self, cs: list) -> list:
        b = self.base
        cs = list(cs)
        while len(cs) > self.deg:
            c = cs.pop()
            if b.is_zero(c):
                continue
            d = len(cs) - self.deg
            for i in range(self.deg):
                cs[d + i] = b.sub(cs[d + i], b.mul(c, self.mod[i]))
        return cs

    def zero(self):
        return self._wrap([])

    def one(self):
        return self._wrap([self.base.one()])

    def gen(self):
        """The adjoined root s."""
        return self._wrap([self.base.zero(), self.base.one()])

    def from_scalar(self, c: Scalar):
        return self._wrap([self.base.from_scalar(c)])

    def from_base(self, x):
        return self._wrap([x])

    def from_laurent(self, f: LaurentPoly):
        """Image of a plain polynomial under s -> the adjoined root."""
        cs = [self.base.zero()] * (f.top() + 1 if not f.is_zero() else 0)
        for e, c in f.coeffs.items():
            if e < 0:
                raise ValueError("negative exponent in modulus image")
            cs[e] = self.base.from_scalar(c)
        return self._wrap(self._reduce(cs))

    # -- arithmetic ----------------------------------------------------------------

    def add(self, x, y):
        b = self.base
        return tuple(b.add(u, v) for u, v in zip(x, y))

    def neg(self, x):
        b = self.base
        return tuple(b.neg(u) for u in x)

    def sub(self, x, y):
        b = self.base
        return tuple(b.sub(u, v) for u, v in zip(x, y))

    def mul(self, x, y):
        b = self.base
        out = [b.zero()] * (2 * self.deg - 1)
        for i, u in enumerate(x):
            if b.is_zero(u):
                continue
            for j, v in enumerate(y):
                if b.is_zero(v):
                    continue
                out[i + j] = b.add(out[i + j], b.mul(u, v))
        return self._wrap(self._reduce(out))

    def pow(self, x, k: int):
        out = self.one()
        bse = x
        while k:
            if k & 1:
                out = self.mul(out, bse)
            bse = self.mul(bse, bse)
            k >>= 1
        return out

    def is_zero(self, x) -> bool:
        """Structural zero test (exact for reduced elements; never splits)."""
        b = self.base
        return all(b.is_zero(c) for c in x)

    def decide_zero(self, x) -> bool:
        """Branchwise zero decision; raises SplitEvent on proper zero divisors."""
        b = self.base
        if all(b.is_zero(c) for c in x):
            return True
        # nonzero representative: certify it is a unit on every branch, else split
        g = self._gcd_with_mod(x)
        if len(g) == 1:
            return False
        cof = self._exact_div_mod(g)
        raise SplitEvent(self.key, tuple(g), tuple(cof))

    def eq(self, x, y) -> bool:
        return self.is_zero(self.sub(x, y))

    def as_scalar(self, x) -> Scalar | None:
        """The scalar this element equals, when it is a baseline constant."""
        b = self.base
        if any(not b.is_zero(c) for c in x[1:]):
            return None
        return b.as_scalar(x[0])

    def inv(self, x):
        b = self.base
        if all(b.is_zero(c) for c in x):
            raise DivisionByZero("inverse of zero in quotient ring")
        g, s = self._half_xgcd(list(self.mod), list(x))
        if len(g) == 1:
            ginv = b.inv(g[0])
            return self._wrap([b.mul(c, ginv) for c in s])
        if len(g) == len(self.mod):
            raise DivisionByZero("inverse of zero in quotient ring")
        cof = self._exact_div_mod(g)
        raise SplitEvent(self.key, tuple(g), tuple(cof))

    # -- polynomial helpers over the base ------------------------------------------

    def _gcd_with_mod(self, x) -> list:
        g, _ = self._half_xgcd(list(self.mod), list(x))
        return g

    def _half_xgcd(self, a: list, bb: list) -> tuple[list, list]:
        """Monic gcd of a, bb over base plus Bezout coefficient for bb.

        Returns (g, s) with g = gcd and s such that s*bb = g  (mod a).
        """
        b = self.base
        r0, r1 = _trim(b, list(a)), _trim(b, list(bb))
        s0, s1 = [], [b.one()]
        while r1:
            q, r = _rdivmod(b, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _rsub(b, s0, _rmul(b, q, s1))
        if r0:
            lc_inv = b.inv(r0[-1])
            r0 = [b.mul(c, lc_inv) for c in r0]
            s0 = [b.mul(c, lc_inv) for c in s0]
        return r0, s0

    def _exact_div_mod(self, g: list) -> list:
        q, _ = _rdivmod(self.base, list(self.mod), list(g))
        return q

    def to_repr(self, x) -> str:
        b = self.base
        parts = []
        for i, c in enumerate(x):
            if b.is_zero(c):
                continue
            cs = b.to_repr(c)
            parts.append(cs if i == 0 else f"({cs})*s^{i}" if i > 1 else f"({cs})*s")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over an arbitrary ring (lists low -> high)
# ---------------------------------------------------------------------------


def _rmul(ring, f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [ring.zero()] * (len(f) + len(g) - 1)
    for i, u in enumerate(f):
        for j, v in enumerate(g):
            out[i + j] = ring.add(out[i + j], ring.mul(u, v))
    return _trim(ring, out)


def _rsub(ring, f: list, g: list) -> list:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        u = f[i] if i < len(f) else ring.zero()
        v = g[i] if i < len(g) else ring.zero()
        out.append(ring.sub(u, v))
    return _trim(ring, out)


def _rdivmod(ring, f: list, g: list) -> tuple[list, list]:
    """Division with invertible-leading-coefficient divisor (may raise SplitEvent)."""
    f = _trim(ring, list(f))
    g = _trim(ring, list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lc = ring.inv(g[-1])
    dg = len(g) - 1
    q = [ring.zero()] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and f:
        d = len(f) - 1 - dg
        c = ring.mul(f[-1], inv_lc)
        q[d] = c
        for i in range(len(g)):
            f[d + i] = ring.sub(f[d + i], ring.mul(c, g[i]))
        f = _trim(ring, f)
    return q, f


def quotient_gcd(ring, f: list, g: list) -> list:
    """Monic Euclidean gcd of polynomials over `ring`; splits on zero divisors.

    gcd(f, 0) = monic f.  The SplitEvent is part of the contract: callers use
    :func:`explore_branches` to resume on each factor of the modulus.
    """
    a, b = _trim(ring, list(f)), _trim(ring, list(g))
    while b:
        _, r = _rdivmod(ring, a, b)
        a, b = b, r
    if a:
        inv = ring.inv(a[-1])
        a = [ring.mul(c, inv) for c in a]
    return a


# ---------------------------------------------------------------------------
# branch exploration driver
# ---------------------------------------------------------------------------


class BranchState:
    """Per-branch modulus overrides, keyed by tower level.

    Overrides are stored as raw dense tuples; a refined tower reinterprets them
    by reduction, which is exactly the canonical projection between branches.
    """

    def __init__(self, overrides: dict | None = None):
        self.overrides = dict(overrides or {})

    def modulus(self, key: str, default: list) -> list:
        return list(self.overrides.get(key, default))

    def with_override(self, key: str, mod) -> "BranchState":
        d = dict(self.overrides)
        d[key] = list(mod)
        return BranchState(d)

    def quotient(self, base, key: str, default_modulus: list) -> Quotient:
        return Quotient(base, self.modulus(key, default_modulus), key)


def explore_branches(fn: Callable[[BranchState], object], seed: BranchState | None = None) -> list:
    """Run fn on every branch of the dynamic-evaluation tree; returns results.

    fn receives a BranchState and must build its quotient rings through it.
    On SplitEvent the state forks and fn re-runs from scratch on both factors;
    results are returned in a deterministic (depth-first, f1-before-f2) order.
    """
    out = []
    stack = [seed or BranchState()]
    guard = 0
    while stack:
        st = stack.pop()
        guard += 1
        if guard > 10_000:
            raise RuntimeError("dynamic evaluation split explosion")
        try:
            out.append(fn(st))
        except SplitEvent as ev:
            stack.append(st.with_override(ev.key, ev.f2))
            stack.append(st.with_override(ev.key, ev.f1))
    return out
