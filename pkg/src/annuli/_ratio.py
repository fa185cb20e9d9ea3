"""Rational number backend.

All coefficient arithmetic in this package is exact.  The hot kernels are
big-integer bound (gcd chains, resultants), so the package prefers the
compiled gmpy2 core when it is importable and falls back to the stdlib
``fractions`` module otherwise.  Set ``ANNULI_SCALAR_BACKEND=fractions`` to
force the pure-Python path (used by the backend benchmark and the
equivalence tests).
"""

from __future__ import annotations

import os

_forced = os.environ.get("ANNULI_SCALAR_BACKEND", "").strip().lower()

if _forced in ("", "gmpy2"):
    try:
        from gmpy2 import mpq as QQ, mpz as ZZ, gcd as int_gcd  # type: ignore

        BACKEND = "gmpy2"
    except ImportError:
        if _forced == "gmpy2":
            raise
        _forced = "fractions"

if _forced == "fractions":
    from fractions import Fraction as QQ  # type: ignore
    from math import gcd as int_gcd  # type: ignore

    ZZ = int  # type: ignore
    BACKEND = "fractions"


def rat(num, den=1):
    """Exact rational from ints or a 'n'/'n/d' string."""
    if isinstance(num, str):
        num = num.strip()
        if "/" in num:
            a, b = num.split("/")
            return QQ(int(a), int(b))
        return QQ(int(num))
    return QQ(num, den)


def rat_str(q) -> str:
    """Canonical string form: 'n' or 'n/d' with d > 1."""
    n, d = q.numerator, q.denominator
    return str(n) if d == 1 else f"{n}/{d}"


def is_squarefree(d: int) -> bool:
    """Trial-division squarefreeness check, adequate for small field tags."""
    if d == 0:
        return False
    n = abs(d)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        while n % f == 0:
            n //= f
        f += 1
    return True
