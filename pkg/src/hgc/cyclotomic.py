"""Exact arithmetic in Z[zeta_m] and quotients by positive integers.

A CycInt of order m holds a length-m integer coefficient vector for
1, zeta, ..., zeta^{m-1}; addition and multiplication work modulo x^m - 1
(plain cyclic convolution), while equality is decided modulo the m-th
cyclotomic polynomial Phi_m: a == b iff Phi_m divides a - b over Z.  Mixed
orders are lifted to the lcm first, which is what lets Jacobi sums
(order q-1) and Gauss sums (order p(q-1)) interoperate.

Phi_m is computed once per m by exact division of x^m - 1 by the Phi_d of
proper divisors d and memoized behind a lock, so the cache behaves as a
thread-safe idempotent memo.

CycRat adds an integer denominator; every denominator arising in scope is a
product of powers of q and q - 1, so cyclotomic denominators are never
needed.
"""

from __future__ import annotations

import cmath
import threading
from math import gcd

import numpy as np

from .padic import PadicInt, teichmuller_residue

_INT64_SAFE = 1 << 62

_phi_cache: dict = {1: (-1, 1)}
_phi_lock = threading.RLock()


def _divisors(m):
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


def _poly_mul_z(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact_z(a, b):
    # exact division of integer polynomials, b monic
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + db]
        out[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    assert all(v == 0 for v in a), "non-exact polynomial division"
    return tuple(out)


def cyclotomic_poly(m: int) -> tuple:
    """Coefficients of Phi_m, constant term first, computed once and cached."""
    got = _phi_cache.get(m)
    if got is not None:
        return got
    with _phi_lock:
        got = _phi_cache.get(m)
        if got is not None:
            return got
        f = [-1] + [0] * (m - 1) + [1]  # x^m - 1
        for d in _divisors(m)[:-1]:
            f = list(_poly_divexact_z(f, cyclotomic_poly(d)))
        out = tuple(f)
        _phi_cache[m] = out
        return out


def _phi_reduce(coeffs, m):
    """Remainder of the coefficient polynomial modulo Phi_m, trailing zeros stripped."""
    phi = cyclotomic_poly(m)
    d = len(phi) - 1
    a = list(coeffs)
    support = [j for j, c in enumerate(phi[:-1]) if c]
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in support:
                a[i - d + j] -= c * phi[j]
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _convolve_fold(a, b, m):
    """Exact cyclic convolution mod x^m - 1 of two length-<=m integer vectors."""
    la = sum(abs(v) for v in a)
    lb = sum(abs(v) for v in b)
    if la == 0 or lb == 0:
        return [0] * m
    if m >= 16 and la * lb < _INT64_SAFE:
        full = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = np.zeros(m, dtype=np.int64)
        out[: full.size if full.size < m else m] += full[:m]
        if full.size > m:
            out[: full.size - m] += full[m:]
        return [int(v) for v in out]
    out = [0] * m
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    k = i + j
                    if k >= m:
                        k -= m
                    out[k] += ai * bj
    return out


class CycInt:
    """An element of Z[zeta_m]; immutable."""

    __slots__ = ("m", "c", "_canon")

    def __init__(self, m: int, coeffs=()):
        if m < 1:
            raise ValueError("root-of-unity order must be >= 1")
        c = [0] * m
        for i, v in enumerate(coeffs):
            if v:
                c[i % m] += int(v)
        self.m = m
        self.c = tuple(c)
        self._canon = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_int(v: int, m: int = 1) -> "CycInt":
        return CycInt(m, (v,))

    @staticmethod
    def zeta(m: int, t: int = 1) -> "CycInt":
        z = [0] * m
        z[t % m] = 1
        return CycInt(m, z)

    @staticmethod
    def monomial(m: int, t: int, coeff: int = 1) -> "CycInt":
        z = [0] * m
        z[t % m] = coeff
        return CycInt(m, z)

    # -- representation -------------------------------------------------------

    def canonical(self) -> tuple:
        """Phi_m-reduced coefficient tuple (degree < phi(m)); memoized."""
        if self._canon is None:
            self._canon = _phi_reduce(self.c, self.m)
        return self._canon

    def lift(self, bigm: int) -> "CycInt":
        """Rewrite in Z[zeta_bigm] via zeta_m = zeta_bigm^(bigm/m)."""
        if bigm == self.m:
            return self
        if bigm % self.m:
            raise ValueError(f"{self.m} does not divide {bigm}")
        step = bigm // self.m
        c = [0] * bigm
        for t, v in enumerate(self.c):
            if v:
                c[t * step] = v
        return CycInt(bigm, c)

    def _pair(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(other, self.m)
        if not isinstance(other, CycInt):
            return None, None, None
        m = self.m * other.m // gcd(self.m, other.m)
        return self.lift(m), other.lift(m), m

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        a, b, m = self._pair(other)
        if a is None:
            return NotImplemented
        return CycInt(m, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __sub__(self, other):
        a, b, m = self._pair(other)
        if a is None:
            return NotImplemented
        return CycInt(m, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return CycInt(self.m, tuple(-x for x in self.c))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.m, tuple(x * other for x in self.c))
        a, b, m = self._pair(other)
        if a is None:
            return NotImplemented
        return CycInt(m, _convolve_fold(a.c, b.c, m))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in Z[zeta]")
        out = CycInt.from_int(1, self.m)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self, t: int = -1) -> "CycInt":
        """Galois conjugation sigma_t: zeta -> zeta^t, for gcd(t, m) = 1."""
        t %= self.m
        if gcd(t, self.m) != 1:
            raise ValueError(f"t = {t} is not coprime to m = {self.m}")
        c = [0] * self.m
        for s, v in enumerate(self.c):
            if v:
                c[(t * s) % self.m] += v
        return CycInt(self.m, c)

    # -- predicates, conversions ----------------------------------------------

    def is_zero(self) -> bool:
        return self.canonical() == ()

    def as_int(self):
        """The rational integer this value equals, or None."""
        can = self.canonical()
        if can == ():
            return 0
        if len(can) == 1:
            return can[0]
        return None

    def content(self) -> int:
        g = 0
        for v in self.canonical():
            g = gcd(g, v)
        return g

    def __eq__(self, other):
        if isinstance(other, int):
            return self.as_int() == other
        if not isinstance(other, CycInt):
            return NotImplemented
        a, b, _ = self._pair(other)
        return (a - b).is_zero()

    __hash__ = None  # equality crosses orders; hashing is deliberately unsupported

    def to_complex(self) -> complex:
        """Float embedding zeta_m -> exp(2 pi i / m); diagnostics only."""
        return sum(v * cmath.exp(2j * cmath.pi * t / self.m) for t, v in enumerate(self.c) if v)

    def embed_padic(self, p: int, r: int, ctx) -> PadicInt:
        return cyc_embed_padic(self, p, r, ctx)

    def serialize(self) -> dict:
        return {"m": self.m, "coeffs": list(self.canonical())}

    def __repr__(self):
        return f"CycInt(m={self.m}, {list(self.canonical())})"


class CycRat:
    """A CycInt divided by a positive integer, kept normalized."""

    __slots__ = ("num", "den")

    def __init__(self, num: CycInt, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        can = num.canonical()
        g = den
        for v in can:
            g = gcd(g, v)
        if g > 1:
            can = tuple(v // g for v in can)
            den //= g
        if not can:
            den = 1
        self.num = CycInt(num.m, can)
        self.den = den

    @staticmethod
    def zero(m: int = 1) -> "CycRat":
        return CycRat(CycInt(m))

    def _coerce(self, other):
        if isinstance(other, CycRat):
            return other
        if isinstance(other, CycInt):
            return CycRat(other)
        if isinstance(other, int):
            return CycRat(CycInt.from_int(other, self.num.m))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        g = gcd(self.den, other.den)
        da, db = other.den // g, self.den // g
        return CycRat(self.num * da + other.num * db, self.den * da)

    __radd__ = __add__

    def __sub__(self, other):
        return self.__add__(-other if isinstance(other, (CycRat, CycInt)) else -int(other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return CycRat(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            return CycRat(self.num, self.den * other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None

    def is_integral(self) -> bool:
        return self.den == 1

    def as_int(self):
        if self.den != 1:
            return None
        return self.num.as_int()

    def to_complex(self) -> complex:
        return self.num.to_complex() / self.den

    def serialize(self) -> dict:
        d = self.num.serialize()
        d["den"] = self.den
        return d

    def __repr__(self):
        return f"CycRat({list(self.num.canonical())} / {self.den}, m={self.num.m})"


def cyc_conj(a: CycInt, t: int) -> CycInt:
    return a.conj(t)


def cycrat_normalize(x: CycRat) -> CycRat:
    """Already-normalized values pass through; exposed for API symmetry."""
    return CycRat(x.num, x.den)


def cyc_embed_padic(a: CycInt, p: int, r: int, ctx) -> PadicInt:
    """Embed Z[zeta_m] into Z/p^r via zeta_m -> Teichmuller(g^((p-1)/m)).

    Requires m | p - 1 and a prime-field context (e = 1) on the same p; the
    induced embedding sends the exponent-k character value chi_k(x) to
    phi(x)^k, matching eta_n(x) = x^(j(p-1)/n) mod p.
    """
    if ctx.e != 1 or ctx.p != p:
        raise ValueError("embedding requires a prime-field context over the same p")
    if (p - 1) % a.m:
        raise ValueError(f"m = {a.m} does not divide p - 1 = {p - 1}")
    mod = p ** r
    w = teichmuller_residue(pow(ctx.generator, (p - 1) // a.m, p), p, r)
    total = 0
    for t, v in enumerate(a.c):
        if v:
            total = (total + v * pow(w, t, mod)) % mod
    return PadicInt(p, r, total)


def cycrat_embed_padic(x: CycRat, p: int, r: int, ctx) -> PadicInt:
    """Embed a CycRat whose denominator is a p-unit."""
    if x.den % p == 0:
        raise ValueError(f"denominator {x.den} is not a p-unit")
    num = cyc_embed_padic(x.num, p, r, ctx)
    return num * PadicInt(p, r, pow(x.den, -1, p ** r))
