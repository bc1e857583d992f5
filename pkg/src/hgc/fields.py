"""Finite fields F_{p^e} backed by discrete-log tables.

Elements are encoded as integers in [0, q): the base-p digits of the
encoding, least significant digit first, are the coefficients of the residue
polynomial in F_p[x]/(modulus).  For e = 1 the encoding is the residue
itself.  All multiplicative structure goes through one exp/dlog table pair
against a fixed generator, which keeps character evaluation and point-count
loops flat array lookups.

A FieldCtx is immutable after construction and safe to share across threads
and worker processes; construction itself is single-threaded.
"""

from __future__ import annotations

import itertools

import numpy as np

from .padic import PadicInt, teichmuller_residue

DEFAULT_MAX_Q = 1 << 20


class FieldError(ValueError):
    pass


class ResourceCapError(RuntimeError):
    """A configured size cap would be exceeded."""


def is_prime(n: int) -> bool:
    """Deterministic trial division; adequate at desk scale (n < 10^12)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int):
    """Prime factorization by trial division as a list of (prime, multiplicity)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            m = 0
            while n % d == 0:
                n //= d
                m += 1
            out.append((d, m))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


# ---------------------------------------------------------------------------
# polynomials over F_p: coefficient tuples, constant term first
# ---------------------------------------------------------------------------


def _poly_trim(a):
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _poly_mulmod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_rem(tuple(out), f, p)


def _poly_rem(a, f, p):
    # f monic of degree d
    a = list(a)
    d = len(f) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i] % p
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * f[j]) % p
    return tuple(_poly_trim(tuple(a[:d])))


def _poly_powmod(base, n, f, p):
    result = (1,)
    base = _poly_rem(base, f, p)
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        n >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = tuple(_poly_trim(a)), tuple(_poly_trim(b))
    while b:
        inv = pow(b[-1], -1, p)
        monic = tuple(c * inv % p for c in b)
        a, b = b, _poly_rem(a, monic, p)
    return a


def poly_is_irreducible(f, p) -> bool:
    """Distinct-degree irreducibility test for a monic f over F_p."""
    e = len(f) - 1
    if e < 1 or f[-1] != 1:
        return False
    if e == 1:
        return True
    x = (0, 1)
    # x^(p^e) must equal x mod f
    t = x
    for _ in range(e):
        t = _poly_powmod(t, p, f, p)
    minus_x = _poly_trim(tuple((c - xi) % p for c, xi in itertools.zip_longest(t, x, fillvalue=0)))
    if tuple(minus_x) != ():
        return False
    # and x^(p^(e/l)) - x must be coprime to f for each prime l | e
    for (ell, _) in factorize(e):
        t = x
        for _ in range(e // ell):
            t = _poly_powmod(t, p, f, p)
        diff = tuple((c - xi) % p for c, xi in itertools.zip_longest(t, x, fillvalue=0))
        g = _poly_gcd(f, diff, p)
        if len(g) - 1 > 0:
            return False
    return True


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------


class FieldCtx:
    """A realized finite field F_{p^e}.  Build with field_create()."""

    __slots__ = (
        "p", "e", "q", "modulus", "generator", "qm1_factors",
        "exp_table", "dlog_table", "trace_table",
        "np_exp", "np_dlog",
        "_gauss_cache", "_profile_cache", "__weakref__",
    )

    def __init__(self, p, e, modulus, generator, exp_table, dlog_table):
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus
        self.generator = generator
        self.qm1_factors = tuple(factorize(self.q - 1))
        self.exp_table = exp_table
        self.dlog_table = dlog_table
        self.np_exp = np.asarray(exp_table, dtype=np.int64)
        np_dlog = np.asarray(dlog_table, dtype=np.int64)
        np_dlog[0] = 0  # masked by callers; keeps fancy indexing in range
        self.np_dlog = np_dlog
        self.trace_table = [self._trace_slow(x) for x in range(self.q)]
        self._gauss_cache = {}
        self._profile_cache = {}

    # -- scalar arithmetic on encodings ------------------------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        s, mul = 0, 1
        while a or b:
            s += ((a + b) % p) * mul
            a //= p
            b //= p
            mul *= p
        return s

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        s, mul = 0, 1
        while a:
            s += ((p - a % p) % p) * mul
            a //= p
            mul *= p
        return s

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def one_minus(self, a):
        return self.add(1, self.neg(a))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.dlog_table[a] + self.dlog_table[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp_table[(-self.dlog_table[a]) % (self.q - 1)]

    def pow(self, a, n):
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        return self.exp_table[(self.dlog_table[a] * n) % (self.q - 1)]

    def dlog(self, a):
        """Exponent t in [0, q-2] with generator^t = a; rejects a = 0."""
        if a == 0:
            raise ZeroDivisionError("character argument zero: dlog(0) undefined")
        return self.dlog_table[a]

    def embed_int(self, k):
        """Image of the rational integer k in the prime subfield."""
        return k % self.p

    def embed_rational(self, num, den=1):
        if den % self.p == 0:
            raise ZeroDivisionError(f"p={self.p} divides denominator {den}")
        return self.mul(self.embed_int(num), self.inv(self.embed_int(den)))

    # -- Frobenius, trace, norm --------------------------------------------

    def frobenius(self, a):
        return self.pow(a, self.p)

    def _trace_slow(self, a):
        t, y = 0, a
        for _ in range(self.e):
            t = self.add(t, y)
            y = 0 if y == 0 else self.exp_table[(self.dlog_table[y] * self.p) % (self.q - 1)]
        assert t < self.p
        return t

    def trace(self, a):
        """Trace to the prime subfield, as an integer in [0, p)."""
        return self.trace_table[a]

    def norm(self, a):
        """Norm to the prime subfield, as an integer in [0, p)."""
        if a == 0:
            return 0
        n = self.exp_table[(self.dlog_table[a] * ((self.q - 1) // (self.p - 1))) % (self.q - 1)]
        assert n < self.p
        return n

    # -- vectorized arithmetic on numpy arrays of encodings ----------------

    def vmul(self, a, b):
        shape = np.broadcast_shapes(np.shape(a), np.shape(b))
        a = np.broadcast_to(np.asarray(a, dtype=np.int64), shape)
        b = np.broadcast_to(np.asarray(b, dtype=np.int64), shape)
        out = np.zeros(shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = self.np_exp[(self.np_dlog[a[nz]] + self.np_dlog[b[nz]]) % (self.q - 1)]
        return out

    def vpow(self, a, n):
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        nz = a != 0
        out[nz] = self.np_exp[(self.np_dlog[a[nz]] * n) % (self.q - 1)]
        return out

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        out = np.zeros_like(a)
        mul = 1
        a = a.copy()
        for _ in range(self.e):
            out += ((p - a % p) % p) * mul
            a //= p
            mul *= p
        return out

    def vadd(self, a, b):
        if self.e == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        p = self.p
        shape = np.broadcast_shapes(np.shape(a), np.shape(b))
        a = np.broadcast_to(np.asarray(a, dtype=np.int64), shape).copy()
        b = np.broadcast_to(np.asarray(b, dtype=np.int64), shape).copy()
        out = np.zeros(shape, dtype=np.int64)
        mul = 1
        for _ in range(self.e):
            out += ((a % p + b % p) % p) * mul
            a //= p
            b //= p
            mul *= p
        return out

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vone_minus(self, a):
        return self.vadd(self.vneg(a), np.int64(1))

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"FieldCtx(q={self.q}={self.p}^{self.e}, g={self.generator})"


def _find_modulus(p, e):
    # lexicographically smallest (constant term first) monic irreducible
    for tail in itertools.product(range(p), repeat=e):
        f = tail + (1,)
        if poly_is_irreducible(f, p):
            return f
    raise FieldError(f"no irreducible polynomial found for p={p}, e={e}")  # unreachable


def field_create(p: int, e: int = 1, modulus=None, max_q: int = DEFAULT_MAX_Q) -> FieldCtx:
    """Construct F_{p^e} with the smallest-encoding generator.

    If `modulus` is omitted and e > 1, the lexicographically smallest monic
    irreducible polynomial (coefficients listed constant term first) is
    chosen by deterministic scan, so downstream character values are
    reproducible.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if p == 2:
        raise FieldError("p = 2 is rejected: all identities in scope need odd characteristic")
    if e < 1:
        raise FieldError("extension degree must be >= 1")
    q = p ** e
    if q > max_q:
        raise ResourceCapError(f"q = {q} exceeds the table cap {max_q}")
    if modulus is None:
        modulus = (0, 1) if e == 1 else _find_modulus(p, e)
    else:
        modulus = tuple(int(c) % p for c in modulus[:-1]) + (int(modulus[-1]),)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {e}")
        if e > 1 and not poly_is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")

    def enc_to_poly(a):
        out = []
        while a:
            out.append(a % p)
            a //= p
        return tuple(out)

    def poly_to_enc(f):
        a = 0
        for c in reversed(f):
            a = a * p + c
        return a

    def fmul(a, b):
        return poly_to_enc(_poly_mulmod(enc_to_poly(a), enc_to_poly(b), modulus, p))

    def fpow(a, n):
        r, b = 1, a
        while n:
            if n & 1:
                r = fmul(r, b)
            b = fmul(b, b)
            n >>= 1
        return r

    qm1 = q - 1
    prime_divs = [ell for ell, _ in factorize(qm1)]
    generator = None
    for g in range(2, q):
        if all(fpow(g, qm1 // ell) != 1 for ell in prime_divs):
            generator = g
            break
    if generator is None:
        raise FieldError("no generator found")  # unreachable for a true field

    exp_table = [0] * qm1
    dlog_table = [0] * q
    x = 1
    for t in range(qm1):
        exp_table[t] = x
        dlog_table[x] = t
        x = fmul(x, generator)
    if x != 1:
        raise FieldError("generator order check failed")
    dlog_table[0] = -1

    return FieldCtx(p, e, modulus, generator, exp_table, dlog_table)


class FqElem:
    """Thin operator wrapper over a field encoding, for interactive use."""

    __slots__ = ("ctx", "enc")

    def __init__(self, ctx: FieldCtx, enc: int):
        if not 0 <= enc < ctx.q:
            raise FieldError(f"encoding {enc} out of range [0, {ctx.q})")
        self.ctx = ctx
        self.enc = enc

    def _other(self, other):
        if isinstance(other, FqElem):
            if other.ctx is not self.ctx:
                raise FieldError("mixed field contexts")
            return other.enc
        if isinstance(other, int):
            return self.ctx.embed_int(other)
        return NotImplemented

    def __add__(self, other):
        return FqElem(self.ctx, self.ctx.add(self.enc, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElem(self.ctx, self.ctx.sub(self.enc, self._other(other)))

    def __rsub__(self, other):
        return FqElem(self.ctx, self.ctx.sub(self._other(other), self.enc))

    def __mul__(self, other):
        return FqElem(self.ctx, self.ctx.mul(self.enc, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FqElem(self.ctx, self.ctx.mul(self.enc, self.ctx.inv(self._other(other))))

    def __pow__(self, n):
        return FqElem(self.ctx, self.ctx.pow(self.enc, n))

    def __neg__(self):
        return FqElem(self.ctx, self.ctx.neg(self.enc))

    def __eq__(self, other):
        return isinstance(other, FqElem) and other.ctx is self.ctx and other.enc == self.enc

    def __hash__(self):
        return hash((id(self.ctx), self.enc))

    def __repr__(self):
        return f"FqElem({self.enc} in F_{self.ctx.q})"


def teichmuller(x: int, p: int, r: int) -> PadicInt:
    """Teichmuller lift of x mod p into Z/p^r, with the convention 0 -> 0."""
    return PadicInt(p, r, teichmuller_residue(x, p, r))
