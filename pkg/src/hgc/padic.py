"""Fixed-precision p-adic integers, Morita's p-adic Gamma, and truncated series.

Values live in Z/p^r Z with the pair (p, r) carried explicitly.  Rational
inputs must have p-unit denominators unless a p-power in the numerator
cancels; `rational_mod` handles that bookkeeping exactly, nothing is ever
rounded.

Gamma_p is evaluated through the defining product over an integer
representative: Gamma_p(n) = (-1)^n * prod(j for 0 < j < n, p does not
divide j), reduced mod p^r.  By continuity (congruent arguments give
congruent values to the same precision) this is the value of Morita's Gamma
at any x in Z_p with x = n mod p^r.  The forward pass is O(p^r); partial
products are cached per (p, r) so repeated evaluations share one sweep.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

_INT64_SAFE = 1 << 62


class NegativeValuationError(ValueError):
    """A p appeared in a denominator where a p-adic integer was required."""


class NonIntegralSeriesError(ValueError):
    """A truncated-series term is not p-adically integral."""

    def __init__(self, k):
        super().__init__(f"series not p-adically integral at term {k}")
        self.k = k


class NonOrdinaryError(ArithmeticError):
    """Dwork ratio denominator is not a p-adic unit (unit root undefined)."""


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_mod(x: Fraction, p: int, r: int) -> int:
    """Reduce a p-integral rational to its residue in [0, p^r).

    Fractions arrive reduced, so p divides the denominator exactly when the
    value has negative valuation.
    """
    x = Fraction(x)
    if x == 0:
        return 0
    if x.denominator % p == 0:
        raise NegativeValuationError(f"negative valuation: {x} at p={p}")
    m = p ** r
    return x.numerator * pow(x.denominator, -1, m) % m


@dataclass(frozen=True)
class PadicInt:
    """An element of Z/p^r Z with explicit prime and precision."""

    p: int
    r: int
    residue: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("precision must be >= 1")
        object.__setattr__(self, "residue", self.residue % self.p ** self.r)

    @property
    def modulus(self) -> int:
        return self.p ** self.r

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def reduce(self, r: int) -> "PadicInt":
        """Reduce to a lower (or equal) precision."""
        if r > self.r:
            raise ValueError("cannot raise precision")
        return PadicInt(self.p, r, self.residue % self.p ** r)

    def _coerce(self, other):
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, int):
            return PadicInt(self.p, self.r, other)
        if isinstance(other, Fraction):
            return PadicInt(self.p, self.r, rational_mod(other, self.p, self.r))
        return NotImplemented

    def _binop(self, other, op):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        r = min(self.r, other.r)
        m = self.p ** r
        return PadicInt(self.p, r, op(self.residue, other.residue) % m)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicInt(self.p, self.r, -self.residue)

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise NegativeValuationError(f"{self} is not a unit")
        return PadicInt(self.p, self.r, pow(self.residue, -1, self.modulus))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.reduce(min(self.r, other.r)).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return PadicInt(self.p, self.r, pow(self.residue, n, self.modulus))

    def __repr__(self):
        return f"PadicInt({self.residue} mod {self.p}^{self.r})"


def padic_from_rational(num: int, den: int, p: int, r: int) -> PadicInt:
    """num/den in Z/p^r; the reduced denominator must be a p-unit."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    g = gcd(num, den)
    if g:
        num //= g
        den //= g
    if den % p == 0 and num != 0:
        raise NegativeValuationError(f"p={p} divides denominator {den}")
    if num == 0:
        return PadicInt(p, r, 0)
    m = p ** r
    return PadicInt(p, r, num * pow(den, -1, m) % m)


def teichmuller_residue(x: int, p: int, r: int) -> int:
    """Residue mod p^r of the Teichmuller lift of x; 0 for x = 0 mod p.

    Computed by iterating y -> y^p to its fixed point, which is reached in
    at most r steps.
    """
    if r < 1:
        raise ValueError("precision must be >= 1")
    m = p ** r
    y = x % m
    if y % p == 0:
        return 0
    for _ in range(r):
        z = pow(y, p, m)
        if z == y:
            break
        y = z
    assert pow(y, p, m) == y
    return y


# ---------------------------------------------------------------------------
# Morita p-adic Gamma
# ---------------------------------------------------------------------------

_gamma_anchors: dict = {}
_gamma_lock = threading.Lock()
_CHUNK = 1 << 21


def _prod_range_coprime(lo: int, hi: int, p: int, mod: int) -> int:
    """prod(j for lo <= j < hi, p not dividing j) mod `mod`, exactly."""
    if hi <= lo:
        return 1
    if mod * mod < _INT64_SAFE and hi - lo > 512:
        total = 1
        for start in range(lo, hi, _CHUNK):
            arr = np.arange(start, min(start + _CHUNK, hi), dtype=np.int64)
            arr[arr % p == 0] = 1
            arr %= mod
            while arr.size > 1:
                if arr.size & 1:
                    arr = np.append(arr, np.int64(1))
                arr = (arr[0::2] * arr[1::2]) % mod
            total = total * int(arr[0]) % mod
        return total
    total = 1
    for j in range(lo, hi):
        if j % p:
            total = total * j % mod
    return total


def _gamma_prefix(a: int, p: int, r: int) -> int:
    """prod(j for 0 < j < a, p not dividing j) mod p^r, with shared anchors."""
    key = (p, r)
    mod = p ** r
    with _gamma_lock:
        anchors = _gamma_anchors.setdefault(key, {0: 1, 1: 1})
        base = max(n for n in anchors if n <= a)
        val = anchors[base]
    if base < a:
        val = val * _prod_range_coprime(max(base, 1), a, p, mod) % mod
        with _gamma_lock:
            _gamma_anchors[key][a] = val
    return val


def gamma_p(x: PadicInt) -> PadicInt:
    """Morita's Gamma_p at the class of x, to the same precision."""
    a = x.residue
    val = _gamma_prefix(a, x.p, x.r)
    if a & 1:
        val = -val
    return PadicInt(x.p, x.r, val)


def gamma_p_frac(a, p: int, r: int) -> PadicInt:
    """Gamma_p at a rational argument with p-unit denominator."""
    return gamma_p(PadicInt(p, r, rational_mod(Fraction(a), p, r)))


def least_positive_residue(x, p: int) -> int:
    """a_0(x): the representative of x mod p in {1, ..., p} (0 maps to p)."""
    a = rational_mod(Fraction(x), p, 1)
    return a if a else p


# ---------------------------------------------------------------------------
# rising factorials, harmonic sums
# ---------------------------------------------------------------------------


def rising_factorial(a, k: int) -> Fraction:
    """(a)_k = a (a+1) ... (a+k-1) as an exact rational; (a)_0 = 1."""
    a = Fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def rising_factorial_p(a, k: int, p: int, r: int) -> PadicInt:
    """(a)_k reduced mod p^r; den(a) must be a p-unit."""
    a = Fraction(a)
    if a.denominator % p == 0:
        raise NegativeValuationError(f"p={p} divides denominator of {a}")
    m = p ** r
    num, den = a.numerator, a.denominator
    out = 1
    for i in range(k):
        out = out * (num + i * den) % m
    out = out * pow(pow(den, -1, m), k, m) % m
    return PadicInt(p, r, out)


def harmonic_sums(k: int):
    """(H_k, H_k^{(odd)}) = (sum 1/j, sum 1/(2j-1)) for j = 1..k, exact."""
    h = Fraction(0)
    hodd = Fraction(0)
    for j in range(1, k + 1):
        h += Fraction(1, j)
        hodd += Fraction(1, 2 * j - 1)
    return h, hodd


# ---------------------------------------------------------------------------
# truncated hypergeometric series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HgsParams:
    """Parameters of a truncated hypergeometric sum.

    upper/lower are rationals with p-unit denominators (the implicit k! of
    the classical series is part of the term, not listed in `lower`);
    argument is a rational or an already-reduced PadicInt; truncation is the
    last index included.
    """

    upper: tuple
    lower: tuple
    argument: object
    truncation: int

    @staticmethod
    def make(upper, lower, argument, truncation) -> "HgsParams":
        return HgsParams(
            tuple(Fraction(a) for a in upper),
            tuple(Fraction(b) for b in lower),
            argument if isinstance(argument, PadicInt) else Fraction(argument),
            int(truncation),
        )


def _validate_params(params: HgsParams, p: int):
    for b in params.lower:
        if b.denominator == 1 and -params.truncation <= b <= 0:
            raise ZeroDivisionError(f"lower parameter {b} vanishes inside truncation range")
        if b.denominator % p == 0:
            raise NegativeValuationError(f"p={p} divides denominator of lower parameter {b}")
    for a in params.upper:
        if a.denominator % p == 0:
            raise NegativeValuationError(f"p={p} divides denominator of upper parameter {a}")


def trunc_hgs_eval(params: HgsParams, p: int, r: int) -> PadicInt:
    """Sum of the truncated series mod p^r.

    Terms are accumulated as exact rationals and gated for p-integrality one
    by one, so truncations past p-1 (where k! picks up p factors) are exact.
    """
    _validate_params(params, p)
    z = params.argument
    modular_arg = isinstance(z, PadicInt)
    if modular_arg:
        if z.p != p or z.r < r:
            raise ValueError("argument precision too low")
        zres = z.residue % p ** r
    elif z.denominator % p == 0:
        raise NegativeValuationError(f"p={p} divides denominator of argument {z}")

    m = p ** r
    term = Fraction(1)
    total = 0 if modular_arg else Fraction(0)
    zpow = 1
    for k in range(params.truncation + 1):
        if k:
            num = Fraction(1)
            for a in params.upper:
                num *= a + (k - 1)
            den = Fraction(k)
            for b in params.lower:
                den *= b + (k - 1)
            term = term * num / den
            if not modular_arg:
                term *= z
        # reduced fractions carry p in the denominator iff the term is non-integral
        if term != 0 and term.denominator % p == 0:
            raise NonIntegralSeriesError(k)
        if modular_arg:
            if k:
                zpow = zpow * zres % m
            total = (total + rational_mod(term, p, r) * zpow) % m
        else:
            total += term
    if modular_arg:
        return PadicInt(p, r, total)
    return PadicInt(p, r, rational_mod(total, p, r))


def trunc_hgs(upper, lower, argument, truncation, p, r) -> PadicInt:
    """Convenience wrapper around trunc_hgs_eval."""
    return trunc_hgs_eval(HgsParams.make(upper, lower, argument, truncation), p, r)


def trunc_hgs_exact(upper, lower, argument, truncation) -> Fraction:
    """The truncated sum as an exact rational (no reduction)."""
    upper = [Fraction(a) for a in upper]
    lower = [Fraction(b) for b in lower]
    z = Fraction(argument)
    term = Fraction(1)
    total = Fraction(1)
    for k in range(1, truncation + 1):
        num = Fraction(1)
        for a in upper:
            num *= a + (k - 1)
        den = Fraction(k)
        for b in lower:
            den *= b + (k - 1)
        term = term * num * z / den
        total += term
    return total


def dwork_ratio(upper, lower, lam, p: int, s: int, r: int) -> PadicInt:
    """F_{p^s-1} / F_{p^{s-1}-1} mod p^r, argument lifted through Teichmuller.

    The denominator truncation must be a p-adic unit (the ordinary case);
    otherwise the unit root is undefined and NonOrdinaryError is raised.
    Precision r may not exceed the level s.
    """
    if r > s:
        raise ValueError("precision r must not exceed level s")
    lam_hat = PadicInt(p, r, teichmuller_residue(rational_mod(Fraction(lam), p, 1), p, r))
    num = trunc_hgs(upper, lower, lam_hat, p ** s - 1, p, r)
    den = trunc_hgs(upper, lower, lam_hat, p ** (s - 1) - 1, p, r)
    if not den.is_unit():
        raise NonOrdinaryError("non-ordinary (unit root undefined)")
    return num / den
