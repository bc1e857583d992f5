"""Terminating classical hypergeometric identities and eta-product q-expansions.

Everything here is exact rational or integer arithmetic: the classical
identities (Kummer, Karlsson-Minton, Dougall, Whipple) are verified on
explicit instances, never derived symbolically, and the eta product
q prod (1-q^{2n})^4 (1-q^{4n})^4 is expanded by repeated sparse-polynomial
multiplication to the requested precision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .padic import rising_factorial


class RatSeries:
    """Truncated integer power series; multiplication drops terms past N."""

    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs, precision: int):
        c = list(coeffs)[: precision + 1]
        c += [0] * (precision + 1 - len(c))
        self.coeffs = c
        self.precision = precision

    @staticmethod
    def one(precision: int) -> "RatSeries":
        return RatSeries([1], precision)

    def __mul__(self, other: "RatSeries") -> "RatSeries":
        n = min(self.precision, other.precision)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j, b in enumerate(other.coeffs[: n - i + 1]):
                    if b:
                        out[i + j] += a * b
        return RatSeries(out, n)

    def times_one_minus_qk(self, k: int) -> "RatSeries":
        """Multiply by (1 - q^k) in place-free form."""
        out = list(self.coeffs)
        for i in range(self.precision, k - 1, -1):
            out[i] -= self.coeffs[i - k]
        return RatSeries(out, self.precision)

    def shift(self, k: int) -> "RatSeries":
        return RatSeries([0] * k + self.coeffs, self.precision)

    def __eq__(self, other):
        return isinstance(other, RatSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        return f"RatSeries([{head}, ...], N={self.precision})"


def eta_product_coeffs(precision: int):
    """Coefficients a(1..N) of q prod (1-q^{2n})^4 (1-q^{4n})^4.

    Index k of the returned list is the coefficient of q^k; a(1) = 1 and
    a(p) for odd p are the Hecke eigenvalues of the weight 4 form used in
    the Ahlgren-Ono and Kilbourn congruences.
    """
    if precision < 2:
        raise ValueError("precision must be >= 2")
    s = RatSeries.one(precision - 1)
    for n in range(1, (precision - 1) // 2 + 1):
        for _ in range(4):
            s = s.times_one_minus_qk(2 * n)
    for n in range(1, (precision - 1) // 4 + 1):
        for _ in range(4):
            s = s.times_one_minus_qk(4 * n)
    return [0] + s.coeffs[:precision]


# ---------------------------------------------------------------------------
# terminating hypergeometric series and classical identities
# ---------------------------------------------------------------------------


class IdentityHypothesisError(ValueError):
    pass


def terminating_hgs(upper, lower, z) -> Fraction:
    """Exact value of a terminating rF_{r-1}; some upper parameter must be
    a nonpositive integer, and no lower parameter may vanish in range."""
    upper = [Fraction(a) for a in upper]
    lower = [Fraction(b) for b in lower]
    z = Fraction(z)
    stops = [int(-a) for a in upper if a.denominator == 1 and a <= 0]
    if not stops:
        raise IdentityHypothesisError("series does not terminate")
    m = min(stops)
    for b in lower:
        if b.denominator == 1 and -m < b <= 0:
            raise IdentityHypothesisError(f"lower parameter {b} vanishes in range")
    term = Fraction(1)
    total = Fraction(1)
    for k in range(1, m + 1):
        num = prod((a + (k - 1)) for a in upper)
        den = prod((b + (k - 1)) for b in lower) * k
        term = term * num * z / den
        total += term
    return total


@dataclass(frozen=True)
class IdentityInstance:
    name: str
    params: dict
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def check_kummer(a, b) -> IdentityInstance:
    """2F1(a, b; a-b+1; -1) = (a+1)_{-b} / (a/2+1)_{-b} for b a negative integer."""
    a, b = Fraction(a), Fraction(b)
    if b.denominator != 1 or b >= 0:
        raise IdentityHypothesisError("b must be a negative integer")
    m = int(-b)
    lhs = terminating_hgs([a, b], [a - b + 1], -1)
    rhs = rising_factorial(a + 1, m) / rising_factorial(a / 2 + 1, m)
    return IdentityInstance("kummer", {"a": a, "b": b}, lhs, rhs)


def check_karlsson_minton(bs, ms) -> IdentityInstance:
    """The Karlsson-Minton evaluation with integral parameter differences."""
    bs = [Fraction(b) for b in bs]
    ms = [int(m) for m in ms]
    if len(bs) != len(ms) or any(m < 0 for m in ms):
        raise IdentityHypothesisError("need nonnegative integers m_i matching b_i")
    msum = sum(ms)
    upper = [Fraction(-msum)] + [b + m for b, m in zip(bs, ms)]
    lhs = terminating_hgs(upper, bs, 1)
    rhs = Fraction((-1) ** msum) * Fraction(
        prod(range(1, msum + 1))
    ) / prod(rising_factorial(b, m) for b, m in zip(bs, ms))
    return IdentityInstance("karlsson_minton", {"bs": bs, "ms": ms}, lhs, rhs)


def check_dougall(a, b, c, d, m, e=None) -> IdentityInstance:
    """Dougall's very-well-poised 7F6 evaluation; requires 2a+1 = b+c+d+e-m."""
    a, b, c, d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
    m = int(m)
    if m < 0:
        raise IdentityHypothesisError("m must be a nonnegative integer")
    if e is None:
        e = 2 * a + 1 + m - b - c - d
    else:
        e = Fraction(e)
        if 2 * a + 1 != b + c + d + e - m:
            raise IdentityHypothesisError("2a+1 = b+c+d+e-m violated")
    upper = [a, a / 2 + 1, b, c, d, e, Fraction(-m)]
    lower = [a / 2, 1 + a - b, 1 + a - c, 1 + a - d, 1 + a - e, 1 + a + m]
    lhs = terminating_hgs(upper, lower, 1)
    num = (
        rising_factorial(1 + a, m)
        * rising_factorial(1 + a - b - c, m)
        * rising_factorial(1 + a - b - d, m)
        * rising_factorial(1 + a - c - d, m)
    )
    den = (
        rising_factorial(1 + a - b, m)
        * rising_factorial(1 + a - c, m)
        * rising_factorial(1 + a - d, m)
        * rising_factorial(1 + a - b - c - d, m)
    )
    if den == 0:
        raise IdentityHypothesisError("degenerate right-hand side")
    return IdentityInstance("dougall", {"a": a, "b": b, "c": c, "d": d, "e": e, "m": m}, lhs, num / den)


def check_whipple(a, b, c, d, m) -> IdentityInstance:
    """Whipple's 5F4 -> 4F3 transformation with e = -m terminating both sides.

    The Gamma-quotient prefactor collapses to Pochhammer ratios:
    (1+a)_m (1+a-c-d)_m / ((1+a-d)_m (1+a-c)_m).
    """
    a, b, c, d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
    m = int(m)
    if m < 0:
        raise IdentityHypothesisError("m must be a nonnegative integer")
    e = Fraction(-m)
    lhs = terminating_hgs([a, b, c, d, e], [1 + a - b, 1 + a - c, 1 + a - d, 1 + a + m], 1)
    den = rising_factorial(1 + a - d, m) * rising_factorial(1 + a - c, m)
    if den == 0:
        raise IdentityHypothesisError("degenerate prefactor")
    pref = rising_factorial(1 + a, m) * rising_factorial(1 + a - c - d, m) / den
    f43 = terminating_hgs(
        [1 + a / 2 - b, c, d, e], [1 + a / 2, c + d + e - a, 1 + a - b], 1
    )
    return IdentityInstance(
        "whipple", {"a": a, "b": b, "c": c, "d": d, "m": m}, lhs, pref * f43
    )


_CHECKERS = {
    "kummer": check_kummer,
    "karlsson_minton": check_karlsson_minton,
    "dougall": check_dougall,
    "whipple": check_whipple,
}


def classical_identity_check(name: str, **params) -> IdentityInstance:
    """Evaluate both sides of a named classical identity on one instance."""
    try:
        fn = _CHECKERS[name]
    except KeyError:
        raise IdentityHypothesisError(f"unknown identity {name!r}") from None
    return fn(**params)


def _rand_fraction(rng, den_max=4, num_max=9):
    den = rng.randint(1, den_max)
    num = rng.randint(-num_max, num_max)
    return Fraction(num, den)


def random_identity_instances(name: str, count: int, seed: int):
    """Deterministically generate `count` admissible instances of an identity."""
    rng = random.Random(f"{name}:{seed}")
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100000:
            raise RuntimeError(f"could not generate {count} admissible {name} instances")
        try:
            if name == "kummer":
                inst = check_kummer(_rand_fraction(rng), -rng.randint(1, 8))
            elif name == "karlsson_minton":
                k = rng.randint(1, 3)
                bs = [abs(_rand_fraction(rng)) + Fraction(1, 5) for _ in range(k)]
                ms = [rng.randint(0, 3) for _ in range(k)]
                inst = check_karlsson_minton(bs, ms)
            elif name == "dougall":
                inst = check_dougall(
                    _rand_fraction(rng), _rand_fraction(rng), _rand_fraction(rng),
                    _rand_fraction(rng), rng.randint(0, 4),
                )
            elif name == "whipple":
                inst = check_whipple(
                    _rand_fraction(rng), _rand_fraction(rng), _rand_fraction(rng),
                    _rand_fraction(rng), rng.randint(0, 4),
                )
            else:
                raise IdentityHypothesisError(f"unknown identity {name!r}")
        except (IdentityHypothesisError, ZeroDivisionError):
            continue
        out.append(inst)
    return out
