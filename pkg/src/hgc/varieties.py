"""Point counts on C_{n,lam}, Legendre traces, local zeta data, and the
quartic Hecke character.

C_{n,lam} is the affine hypersurface
    y^n = (x_1 ... x_{n-1})^{n-1} (1-x_1) ... (1-x_{n-1}) (x_1 - lam x_2 ... x_{n-1})
and the "paper count" is 1 + (number of affine solutions).

Two independent counting routes are provided: direct enumeration over
F_q^{n-1}, and the hypergeometric formula
    1 + q^{n-1} + q^{n-1} sum_{i=1}^{n-1} nF_{n-1}(eta_n^i, ..; eps, ..; lam).
The formula's Greene form is exact for lam != 0; at lam = 0 every chi(0) = 0
makes the Greene values vanish while the underlying character sums do not
(they contribute (-1)^(n-1) sum_i eta_n^{i(n-2)}(-1)), so at that single
boundary the formula route evaluates the character-sum form of the same
right side instead.  Both routes stay independent of the brute count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charsum import (
    Character,
    character_of_order,
    charsum_direct,
    greene_hgf,
    jacobi_sum,
    trivial_character,
    _variety_value_slices,
)
from .cyclotomic import CycInt, CycRat
from .fields import FieldCtx, ResourceCapError, field_create

BRUTE_CAP = 50_000_000  # grid evaluations


@dataclass(frozen=True)
class CountResult:
    q: int
    n: int
    lam: int
    affine_count: int
    route: str

    @property
    def paper_count(self) -> int:
        return 1 + self.affine_count


def count_affine_brute(ctx: FieldCtx, n: int, lam, cap: int = BRUTE_CAP) -> CountResult:
    """Count affine points of C_{n,lam}(F_q) by direct enumeration."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if (ctx.q - 1) % n:
        raise ValueError(f"need q = 1 mod n, got q = {ctx.q}, n = {n}")
    if ctx.q ** (n - 1) > cap:
        raise ResourceCapError(f"brute count q^(n-1) = {ctx.q ** (n - 1)} exceeds cap {cap}")
    lam_enc = lam.enc if hasattr(lam, "enc") else int(lam)
    affine = 0
    for f in _variety_value_slices(ctx, n, lam_enc):
        affine += int((f == 0).sum())
        nz = f[f != 0]
        if nz.size:
            affine += n * int(((ctx.np_dlog[nz] % n) == 0).sum())
    return CountResult(ctx.q, n, lam_enc, affine, "brute")


def count_via_hgf(ctx: FieldCtx, n: int, lam) -> CountResult:
    """Count via the hypergeometric right side; independent of the brute route."""
    if (ctx.q - 1) % n:
        raise ValueError(f"need q = 1 mod n, got q = {ctx.q}, n = {n}")
    lam_enc = lam.enc if hasattr(lam, "enc") else int(lam)
    q = ctx.q
    if lam_enc == 0:
        # Greene values vanish at 0; use the character-sum form of the RHS
        total = 0
        for k in range(1, n):
            v = charsum_direct(ctx, n, k, 0).as_int()
            if v is None:
                raise ArithmeticError("character sum did not reduce to a rational integer")
            total += v
        return CountResult(q, n, 0, q ** (n - 1) + total, "charsum")
    eps = trivial_character(ctx)
    eta = character_of_order(ctx, n)
    acc = CycRat.zero(q - 1)
    for i in range(1, n):
        acc = acc + greene_hgf([eta ** i] * n, [eps] * (n - 1), lam_enc)
    val = (acc * q ** (n - 1)).as_int()
    if val is None:
        raise ArithmeticError("hypergeometric sum did not reduce to a rational integer")
    return CountResult(q, n, lam_enc, q ** (n - 1) + val, "hgf")


def legendre_trace(ctx: FieldCtx, lam) -> int:
    """a_p(lam) = p + 1 - #C_{2,lam}(F_p) = -sum eta_2(x(1-x)(x-lam)); e = 1 only."""
    if ctx.e != 1:
        raise ValueError("Legendre traces are defined over prime fields here")
    lam_enc = lam.enc if hasattr(lam, "enc") else int(lam)
    p = ctx.p
    if lam_enc in (0, 1):
        raise ValueError(f"lam = {lam_enc} is a singular Legendre parameter")
    total = 0
    for x in range(p):
        v = ctx.mul(ctx.mul(x, ctx.one_minus(x)), ctx.sub(x, lam_enc))
        if v:
            total += 1 if ctx.dlog_table[v] % 2 == 0 else -1
    a = -total
    assert a * a <= 4 * p, "Hasse bound violated"
    return a


# ---------------------------------------------------------------------------
# local zeta data for C_{3,1} and C_{4,1}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZetaFactor:
    """A factor 1 + c1 T + c2 T^2 (quadratic) or 1 + c1 T (c2 = 0)."""

    c1: CycInt
    c2: CycInt
    in_denominator: bool

    def power_sums(self, smax: int):
        """Power sums of the reciprocal roots via the Newton recurrence."""
        e1, e2 = -self.c1, self.c2
        out = [None, e1]
        if smax >= 2:
            out.append(e1 * e1 - 2 * e2)
        for s in range(3, smax + 1):
            out.append(e1 * out[s - 1] - e2 * out[s - 2])
        return out[: smax + 1]

    def poly(self):
        return [CycInt.from_int(1, self.c1.m), self.c1, self.c2]


class ZetaSpec:
    """An ordered list of quadratic/linear zeta factors with N_s extraction."""

    def __init__(self, label: str, factors):
        self.label = label
        self.factors = list(factors)

    def point_count(self, s: int) -> int:
        """N_s: denominator reciprocal-root power sums minus numerator ones."""
        total = CycInt.from_int(0)
        for f in self.factors:
            ps = f.power_sums(s)[s]
            total = total + ps if f.in_denominator else total - ps
        v = total.as_int()
        if v is None:
            raise ArithmeticError("zeta power sum is not a rational integer")
        return v

    def _side_poly(self, denominator: bool):
        m = 1
        for f in self.factors:
            m = math.lcm(m, f.c1.m)
        out = [CycInt.from_int(1, m)]
        for f in self.factors:
            if f.in_denominator != denominator:
                continue
            poly = f.poly()
            new = [CycInt.from_int(0, m) for _ in range(len(out) + 2)]
            for i, a in enumerate(out):
                for j, b in enumerate(poly):
                    new[i + j] = new[i + j] + a * b
            out = new
        while len(out) > 1 and out[-1].is_zero():
            out.pop()
        return out

    def numerator_poly(self):
        return self._side_poly(False)

    def denominator_poly(self):
        return self._side_poly(True)


def _quad(c1, c2, den):
    m = c1.m if isinstance(c1, CycInt) else 1
    if not isinstance(c1, CycInt):
        c1 = CycInt.from_int(c1, m)
    if not isinstance(c2, CycInt):
        c2 = CycInt.from_int(c2, m)
    return ZetaFactor(c1, c2, den)


def zeta_build(p: int, n: int, a_p: int | None = None) -> ZetaSpec:
    """Assemble the displayed local zeta factors of C_{n,1} over F_p.

    n = 3 needs p = 1 mod 3 and uses alpha = J(eta_3, eta_3); n = 4 needs
    p = 1 mod 4, beta = J(eta_4, eta_2), and the weight-4 eigenform
    coefficient a(p) (pass a_p, typically from eta_product_coeffs).
    """
    if n == 3:
        if p % 3 != 1:
            raise ValueError("n = 3 needs p = 1 mod 3")
        ctx = field_create(p)
        eta3 = character_of_order(ctx, 3)
        al = jacobi_sum(eta3, eta3)
        alb = al.conj(-1)
        return ZetaSpec(
            f"Z_C31(p={p})",
            [
                _quad(CycInt.from_int(-1, p - 1), CycInt.from_int(0, p - 1), True),
                _quad(al + alb, CycInt.from_int(p, p - 1), True),
                _quad(CycInt.from_int(-(p ** 2), p - 1), CycInt.from_int(0, p - 1), True),
                _quad(-(al * al + alb * alb), CycInt.from_int(p ** 2, p - 1), True),
            ],
        )
    if n == 4:
        if p % 4 != 1:
            raise ValueError("n = 4 needs p = 1 mod 4")
        if a_p is None:
            raise ValueError("n = 4 needs the eigenform coefficient a(p)")
        old, new = zeta_old_new(p, a_p)
        return ZetaSpec(f"Z_C41(p={p})", old.factors + new.factors)
    raise ValueError("zeta data is available for n in {3, 4}")


def zeta_old_new(p: int, a_p: int):
    """The sub-double-cover factor and the primitive remainder of Z_{C_{4,1}}."""
    ctx = field_create(p)
    e4 = character_of_order(ctx, 4)
    e2 = character_of_order(ctx, 2)
    be = jacobi_sum(e4, e2)
    beb = be.conj(-1)
    m = p - 1
    old = ZetaSpec(
        f"Z_C41_old(p={p})",
        [
            _quad(CycInt.from_int(-a_p, m), CycInt.from_int(p ** 3, m), False),
            _quad(CycInt.from_int(-p, m), CycInt.from_int(0, m), False),
            _quad(CycInt.from_int(-1, m), CycInt.from_int(0, m), True),
            _quad(CycInt.from_int(-(p ** 3), m), CycInt.from_int(0, m), True),
        ],
    )
    new = ZetaSpec(
        f"Z_C41_new(p={p})",
        [
            _quad(be ** 3 + beb ** 3, CycInt.from_int(p ** 3, m), False),
            _quad((be + beb) * p, CycInt.from_int(p ** 3, m), False),
            _quad(-(be * be + beb * beb), CycInt.from_int(p ** 2, m), False),
        ],
    )
    return old, new


# ---------------------------------------------------------------------------
# the quartic Hecke character of Z[i]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PsiValue:
    p: int
    a: int
    b: int
    chi1: CycInt  # value at the chosen generator, in Z[i] = Z[zeta_4]
    psi: CycInt
    jacobi: CycInt  # -J(psi_p, psi_p^2) for the matching quartic residue character
    rule: str

    @property
    def matches(self) -> bool:
        return self.psi == self.jacobi


def _chi1(a: int, b: int) -> CycInt | None:
    """The Dirichlet character mod (1+i)^4 on a + b i, None where it vanishes."""
    i = CycInt.zeta(4)
    if a % 2 == 0 and b % 2 == 1:
        return i * ((-1) ** (((a + b - 1) // 2) % 2))
    if a % 2 == 1 and b % 2 == 0:
        return CycInt.from_int((-1) ** (((a + b - 1) // 2) % 2), 4)
    return None


def _gaussian(a: int, b: int) -> CycInt:
    return CycInt(4, (a, b))


def _quartic_jacobi(p: int, a: int, b: int) -> CycInt:
    """-J(psi_p, psi_p^2) for the quartic residue character mod (a + b i)."""
    # i = -a/b mod p identifies Z[i]/(a+bi) with Z/p
    s = (-a * pow(b, -1, p)) % p
    powmap = {1: 0, s: 1, (p - 1): 2, (p - s) % p: 3}  # x^((p-1)/4) -> i-exponent
    j = [0, 0, 0, 0]
    for x in range(2, p):
        ex = powmap[pow(x, (p - 1) // 4, p)]
        ey = powmap[pow(1 - x, (p - 1) // 4, p)] * 2
        j[(ex + ey) % 4] += 1
    return -CycInt(4, j)


def hecke_psi(p: int) -> PsiValue:
    """The Hecke character value at a prime ideal over p = 1 mod 4.

    Factors p = a^2 + b^2, then scans the eight associates and conjugates of
    a + b i in a fixed order and returns the first generator on which chi1 is
    nonzero and psi(a + b i) = (-1)^b (a + b i) chi1(a + b i) agrees with
    -J(psi_p, psi_p^2) for the quartic residue character of its own ideal.
    The selection rule is recorded in the result.
    """
    if p % 4 != 1:
        raise ValueError("need p = 1 mod 4")
    a = b = None
    for bb in range(1, math.isqrt(p) + 1):
        aa = math.isqrt(p - bb * bb)
        if aa * aa + bb * bb == p:
            a, b = aa, bb
            break
    assert a is not None
    candidates = []
    for (x, y) in ((a, b), (b, a)):
        candidates += [(x, y), (-x, -y), (-x, y), (x, -y)]
    for (x, y) in candidates:
        chi = _chi1(x, y)
        if chi is None:
            continue
        psi = _gaussian(x, y) * chi * ((-1) ** (y % 2))
        jac = _quartic_jacobi(p, x, y)
        if psi == jac:
            norm = (psi * psi.conj(-1)).as_int()
            assert norm == p, "infinity-type check failed"
            return PsiValue(
                p, x, y, chi, psi, jac,
                "first generator in (a,b),(b,a) x unit scan with chi1 != 0 and Jacobi match",
            )
    raise ArithmeticError(f"no associate of a Gaussian prime over {p} matched")
