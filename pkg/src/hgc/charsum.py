"""Multiplicative characters and their exact sums over F_q.

A character is indexed by its exponent k against the fixed field generator:
chi_k(g^t) = zeta_{q-1}^{k t}, extended by chi(0) = 0 for every character
including the trivial one.  Jacobi sums live in Z[zeta_{q-1}] and come out
as plain coefficient-count vectors; Gauss sums pick up the additive
character zeta_p^{Tr(x)} and live in Z[zeta_{p(q-1)}] with
zeta_p = zeta_m^{q-1} and zeta_{q-1} = zeta_m^p for m = p(q-1).

Greene's hypergeometric function is evaluated per chi with fresh Jacobi
sums, O(arity * q^2) monomial accumulations overall.  The chi-independent
part of each summand is cached per parameter tuple ("profile"), which makes
sweeps over the argument (all lambda, all x) cheap.

McCarthy's starred functions are computed from the definition with exact
Gauss sums; reciprocals 1/g(chi) are eliminated via chi(-1) g(conj chi) / q
for chi != eps and 1/g(eps) = -1, so no cyclotomic division ever happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .cyclotomic import CycInt, CycRat
from .fields import FieldCtx, ResourceCapError

_INT64_SAFE = 1 << 62

DEFAULT_HGF_CAP = 50_000_000  # monomial accumulations per profile build


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    """chi_k on F_q^x, values in Z[zeta_{q-1}], chi(0) = 0."""

    ctx: FieldCtx
    k: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % (self.ctx.q - 1))

    @property
    def order(self) -> int:
        return (self.ctx.q - 1) // gcd(self.k, self.ctx.q - 1)

    def is_trivial(self) -> bool:
        return self.k == 0

    def is_square(self) -> bool:
        return self.k % 2 == 0  # q odd, so q - 1 is even

    def conj(self) -> "Character":
        return Character(self.ctx, -self.k)

    def __mul__(self, other: "Character") -> "Character":
        if other.ctx is not self.ctx:
            raise CharacterError("mixed field contexts")
        return Character(self.ctx, self.k + other.k)

    def __pow__(self, n: int) -> "Character":
        return Character(self.ctx, self.k * n)

    def exponent_at(self, x: int):
        """k * dlog(x) mod q-1, or None at x = 0."""
        if x == 0:
            return None
        return (self.k * self.ctx.dlog_table[x]) % (self.ctx.q - 1)

    def value(self, x) -> CycInt:
        enc = x.enc if hasattr(x, "enc") else x
        e = self.exponent_at(enc)
        m = self.ctx.q - 1
        if e is None:
            return CycInt(m)
        return CycInt.zeta(m, e)

    def __repr__(self):
        return f"chi_{self.k}(F_{self.ctx.q})"


def trivial_character(ctx: FieldCtx) -> Character:
    return Character(ctx, 0)


def character_of_order(ctx: FieldCtx, n: int, j: int = 1) -> Character:
    """The order-n character with exponent j(q-1)/n.

    For e = 1 this is the character satisfying eta_n(x) = x^(j(p-1)/n) mod p
    under the Teichmuller embedding.  j must be coprime to n for a primitive
    order-n character.
    """
    if n < 1 or (ctx.q - 1) % n:
        raise CharacterError(f"order {n} does not divide q - 1 = {ctx.q - 1}")
    if not (1 <= j <= n) or gcd(j, n) != 1:
        raise CharacterError(f"variant j = {j} must be in [1, {n}] and coprime to {n}")
    return Character(ctx, j * ((ctx.q - 1) // n))


# ---------------------------------------------------------------------------
# Jacobi and Gauss sums
# ---------------------------------------------------------------------------


def jacobi_sum(a: Character, b: Character) -> CycInt:
    """J(A,B) = sum over x of A(x) B(1-x), exact in Z[zeta_{q-1}]."""
    ctx = a.ctx
    if b.ctx is not ctx:
        raise CharacterError("mixed field contexts")
    q = ctx.q
    m = q - 1
    dlog = ctx.dlog_table
    exp = ctx.exp_table
    counts = [0] * m
    ka, kb = a.k, b.k
    # x = 0 and x = 1 contribute nothing (chi(0) = 0), so x runs over g^t, t != 0
    for t in range(1, m):
        x = exp[t]
        y = ctx.one_minus(x)
        counts[(ka * t + kb * dlog[y]) % m] += 1
    return CycInt(m, counts)


def _gauss_monomials(ctx: FieldCtx, k: int):
    """Gauss sum g(chi_k) as a dict exponent -> count in Z[zeta_{p(q-1)}]."""
    cache = ctx._gauss_cache
    got = cache.get(k)
    if got is not None:
        return got
    q, p = ctx.q, ctx.p
    m = p * (q - 1)
    exp = ctx.exp_table
    tr = ctx.trace_table
    counts: dict = {}
    for t in range(q - 1):
        e = ((q - 1) * tr[exp[t]] + p * k * t) % m
        counts[e] = counts.get(e, 0) + 1
    out = tuple(sorted(counts.items()))
    cache[k] = out
    return out


def gauss_sum(chi: Character) -> CycInt:
    """g(chi) = sum over x of chi(x) zeta_p^Tr(x), exact in Z[zeta_{p(q-1)}]."""
    ctx = chi.ctx
    m = ctx.p * (ctx.q - 1)
    c = [0] * m
    for e, v in _gauss_monomials(ctx, chi.k):
        c[e] = v
    return CycInt(m, c)


def greene_binom(a: Character, b: Character) -> CycRat:
    """Greene's binomial: B(-1)/q * J(A, conj B)."""
    ctx = a.ctx
    j = jacobi_sum(a, b.conj())
    sign_exp = (b.k * ((ctx.q - 1) // 2)) % (ctx.q - 1)
    return CycRat(j * CycInt.zeta(ctx.q - 1, sign_exp), ctx.q)


# ---------------------------------------------------------------------------
# Greene's Gaussian hypergeometric functions
# ---------------------------------------------------------------------------


def _as_int64(vec):
    return np.asarray(vec, dtype=np.int64)


def _np_convolve_fold(a, b, m):
    full = np.convolve(a, b)
    out = np.zeros(m, dtype=np.int64)
    out[: min(full.size, m)] += full[:m]
    if full.size > m:
        out[: full.size - m] += full[m:]
    return out


def _hgf_profile(ctx: FieldCtx, upper_ks: tuple, lower_ks: tuple, cap: int = DEFAULT_HGF_CAP):
    """Per-chi numerators of Greene's sum, cached on the context.

    profile[t] is the coefficient vector (length q-1, int64) of
    prod_i binom-numerator(A_i chi_t, B_i chi_t); the full function value at
    x is then q^{-n}/(q-1) * sum_t profile[t] * chi_t(x).
    """
    key = (upper_ks, lower_ks)
    got = ctx._profile_cache.get(key)
    if got is not None:
        return got
    q = ctx.q
    m = q - 1
    n = len(lower_ks)
    if q * q * (n + 1) > cap:
        raise ResourceCapError(f"hgf profile at q={q}, arity {n + 1} exceeds cap")
    dlog = ctx.dlog_table
    exp = ctx.exp_table
    half = m // 2  # dlog(-1)
    one_minus = [0] + [ctx.one_minus(exp[t]) for t in range(1, m)]  # indexed by t of x
    pairs = [(upper_ks[0], 0)] + [(u, l) for u, l in zip(upper_ks[1:], lower_ks)]
    profile = []
    for t in range(m):
        vec = None
        for (ku, kl) in pairs:
            ka = (ku + t) % m
            kb = (kl + t) % m
            counts = [0] * m
            # J(A chi, conj(B chi)) with the B(-1) sign folded in as a rotation
            shift = (kb * half) % m
            for s in range(1, m):
                y = one_minus[s]
                counts[(ka * s - kb * dlog[y] + shift) % m] += 1
            cv = _as_int64(counts)
            vec = cv if vec is None else _np_convolve_fold(vec, cv, m)
        profile.append(vec)
    ctx._profile_cache[key] = profile
    return profile


def _check_family(chars):
    ctx = chars[0].ctx
    for c in chars[1:]:
        if c.ctx is not ctx:
            raise CharacterError("mixed field contexts")
    return ctx


def _hgf_num_vec(ctx, upper_ks, lower_ks, enc):
    """Numerator vector of Greene's function at enc != 0, over den q^n (q-1)."""
    m = ctx.q - 1
    profile = _hgf_profile(ctx, upper_ks, lower_ks)
    lx = ctx.dlog_table[enc]
    total = np.zeros(m, dtype=np.int64)
    for t in range(m):
        total += np.roll(profile[t], (t * lx) % m)
    return total


def greene_hgf(upper, lower, x) -> CycRat:
    """Greene's {n+1}F_n at x in F_q, exact.

    upper has length n+1, lower length n; the value's denominator divides
    q^n (q-1) before normalization.
    """
    upper = list(upper)
    lower = list(lower)
    if len(upper) != len(lower) + 1:
        raise CharacterError("arity mismatch: need |upper| = |lower| + 1")
    ctx = _check_family(upper + lower)
    q = ctx.q
    m = q - 1
    enc = x.enc if hasattr(x, "enc") else int(x)
    if enc == 0:
        return CycRat.zero(m)
    total = _hgf_num_vec(ctx, tuple(c.k for c in upper), tuple(c.k for c in lower), enc)
    num = CycInt(m, [int(v) for v in total])
    return CycRat(num, q ** len(lower) * m)


def charsum_direct(ctx: FieldCtx, n: int, k: int, lam) -> CycInt:
    """The (n-1)-fold character sum over F_q^{n-1} defining the C_{n,lam} count.

    sum of eta_n^k((x_1...x_{n-1})^{n-1}(1-x_1)...(1-x_{n-1})(x_1 - lam x_2...x_{n-1}))
    by direct enumeration; equals q^{n-1} times the Greene value with
    parameters eta_n^{n-k}.
    """
    if (ctx.q - 1) % n:
        raise CharacterError(f"order {n} does not divide q - 1")
    if not 1 <= k < n:
        raise CharacterError("character power k must satisfy 1 <= k < n")
    lam_enc = lam.enc if hasattr(lam, "enc") else int(lam)
    q = ctx.q
    m = q - 1
    eta_exp = k * (m // n)
    counts = np.zeros(m, dtype=np.int64)
    for fvals in _variety_value_slices(ctx, n, lam_enc):
        nz = fvals[fvals != 0]
        if nz.size:
            exps = (eta_exp * ctx.np_dlog[nz]) % m
            counts += np.bincount(exps, minlength=m)
    return CycInt(m, [int(v) for v in counts])


def _variety_value_slices(ctx: FieldCtx, n: int, lam_enc: int):
    """Yield f(x_1,...,x_{n-1}) over the full grid, in x_1 slices.

    f = (x_1...x_{n-1})^{n-1} (1-x_1)...(1-x_{n-1}) (x_1 - lam x_2...x_{n-1})
    """
    q = ctx.q
    if n == 2:
        xs = np.arange(q, dtype=np.int64)
        f = ctx.vmul(ctx.vmul(xs, ctx.vone_minus(xs)), ctx.vsub(xs, np.int64(lam_enc)))
        yield f
        return
    axes = np.meshgrid(*([np.arange(q, dtype=np.int64)] * (n - 2)), indexing="ij")
    rest = [a.ravel() for a in axes]
    prod_rest = rest[0]
    for a in rest[1:]:
        prod_rest = ctx.vmul(prod_rest, a)
    oneminus_rest = ctx.vone_minus(rest[0])
    for a in rest[1:]:
        oneminus_rest = ctx.vmul(oneminus_rest, ctx.vone_minus(a))
    lam_rest = ctx.vmul(prod_rest, np.int64(lam_enc)) if lam_enc else np.zeros_like(prod_rest)
    for x1 in range(q):
        allprod = ctx.vmul(prod_rest, np.int64(x1))
        head = ctx.vpow(allprod, n - 1)
        tail = ctx.vmul(oneminus_rest, np.int64(ctx.one_minus(x1)))
        last = ctx.vsub(np.int64(x1), lam_rest)
        yield ctx.vmul(ctx.vmul(head, tail), last)


# ---------------------------------------------------------------------------
# McCarthy's starred hypergeometric functions
# ---------------------------------------------------------------------------


def _gauss_dense(ctx: FieldCtx, k: int, m: int):
    out = np.zeros(m, dtype=np.int64)
    for e, v in _gauss_monomials(ctx, k):
        out[e] = v
    return out


def _sparse_mul_bigint(dense, monomials, m, shift=0):
    """Multiply a Python-int coefficient list by a sparse monomial dict."""
    out = [0] * m
    for e, cnt in monomials:
        off = (e + shift) % m
        for i, v in enumerate(dense):
            if v:
                j = i + off
                if j >= m:
                    j -= m
                out[j] += v * cnt
    return out


def mccarthy_starred(upper, lower, x) -> CycRat:
    """McCarthy's {n+1}F_n^* at x, from the definition with exact Gauss sums.

    The denominator divides q^(2(n+1)) (q-1) before normalization.
    """
    upper = list(upper)
    lower = list(lower)
    if len(upper) != len(lower) + 1:
        raise CharacterError("arity mismatch: need |upper| = |lower| + 1")
    ctx = _check_family(upper + lower)
    q, p = ctx.q, ctx.p
    mq = q - 1
    m = p * mq
    n = len(lower)
    enc = x.enc if hasattr(x, "enc") else int(x)
    if enc == 0:
        return CycRat.zero(m)
    lx = ctx.dlog_table[enc]
    half = mq // 2

    acc = np.zeros(m, dtype=np.int64)
    l1_bound = 0
    for t in range(mq):
        ks = [(a.k + t) % mq for a in upper]
        ks += [(-(b.k + t)) % mq for b in lower]
        ks.append((-t) % mq)
        vec = None
        bound = 1
        for k in ks:
            g = _gauss_dense(ctx, k, m)
            bound *= q
            if bound >= _INT64_SAFE:
                raise ResourceCapError("starred evaluation exceeds exact int64 range")
            vec = g if vec is None else _np_convolve_fold(vec, g, m)
        shift = (p * ((t * ((n + 1) * half + lx)) % mq)) % m
        acc += np.roll(vec, shift)
        l1_bound += bound
        if l1_bound >= _INT64_SAFE:
            raise ResourceCapError("starred evaluation exceeds exact int64 range")

    num = [int(v) for v in acc]
    sign = 1
    den_pow = 0
    for d in upper + [b.conj() for b in lower]:
        if d.k == 0:
            sign = -sign  # 1/g(eps) = -1
        else:
            den_pow += 1
            mono = _gauss_monomials(ctx, (-d.k) % mq)
            shift = (p * ((d.k * half) % mq)) % m  # the D(-1) unit
            num = _sparse_mul_bigint(num, mono, m, shift)
    if sign < 0:
        num = [-v for v in num]
    return CycRat(CycInt(m, num), q ** den_pow * mq)


def gauss_product_ratio(ctx: FieldCtx, numer, denom) -> CycRat:
    """prod g(chi) over numer divided by prod g(chi) over denom, exactly.

    Reciprocals are eliminated via 1/g(D) = D(-1) g(conj D) / q for D != eps
    and 1/g(eps) = -1, so the result is a CycRat with a power-of-q
    denominator.
    """
    q = ctx.q
    m = ctx.p * (q - 1)
    num = CycInt.from_int(1, m)
    sign = 1
    den_pow = 0
    for chi in numer:
        if chi.is_trivial():
            sign = -sign
        else:
            num = num * gauss_sum(chi)
    for chi in denom:
        if chi.is_trivial():
            sign = -sign
        else:
            num = num * gauss_sum(chi.conj()) * chi.value(ctx.neg(1)).lift(m)
            den_pow += 1
    return CycRat(num * sign, q ** den_pow)


def sqrt_characters(a: Character):
    """The characters R with R^2 = A (empty when A is not a square)."""
    if a.k % 2:
        return []
    half = (a.ctx.q - 1) // 2
    return [Character(a.ctx, a.k // 2), Character(a.ctx, a.k // 2 + half)]


def hasse_davenport_lift(j: CycInt, s: int) -> CycInt:
    """Jacobi-sum lift to F_{p^s} for norm-composed characters: (-1)^(s-1) J^s."""
    if s < 1:
        raise ValueError("extension degree must be >= 1")
    out = j ** s
    if s % 2 == 0:
        out = -out
    return out
