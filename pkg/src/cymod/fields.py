"""Arithmetic mod p and the reduction data attached to a coefficient tuple.

Provides inverse/Kronecker lookup tables for a prime field, square roots,
a quadratic extension F_{p^2}, integer witness search for parameter tuples
whose entries are squares, and divisibility tests for the degree-16
discriminant polynomial that controls bad reduction.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

P_MAX = 10**6


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeContext:
    """Lookup tables for F_p with p an odd prime.

    ``inv[x]`` is the inverse of x for 1 <= x < p, ``kron[x]`` the Kronecker
    symbol (x/p) as an int8 in {-1, 0, +1}.  Contexts are immutable after
    construction and safe to share across worker processes.
    """

    __slots__ = ("p", "inv", "kron", "_sqrt")

    def __init__(self, p: int):
        assert isinstance(p, int) and p >= 3, f"need an odd prime >= 3, got {p!r}"
        assert p % 2 == 1 and _is_prime(p), f"{p} is not an odd prime"
        assert p <= P_MAX, f"p={p} exceeds the supported bound {P_MAX}"
        self.p = p

        inv = np.zeros(p, dtype=np.int64)
        inv[1] = 1
        for x in range(2, p):
            inv[x] = (-(p // x) * int(inv[p % x])) % p
        self.inv = inv

        kron = np.full(p, -1, dtype=np.int8)
        kron[0] = 0
        r = np.arange(1, (p + 1) // 2, dtype=np.int64)
        kron[(r * r) % p] = 1
        self.kron = kron

        self._sqrt = None

    @property
    def sqrt(self) -> np.ndarray:
        """sqrt[x] = the smaller square root of x, or -1 when x is a non-square."""
        if self._sqrt is None:
            p = self.p
            r = np.arange((p + 1) // 2, dtype=np.int64)
            t = np.full(p, -1, dtype=np.int64)
            t[(r * r) % p] = r
            self._sqrt = t
        return self._sqrt

    def __repr__(self):
        return f"PrimeContext(p={self.p})"


def build_context(p: int) -> PrimeContext:
    return PrimeContext(p)


def kronecker(ctx: PrimeContext, x: int) -> int:
    return int(ctx.kron[x % ctx.p])


def sqrt_mod_p(ctx: PrimeContext, x: int):
    """The smaller of the two square roots of x mod p, or None."""
    r = int(ctx.sqrt[x % ctx.p])
    return None if r < 0 else r


@dataclass(frozen=True)
class QuadExtElement:
    """u + v*w in F_{p^2} = F_p[w] / (w^2 - n), n a fixed non-square mod p."""

    u: int
    v: int
    p: int
    n: int

    def __add__(self, other):
        assert (self.p, self.n) == (other.p, other.n)
        return QuadExtElement((self.u + other.u) % self.p, (self.v + other.v) % self.p, self.p, self.n)

    def __neg__(self):
        return QuadExtElement(-self.u % self.p, -self.v % self.p, self.p, self.n)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        assert (self.p, self.n) == (other.p, other.n)
        p, n = self.p, self.n
        return QuadExtElement(
            (self.u * other.u + n * self.v * other.v) % p,
            (self.u * other.v + self.v * other.u) % p,
            p,
            n,
        )

    def in_base_field(self) -> bool:
        return self.v == 0


def _pick_nonsquare(ctx: PrimeContext) -> int:
    for n in range(2, ctx.p):
        if ctx.kron[n] == -1:
            return n
    raise AssertionError("no non-square found")  # unreachable for p >= 3


def sqrt_in_quad_ext(ctx: PrimeContext, x: int, n: int | None = None) -> QuadExtElement:
    """A square root of x in F_{p^2}; every element of F_p has one there."""
    p = ctx.p
    if n is None:
        n = _pick_nonsquare(ctx)
    x %= p
    r = sqrt_mod_p(ctx, x)
    if r is not None:
        return QuadExtElement(r, 0, p, n)
    # x and n are both non-squares, so x/n is a square: x = n * s^2.
    s = sqrt_mod_p(ctx, x * int(ctx.inv[n]) % p)
    return QuadExtElement(0, s, p, n)


# ---------------------------------------------------------------------------
# parameter tuples and their witnesses


def normalize_param(a) -> tuple:
    """Canonical projective form of a 6-tuple: integer entries, gcd 1,
    first entry positive.  All entries must be nonzero."""
    a = tuple(int(x) for x in a)
    assert len(a) == 6, f"parameter tuple must have 6 entries, got {len(a)}"
    assert all(x != 0 for x in a), f"parameter entries must be nonzero: {a}"
    g = 0
    for x in a:
        g = gcd(g, x)
    a = tuple(x // g for x in a)
    if a[0] < 0:
        a = tuple(-x for x in a)
    return a


def _squarefree_kernel(n: int) -> int:
    n = abs(n)
    k = 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            k *= d
        d += 1 if d == 2 else 2
    return k * n


def find_integer_witness(a):
    """A 5-tuple b of nonzero integers with b_i^2 : a_i constant and
    (sum b_i)^2 : a_6 the same constant, reduced by the common gcd and with
    positive coordinate sum; None when no such tuple exists over Q."""
    a = normalize_param(a)
    if any(x < 0 for x in a):
        return None
    kernels = {_squarefree_kernel(x) for x in a}
    if len(kernels) != 1:
        return None
    m = kernels.pop()
    roots = []
    for x in a:
        r = isqrt(x * m)
        if r * r != x * m:
            return None
        roots.append(r)
    r6 = roots[5]
    for mask in range(16):
        signs = [1] + [1 - 2 * ((mask >> i) & 1) for i in range(4)]
        b = tuple(s * r for s, r in zip(signs, roots[:5]))
        if sum(b) in (r6, -r6):
            if sum(b) < 0:
                b = tuple(-x for x in b)
            g = 0
            for x in b:
                g = gcd(g, x)
            return tuple(x // g for x in b)
    return None


# ---------------------------------------------------------------------------
# the degree-16 discriminant polynomial F


def f_polynomial_exact(a) -> int:
    """The integer product over all 32 sign patterns of
    sum_i e_i sqrt(a_i) + sqrt(a_6), expanded in the group algebra of
    sign vectors (64 integer components indexed by subsets of {0..5})."""
    a = tuple(int(x) for x in a)
    assert len(a) == 6 and all(x != 0 for x in a)
    acc = {frozenset(): 1}
    for mask in range(32):
        signs = [1 - 2 * ((mask >> i) & 1) for i in range(5)] + [1]
        term = {frozenset((i,)): s for i, s in enumerate(signs)}
        nxt: dict = {}
        for s_key, s_val in acc.items():
            for t_key, t_val in term.items():
                c = s_val * t_val
                for i in s_key & t_key:
                    c *= a[i]
                key = s_key ^ t_key
                nxt[key] = nxt.get(key, 0) + c
        acc = {k: v for k, v in nxt.items() if v}
    assert set(acc) <= {frozenset()}, "product of all sign patterns must be rational"
    return acc.get(frozenset(), 0)


def _witness_factors(a):
    """Integer values of the 32 sign-pattern factors when a has an integer
    witness, or None.  Zero factors correspond to genuine degenerations."""
    a = normalize_param(a)
    b = find_integer_witness(a)
    if b is None:
        return None
    r6 = isqrt(a[5] * _squarefree_kernel(a[0]))
    factors = []
    for mask in range(32):
        signs = [1 - 2 * ((mask >> i) & 1) for i in range(5)]
        factors.append(sum(s * x for s, x in zip(signs, b)) + r6)
    return factors


def f_mod_p_quad_ext(ctx: PrimeContext, a, n: int | None = None) -> int:
    """F(a) mod p, evaluated by taking square roots of the a_i in F_{p^2}.
    The product over all 32 sign patterns lands in F_p for any root choice."""
    p = ctx.p
    if n is None:
        n = _pick_nonsquare(ctx)
    roots = [sqrt_in_quad_ext(ctx, x % p, n) for x in a]
    prod = QuadExtElement(1, 0, p, n)
    for mask in range(32):
        term = roots[5]
        for i in range(5):
            term = term + (-roots[i] if (mask >> i) & 1 else roots[i])
        prod = prod * term
    assert prod.in_base_field()
    return prod.u


def bad_prime_indicator(ctx_or_p, a, explain: bool = False):
    """Whether p divides a_1 * ... * a_6 * F(a), excluding factors of F that
    vanish identically over the integers (detected through an integer witness).

    Accepts a PrimeContext or a literal prime (p = 2 included, via exact
    integer arithmetic).  This is a necessary condition for bad reduction of
    the resolved threefold, not a sufficient one: for some parameter tuples
    the resolution degenerates at primes the product does not see, so the
    per-family reference sets take precedence where they exist.
    """
    a = normalize_param(a)
    if isinstance(ctx_or_p, PrimeContext):
        ctx, p = ctx_or_p, ctx_or_p.p
    else:
        ctx, p = None, int(ctx_or_p)

    for i, x in enumerate(a):
        if x % p == 0:
            return (True, f"coefficient a_{i + 1} divisible by {p}") if explain else True

    factors = _witness_factors(a)
    if factors is not None:
        rest = 1
        for f in factors:
            if f != 0:
                rest *= f
        bad = rest % p == 0
        return (bad, "discriminant" if bad else "good") if explain else bad

    if p == 2 or ctx is None:
        value = f_polynomial_exact(a)
        bad = value == 0 or value % p == 0
        return (bad, "discriminant" if bad else "good") if explain else bad

    bad = f_mod_p_quad_ext(ctx, a) == 0
    return (bad, "discriminant" if bad else "good") if explain else bad
