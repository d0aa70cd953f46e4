"""The pencil of plane cubics (x+y+z)(a xy + b yz + c zx) = t xyz.

Exact discriminant and j-invariant of the fibre over t, a Weierstrass model,
Kodaira fibre types of the associated elliptic surface, and point counts /
Frobenius traces of the fibres over prime fields.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import inf

import numpy as np

from .fields import PrimeContext


def discriminant_product(a, b, c, t):
    """Product of t - (sqrt(a) + nu*sqrt(b) + mu*sqrt(c))^2 over the four
    sign pairs (nu, mu); a polynomial with integer coefficients."""
    u = t - a - b - c
    return (u * u + 4 * (b * c - a * b - a * c)) ** 2 - 16 * b * c * (u + 2 * a) ** 2


def j_invariant(a, b, c, t):
    """The j-invariant of the fibre over t, as a Fraction; math.inf for the
    degenerate fibres."""
    a, b, c, t = (Fraction(x) for x in (a, b, c, t))
    A = discriminant_product(a, b, c, t)
    den = (a * b * c * t) ** 2 * A
    if den == 0:
        return inf
    return (A + 16 * a * b * c * t) ** 3 / den


def weierstrass_model(a, b, c, t):
    """Coefficients (c2, c1, c0) of a monic cubic with y^2 = x^3 + c2 x^2 + c1 x + c0
    isomorphic to the fibre over t (the base change moving a rational point to
    the origin).  Exact Fractions; requires a != 0."""
    a, b, c, t = (Fraction(x) for x in (a, b, c, t))
    assert a != 0
    s = (2 * (t * t + a * a + b * b + c * c) - (t + a + b + c) ** 2) / (8 * a * a)
    d = discriminant_product(a, b, c, t) / (64 * a ** 4)
    return (2 * s, s * s - d, Fraction(0))


@dataclass(frozen=True)
class FibreType:
    """A degenerate fibre: kind "I" (cycle of n lines) or "III" (tangent pair),
    at the given base location (math.inf for the fibre at infinity)."""

    kind: str
    n: int
    location: object

    @property
    def euler(self) -> int:
        return self.n if self.kind == "I" else 3


def classify_fibres(a, b, c):
    """Degenerate fibres of the elliptic surface for the coefficient triple
    (a^2, b^2, c^2), given through its square roots a, b, c (nonzero rationals).

    Returns FibreType entries at infinity, at 0, and at the distinct nonzero
    values (a +- b +- c)^2, with I_m multiplicity m equal to the number of sign
    pairs landing on that value.  The Euler numbers always add up to 12.
    """
    a, b, c = (Fraction(x) for x in (a, b, c))
    assert a * b * c != 0
    sums = [a + e1 * b + e2 * c for e1 in (1, -1) for e2 in (1, -1)]
    vanishing = sum(1 for s in sums if s == 0)
    assert vanishing <= 1
    fibres = [FibreType("I", 6, inf)]
    fibres.append(FibreType("III", 0, Fraction(0)) if vanishing else FibreType("I", 2, Fraction(0)))
    locations = Counter(s * s for s in sums if s != 0)
    for loc in sorted(locations):
        fibres.append(FibreType("I", locations[loc], loc))
    assert sum(f.euler for f in fibres) == 12
    return fibres


def count_points_plane_cubic(ctx: PrimeContext, a, b, c, t) -> int:
    """Number of projective points of (x+y+z)(a xy + b yz + c zx) = t xyz
    over F_p.  The line z = 0 always carries exactly three points."""
    p = ctx.p
    a, b, c, t = a % p, b % p, c % p, t % p
    assert a != 0 and b != 0 and c != 0, "coefficient divisible by p"
    ys = np.arange(p, dtype=np.int64)
    total = 3
    for x in range(p):
        quad = (a * x % p) * ys % p
        lin = (b * ys + c * x) % p
        lhs = ((x + ys + 1) % p) * ((quad + lin) % p) % p
        rhs = (t * x % p) * ys % p
        total += int(np.count_nonzero((lhs - rhs) % p == 0))
    return total


def is_singular_fibre(ctx: PrimeContext, a, b, c, t) -> bool:
    """Whether the fibre over t degenerates mod p (p odd, p not dividing a*b*c)."""
    p = ctx.p
    assert a % p and b % p and c % p
    A = discriminant_product(a, b, c, t) % p
    if A == 0:
        return True
    num_s = (2 * (t * t + a * a + b * b + c * c) - (t + a + b + c) ** 2) % p
    s = num_s * int(ctx.inv[8 * a * a % p]) % p
    d = A * int(ctx.inv[64 * pow(a, 4, p) % p]) % p
    return (s * s - d) % p == 0


def trace_ap(ctx: PrimeContext, a, b, c, t) -> int:
    """Frobenius trace p + 1 - #E(F_p) of the fibre over t.  Raises when the
    fibre is singular mod p, rather than returning a misleading number."""
    if is_singular_fibre(ctx, a, b, c, t):
        raise ValueError(f"fibre over t={t} is singular mod {ctx.p}")
    return ctx.p + 1 - count_points_plane_cubic(ctx, a, b, c, t)
