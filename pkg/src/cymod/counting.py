"""Point counts over F_p of the resolved threefolds.

The count of the resolution with blown-up boundary nodes decomposes into a
boundary part depending only on p, a character sum over the torus, one
quadric-surface contribution per interior node, and a correction term that
appears exactly when a_1 = a_6 mod p and is carried by a plane cubic.  The
torus character sum is the only super-quadratic part; it runs as a numpy
kernel with the x-dependent factors hoisted out of the inner grid.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .elliptic import count_points_plane_cubic
from .fields import (
    PrimeContext,
    bad_prime_indicator,
    build_context,
    f_polynomial_exact,
    find_integer_witness,
    normalize_param,
)
from .geometry import InconclusiveWitness, interior_nodes, phi
from .refdata import FAMILIES


@dataclass(frozen=True)
class CountBreakdown:
    """#X(F_p) of the resolved threefold, with the terms it decomposes into:

    total = (48 p^2 + 46 p + 14) + torus_sum + interior_resolution + rho_correction

    where the constant equals boundary + boundary_resolution - 2(p^2 - 3p + 3).
    ``torus_sum`` is the full character sum (one kron(D) + 1 per torus triple);
    the actual number of torus points of the singular threefold is
    torus_sum - 2(p^2 - 3p + 3) + rho_correction.
    """

    p: int
    torus_sum: int
    boundary: int
    boundary_resolution: int
    interior_resolution: int
    rho_correction: int
    total: int


def count_torus_sum(ctx: PrimeContext, a) -> int:
    """The character sum over (F_p^*)^3: for each (x, y, z) the value
    kron(D) + 1 with D the discriminant of the remaining quadratic."""
    p = ctx.p
    a1, a2, a3, a4, a5, a6 = (x % p for x in normalize_param(a))
    assert all(x % p for x in (a1, a2, a3, a4, a5, a6)), f"a vanishes mod {p}"
    inv = ctx.inv
    kron = ctx.kron.astype(np.int64)
    xs = np.arange(1, p, dtype=np.int64)
    invs = inv[xs]
    base = (1 + xs[:, None] + xs[None, :]) % p
    tail = (a3 * invs[:, None] + a4 * invs[None, :]) % p
    lin = (a1 + a6) % p
    four = 4 * a1 * a6 % p
    total = 0
    for x, ix in zip(xs, invs):
        t1 = (x + base) % p
        t2 = (tail + (a2 * int(ix) + a5)) % p
        D = (t1 * t2 - lin) % p
        D = (D * D - four) % p
        total += int(kron[D].sum())
    return total + (p - 1) ** 3


def quadric_points(ctx: PrimeContext, b) -> int:
    """Points of the quadric surface attached to a node witness tuple b
    (5 entries): (p+1)^2 when (sum b) * (prod b) is a square mod p, p^2 + 1
    when it is not."""
    p = ctx.p
    prod = sum(b) % p
    for x in b:
        prod = prod * (x % p) % p
    chi = int(ctx.kron[prod])
    assert chi != 0, f"degenerate quadric mod {p}: {b}"
    return (p + 1) ** 2 if chi == 1 else p * p + 1


def _bad_primes_known(a):
    fam = FAMILIES.by_parameter(a)
    return fam.bad_primes if fam is not None else None


def is_good_prime(p: int, a, ctx: PrimeContext | None = None) -> bool:
    """Whether the resolved threefold has good reduction at p: the recorded
    set for the seven reference families, the discriminant heuristic else."""
    a = normalize_param(a)
    known = _bad_primes_known(a)
    if known is not None:
        return p not in known
    return not bad_prime_indicator(ctx if ctx is not None else p, a)


def count_resolved(ctx: PrimeContext, a, witness=None) -> CountBreakdown:
    """Point count of the resolution with blown-up boundary nodes, with its
    full decomposition.  The witness is located automatically; pass one to
    skip the search or to force a particular representative.

    Evaluation needs every a_i nonzero mod p and non-degenerate interior
    quadrics; that is weaker than good reduction (the reference count table
    itself lists values at some declared bad primes), so callers who need
    smoothness should consult is_good_prime separately."""
    a = normalize_param(a)
    p = ctx.p
    if any(x % p == 0 for x in a):
        raise ValueError(f"a={a} degenerates mod {p}")

    if witness is None:
        witness = find_integer_witness(a)
        if witness is None and f_polynomial_exact(a) == 0:
            raise InconclusiveWitness(
                f"{a} has no integer witness but its sign-pattern product vanishes"
            )
    else:
        assert phi(witness) == a, f"{witness} is not a witness for {a}"

    torus = count_torus_sum(ctx, a)

    interior = 0
    if witness is not None:
        for node in interior_nodes(witness):
            prod = sum(node.witness) % p
            for x in node.witness:
                prod = prod * (x % p) % p
            chi = int(ctx.kron[prod])
            assert chi != 0, f"degenerate interior node {node.subset} mod {p}"
            interior += p * (p + 1 + chi)

    rho = 0
    if (a[0] - a[5]) % p == 0:
        cubic = count_points_plane_cubic(ctx, a[1], a[2], a[4], a[3])
        rho = p * (cubic - 6)

    boundary = 50 * p * p + 10 * p + 20
    boundary_res = 30 * p
    constant = 48 * p * p + 46 * p + 14
    assert constant == boundary + boundary_res - 2 * (p * p - 3 * p + 3)
    return CountBreakdown(
        p=p,
        torus_sum=torus,
        boundary=boundary,
        boundary_resolution=boundary_res,
        interior_resolution=interior,
        rho_correction=rho,
        total=constant + torus + interior + rho,
    )


def count_torus_points(ctx: PrimeContext, a) -> int:
    """Number of points of the singular threefold inside the torus."""
    p = ctx.p
    a = normalize_param(a)
    torus = count_torus_sum(ctx, a)
    rho = 0
    if (a[0] - a[5]) % p == 0:
        rho = p * (count_points_plane_cubic(ctx, a[1], a[2], a[4], a[3]) - 6)
    return torus - 2 * (p * p - 3 * p + 3) + rho


def oracle_count_torus(ctx: PrimeContext, a) -> int:
    """Brute-force count of torus points: all (x_1, ..., x_4) in (F_p^*)^4
    with (x_1+x_2+x_3+x_4+1)(a_1/x_1 + ... + a_4/x_4 + a_5) = a_6.
    Quartic in p; only meant to validate the character-sum route."""
    p = ctx.p
    a1, a2, a3, a4, a5, a6 = (x % p for x in normalize_param(a))
    assert all(x % p for x in (a1, a2, a3, a4, a5, a6)), f"a vanishes mod {p}"
    xs = np.arange(1, p, dtype=np.int64)
    invs = ctx.inv[xs]
    S = (xs[:, None, None] + xs[None, :, None] + xs[None, None, :]) % p
    R = (a2 * invs[:, None, None] + a3 * invs[None, :, None] + a4 * invs[None, None, :]) % p
    total = 0
    for x1, ix1 in zip(xs, invs):
        lhs = ((int(x1) + S + 1) % p) * ((a1 * int(ix1) + R + a5) % p) % p
        total += int(np.count_nonzero(lhs == a6))
    return total


def _count_task(args):
    a, p = args
    return count_resolved(build_context(p), a)


def default_workers() -> int:
    return max(1, int(os.environ.get("CYMOD_WORKERS", "1")))


def count_many(a, primes, workers: int | None = None):
    """CountBreakdown at each listed prime, in order.  With workers > 1 the
    primes are distributed over a process pool; results join deterministically."""
    a = normalize_param(a)
    primes = list(primes)
    if workers is None:
        workers = default_workers()
    if workers <= 1 or len(primes) <= 1:
        return [count_resolved(build_context(p), a) for p in primes]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_count_task, [(a, p) for p in primes]))
