"""Singular locus and deformation data of the threefolds
(X_1+...+X_5)(a_1/X_1+...+a_5/X_5) = a_6.

Each such threefold has thirty nodes on the toric boundary; parameter tuples
of the form a = (b_1^2 : ... : b_5^2 : (b_1+...+b_5)^2) acquire extra nodes
inside the torus, indexed by the subsets of the b_i summing to zero.  This
module finds those witnesses b, counts nodes, classifies the parameter into
one of sixteen degeneration strata, and computes h^{12} of a resolution by
a fibre-product surgery count, together with the Euler numbers of the three
natural resolutions.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import gcd

from .fields import (
    f_polynomial_exact,
    find_integer_witness,
    normalize_param,
)


class InconclusiveWitness(ValueError):
    """The parameter admits no integer witness yet the sign-pattern product
    vanishes, so the node count cannot be settled by rational data alone."""


def _check_witness(b) -> tuple:
    b = tuple(int(x) for x in b)
    assert len(b) == 5, f"witness must have 5 entries, got {len(b)}"
    assert all(x != 0 for x in b), f"witness entries must be nonzero: {b}"
    assert sum(b) != 0, f"witness coordinate sum must be nonzero: {b}"
    return b


def phi(b) -> tuple:
    """The parameter tuple (b_1^2 : ... : b_5^2 : (sum b_i)^2)."""
    b = _check_witness(b)
    return normalize_param(tuple(x * x for x in b) + (sum(b) ** 2,))


@dataclass(frozen=True)
class InteriorNode:
    """A torus node of X_phi(b): the subset J with sum_{i in J} b_i = 0,
    together with the sign-flipped witness that exhibits it."""

    subset: frozenset
    witness: tuple


def interior_nodes(b):
    """Nodes of X_phi(b) inside the torus, one per subset of the witness
    entries summing to zero (the empty subset included), sorted by size."""
    b = _check_witness(b)
    nodes = []
    for mask in range(32):
        J = frozenset(i for i in range(5) if (mask >> i) & 1)
        if sum(b[i] for i in J) == 0:
            flipped = tuple(-x if i in J else x for i, x in enumerate(b))
            nodes.append(InteriorNode(J, flipped))
    nodes.sort(key=lambda n: (len(n.subset), sorted(n.subset)))
    return nodes


def node_count(a, witness=None) -> int:
    """Total number of nodes: 30 boundary nodes plus the interior ones.

    Raises InconclusiveWitness when a has no integer witness but the exact
    sign-pattern product vanishes (an irrational witness would be needed)."""
    a = normalize_param(a)
    if witness is None:
        witness = find_integer_witness(a)
    else:
        witness = _check_witness(witness)
        assert phi(witness) == a, f"{witness} is not a witness for {a}"
    if witness is None:
        if f_polynomial_exact(a) == 0:
            raise InconclusiveWitness(
                f"{a} has no integer witness but its sign-pattern product vanishes"
            )
        return 30
    return 30 + len(interior_nodes(witness))


def euler_numbers(s: int):
    """Euler numbers (big, small, mixed) of the three resolutions of a
    threefold with s nodes: all nodes blown up, all nodes given small
    resolutions, and only the 30 boundary nodes blown up."""
    assert s >= 30
    return (20 + 4 * s, 20 + 2 * s, 80 + 4 * (s - 30))


# ---------------------------------------------------------------------------
# the sixteen degeneration strata


@dataclass(frozen=True)
class SubfamilyLabel:
    index: int
    pattern: str
    dimension: int
    node_count: int
    euler_big: int
    euler_mixed: int
    euler_small: int | None


def _zero_pairs(v):
    return [(i, j) for i in range(6) for j in range(i + 1, 6) if v[i] + v[j] == 0]


def _zero_triples(v):
    return [c for c in itertools.combinations(range(6), 3) if sum(v[i] for i in c) == 0]


def _match_f2(v):
    return bool(_zero_pairs(v))


def _match_f3(v):
    return bool(_zero_triples(v))


def _match_f4(v):
    c = Counter(v)
    return any(c[x] >= 2 and c[-x] >= 1 for x in c)


def _match_f5(v):
    pairs = _zero_pairs(v)
    triples = _zero_triples(v)
    return any(len(set(p) & set(t)) == 1 for p in pairs for t in triples)


def _match_f6(v):
    pairs = _zero_pairs(v)
    return any(not set(p) & set(q) for p in pairs for q in pairs)


def _match_f7(v):
    c = Counter(v)
    return any(c[x] >= 3 and c[-x] >= 1 for x in c)


def _match_f8(v):
    c = Counter(v)
    return any(c[x] >= 3 and c[-2 * x] >= 1 for x in c)


def _match_f9(v):
    for i, j in itertools.combinations(range(6), 2):
        if v[i] != v[j]:
            continue
        a = v[i]
        rest = [k for k in range(6) if k not in (i, j)]
        for k, l in itertools.combinations(rest, 2):
            if v[k] + v[l] != 0:
                continue
            m, n = (x for x in rest if x not in (k, l))
            if sorted((v[m], v[n])) == sorted((v[k] - a, -v[k] - a)):
                return True
    return False


def _match_f10(v):
    c = Counter(v)
    if sorted(c.values()) != [2, 2, 2]:
        return False
    return sum(c) == 0


def _match_f11(v):
    c = Counter(v)
    return any(c[x] >= 2 and c[-x] >= 2 for x in c)


def _match_f12(v):
    c = Counter(v)
    for x, k in c.items():
        if k == 4 and sorted(y for y in v if y != x) == sorted((-x, -3 * x)):
            return True
    return False


def _match_f13(v):
    c = Counter(v)
    for x, k in c.items():
        if k >= 3:
            rest = list(v)
            for _ in range(3):
                rest.remove(x)
            if sorted(rest) == sorted((2 * x, -2 * x, -3 * x)):
                return True
    return False


def _match_f14(v):
    c = Counter(v)
    return any(k == 4 and c[-2 * x] == 2 for x, k in c.items())


def _match_f15(v):
    c = Counter(v)
    return any(k == 3 and c[-x] == 3 for x, k in c.items())


# index, five-slot pattern, dimension, interior nodes of a generic member,
# matcher on the associated zero-sum six-tuple, and whether the census lists
# a projective small resolution (its Euler number) for the stratum.
_STRATA = [
    (1, "(a:b:c:d:e)", 4, 1, lambda v: True, False),
    (2, "(a:-a:b:c:d)", 3, 2, _match_f2, False),
    (3, "(a:b:-a-b:c:d)", 3, 2, _match_f3, False),
    (4, "(a:-a:a:b:c)", 2, 3, _match_f4, False),
    (5, "(a:-a:b:a-b:c)", 2, 3, _match_f5, False),
    (6, "(a:-a:b:-b:c)", 2, 4, _match_f6, True),
    (7, "(a:a:a:-a:b)", 1, 4, _match_f7, False),
    (8, "(a:a:a:-2a:b)", 1, 4, _match_f8, False),
    (9, "(a:a:b:-b:b-a)", 1, 4, _match_f9, False),
    (10, "(a:a:b:b:-a-b)", 1, 5, _match_f10, False),
    (11, "(a:a:-a:-a:b)", 1, 6, _match_f11, True),
    (12, "(1:1:1:1:-1)", 0, 5, _match_f12, False),
    (13, "(1:1:1:2:-2)", 0, 5, _match_f13, False),
    (14, "(1:1:1:1:-2)", 0, 7, _match_f14, False),
    (15, "(1:1:1:-1:-1)", 0, 10, _match_f15, True),
]


def _label(index: int, pattern: str, dim: int, extra: int, has_small: bool) -> SubfamilyLabel:
    s = 30 + extra
    e_big, e_small, e_mixed = euler_numbers(s)
    return SubfamilyLabel(index, pattern, dim, s, e_big, e_mixed, e_small if has_small else None)


GENERIC_LABEL = _label(0, "a in P^5, all a_i nonzero", 5, 0, True)

SUBFAMILY_CENSUS = [GENERIC_LABEL] + [
    _label(i, pat, dim, extra, small) for i, pat, dim, extra, _, small in _STRATA
]


def _six_tuple(b) -> tuple:
    return tuple(b) + (-sum(b),)


def _flip_orbit(six):
    """All sign changes of a zero-sum six-tuple along zero-sum subsets;
    these are exactly the six-tuples with the same parameter image."""
    seen = set()
    for mask in range(64):
        flipped = tuple(-x if (mask >> i) & 1 else x for i, x in enumerate(six))
        if sum(flipped) == 0:
            seen.add(flipped)
    return seen


def classify_subfamily(b) -> SubfamilyLabel:
    """The smallest degeneration stratum containing phi(b), up to coordinate
    permutation: minimal dimension, then lowest index."""
    b = _check_witness(b)
    orbit = _flip_orbit(_six_tuple(b))
    best = None
    for index, pattern, dim, extra, match, small in _STRATA:
        if any(match(v) for v in orbit):
            if best is None or (dim, index) < (best.dimension, best.index):
                best = _label(index, pattern, dim, extra, small)
    assert best is not None  # stratum 1 matches everything
    observed = 30 + len(interior_nodes(b))
    assert best.node_count == observed, (
        f"stratum {best.index} predicts {best.node_count} nodes, found {observed} for {b}"
    )
    return best


# ---------------------------------------------------------------------------
# h^{12} via the fibre-product surgery count


def _sign_sums(t):
    x, y, z = t
    return [x + e1 * y + e2 * z for e1 in (1, -1) for e2 in (1, -1)]


def _is_exceptional_shape(six) -> bool:
    m = sorted(abs(x) for x in six)
    g = 0
    for x in m:
        g = gcd(g, x)
    m = [x // g for x in m]
    return m in ([1, 1, 1, 1, 1, 2], [1, 1, 1, 1, 2, 3])


def _surgery_value(t1, t2) -> int:
    s1 = Counter(s * s for s in _sign_sums(t1))
    s2 = Counter(s * s for s in _sign_sums(t2))
    d = 1 if sorted(x * x for x in t1) == sorted(x * x for x in t2) else 0
    overlap = sum(s1[s] + s2[s] - 1 for s in set(s1) & set(s2))
    return 5 + d - overlap


def h12_schoen(b, return_route: bool = False):
    """h^{12} of the resolved threefold attached to the root tuple b.

    b may be a 5-entry witness (the sixth root is -sum(b)) or a full 6-entry
    root tuple.  The value is computed from the degenerate fibres of the two
    elliptic surfaces of a fibre-product model, for any splitting of the six
    roots into two triples with nonvanishing sign sums; all admissible
    splittings must agree.  The two root shapes admitting no such splitting
    (all entries equal but one twice as large; four equal, one doubled, one
    tripled) cannot occur for zero-sum tuples and fall back to the census
    value for parameters outside the witness image, namely 5.
    """
    b = tuple(int(x) for x in b)
    if len(b) == 5:
        six = _six_tuple(_check_witness(b))
    else:
        assert len(b) == 6, f"need 5 or 6 entries, got {len(b)}"
        assert all(x != 0 for x in b), f"root entries must be nonzero: {b}"
        six = b
    values = []
    for combo in itertools.combinations(range(1, 6), 2):
        first = (0,) + combo
        t1 = [six[i] for i in first]
        t2 = [six[i] for i in range(6) if i not in first]
        if 0 in _sign_sums(t1) or 0 in _sign_sums(t2):
            continue
        values.append(_surgery_value(t1, t2))
    if not values:
        assert _is_exceptional_shape(six), (
            f"no admissible triple splitting for non-exceptional roots {six}"
        )
        return (5, "lookup") if return_route else 5
    assert len(set(values)) == 1, (
        f"triple splittings of {six} disagree: {sorted(set(values))}"
    )
    return (values[0], "surgery") if return_route else values[0]


def smooth_model_exists(b) -> bool:
    """Whether the parameter phi(b) admits a projective small resolution:
    true exactly when some sign-flipped permutation of the six roots splits
    into three zero pairs (x,-x), (y,-y), (z,-z) with x +- y +- z always
    nonzero."""
    b = _check_witness(b)
    for v in _flip_orbit(_six_tuple(b)):
        pairs = _zero_pairs(v)
        for p, q, r in itertools.combinations(pairs, 3):
            used = set(p) | set(q) | set(r)
            if len(used) != 6:
                continue
            x, y, z = v[p[0]], v[q[0]], v[r[0]]
            if 0 not in _sign_sums((x, y, z)):
                return True
    return False
