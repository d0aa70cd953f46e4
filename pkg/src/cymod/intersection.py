"""Cup-product pairing on the middle cohomology spanned by elliptic ruled
surfaces inside the mixed resolution.

Each unordered index pair {i, j} with a_i = a_j contributes a surface whose
two natural 3-cycles pair by [[0, -2], [2, 0]] with themselves and by a
signed copy of [[0, 1], [-1, 0]] with the cycles of any surface sharing one
index.  The span's rank and the dimension of the complementary piece of the
middle cohomology follow by exact integer elimination.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .fields import normalize_param

SELF_BLOCK = ((0, -2), (2, 0))
CROSS_BLOCK = ((0, 1), (-1, 0))


def _sign_sums3(x, y, z, w):
    return [x + e1 * y + e2 * z + e3 * w
            for e1 in (1, -1) for e2 in (1, -1) for e3 in (1, -1)]


def admissible_surfaces(a, roots):
    """Index pairs {i, j} in {1..5} with a_i = a_j whose complementary roots
    r_k, r_l, r_m satisfy r_k +- r_l +- r_m +- r_6 != 0 for all signs.

    ``roots`` is the 6-tuple of square roots of a (up to a common factor).
    Returned pairs use 1-based indices, sorted lexicographically.
    """
    a = normalize_param(a)
    roots = tuple(int(x) for x in roots)
    assert len(roots) == 6 and all(x != 0 for x in roots)
    assert normalize_param([x * x for x in roots]) == a, (
        f"{roots} are not square roots of {a}"
    )
    pairs = []
    for i, j in itertools.combinations(range(5), 2):
        if a[i] != a[j]:
            continue
        k, l, m = (x for x in range(5) if x not in (i, j))
        if 0 in _sign_sums3(roots[k], roots[l], roots[m], roots[5]):
            continue
        pairs.append((i + 1, j + 1))
    return pairs


def block_sign(pair1, pair2) -> int:
    """Sign of the cross pairing between the surfaces of two admissible pairs
    sharing exactly one index: the parity of the permutation aligning their
    complementary index triples (shared indices to themselves, the leftover
    index of each to the other's)."""
    p1, p2 = set(pair1), set(pair2)
    assert len(p1 & p2) == 1, f"pairs {pair1}, {pair2} must share exactly one index"
    c1 = sorted(set(range(1, 6)) - p1)
    c2 = sorted(set(range(1, 6)) - p2)
    images = []
    for x in c1:
        y = x if x in c2 else (p1 - p2).pop()
        images.append(c2.index(y))
    parity = sum(
        1 for u, v in itertools.combinations(range(3), 2) if images[u] > images[v]
    )
    return -1 if parity % 2 else 1


def build_matrix(pairs):
    """The 2n x 2n intersection matrix of the 3-cycles carried by the given
    admissible pairs: SELF_BLOCK on the diagonal, signed CROSS_BLOCK where
    two pairs share an index, zero blocks where they are disjoint."""
    n = len(pairs)
    M = [[0] * (2 * n) for _ in range(2 * n)]
    for r in range(n):
        for c in range(n):
            if r == c:
                block, s = SELF_BLOCK, 1
            else:
                shared = len(set(pairs[r]) & set(pairs[c]))
                if shared == 0:
                    continue
                block, s = CROSS_BLOCK, block_sign(pairs[r], pairs[c])
            for u in range(2):
                for v in range(2):
                    M[2 * r + u][2 * c + v] = s * block[u][v]
    return M


def integer_rank(M) -> int:
    """Rank over Q, by exact rational elimination."""
    m = [[Fraction(x) for x in row] for row in M]
    rows, cols = len(m), len(m[0]) if m else 0
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pr = m[rank]
        for r in range(rank + 1, rows):
            if m[r][c]:
                f = m[r][c] / pr[c]
                m[r] = [x - f * y for x, y in zip(m[r], pr)]
        rank += 1
    return rank


@dataclass
class MiddleCohomologySplit:
    """Outcome of the span computation: the surfaces used, their pairing
    matrix, its rank (= dim W), and dim V = 2 + 2 h^{12} - dim W."""

    pairs: list
    matrix: list
    rank: int
    dim_W: int
    dim_V: int
    warnings: list = field(default_factory=list)


def disjoint_pair_warnings(roots, pairs):
    """Side conditions under which the zero block for disjoint admissible
    pairs {i,j}, {k,l} is justified: with m the remaining index,
    |r_m +- r_6| must avoid 0, 2|r_i| and 2|r_k|.  Returns a description of
    each violation instead of silently keeping the zero block."""
    notes = []
    for p1, p2 in itertools.combinations(pairs, 2):
        if set(p1) & set(p2):
            continue
        (m,) = set(range(1, 6)) - set(p1) - set(p2)
        values = {abs(roots[m - 1] + roots[5]), abs(roots[m - 1] - roots[5])}
        forbidden = {0, 2 * abs(roots[p1[0] - 1]), 2 * abs(roots[p2[0] - 1])}
        hits = values & forbidden
        if hits:
            notes.append(
                f"pairs {p1} and {p2}: |r_{m} +- r_6| meets {sorted(hits)}; "
                "the zero block is not justified here"
            )
    return notes


def build_and_rank(a, roots, h12: int) -> MiddleCohomologySplit:
    """Assemble the pairing matrix of all admissible surfaces for a and
    split the middle cohomology: dim W = rank, dim V = 2 + 2 h^{12} - rank."""
    pairs = admissible_surfaces(a, roots)
    M = build_matrix(pairs)
    rank = integer_rank(M)
    dim_V = 2 + 2 * h12 - rank
    if dim_V < 0:
        raise ValueError(f"rank {rank} exceeds 2 + 2*h12 = {2 + 2 * h12}")
    roots = tuple(int(x) for x in roots)
    return MiddleCohomologySplit(
        pairs=pairs,
        matrix=M,
        rank=rank,
        dim_W=rank,
        dim_V=dim_V,
        warnings=disjoint_pair_warnings(roots, pairs),
    )
