"""The cup-product span of the elliptic ruled surfaces and the splitting of
the middle cohomology.  The exact rank routine is validated against numpy's
floating-point rank on random integer matrices first."""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cymod.intersection import (
    CROSS_BLOCK,
    SELF_BLOCK,
    admissible_surfaces,
    block_sign,
    build_and_rank,
    build_matrix,
    disjoint_pair_warnings,
    integer_rank,
)
from cymod.refdata import COR_BLOCK_TABLE, COR_PAIR_ORDER, FAMILIES

FAMILY_ROOTS = {
    "x25": (1, 1, 1, 1, 1, 5),
    "x11999": (1, 1, 1, 3, 3, 3),
    "x1444_16": (1, 1, 2, 2, 2, 4),
}


# ---------------------------------------------------------------------------
# oracle: floating rank on integer matrices


@given(
    rows=st.integers(1, 6), cols=st.integers(1, 6),
    seed=st.integers(0, 10**6),
)
@settings(max_examples=60)
def test_integer_rank_matches_numpy(rows, cols, seed):
    rng = np.random.default_rng(seed)
    M = rng.integers(-4, 5, size=(rows, cols))
    assert integer_rank(M.tolist()) == np.linalg.matrix_rank(M)


def test_integer_rank_edge_cases():
    assert integer_rank([[0, 0], [0, 0]]) == 0
    assert integer_rank([[1, 2], [2, 4]]) == 1
    assert integer_rank([[1, 2], [3, 4]]) == 2


# ---------------------------------------------------------------------------
# admissible pairs and block signs


def test_admissible_pairs_per_family():
    assert admissible_surfaces((1, 1, 1, 1, 1, 25), FAMILY_ROOTS["x25"]) == \
        list(COR_PAIR_ORDER)
    assert admissible_surfaces((1, 1, 1, 9, 9, 9), FAMILY_ROOTS["x11999"]) == \
        [(1, 2), (1, 3), (2, 3)]
    assert admissible_surfaces((1, 1, 4, 4, 4, 16), FAMILY_ROOTS["x1444_16"]) == \
        [(1, 2)]
    # every candidate pair of the 35-node family fails the sign-sum condition
    assert admissible_surfaces((1, 1, 1, 1, 1, 9), (1, 1, 1, 1, 1, 3)) == []


def test_admissible_surfaces_validates_roots():
    with pytest.raises(AssertionError):
        admissible_surfaces((1, 1, 1, 1, 1, 25), (1, 1, 1, 1, 1, 4))


def test_block_sign_is_symmetric():
    pairs = list(itertools.combinations(range(1, 6), 2))
    for p1, p2 in itertools.combinations(pairs, 2):
        if len(set(p1) & set(p2)) == 1:
            assert block_sign(p1, p2) == block_sign(p2, p1)
    with pytest.raises(AssertionError):
        block_sign((1, 2), (3, 4))


# ---------------------------------------------------------------------------
# the embedded block table for (1:1:1:1:1:t)


def expand_block_table():
    M = [[0] * 20 for _ in range(20)]
    for r in range(10):
        for c in range(10):
            cell = COR_BLOCK_TABLE[r][c]
            if cell == "A":
                block, s = SELF_BLOCK, 1
            elif cell == "+B":
                block, s = CROSS_BLOCK, 1
            elif cell == "-B":
                block, s = CROSS_BLOCK, -1
            else:
                assert cell == "0"
                continue
            for u in range(2):
                for v in range(2):
                    M[2 * r + u][2 * c + v] = s * block[u][v]
    return M


def test_matrix_matches_embedded_block_table():
    assert build_matrix(list(COR_PAIR_ORDER)) == expand_block_table()


def test_matrix_is_antisymmetric():
    for roots_key in FAMILY_ROOTS:
        fam = FAMILIES.get(roots_key)
        pairs = admissible_surfaces(fam.a, FAMILY_ROOTS[roots_key])
        M = build_matrix(pairs)
        n = len(M)
        assert all(M[i][j] == -M[j][i] for i in range(n) for j in range(n))


# ---------------------------------------------------------------------------
# ranks and the splitting


def test_ranks_and_dim_v_of_the_nonrigid_families():
    expected = {"x25": (10, 8), "x11999": (3, 4), "x1444_16": (1, 2)}
    for key, (n_pairs, rank) in expected.items():
        fam = FAMILIES.get(key)
        split = build_and_rank(fam.a, FAMILY_ROOTS[key], fam.h12)
        assert len(split.pairs) == n_pairs
        assert split.rank == rank == split.dim_W
        assert split.dim_V == 2
        assert rank % 2 == 0  # antisymmetric pairing
        assert split.warnings == []


def test_no_pairs_still_splits():
    split = build_and_rank((1, 1, 1, 1, 1, 9), (1, 1, 1, 1, 1, 3), 0)
    assert split.pairs == [] and split.rank == 0 and split.dim_V == 2


def test_rank_overflow_is_an_error():
    with pytest.raises(ValueError, match="rank"):
        build_and_rank((1, 1, 1, 1, 1, 25), FAMILY_ROOTS["x25"], 0)


def test_disjoint_pair_warning_fires():
    # |r_5 - r_6| = 2 = 2 |r_1| violates the side condition for the zero block
    notes = disjoint_pair_warnings((1, 1, 1, 1, 3, 1), [(1, 2), (3, 4)])
    assert len(notes) == 1 and "zero block" in notes[0]
    # and stays quiet for the reference family
    assert disjoint_pair_warnings(FAMILY_ROOTS["x25"], list(COR_PAIR_ORDER)) == []
