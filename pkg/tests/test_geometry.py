"""Witness geometry: interior nodes, the sixteen degeneration strata, the
surgery count for h^{12}, and the projective-small-resolution predicate."""
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cymod.geometry import (
    GENERIC_LABEL,
    InconclusiveWitness,
    SUBFAMILY_CENSUS,
    classify_subfamily,
    euler_numbers,
    h12_schoen,
    interior_nodes,
    node_count,
    phi,
    smooth_model_exists,
)
from cymod.refdata import FAMILIES

witness_tuples = st.tuples(*[st.integers(-6, 6).filter(bool)] * 5).filter(
    lambda b: sum(b) != 0
)


# ---------------------------------------------------------------------------
# oracle: interior nodes by definition


def oracle_interior_subsets(b):
    subsets = [
        frozenset(J)
        for r in range(6)
        for J in itertools.combinations(range(5), r)
        if sum(b[i] for i in J) == 0
    ]
    return sorted(subsets, key=lambda J: (len(J), sorted(J)))


@given(b=witness_tuples)
def test_interior_nodes_match_subset_definition(b):
    nodes = interior_nodes(b)
    assert [n.subset for n in nodes] == oracle_interior_subsets(b)
    assert nodes[0].subset == frozenset()  # the witness point itself
    for n in nodes:
        # flipping a zero-sum subset preserves the parameter image
        assert phi(n.witness) == phi(b)


def test_phi_and_node_count_basics():
    assert phi((1, 1, 1, 1, 1)) == (1, 1, 1, 1, 1, 25)
    assert phi((2, 2, 2, -2, -2)) == (1, 1, 1, 1, 1, 1)
    assert node_count((1, 1, 1, 1, 1, 25)) == 31
    assert node_count((1, 1, 1, 1, 1, 1)) == 40
    # non-witness parameters keep the 30 boundary nodes only
    assert node_count((1, 1, 1, 1, 1, 100)) == 30
    assert node_count((2, 3, 5, 7, 11, 13)) == 30
    # an explicit witness is validated against the parameter
    assert node_count((1, 1, 1, 1, 1, 25), witness=(1, 1, 1, 1, 1)) == 31
    with pytest.raises(AssertionError):
        node_count((1, 1, 1, 1, 1, 25), witness=(1, 1, 1, -1, -1))


def test_inconclusive_witness_raised():
    # (2,2,2,2,1,1): the pattern sqrt2+sqrt2-sqrt2-sqrt2-1+1 vanishes, but
    # no integer witness exists, so rational data cannot settle the count
    with pytest.raises(InconclusiveWitness):
        node_count((2, 2, 2, 2, 1, 1))


@given(b=witness_tuples)
@settings(max_examples=50)
def test_node_count_equals_30_plus_interior(b):
    assert node_count(phi(b)) == 30 + len(interior_nodes(b))


def test_euler_number_rows():
    assert euler_numbers(30) == (140, 80, 80)
    assert euler_numbers(31) == (144, 82, 84)
    assert euler_numbers(40) == (180, 100, 120)
    with pytest.raises(AssertionError):
        euler_numbers(29)


# ---------------------------------------------------------------------------
# the sixteen strata


# generic representatives, one per stratum index
INSTANCES = {
    1: (3, 5, 7, 11, 13),
    2: (3, -3, 5, 7, 11),
    3: (3, 5, -8, 7, 11),
    4: (3, -3, 3, 5, 7),
    5: (3, -3, 5, -2, 7),
    6: (3, -3, 5, -5, 7),
    7: (3, 3, 3, -3, 7),
    8: (3, 3, 3, -6, 7),
    9: (3, 3, 5, -5, 2),
    10: (3, 3, 5, 5, -8),
    11: (3, 3, -3, -3, 7),
    12: (1, 1, 1, 1, -1),
    13: (1, 1, 1, 2, -2),
    14: (1, 1, 1, 1, -2),
    15: (1, 1, 1, -1, -1),
}


def test_census_table_shape():
    assert len(SUBFAMILY_CENSUS) == 16
    assert [row.dimension for row in SUBFAMILY_CENSUS] == \
        [5, 4, 3, 3, 2, 2, 2, 1, 1, 1, 1, 1, 0, 0, 0, 0]
    assert [row.node_count - 30 for row in SUBFAMILY_CENSUS] == \
        [0, 1, 2, 2, 3, 3, 4, 4, 4, 4, 5, 6, 5, 5, 7, 10]
    # a projective small resolution is listed exactly four times
    assert [row.index for row in SUBFAMILY_CENSUS if row.euler_small is not None] == \
        [0, 6, 11, 15]


@pytest.mark.parametrize("index", sorted(INSTANCES))
def test_classification_of_generic_representatives(index):
    label = classify_subfamily(INSTANCES[index])
    assert label.index == index
    assert label.node_count == 30 + len(interior_nodes(INSTANCES[index]))
    e_big, e_small, e_mixed = euler_numbers(label.node_count)
    assert (label.euler_big, label.euler_mixed) == (e_big, e_mixed)
    if label.euler_small is not None:
        assert label.euler_small == e_small


def test_classification_uses_the_full_flip_orbit():
    """(1,-1,1,3,-3) reads as the stratum-4 pattern (a:-a:a:b:c) slot by slot,
    but a sign flip along a zero-sum subset exhibits the deeper stratum 11
    (a:a:-a:-a:b); the interior-node count 36 confirms the deeper one."""
    label = classify_subfamily((1, -1, 1, 3, -3))
    assert label.index == 11
    assert label.node_count == 36


@given(b=witness_tuples)
@settings(max_examples=50)
def test_classification_invariant_under_slot_permutation(b):
    label = classify_subfamily(b)
    perm = classify_subfamily(tuple(reversed(b)))
    assert (label.index, label.node_count) == (perm.index, perm.node_count)


def test_registry_strata_match_classifier():
    for fam in FAMILIES:
        assert classify_subfamily(fam.witness).index == fam.stratum


# ---------------------------------------------------------------------------
# h^{12}


def test_h12_of_named_families():
    want = {"x1": 0, "x9": 0, "x11144": 0, "x11449": 0,
            "x25": 4, "x11999": 2, "x1444_16": 1}
    for key, h in want.items():
        fam = FAMILIES.get(key)
        value, route = h12_schoen(fam.witness, return_route=True)
        assert value == h
        assert route == "surgery"


def test_h12_matches_stratum_dimension_on_representatives():
    for index, b in INSTANCES.items():
        label = classify_subfamily(b)
        assert h12_schoen(b) == label.dimension


def test_h12_exceptional_shapes_use_lookup():
    """The two root shapes with no valid triple splitting can never sum to
    zero, so they describe parameters outside the witness image: generic
    members of the five-dimensional stratum, h^{12} = 5."""
    for six in ((1, 1, 1, 1, 1, 2), (1, 1, 1, 1, 2, 3),
                (2, 2, 2, 2, 2, 4), (-1, -1, -1, -1, -1, -2)):
        assert sum(six) != 0
        value, route = h12_schoen(six, return_route=True)
        assert (value, route) == (5, "lookup")
    assert GENERIC_LABEL.dimension == 5


def test_h12_six_entry_input_matches_witness_input():
    for fam in FAMILIES:
        six = tuple(fam.witness) + (-sum(fam.witness),)
        assert h12_schoen(six) == h12_schoen(fam.witness) == fam.h12


# ---------------------------------------------------------------------------
# projective small resolutions


def test_smooth_model_predicate_on_named_families():
    want = {"x1": True, "x9": False, "x25": False, "x11144": False,
            "x11449": False, "x11999": False, "x1444_16": False}
    for key, expected in want.items():
        assert smooth_model_exists(FAMILIES.get(key).witness) == expected


def test_smooth_model_needs_the_sign_sum_side_condition():
    # (1,-1,1,-1,2) splits into zero pairs (1,-1),(1,-1),(2,-2) but the
    # leftover roots satisfy 1 + 1 - 2 = 0, so no projective model
    assert not smooth_model_exists((1, -1, 1, -1, 2))
    # stratum-6 representative: pairs exist and the side condition holds
    assert smooth_model_exists((3, -3, 5, -5, 7))
