"""Lattice data of the ambient toric variety and Hodge numbers.

The threefolds live in the toric fivefold whose fan is spanned by the root
system A_4; the relevant reflexive polytope is the convex hull of those
roots inside the rank-4 lattice of zero-sum integer 5-tuples.  This module
enumerates its lattice points, evaluates the mirror-symmetric Hodge numbers
of a generic anticanonical hypersurface, and assembles Hodge diamonds for
the resolutions of the nodal members.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .geometry import euler_numbers, smooth_model_exists

# number of lattice points of the dual polytope (one interior point, one per
# root, plus one interior point of each of the ten facet pairs' dual faces);
# carried as census data alongside the computed count for the polytope itself
DUAL_POLYTOPE_POINTS = 31


def enumerate_delta_points():
    """Lattice points of the root polytope: zero-sum integer 5-tuples with
    |x_i| <= 1 and |x_i + x_j| <= 1, i.e. the twenty A_4 roots and 0."""
    points = []
    for x in itertools.product((-1, 0, 1), repeat=5):
        if sum(x) != 0:
            continue
        if any(abs(x[i] + x[j]) > 1 for i in range(5) for j in range(i + 1, 5)):
            continue
        points.append(x)
    return points


def batyrev_hodge():
    """(h^{11}, h^{21}, e) of a crepant resolution of a generic anticanonical
    hypersurface: counts of dual-polytope and polytope lattice points, each
    reduced by 5."""
    h11 = DUAL_POLYTOPE_POINTS - 5
    h21 = len(enumerate_delta_points()) - 5
    return (h11, h21, 2 * (h11 - h21))


@dataclass(frozen=True)
class HodgeDiamond:
    """Hodge data of a smooth threefold with trivial canonical class and
    h^{10} = h^{20} = 0."""

    h11: int
    h12: int

    @property
    def euler(self) -> int:
        return 2 * (self.h11 - self.h12)

    def rows(self):
        h11, h12 = self.h11, self.h12
        return [
            (1,),
            (0, 0),
            (0, h11, 0),
            (1, h12, h12, 1),
            (0, h11, 0),
            (0, 0),
            (1,),
        ]


_RESOLUTIONS = {"big": 0, "small": 1, "mixed": 2}


def hodge_diamond(node_count: int, h12: int, resolution: str = "mixed", witness=None) -> HodgeDiamond:
    """Diamond of the chosen resolution of a threefold with the given node
    count: h^{11} = e/2 + h^{12} with e per resolution.

    A small resolution is only projective when the parameter splits into
    zero pairs with nonvanishing sign sums; pass the witness so that this
    can be checked, otherwise "small" is refused.
    """
    assert resolution in _RESOLUTIONS, f"unknown resolution {resolution!r}"
    if resolution == "small":
        if witness is None:
            raise ValueError("small resolution requires the witness to check projectivity")
        if not smooth_model_exists(witness):
            raise ValueError(f"no projective small resolution for witness {tuple(witness)}")
    e = euler_numbers(node_count)[_RESOLUTIONS[resolution]]
    assert e % 2 == 0
    return HodgeDiamond(e // 2 + h12, h12)
