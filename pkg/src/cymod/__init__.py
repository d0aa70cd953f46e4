"""Point counts, Hodge data and Frobenius-trace verification for a family of
nodal Calabi-Yau threefolds fibred by the plane cubics
(x+y+z)(a xy + b yz + c zx) = t xyz."""

from .counting import (
    CountBreakdown,
    count_many,
    count_resolved,
    count_torus_points,
    count_torus_sum,
    is_good_prime,
    oracle_count_torus,
    quadric_points,
)
from .elliptic import (
    FibreType,
    classify_fibres,
    count_points_plane_cubic,
    discriminant_product,
    j_invariant,
    trace_ap,
    weierstrass_model,
)
from .fields import (
    PrimeContext,
    QuadExtElement,
    bad_prime_indicator,
    build_context,
    f_polynomial_exact,
    find_integer_witness,
    kronecker,
    normalize_param,
    sqrt_in_quad_ext,
    sqrt_mod_p,
)
from .geometry import (
    InconclusiveWitness,
    InteriorNode,
    SubfamilyLabel,
    SUBFAMILY_CENSUS,
    classify_subfamily,
    euler_numbers,
    h12_schoen,
    interior_nodes,
    node_count,
    phi,
    smooth_model_exists,
)
from .intersection import (
    MiddleCohomologySplit,
    admissible_surfaces,
    block_sign,
    build_and_rank,
    build_matrix,
    integer_rank,
)
from .livne import (
    LivneReport,
    TraceRecord,
    evenness_sweep,
    extract_trace,
    livne_prime_set,
    verify_all,
    verify_family,
)
from .refdata import (
    FAMILIES,
    eta_gate,
    eta_product_coefficients,
    verify_tables_checksum,
)
from .toric import HodgeDiamond, batyrev_hodge, enumerate_delta_points, hodge_diamond

__version__ = "0.1.0"
