"""Random 2-complexes Y(n, p), non-abelian first cohomology with finite
coefficients, and small quotients of the fundamental group."""

from ._backend import NAME as BACKEND
from .cochain import (
    Cochain0,
    Cochain1,
    act,
    coboundary_support,
    d0,
    d1,
    d1_norm,
    is_cocycle,
    orbit_weight,
    support_size,
    vertex_gauge,
)
from .complex import Complex2, face_counts, sample_complex, triangles_of_edge
from .expansion import check_gauge_identity, verify_expansion_exhaustive, verify_expansion_sampled
from .experiments import (
    ExperimentConfig,
    estimate_cocycle_probability,
    quotient_experiment,
    threshold_sweep,
    union_bound_value,
)
from .groups import FiniteGroup, build_group, inverse, multiply, simple_group_catalog
from .search import (
    count_hom_orbits,
    enumerate_cocycles,
    has_nontrivial_class,
    has_small_quotient,
    presentation,
    star_gauge_fix,
)

__version__ = "0.1.0"
