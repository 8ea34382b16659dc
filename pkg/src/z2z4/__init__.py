"""Z2Z4-additive codes: construction, duality and exhaustive verification."""

from .algebra import (
    BinaryVector,
    MixedVector,
    Shape,
    co_support,
    distance,
    gray_map,
    inner_product,
    negate,
    order,
    sigma,
    support,
    weight,
)
from .code import CodeType, Z2Z4Code, compute_type, dual, dual_type, reduce, span
from .constructions import (
    build_cstar,
    build_D,
    build_perfect,
    extend,
    hamming_cyclic,
    simplex_cyclic,
)
from .verification import (
    Arrangement,
    AuditReport,
    exists_cyclic_arrangement,
    gray_image_linear,
    is_cyclic,
    is_perfect,
    uniqueness_search,
)

__version__ = "0.1.0"
