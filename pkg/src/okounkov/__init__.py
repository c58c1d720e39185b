"""Exact Zariski decompositions, Minkowski bases, and Okounkov-body polygons
for smooth projective surfaces with rational polyhedral effective cone."""

from .basis import (
    BasisElement,
    MinkowskiBasis,
    basis_element_for_support,
    minkowski_basis,
    nef_boundary_rays,
)
from .body import (
    BodyPolygon,
    SimplexSpec,
    area,
    body_direct,
    body_from_decomposition,
    minkowski_sum,
    mu,
    scale,
    simplex_body,
)
from .catalog import CATALOG, collinear_three, del_pezzo, k3_example
from .decompose import Decomposition, decompose, decompose_big, tau_max
from .errors import (
    DomainError,
    InputError,
    InternalError,
    OkounkovError,
    ResourceLimitError,
)
from .lattice import (
    Cone,
    DivClass,
    IntersectionForm,
    Rat,
    SurfaceModel,
    cone_contains,
    dual_cone,
    intersect,
    is_negative_definite,
    primitive_integral,
)
from .zariski import (
    ChamberSupport,
    ZariskiPair,
    enumerate_chamber_supports,
    neg_support,
    null_set,
    zariski_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "BasisElement",
    "BodyPolygon",
    "CATALOG",
    "ChamberSupport",
    "Cone",
    "Decomposition",
    "DivClass",
    "DomainError",
    "InputError",
    "InternalError",
    "IntersectionForm",
    "MinkowskiBasis",
    "OkounkovError",
    "Rat",
    "ResourceLimitError",
    "SimplexSpec",
    "SurfaceModel",
    "ZariskiPair",
    "area",
    "basis_element_for_support",
    "body_direct",
    "body_from_decomposition",
    "collinear_three",
    "cone_contains",
    "decompose",
    "decompose_big",
    "del_pezzo",
    "dual_cone",
    "enumerate_chamber_supports",
    "intersect",
    "is_negative_definite",
    "k3_example",
    "minkowski_basis",
    "minkowski_sum",
    "mu",
    "neg_support",
    "nef_boundary_rays",
    "null_set",
    "primitive_integral",
    "scale",
    "simplex_body",
    "tau_max",
    "zariski_decompose",
]
