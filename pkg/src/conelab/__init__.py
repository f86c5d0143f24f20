"""Exact Birkhoff factorisation of exponential sums over lattice cones."""
from .cones import (
    ConeElement,
    ConeError,
    LatticeCone,
    LocalityError,
    are_orthogonal,
    faces,
    make_cone,
    minkowski_product,
    smooth_subdivision,
    transverse_cone,
    triangulate,
    zero_cone,
)
from .conehopf import (
    J,
    birkhoff_of_sum,
    cone_antipode,
    cone_counit,
    coproduct,
    euler_maclaurin_verify,
    exp_integral,
    exp_sum,
    reduced_coproduct,
    renormalized_mu,
)
from .germs import (
    MeromorphicGerm,
    PoleError,
    are_independent_germs,
    decompose,
    evaluate_numeric,
    geometric_germ,
    pretty,
    project_minus,
    project_plus,
    support_span,
)
from .linalg import STANDARD, InnerProductForm, inner_product
from .locality import birkhoff_factorize, birkhoff_via_projection, convolution, convolution_inverse

__all__ = [
    "ConeElement",
    "ConeError",
    "LatticeCone",
    "LocalityError",
    "are_orthogonal",
    "faces",
    "make_cone",
    "minkowski_product",
    "smooth_subdivision",
    "transverse_cone",
    "triangulate",
    "zero_cone",
    "J",
    "birkhoff_of_sum",
    "cone_antipode",
    "cone_counit",
    "coproduct",
    "euler_maclaurin_verify",
    "exp_integral",
    "exp_sum",
    "reduced_coproduct",
    "renormalized_mu",
    "MeromorphicGerm",
    "PoleError",
    "are_independent_germs",
    "decompose",
    "evaluate_numeric",
    "geometric_germ",
    "pretty",
    "project_minus",
    "project_plus",
    "support_span",
    "STANDARD",
    "InnerProductForm",
    "inner_product",
    "birkhoff_factorize",
    "birkhoff_via_projection",
    "convolution",
    "convolution_inverse",
]
