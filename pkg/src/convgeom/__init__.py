"""Finite convex geometries, their convex dimension, and representations by
convex bodies in the plane and by ellipsoids close to a ball."""

from .bodies import (
    BodyFamily,
    Circle,
    Ellipse,
    HullCertificate,
    Polygon,
    SampledBoundary,
    body_closure_operator,
    cdim_upper_bound_check,
    common_supporting_directions,
    conv_closure,
    convex_position,
    geometry_from_bodies,
    in_hull,
    semialgebraic_body,
    support,
    sweep_orderings,
)
from .core import (
    AxiomReport,
    ClosureReport,
    ConvexGeometry,
    GroundSet,
    OrderingFamily,
    SetFamily,
    check_anti_exchange,
    check_axioms,
    check_closure_operator,
    closure,
    closure_operator,
    free_geometry,
    geometry_from_orderings,
    isomorphic,
)
from .dimension import (
    CopointPoset,
    RationalPointConfig,
    cdim,
    copoints,
    crosspolytope_config,
    crosspolytope_geometry,
    generating_orderings,
    geometry_from_points,
    poset_width,
)
from .ellipsoid import (
    AxisEllipsoid,
    EllipsoidRepresentation,
    FSequence,
    ball_closeness,
    ellipsoid_support,
    f_sequence,
    represent_ellipsoids,
    verify_isomorphism_ellipsoid,
)
from .planar import Representation, check_sandwich, represent_planar, verify_isomorphism_planar
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "AxisEllipsoid",
    "BodyFamily",
    "Circle",
    "ClosureReport",
    "ConvexGeometry",
    "CopointPoset",
    "Ellipse",
    "EllipsoidRepresentation",
    "FSequence",
    "GroundSet",
    "HullCertificate",
    "OrderingFamily",
    "Polygon",
    "RationalPointConfig",
    "Representation",
    "SampledBoundary",
    "SetFamily",
    "ball_closeness",
    "body_closure_operator",
    "cdim",
    "cdim_upper_bound_check",
    "check_anti_exchange",
    "check_axioms",
    "check_closure_operator",
    "check_sandwich",
    "closure",
    "closure_operator",
    "common_supporting_directions",
    "conv_closure",
    "convex_position",
    "copoints",
    "crosspolytope_config",
    "crosspolytope_geometry",
    "ellipsoid_support",
    "f_sequence",
    "free_geometry",
    "generating_orderings",
    "geometry_from_bodies",
    "geometry_from_orderings",
    "geometry_from_points",
    "in_hull",
    "isomorphic",
    "poset_width",
    "render_svg",
    "represent_ellipsoids",
    "represent_planar",
    "semialgebraic_body",
    "support",
    "sweep_orderings",
    "verify_isomorphism_ellipsoid",
    "verify_isomorphism_planar",
]
