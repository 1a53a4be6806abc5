"""Supporting lines of planar compact convex sets and their slide curves."""

__version__ = "0.1.0"

from .bodies import (
    ConvexBody,
    Disc,
    Edge,
    Generic,
    Location,
    Polygon,
    Segment,
    Single,
    SinglePoint,
    body_from_json,
    contains,
    disc,
    ellipse,
    extreme_set,
    perimeter,
    point,
    polygon,
    ray_boundary_hit,
    segment,
)
from .convex_fn import (
    CallableConvexFunction,
    Chart,
    DPoint,
    PLConvexFunction,
    SubdiffInterval,
    chart_at,
    invert_t,
    one_sided_derivs,
    t_map,
    t_range,
)
from .errors import (
    DegenerateBody,
    GeometryError,
    InteriorRequired,
    InvalidBody,
    NotDisjoint,
    NotOnBoundary,
    NotOnParallelBoundary,
    NotOnSlideCurve,
    OutOfDomain,
    OutOfRange,
)
from .geom import (
    CylinderPoint,
    DirectedLine,
    Point,
    canonical_angle,
    euclid4,
    line_gap,
    manhattan4,
    signed_side,
)
from .parallel import (
    ParallelBody,
    boundary_to_slide,
    lipschitz_small_certificate,
    parallel_body,
    slide_to_boundary,
)
from .slide_curve import SlideCurve, arc_restriction, length, slide_curve
from .support import (
    PointedSupportingLine,
    SemitangentPair,
    closest_pair,
    semitangents,
    separating_line,
    supporting_line,
)
from .tangents import CommonTangentReport, Side, common_supporting_lines, side_of, tangent_count_sweep

__all__ = [name for name in dir() if not name.startswith("_")]
