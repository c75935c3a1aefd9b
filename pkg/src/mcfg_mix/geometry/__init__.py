"""Exact geometry of the paths of a split pair (x, y)."""

from .config import (
    ConstraintReport,
    Configuration,
    Crossing,
    Excursion,
    GeometryError,
    SplitWitness,
    all_excursions,
    check_constraints,
    contacts_with_line,
    crossing_count,
    crossings_of_line,
    find_excursions,
    four_split_conditions,
    line_range,
)
from .export import config_to_dict, to_json, to_svg
from .normal import BlockReason, NormalForm, Truncation, normalize, offset_schedule, truncate
from .paths import (
    ORIGIN,
    Contact,
    LatticePath,
    LatticePoint,
    PolyPath,
    RationalPoint,
    intersection_points,
    intersections,
    is_closed,
    path_distances_at,
    path_of,
    point,
    segment_intersection,
    self_intersections,
    subpath,
)
from .regions import excursion_area, faces, is_filled, shoelace

__all__ = [
    "ORIGIN", "BlockReason", "Configuration", "ConstraintReport", "Contact", "Crossing",
    "Excursion", "GeometryError", "LatticePath", "LatticePoint", "NormalForm", "PolyPath",
    "RationalPoint", "SplitWitness", "Truncation", "all_excursions", "check_constraints",
    "config_to_dict", "contacts_with_line", "crossing_count", "crossings_of_line",
    "excursion_area", "faces", "find_excursions", "four_split_conditions", "intersection_points",
    "intersections", "is_closed", "is_filled", "line_range", "normalize", "offset_schedule",
    "path_distances_at", "path_of", "point", "segment_intersection", "self_intersections",
    "shoelace", "subpath", "to_json", "to_svg", "truncate",
]
