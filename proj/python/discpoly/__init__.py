"""Random unit-radius hulls in disc-polygons."""

from ._discpoly import (
    DiscPolygon,
    GeometryError,
    HullResult,
    SmoothDisc,
    c_of_K,
    efron_check,
    lemma_suite,
    missed_area,
    oracle_vertex_set,
    pair_integral_estimator,
    parse_region_json,
    r_hull,
    regular_disc_polygon,
    run_vertex_experiment,
    sample_uniform,
    smooth_limits,
    spindle,
)

__all__ = [
    "DiscPolygon",
    "GeometryError",
    "HullResult",
    "SmoothDisc",
    "c_of_K",
    "efron_check",
    "lemma_suite",
    "missed_area",
    "oracle_vertex_set",
    "pair_integral_estimator",
    "parse_region_json",
    "r_hull",
    "regular_disc_polygon",
    "run_vertex_experiment",
    "sample_uniform",
    "smooth_limits",
    "spindle",
]
