"""Sweep-line geometry: empty regions, union measures, containment, automaton subsequences."""

from ._geosweep import (
    GeosweepError,
    circle_containment,
    largest_empty_circle,
    largest_empty_hyperrect,
    max_weight_subsequence,
    preset_alternating,
    preset_lis,
    rect_containment,
    rect_containment_counts,
    union_area_circles,
    union_area_polygons,
    union_volume,
)

__all__ = [
    "GeosweepError",
    "circle_containment",
    "largest_empty_circle",
    "largest_empty_hyperrect",
    "max_weight_subsequence",
    "preset_alternating",
    "preset_lis",
    "rect_containment",
    "rect_containment_counts",
    "union_area_circles",
    "union_area_polygons",
    "union_volume",
]
