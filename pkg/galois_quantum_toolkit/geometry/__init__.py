from .pg import (
    SpaceTooLarge as SpaceTooLarge,
    UnsupportedDimension as UnsupportedDimension,
    SearchSpaceTooLarge as SearchSpaceTooLarge,
    NotAnArc as NotAnArc,
    NotAPlane as NotAPlane,
    SearchMode as SearchMode,
    ArcClass as ArcClass,
    ProjectiveSpace as ProjectiveSpace,
    ProjectiveSpaceSummary as ProjectiveSpaceSummary,
    PointSet as PointSet,
    ArcCheck as ArcCheck,
    ArcSearchResult as ArcSearchResult,
    point_count as point_count,
    line_count as line_count,
    build_pg as build_pg,
    is_arc as is_arc,
    line_through as line_through,
    tangent_profile as tangent_profile,
    classify_arc as classify_arc,
    is_ovoid as is_ovoid,
    max_arc_size as max_arc_size,
    max_2 as max_2,
    max_3 as max_3,
    bruck_ryser_excluded as bruck_ryser_excluded,
    incidence_matrix as incidence_matrix,
    plane_report as plane_report,
    incidence_equivalent as incidence_equivalent,
    arc_search as arc_search,
)
