"""
Projective spaces PG(delta, q) coordinatized over F_q, with arcs, caps, ovals,
hyperovals and ovoids, exhaustive and greedy arc search, incidence matrices and the
Bruck-Ryser test.
"""

import itertools
import math
from enum import Enum
from typing import Sequence

import networkx as nx
import numpy as np
from pydantic import Field, model_validator

from galois_quantum_toolkit.coding import PlaneAxiomsReport, plane_axioms_check
from galois_quantum_toolkit.fields import FieldSpec, GaloisField, to_galois
from galois_quantum_toolkit.models import IntArray, Model
from galois_quantum_toolkit.utils import (
    ToolkitError,
    create_logger,
    enum_from_value,
    parallel_map,
)

logger = create_logger(__name__)

MAX_VECTORS = 2**20
MAX_EXHAUSTIVE_POINTS = 21
MAX_PAIR_POINTS = 4096
MAX_VERIFIED_POINTS = 512


class SpaceTooLarge(ToolkitError): ...


class UnsupportedDimension(ToolkitError): ...


class SearchSpaceTooLarge(ToolkitError): ...


class NotAnArc(ToolkitError): ...


class NotAPlane(ToolkitError): ...


class SearchMode(Enum):
    EXHAUSTIVE = "exhaustive"
    GREEDY = "greedy"


class ArcClass(Enum):
    OVAL = "oval"
    HYPEROVAL = "hyperoval"
    ARC = "arc"


def _digits(q: int, length: int, count: int) -> np.ndarray:
    """Base-q digits of 0..count-1, most significant first."""
    numbers = np.arange(count, dtype=np.int64)[:, None]
    places = q ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return (numbers // places[None, :]) % q


def point_count(delta: int, q: int) -> int:
    return (q ** (delta + 1) - 1) // (q - 1)


def line_count(delta: int, q: int) -> int:
    dim = delta + 1
    return (q**dim - 1) * (q ** (dim - 1) - 1) // ((q**2 - 1) * (q - 1))


class ProjectiveSpace:
    """
    PG(delta, q) as an incidence structure.

    Points are the canonical representatives of the 1-dimensional subspaces of
    F_q^(delta+1) (first nonzero coordinate equal to 1, coordinates as canonical field
    indices) in lexicographic order. Lines are sorted tuples of point indices, in
    lexicographic order.
    """

    def __init__(self, delta: int, field: GaloisField):
        if delta not in (2, 3):
            raise UnsupportedDimension(f"projective dimension must be 2 or 3, got {delta}")
        self.delta = delta
        self.field = field
        self.q = field.q
        self.dim = delta + 1
        self.logger = create_logger(__class__.__name__)

        if self.q**self.dim > MAX_VECTORS:
            raise SpaceTooLarge(
                f"PG({delta},{self.q}) needs {self.q**self.dim} vectors (bound {MAX_VECTORS})"
            )

        self._places = self.q ** np.arange(self.dim - 1, -1, -1, dtype=np.int64)
        self.points = self._enumerate_points()
        self._point_of = self._build_point_lookup()
        self.lines = self._enumerate_lines()
        self._pair_line: np.ndarray | None = None
        self._point_lines: np.ndarray | None = None
        self.verified = self._verify()

        self.logger.info(
            f"Built PG({delta},{self.q}): {len(self.points)} points, {len(self.lines)} lines"
        )

    def __repr__(self) -> str:
        return f"ProjectiveSpace(delta={self.delta}, q={self.q})"

    @property
    def num_points(self) -> int:
        return len(self.points)

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    def _encode(self, vectors: np.ndarray) -> np.ndarray:
        return np.asarray(vectors, dtype=np.int64) @ self._places

    def _enumerate_points(self) -> np.ndarray:
        vectors = _digits(self.q, self.dim, self.q**self.dim)[1:]
        first = np.argmax(vectors != 0, axis=1)
        canonical = vectors[np.arange(len(vectors)), first] == 1
        return vectors[canonical]

    def _build_point_lookup(self) -> np.ndarray:
        lookup = np.full(self.q**self.dim, -1, dtype=np.int64)
        labels = np.arange(len(self.points), dtype=np.int64)
        for scalar in range(1, self.q):
            lookup[self._encode(self.field.mul_array(scalar, self.points))] = labels
        return lookup

    def _enumerate_lines(self) -> np.ndarray:
        # each line is the row space of a unique 2 x dim reduced echelon matrix
        q, dim, field = self.q, self.dim, self.field
        blocks = []
        for a, b in itertools.combinations(range(dim), 2):
            free_first = [c for c in range(a + 1, dim) if c != b]
            free_second = list(range(b + 1, dim))
            width = len(free_first) + len(free_second)
            digits = _digits(q, width, q**width)
            first = np.zeros((len(digits), dim), dtype=np.int64)
            second = np.zeros((len(digits), dim), dtype=np.int64)
            first[:, a] = 1
            second[:, b] = 1
            first[:, free_first] = digits[:, : len(free_first)]
            second[:, free_second] = digits[:, len(free_first) :]

            members = [self._point_of[self._encode(first)]]
            for t in range(q):
                combination = field.add_array(field.mul_array(t, first), second)
                members.append(self._point_of[self._encode(combination)])
            blocks.append(np.sort(np.stack(members, axis=1), axis=1))
        lines = np.concatenate(blocks)
        return lines[np.lexsort(lines.T[::-1])]

    def _verify(self) -> bool:
        expected_points = point_count(self.delta, self.q)
        expected_lines = line_count(self.delta, self.q)
        if self.num_points != expected_points or self.num_lines != expected_lines:
            raise ToolkitError(
                f"PG({self.delta},{self.q}) has {self.num_points} points and "
                f"{self.num_lines} lines, expected {expected_points} and {expected_lines}"
            )
        if np.any(np.diff(self.lines, axis=1) <= 0) or np.any(self.lines < 0):
            raise ToolkitError("a line does not have q + 1 distinct points")
        if self.delta != 2 or self.num_points > MAX_VERIFIED_POINTS:
            return False
        report = plane_axioms_check(incidence_matrix(self))
        if not report.passed:
            raise ToolkitError(f"PG(2,{self.q}) fails the plane axioms: {report}")
        return True

    @property
    def pair_line(self) -> np.ndarray:
        """pair_line[i, j] is the index of the line through points i != j."""
        if self._pair_line is None:
            if self.num_points > MAX_PAIR_POINTS:
                raise SpaceTooLarge(
                    f"pair table for {self.num_points} points exceeds {MAX_PAIR_POINTS}"
                )
            table = np.full((self.num_points, self.num_points), -1, dtype=np.int32)
            labels = np.arange(self.num_lines, dtype=np.int32)
            table[self.lines[:, :, None], self.lines[:, None, :]] = labels[:, None, None]
            np.fill_diagonal(table, -1)
            self._pair_line = table
        return self._pair_line

    @property
    def point_lines(self) -> np.ndarray:
        """Row p lists the lines through point p."""
        if self._point_lines is None:
            flat = self.lines.ravel()
            owners = np.repeat(np.arange(self.num_lines), self.lines.shape[1])
            order = np.argsort(flat, kind="stable")
            self._point_lines = owners[order].reshape(self.num_points, -1)
        return self._point_lines

    def point_index(self, coordinates: Sequence[int]) -> int:
        """Index of the point spanned by a nonzero coordinate vector."""
        vector = np.asarray(coordinates, dtype=np.int64)
        if vector.shape != (self.dim,) or np.any(vector < 0) or np.any(vector >= self.q):
            raise ToolkitError(f"{list(coordinates)} is not a vector of F_{self.q}^{self.dim}")
        if not np.any(vector):
            raise ToolkitError("the zero vector spans no point")
        return int(self._point_of[self._encode(vector)])

    def coordinates(self, index: int) -> list[int]:
        return self.points[index].tolist()

    def point_set(self, indices: Sequence[int]) -> "PointSet":
        return PointSet(space=self, indices=sorted(set(int(i) for i in indices)))

    def point_set_from_coordinates(self, vectors: Sequence[Sequence[int]]) -> "PointSet":
        return self.point_set([self.point_index(vector) for vector in vectors])

    def summary(self) -> "ProjectiveSpaceSummary":
        return ProjectiveSpaceSummary(
            delta=self.delta,
            q=self.q,
            field=self.field.spec,
            point_count=self.num_points,
            line_count=self.num_lines,
            points_per_line=self.q + 1,
            points=self.points,
            lines=self.lines,
            verified=self.verified,
        )


class ProjectiveSpaceSummary(Model):
    delta: int
    q: int
    field: FieldSpec
    point_count: int
    line_count: int
    points_per_line: int
    points: IntArray = Field(description="Canonical coordinates of each point")
    lines: IntArray = Field(description="Sorted point indices of each line")
    verified: bool = Field(description="Whether the plane axioms were checked pairwise")


class PointSet(Model):
    space: ProjectiveSpace = Field(exclude=True)
    indices: list[int]

    @model_validator(mode="after")
    def _check_indices(self) -> "PointSet":
        if self.indices != sorted(set(self.indices)):
            raise ValueError("point indices must be sorted and distinct")
        if any(not 0 <= i < self.space.num_points for i in self.indices):
            raise ValueError(f"point index out of range for {self.space!r}")
        return self

    def __len__(self) -> int:
        return len(self.indices)

    def mask(self) -> np.ndarray:
        mask = np.zeros(self.space.num_points, dtype=bool)
        mask[self.indices] = True
        return mask

    def coordinates(self) -> list[list[int]]:
        return [self.space.coordinates(i) for i in self.indices]


class ArcCheck(Model):
    delta: int
    size: int
    no_three_collinear: bool = Field(description="Cap condition")
    independent: bool = Field(description="Any delta + 1 of the points span the whole space")
    collinear_triple: list[int] | None = Field(
        default=None, description="First collinear triple, if any",
    )
    dependent_subset: list[int] | None = Field(
        default=None, description="First dependent (delta + 1)-subset, if any",
    )
    passed: bool


class ArcSearchResult(Model):
    delta: int
    q: int
    mode: SearchMode
    kind: str = Field(description="'arc' in a plane, 'cap' in PG(3,q)")
    size: int
    indices: list[int]
    coordinates: list[list[int]]
    expected: int | None = Field(description="Published maximum for this (delta, q), if known")
    matches_expected: bool | None
    classification: ArcClass | None = None
    note: str | None = None


def _rank(space: ProjectiveSpace, indices: Sequence[int]) -> int:
    GF = to_galois(space.field)
    return int(np.linalg.matrix_rank(GF(space.points[list(indices)])))


def _first_collinear(space: ProjectiveSpace, indices: Sequence[int]) -> list[int] | None:
    pair_line = space.pair_line
    for i, j, k in itertools.combinations(indices, 3):
        if pair_line[i, j] == pair_line[i, k]:
            return [i, j, k]
    return None


def is_arc(point_set: PointSet) -> ArcCheck:
    """
    In a plane: no three points collinear. In PG(3,q) the cap condition (no three
    collinear) and the arc condition (any four points independent) are reported
    separately; `passed` requires both.
    """
    space = point_set.space
    triple = _first_collinear(space, point_set.indices)
    dependent = None
    if space.delta == 2:
        dependent = triple
    else:
        for subset in itertools.combinations(point_set.indices, space.dim):
            if _rank(space, subset) < space.dim:
                dependent = list(subset)
                break
    return ArcCheck(
        delta=space.delta,
        size=len(point_set),
        no_three_collinear=triple is None,
        independent=dependent is None,
        collinear_triple=triple,
        dependent_subset=dependent,
        passed=triple is None and dependent is None,
    )


def line_through(space: ProjectiveSpace, i: int, j: int) -> tuple[int, ...]:
    if i == j:
        raise ToolkitError("a line needs two distinct points")
    return tuple(int(p) for p in space.lines[space.pair_line[i, j]])


def _line_hits(point_set: PointSet) -> np.ndarray:
    return point_set.mask()[point_set.space.lines].sum(axis=1)


def _require_cap(point_set: PointSet) -> None:
    triple = _first_collinear(point_set.space, point_set.indices)
    if triple is not None:
        raise NotAnArc(f"points {triple} are collinear")


def tangent_profile(point_set: PointSet, point: int) -> int:
    """Number of lines through the point that meet the set only there."""
    _require_cap(point_set)
    if point not in point_set.indices:
        raise NotAnArc(f"point {point} is not in the set")
    hits = _line_hits(point_set)
    return int(np.sum(hits[point_set.space.point_lines[point]] == 1))


def classify_arc(point_set: PointSet) -> ArcClass:
    """Oval when every point lies on exactly one tangent, hyperoval when on none."""
    if point_set.space.delta != 2:
        raise NotAPlane("ovals and hyperovals live in projective planes")
    tangents = {tangent_profile(point_set, p) for p in point_set.indices}
    if tangents == {1}:
        return ArcClass.OVAL
    if tangents == {0}:
        return ArcClass.HYPEROVAL
    return ArcClass.ARC


def is_ovoid(point_set: PointSet) -> bool:
    """
    A cap of PG(3,q) whose tangent lines at every point together span exactly a plane.
    """
    space = point_set.space
    if space.delta != 3:
        raise UnsupportedDimension("ovoids are point sets of PG(3,q)")
    if len(point_set) < 2 or _first_collinear(space, point_set.indices) is not None:
        return False
    hits = _line_hits(point_set)
    for p in point_set.indices:
        through = space.point_lines[p]
        tangent_lines = space.lines[through[hits[through] == 1]]
        if len(tangent_lines) == 0:
            return False
        if _rank(space, np.unique(tangent_lines)) != space.delta:
            return False
    return True


def max_arc_size(q: int) -> int:
    """m(2,q): q + 1 for odd q, q + 2 for even q."""
    return q + 2 if q % 2 == 0 else q + 1


def max_2(r: int, q: int) -> int:
    """Largest set of vectors of F_q^r with every pair independent: the points of PG(r-1,q)."""
    return (q**r - 1) // (q - 1)


def max_3(r: int, q: int) -> int | None:
    """
    Largest set of vectors of F_q^r with every triple independent, where a formula is
    known: 2^(r-1) for q = 2, m(2,q) for r = 3, q^2 + 1 for r = 4 and q > 2.
    """
    if q == 2:
        return 2 ** (r - 1)
    if r == 3:
        return max_arc_size(q)
    if r == 4:
        return q**2 + 1
    return None


def bruck_ryser_excluded(q: int) -> bool:
    """True when q = 1 or 2 (mod 4) and q is not a sum of two squares."""
    if q < 2:
        raise ToolkitError(f"plane orders start at 2, got {q}")
    if q % 4 not in (1, 2):
        return False
    return not any(
        math.isqrt(q - a * a) ** 2 == q - a * a for a in range(math.isqrt(q) + 1)
    )


def incidence_matrix(space: ProjectiveSpace) -> np.ndarray:
    """Rows are lines, columns are points; entry 1 when the point is on the line."""
    if space.delta != 2:
        raise NotAPlane(f"incidence matrices are built for planes, got PG({space.delta},q)")
    matrix = np.zeros((space.num_lines, space.num_points), dtype=np.int64)
    matrix[np.arange(space.num_lines)[:, None], space.lines] = 1
    return matrix


def plane_report(space: ProjectiveSpace) -> PlaneAxiomsReport:
    return plane_axioms_check(incidence_matrix(space))


def _incidence_graph(matrix: np.ndarray) -> nx.Graph:
    graph = nx.Graph()
    rows, columns = np.asarray(matrix).shape
    graph.add_nodes_from((("line", i) for i in range(rows)), side="line")
    graph.add_nodes_from((("point", j) for j in range(columns)), side="point")
    graph.add_edges_from(
        (("line", int(i)), ("point", int(j))) for i, j in zip(*np.nonzero(matrix))
    )
    return graph


def incidence_equivalent(
    first: np.ndarray | Sequence[Sequence[int]], second: np.ndarray | Sequence[Sequence[int]]
) -> bool:
    """
    Whether two incidence matrices agree up to row and column permutations, decided by
    isomorphism of their bipartite incidence graphs with a Weisfeiler-Lehman pre-check.
    """
    first, second = np.asarray(first), np.asarray(second)
    if first.shape != second.shape or first.sum() != second.sum():
        return False
    graph_a, graph_b = _incidence_graph(first), _incidence_graph(second)
    if nx.weisfeiler_lehman_graph_hash(graph_a, node_attr="side") != nx.weisfeiler_lehman_graph_hash(
        graph_b, node_attr="side"
    ):
        return False
    return nx.is_isomorphic(
        graph_a, graph_b, node_match=lambda a, b: a["side"] == b["side"]
    )


class _CapSearch:
    """Depth-first search over point bitmasks, pruning points that close a collinear triple."""

    def __init__(self, space: ProjectiveSpace):
        self.n = space.num_points
        self.pair_line = space.pair_line.tolist()
        self.line_masks = [
            sum(1 << int(p) for p in line) for line in space.lines
        ]

    def _blocked(self, chosen: tuple[int, ...], v: int) -> int:
        blocked = 0
        for u in chosen:
            blocked |= self.line_masks[self.pair_line[u][v]]
        return blocked

    def from_first(self, first: int) -> tuple[int, ...]:
        """Lexicographically first largest cap whose smallest point is `first`."""
        best: list[tuple[int, ...]] = [(first,)]

        def visit(chosen: tuple[int, ...], candidates: int) -> None:
            if len(chosen) > len(best[0]):
                best[0] = chosen
            while candidates:
                if len(chosen) + candidates.bit_count() <= len(best[0]):
                    return
                low = candidates & -candidates
                candidates ^= low
                v = low.bit_length() - 1
                visit(chosen + (v,), candidates & ~self._blocked(chosen, v))

        above = ((1 << self.n) - 1) ^ ((1 << (first + 1)) - 1)
        visit((first,), above)
        return best[0]

    def greedy(self) -> tuple[int, ...]:
        chosen: tuple[int, ...] = ()
        candidates = (1 << self.n) - 1
        for v in range(self.n):
            if candidates >> v & 1:
                candidates &= ~self._blocked(chosen, v) & ~(1 << v)
                chosen += (v,)
        return chosen


def arc_search(
    space: ProjectiveSpace,
    mode: SearchMode | str = SearchMode.EXHAUSTIVE,
    threads: int | None = None,
    progress: bool = False,
) -> ArcSearchResult:
    """
    Find a largest arc (plane) or cap (PG(3,q)).

    Exhaustive mode is certified maximal and returns the lexicographically smallest
    maximum set; greedy mode returns a non-extendable set without optimality claim.

    Args:
        space: The projective space
        mode: 'exhaustive' (at most 21 points) or 'greedy'
        threads: Workers for the first-branch choices of the exhaustive search
        progress: Show a progress bar

    Returns:
        ArcSearchResult: The set found, with the published maximum for comparison
    """
    if isinstance(mode, str):
        mode = enum_from_value(SearchMode, mode)
    search = _CapSearch(space)

    match mode:
        case SearchMode.EXHAUSTIVE:
            if space.num_points > MAX_EXHAUSTIVE_POINTS:
                raise SearchSpaceTooLarge(
                    f"exhaustive search over {space.num_points} points exceeds "
                    f"{MAX_EXHAUSTIVE_POINTS}"
                )
            candidates = parallel_map(
                search.from_first,
                range(space.num_points),
                threads=threads,
                desc="first point",
                progress=progress,
            )
            found = min(candidates, key=lambda s: (-len(s), s))
        case SearchMode.GREEDY:
            found = search.greedy()

    point_set = space.point_set(found)
    expected = max_arc_size(space.q) if space.delta == 2 else max_3(4, space.q)
    matches = len(found) == expected if mode is SearchMode.EXHAUSTIVE else None
    note = None
    if space.delta == 3 and space.q == 2:
        note = (
            "caps of PG(3,2) reach 2^(r-1) = 8; the q^2 + 1 = 5 value is the ovoid size, "
            "valid as a maximum only for q > 2"
        )
    if matches is False:
        logger.warning(
            f"Exhaustive search in PG({space.delta},{space.q}) found {len(found)}, "
            f"expected {expected}"
        )
    return ArcSearchResult(
        delta=space.delta,
        q=space.q,
        mode=mode,
        kind="arc" if space.delta == 2 else "cap",
        size=len(found),
        indices=list(found),
        coordinates=point_set.coordinates(),
        expected=expected,
        matches_expected=matches,
        classification=classify_arc(point_set) if space.delta == 2 else None,
        note=note,
    )


def build_pg(delta: int, field: GaloisField) -> ProjectiveSpace:
    return ProjectiveSpace(delta, field)
