"""The combinatorial Morse-Smale complex: critical points, arcs with multiplicities and extrema segmentation."""
from __future__ import annotations

import dataclasses
import logging
import typing as t

import numpy
from scipy import sparse

from parallel_msc import __version__
from parallel_msc.common.exceptions import CriticalPointNotFoundError
from parallel_msc.extrema import ExtremumSegmentation, SaddleExtremumArc
from parallel_msc.gradient import CriticalCells
from parallel_msc.grid import GridDims, ScalarField

__all__ = (
    'TIE_BREAK_RULE',
    'Arc',
    'BoundaryReport',
    'CriticalPoint',
    'MSComplex',
    'Provenance',
    'Segmentation',
    'assemble_complex',
    'boundary_check',
    'query_arcs',
)

LOGGER = logging.getLogger(__name__)

TIE_BREAK_RULE = 'simulation-of-simplicity/vertex-index/v1'


@dataclasses.dataclass(frozen=True)
class CriticalPoint:
    """A critical cell with its doubled coordinates, real-space midpoint and the value of its highest corner."""

    id: int
    cell: tuple[int, int, int]
    index: int
    position: tuple[float, float, float]
    value: float


@dataclasses.dataclass(frozen=True)
class Arc:
    """Gradient paths between two critical points of consecutive index, oriented from the lower index."""

    src: int
    dst: int
    multiplicity: int


@dataclasses.dataclass(frozen=True)
class Provenance:
    """Metadata identifying the input and the rules a complex was computed with."""

    input_hash: str
    dtype: str = 'f64'
    tie_break: str = TIE_BREAK_RULE
    generator: str = f'parallel-msc {__version__}'
    counting: str = 'matrix'


class Segmentation(t.NamedTuple):
    """Critical point id of the destination minimum of every vertex and maximum of every cube, ``-1`` for outflow."""

    minima: numpy.ndarray
    maxima: numpy.ndarray


@dataclasses.dataclass(frozen=True)
class MSComplex:
    """Critical points sorted by index and cell, with ids equal to their position, and arcs sorted by endpoints."""

    dims: GridDims
    critical_points: tuple[CriticalPoint, ...]
    arcs: tuple[Arc, ...]
    provenance: Provenance
    segmentation: Segmentation | None = dataclasses.field(default=None, compare=False, repr=False)

    def point(self, point: int | CriticalPoint) -> CriticalPoint:
        """Return the critical point with the given id.

        :raises CriticalPointNotFoundError: if the complex has no such point.
        """
        identifier = point.id if isinstance(point, CriticalPoint) else point
        if isinstance(identifier, bool) or not isinstance(identifier, (int, numpy.integer)):
            raise CriticalPointNotFoundError(f'`{point!r}` is not a valid critical point id.')
        if not 0 <= identifier < len(self.critical_points):
            raise CriticalPointNotFoundError(f'critical point `{identifier}` is not part of the complex.')
        found = self.critical_points[identifier]
        if isinstance(point, CriticalPoint) and found != point:
            raise CriticalPointNotFoundError(f'critical point `{point}` is not part of the complex.')
        return found

    def points_of_index(self, index: int) -> list[CriticalPoint]:
        return [point for point in self.critical_points if point.index == index]

    @property
    def counts(self) -> tuple[int, int, int, int]:
        indices = numpy.array([point.index for point in self.critical_points], dtype=numpy.int64)
        return tuple(int(count) for count in numpy.bincount(indices, minlength=4)[:4])  # type: ignore[return-value]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** index * count for index, count in enumerate(self.counts))

    def query_arcs(self, point: int | CriticalPoint) -> list[Arc]:
        return query_arcs(self, point)


def query_arcs(complex_: MSComplex, point: int | CriticalPoint) -> list[Arc]:
    """Return the arcs having the given critical point as source or destination, sorted by ``(src, dst)``.

    :raises CriticalPointNotFoundError: if the point is not part of the complex.
    """
    identifier = complex_.point(point).id
    return [arc for arc in complex_.arcs if identifier in (arc.src, arc.dst)]


@dataclasses.dataclass(frozen=True)
class BoundaryReport:
    """Result of :func:`boundary_check`.

    Every violation is a pair ``(lower, upper)`` of critical points two indices apart connected by an odd number of
    two-arc chains.
    """

    violations: tuple[tuple[int, int], ...]
    euler_characteristic: int

    @property
    def is_valid(self) -> bool:
        return not self.violations and self.euler_characteristic == 1


def boundary_check(complex_: MSComplex) -> BoundaryReport:
    """Check that the boundary of the boundary vanishes modulo 2 and that the Morse-Euler relation holds.

    With ``M`` the matrix of arc multiplicities, every entry of ``M M`` relates a minimum to a 2-saddle through
    1-saddles or a 1-saddle to a maximum through 2-saddles and must be even.
    """
    size = len(complex_.critical_points)
    sources = numpy.array([arc.src for arc in complex_.arcs], dtype=numpy.int64)
    targets = numpy.array([arc.dst for arc in complex_.arcs], dtype=numpy.int64)
    parity = numpy.array([arc.multiplicity % 2 for arc in complex_.arcs], dtype=numpy.int64)

    incidence = sparse.csr_array((parity, (sources, targets)), shape=(size, size), dtype=numpy.int64)
    chains = sparse.coo_array(incidence @ incidence)
    odd = chains.data % 2 == 1
    violations = tuple(sorted(zip(chains.row[odd].tolist(), chains.col[odd].tolist())))

    report = BoundaryReport(violations, complex_.euler_characteristic)
    LOGGER.info('boundary check: %d violations, Euler characteristic %d', len(violations), report.euler_characteristic)

    return report


def assemble_complex(
    field: ScalarField,
    critical: CriticalCells,
    extremum_arcs: t.Sequence[SaddleExtremumArc],
    path_counts: t.Mapping[tuple[int, int], int],
    provenance: Provenance,
    segmentation: ExtremumSegmentation | None = None,
) -> MSComplex:
    """Assemble the complex from the critical cells and the arcs computed for them, all identified by cell."""
    dims = field.dims
    cells = numpy.concatenate([critical.by_index(index) for index in range(4)])
    indices = numpy.concatenate([numpy.full(critical.by_index(index).size, index) for index in range(4)])
    identifiers = {int(cell): identifier for identifier, cell in enumerate(cells)}

    points = []
    for identifier, (cell, index) in enumerate(zip(cells.tolist(), indices.tolist())):
        coordinates = dims.coordinates(cell)
        points.append(
            CriticalPoint(
                id=identifier,
                cell=coordinates,
                index=index,
                position=tuple(coordinate / 2 for coordinate in coordinates),
                value=field.cell_value(cell),
            )
        )

    arcs = []
    for arc in extremum_arcs:
        saddle, extremum = identifiers[arc.saddle.cell], identifiers[arc.extremum.cell]
        source, target = (extremum, saddle) if arc.extremum.index == 0 else (saddle, extremum)
        arcs.append(Arc(source, target, arc.multiplicity))
    for (one_saddle, two_saddle), count in path_counts.items():
        arcs.append(Arc(identifiers[one_saddle], identifiers[two_saddle], count))
    arcs.sort(key=lambda arc: (arc.src, arc.dst))

    volumes = None
    if segmentation is not None:
        lookup = numpy.full(dims.num_cells, -1, dtype=numpy.int32)
        lookup[cells] = numpy.arange(cells.size, dtype=numpy.int32)
        minima, maxima = (
            numpy.where(volume >= 0, lookup[numpy.maximum(volume, 0)], -1).astype(numpy.int32)
            for volume in (segmentation.minima, segmentation.maxima)
        )
        volumes = Segmentation(minima, maxima)

    return MSComplex(dims, tuple(points), tuple(arcs), provenance, volumes)
