"""Staged computation of the Morse-Smale complex of a scalar field."""
from __future__ import annotations

import contextlib
import dataclasses
import logging
import pathlib
import time
import typing as t

import numpy
import yaml

from parallel_msc.common.exceptions import ValidationError
from parallel_msc.common.types import CountingMethod, ScalarDtype
from parallel_msc.extrema import (
    ExtremumSegmentation,
    ParentForest,
    SaddleExtremumArc,
    build_forest,
    count_boundary_exits,
    extremum_segmentation,
    find_roots,
    saddle_extremum_arcs,
)
from parallel_msc.gradient import (
    DEFAULT_CHUNK_SIZE,
    CriticalCells,
    GradientField,
    GradientReport,
    assign_gradient,
    extract_critical_cells,
    validate_gradient,
)
from parallel_msc.grid import ScalarField
from parallel_msc.protocol import ProtocolRegistry
from parallel_msc.saddles import (
    DagMinor,
    MarkedSubgraph,
    PathCountingState,
    PathCounts,
    build_minor,
    count_paths,
    count_paths_by_traversal,
    mark_reachable,
)

from .complex import BoundaryReport, MSComplex, Provenance, assemble_complex, boundary_check

__all__ = (
    'STAGES',
    'ComputeOptions',
    'PipelineProtocolRegistry',
    'PipelineResult',
    'StageTimings',
    'compute',
    'run_pipeline',
)

LOGGER = logging.getLogger(__name__)

STAGES = ('gradient', 'critical', 'extrema', 'reachability', 'counting', 'assembly')


class PipelineProtocolRegistry(ProtocolRegistry):
    """Registry of the presets of :class:`ComputeOptions` defined in ``protocol.yml``."""

    _default_protocol = 'fast'
    _required_keys = ('segmentation', 'validate', 'cross_check', 'counting', 'chunk_size')

    def __init__(self):
        with open(str(pathlib.Path(__file__).parent / 'protocol.yml'), encoding='utf-8') as handle:
            self._protocols = yaml.safe_load(handle)

        super().__init__()


@dataclasses.dataclass(frozen=True)
class ComputeOptions:
    """Options of :func:`run_pipeline`.

    :param segmentation: compute the extrema segmentation volumes.
    :param validate: check the gradient field, the Morse-Euler relation and the mod-2 boundary of the complex and raise
        :class:`~parallel_msc.common.exceptions.ValidationError` on any violation.
    :param cross_check: recount the saddle connections by traversal and compare them to the primary counting method.
    :param counting: the method to count the gradient paths between 1-saddles and 2-saddles.
    :param chunk_size: number of vertices per lower-star work item.
    :param dtype: sample type of the input, recorded in the provenance of the complex.
    """

    segmentation: bool = False
    validate: bool = False
    cross_check: bool = False
    counting: CountingMethod = CountingMethod.MATRIX
    chunk_size: int = DEFAULT_CHUNK_SIZE
    dtype: str = ScalarDtype.F64.value

    def __post_init__(self):
        object.__setattr__(self, 'counting', CountingMethod(self.counting))
        object.__setattr__(self, 'dtype', ScalarDtype(self.dtype).value)

        if isinstance(self.chunk_size, bool) or not isinstance(self.chunk_size, int) or self.chunk_size < 1:
            raise ValueError(f'`{self.chunk_size}` is not a valid chunk size: must be a positive integer.')

    @classmethod
    def from_protocol(cls, name: str | None = None, **overrides: t.Any) -> ComputeOptions:
        """Return the options of a protocol, with individual settings replaced by ``overrides``.

        :param name: the protocol, the default protocol if not specified.
        :raises ValueError: if the protocol does not exist.
        :raises TypeError: if an override is not an option.
        """
        registry = PipelineProtocolRegistry()
        name = registry.get_default_protocol_name() if name is None else name

        if not registry.is_valid_protocol(name):
            choices = ', '.join(registry.get_protocol_names())
            raise ValueError(f'`{name}` is not a valid protocol: choose from {choices}.')

        known = {field.name for field in dataclasses.fields(cls)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise TypeError(f'unknown options: `{", ".join(unknown)}`.')

        protocol = registry.get_protocol(name)
        settings = {key: value for key, value in protocol.items() if key in known}
        settings.update(overrides)

        return cls(**settings)


@dataclasses.dataclass
class StageTimings:
    """Wall-clock seconds spent in every stage of the pipeline."""

    gradient: float = 0.0
    critical: float = 0.0
    extrema: float = 0.0
    reachability: float = 0.0
    counting: float = 0.0
    assembly: float = 0.0

    @contextlib.contextmanager
    def measure(self, stage: str) -> t.Iterator[None]:
        if stage not in STAGES:
            raise ValueError(f'`{stage}` is not a valid stage: choose from {", ".join(STAGES)}.')
        start = time.perf_counter()
        try:
            yield
        finally:
            setattr(self, stage, getattr(self, stage) + time.perf_counter() - start)

    def rows(self) -> list[tuple[str, float]]:
        """Return ``(stage, seconds)`` in pipeline order."""
        return [(stage, getattr(self, stage)) for stage in STAGES]

    @property
    def total(self) -> float:
        return sum(seconds for _, seconds in self.rows())


@dataclasses.dataclass(frozen=True, eq=False)
class PipelineResult:
    """The complex together with the output of every stage that produced it."""

    complex: MSComplex
    options: ComputeOptions
    gradient: GradientField
    critical: CriticalCells
    minima_forest: ParentForest
    minima_labels: numpy.ndarray
    maxima_forest: ParentForest
    maxima_labels: numpy.ndarray
    extremum_arcs: list[SaddleExtremumArc]
    boundary_exits: numpy.ndarray
    marked: MarkedSubgraph
    minor: DagMinor
    path_counts: PathCounts
    timings: StageTimings
    counting_state: PathCountingState | None = None
    segmentation: ExtremumSegmentation | None = None
    gradient_report: GradientReport | None = None
    boundary_report: BoundaryReport | None = None


def _count(minor: DagMinor, options: ComputeOptions) -> tuple[PathCounts, PathCountingState | None]:
    if options.counting is CountingMethod.TRAVERSAL:
        counts, state = count_paths_by_traversal(minor), None
    else:
        state = PathCountingState.from_minor(minor)
        counts = state.counts()

    if options.cross_check:
        alternative = count_paths(minor) if state is None else count_paths_by_traversal(minor)
        if alternative != counts:
            differing = sorted(set(alternative.items()) ^ set(counts.items()))
            raise ValidationError(
                f'path counts of the matrix and traversal methods differ for {len(differing)} entries.', differing
            )
        LOGGER.info('cross-check of %d path counts passed', len(counts))

    return counts, state


def run_pipeline(field: ScalarField, options: ComputeOptions | None = None) -> PipelineResult:
    """Compute the complex of a field stage by stage and return it together with all intermediate results.

    :raises ValidationError: if ``options.validate`` or ``options.cross_check`` is set and a check fails.
    :raises CountOverflowError: if a path count exceeds the signed 64-bit range.
    """
    options = ComputeOptions() if options is None else options
    timings = StageTimings()
    dims = field.dims
    gradient_report = boundary_report = segmentation = None

    LOGGER.info('computing the complex of a %dx%dx%d field with %s', dims.nx, dims.ny, dims.nz, options)

    with timings.measure('gradient'):
        gradient = assign_gradient(field, options.chunk_size)
        if options.validate:
            gradient_report = validate_gradient(gradient)
            if not gradient_report.is_valid:
                raise ValidationError(f'invalid gradient field: {gradient_report.summary()}', gradient_report)

    with timings.measure('critical'):
        critical = extract_critical_cells(gradient)
        if options.validate and critical.euler_characteristic != 1:
            raise ValidationError(
                f'critical cells {critical.counts} violate the Morse-Euler relation: alternating sum is '
                f'{critical.euler_characteristic}, expected 1.'
            )

    with timings.measure('extrema'):
        minima_forest, maxima_forest = build_forest(gradient, 0), build_forest(gradient, 3)
        minima_labels, maxima_labels = find_roots(minima_forest), find_roots(maxima_forest)
        minima, maxima = minima_forest.root_cells(minima_labels), maxima_forest.root_cells(maxima_labels)
        extremum_arcs = saddle_extremum_arcs(dims, critical, minima, maxima)
        boundary_exits = count_boundary_exits(dims, critical, maxima)
        if options.segmentation:
            segmentation = extremum_segmentation(minima_forest, minima_labels, maxima_forest, maxima_labels, dims)

    with timings.measure('reachability'):
        marked = mark_reachable(gradient, critical.one_saddles)
        minor = build_minor(marked)

    with timings.measure('counting'):
        path_counts, counting_state = _count(minor, options)

    with timings.measure('assembly'):
        provenance = Provenance(field.input_hash, dtype=options.dtype, counting=options.counting.value)
        complex_ = assemble_complex(field, critical, extremum_arcs, path_counts, provenance, segmentation)
        if options.validate:
            boundary_report = boundary_check(complex_)
            if not boundary_report.is_valid:
                raise ValidationError(
                    f'the complex fails the boundary check with {len(boundary_report.violations)} violations and '
                    f'Euler characteristic {boundary_report.euler_characteristic}.',
                    boundary_report,
                )

    LOGGER.info(
        'computed %d critical points and %d arcs in %.3f s',
        len(complex_.critical_points),
        len(complex_.arcs),
        timings.total,
    )

    return PipelineResult(
        complex=complex_,
        options=options,
        gradient=gradient,
        critical=critical,
        minima_forest=minima_forest,
        minima_labels=minima_labels,
        maxima_forest=maxima_forest,
        maxima_labels=maxima_labels,
        extremum_arcs=extremum_arcs,
        boundary_exits=boundary_exits,
        marked=marked,
        minor=minor,
        path_counts=path_counts,
        timings=timings,
        counting_state=counting_state,
        segmentation=segmentation,
        gradient_report=gradient_report,
        boundary_report=boundary_report,
    )


def compute(field: ScalarField, options: ComputeOptions | None = None) -> MSComplex:
    """Compute the Morse-Smale complex of a scalar field."""
    return run_pipeline(field, options).complex
