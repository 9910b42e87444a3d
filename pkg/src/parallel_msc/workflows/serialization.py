"""Serialization of complexes to JSON documents, CSV tables and raw segmentation volumes."""
from __future__ import annotations

import csv
import io
import json
import logging
import pathlib
import typing as t

import numpy

from parallel_msc.common.exceptions import InvalidGridError, ParseError, VolumeError
from parallel_msc.common.types import OutputFormat
from parallel_msc.grid import GridDims

from .complex import Arc, CriticalPoint, MSComplex, Provenance

__all__ = (
    'ARC_COLUMNS',
    'FORMAT_NAME',
    'FORMAT_VERSION',
    'POINT_COLUMNS',
    'deserialize',
    'export_csv',
    'segmentation_volumes',
    'serialize',
    'write_segmentation',
)

LOGGER = logging.getLogger(__name__)

FORMAT_NAME = 'parallel-msc/complex'
FORMAT_VERSION = 1
POINT_COLUMNS = ('id', 'cell_x', 'cell_y', 'cell_z', 'index', 'position_x', 'position_y', 'position_z', 'value')
ARC_COLUMNS = ('src', 'dst', 'multiplicity')


def serialize(complex_: MSComplex, output_format: OutputFormat | str = OutputFormat.JSON) -> bytes:
    """Return the JSON document of a complex.

    :raises ValueError: for the CSV format, which spans two tables and is written with :func:`export_csv`.
    """
    if OutputFormat(output_format) is not OutputFormat.JSON:
        raise ValueError('the CSV format consists of two tables: use `export_csv` instead.')

    provenance = complex_.provenance
    document = {
        'format': FORMAT_NAME,
        'version': FORMAT_VERSION,
        'dims': list(complex_.dims.vertex_shape),
        'dtype': provenance.dtype,
        'provenance': {
            'input_hash': provenance.input_hash,
            'tie_break': provenance.tie_break,
            'generator': provenance.generator,
            'counting': provenance.counting,
        },
        'critical_points': [
            {
                'id': point.id,
                'cell': list(point.cell),
                'index': point.index,
                'position': list(point.position),
                'value': point.value,
            }
            for point in complex_.critical_points
        ],
        'arcs': [{'src': arc.src, 'dst': arc.dst, 'multiplicity': arc.multiplicity} for arc in complex_.arcs],
    }

    return (json.dumps(document, indent=2) + '\n').encode('utf-8')


def _require(mapping: t.Any, key: str, kind: type | tuple[type, ...], where: str) -> t.Any:
    if not isinstance(mapping, dict) or key not in mapping:
        raise ParseError(f'{where} is missing the key `{key}`')
    value = mapping[key]
    if (isinstance(value, bool) and kind is not bool) or not isinstance(value, kind):
        raise ParseError(f'`{key}` of {where} has an invalid type `{type(value).__name__}`')
    return value


def _triple(value: t.Any, kind: type | tuple[type, ...], key: str, where: str) -> tuple:
    if not isinstance(value, list) or len(value) != 3 or not all(
        isinstance(item, kind) and not isinstance(item, bool) for item in value
    ):
        raise ParseError(f'`{key}` of {where} is not a list of three numbers')
    return tuple(value)


def deserialize(data: bytes) -> MSComplex:
    """Parse a JSON document written by :func:`serialize`.

    :raises ParseError: if the document is not valid JSON, carrying the byte offset of the error, or if it does not
        describe a complex.
    """
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as exception:
        raise ParseError(f'document is not valid UTF-8: {exception.reason}', exception.start) from exception

    try:
        document = json.loads(text)
    except json.JSONDecodeError as exception:
        offset = len(text[: exception.pos].encode('utf-8'))
        raise ParseError(f'document is not valid JSON: {exception.msg}', offset) from exception

    if not isinstance(document, dict):
        raise ParseError('document is not a JSON object')

    if document.get('format') != FORMAT_NAME:
        raise ParseError(f'document format `{document.get("format")}` is not `{FORMAT_NAME}`')

    if document.get('version') != FORMAT_VERSION:
        raise ParseError(f'document version `{document.get("version")}` is not supported')

    try:
        dims = GridDims(*_triple(_require(document, 'dims', list, 'the document'), int, 'dims', 'the document'))
    except InvalidGridError as exception:
        raise ParseError(f'document has invalid dimensions: {exception}') from exception

    provenance_data = _require(document, 'provenance', dict, 'the document')
    provenance = Provenance(
        input_hash=_require(provenance_data, 'input_hash', str, 'the provenance'),
        dtype=_require(document, 'dtype', str, 'the document'),
        tie_break=_require(provenance_data, 'tie_break', str, 'the provenance'),
        generator=_require(provenance_data, 'generator', str, 'the provenance'),
        counting=_require(provenance_data, 'counting', str, 'the provenance'),
    )

    points = []
    for position, entry in enumerate(_require(document, 'critical_points', list, 'the document')):
        where = f'critical point {position}'
        midpoint = _triple(_require(entry, 'position', list, where), (int, float), 'position', where)
        point = CriticalPoint(
            id=_require(entry, 'id', int, where),
            cell=_triple(_require(entry, 'cell', list, where), int, 'cell', where),
            index=_require(entry, 'index', int, where),
            position=tuple(float(value) for value in midpoint),
            value=float(_require(entry, 'value', (int, float), where)),
        )
        if point.id != position:
            raise ParseError(f'{where} has id `{point.id}`: ids must count up from 0')
        if not 0 <= point.index <= 3:
            raise ParseError(f'{where} has an invalid index `{point.index}`')
        points.append(point)

    arcs = []
    for position, entry in enumerate(_require(document, 'arcs', list, 'the document')):
        where = f'arc {position}'
        arc = Arc(
            src=_require(entry, 'src', int, where),
            dst=_require(entry, 'dst', int, where),
            multiplicity=_require(entry, 'multiplicity', int, where),
        )
        if not (0 <= arc.src < len(points) and 0 <= arc.dst < len(points)) or arc.multiplicity < 1:
            raise ParseError(f'{where} references unknown critical points or has a multiplicity below 1')
        arcs.append(arc)

    return MSComplex(dims, tuple(points), tuple(arcs), provenance)


def export_csv(complex_: MSComplex) -> tuple[bytes, bytes]:
    """Return the critical point table and the arc table of a complex as CSV documents."""
    points = io.StringIO()
    writer = csv.writer(points, lineterminator='\n')
    writer.writerow(POINT_COLUMNS)
    for point in complex_.critical_points:
        position = (repr(value) for value in point.position)
        writer.writerow((point.id, *point.cell, point.index, *position, repr(point.value)))

    arcs = io.StringIO()
    writer = csv.writer(arcs, lineterminator='\n')
    writer.writerow(ARC_COLUMNS)
    for arc in complex_.arcs:
        writer.writerow((arc.src, arc.dst, arc.multiplicity))

    return points.getvalue().encode('utf-8'), arcs.getvalue().encode('utf-8')


def segmentation_volumes(complex_: MSComplex, prefix: str | pathlib.Path) -> list[tuple[pathlib.Path, bytes]]:
    """Return the paths ``<prefix>.minima.raw`` and ``<prefix>.maxima.raw`` with the bytes of the label volumes.

    Labels are little-endian 32-bit critical point ids, x fastest, ``-1`` for cubes whose ascending path leaves the
    domain.

    :raises ValueError: if the complex carries no segmentation.
    """
    if complex_.segmentation is None:
        raise ValueError('the complex carries no segmentation: compute it with `segmentation=True`.')

    prefix = pathlib.Path(prefix)
    paths = (prefix.with_name(f'{prefix.name}.minima.raw'), prefix.with_name(f'{prefix.name}.maxima.raw'))
    return [
        (path, numpy.ascontiguousarray(labels, dtype='<i4').tobytes())
        for path, labels in zip(paths, complex_.segmentation)
    ]


def write_segmentation(complex_: MSComplex, prefix: str | pathlib.Path) -> tuple[pathlib.Path, pathlib.Path]:
    """Write the extrema segmentation as ``<prefix>.minima.raw`` and ``<prefix>.maxima.raw``.

    :raises ValueError: if the complex carries no segmentation.
    :raises VolumeError: if a file cannot be written.
    """
    volumes = segmentation_volumes(complex_, prefix)

    for path, data in volumes:
        try:
            path.write_bytes(data)
        except OSError as exception:
            raise VolumeError(f'`{path}` could not be written: {exception}') from exception
        LOGGER.info('wrote segmentation labels to `%s`', path)

    return tuple(path for path, _ in volumes)
