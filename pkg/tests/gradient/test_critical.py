"""Tests for the :mod:`parallel_msc.gradient.critical` module."""
import numpy
import pytest
from parallel_msc.common.types import FieldKind
from parallel_msc.gradient import CriticalCell, GradientField, assign_gradient, extract_critical_cells
from parallel_msc.grid import GridDims


def test_all_critical():
    """Without pairs every cell is critical and the counts are the cell counts of the grid."""
    dims = GridDims(2, 3, 2)
    critical = extract_critical_cells(GradientField.from_pairs(dims, []))

    assert critical.counts == dims.count_cells()
    assert len(critical) == dims.num_cells
    assert critical.euler_characteristic == 1
    for index in range(4):
        assert numpy.all(dims.dimensions(critical.by_index(index)) == index)
        assert numpy.all(numpy.diff(critical.by_index(index)) > 0)


def test_iteration():
    dims = GridDims(2, 2, 2)
    gradient = GradientField.from_pairs(dims, [(dims.cell_id(0, 0, 0), dims.cell_id(1, 0, 0))])
    critical = extract_critical_cells(gradient)
    cells = list(critical)

    assert len(cells) == dims.num_cells - 2
    assert cells[0] == CriticalCell(dims.cell_id(2, 0, 0), 0)
    assert cells[-1] == CriticalCell(dims.cell_id(1, 1, 1), 3)
    assert [cell.index for cell in cells] == sorted(cell.index for cell in cells)


@pytest.mark.parametrize('dims', ((8, 8, 8), (16, 16, 16)))
@pytest.mark.parametrize('seed', range(40))
def test_morse_euler(generate_random_field, dims, seed):
    """The alternating sum of critical cell counts is the Euler characteristic of a box, with and without ties."""
    gradient = assign_gradient(generate_random_field(dims, seed, 8 if seed % 2 else None))
    critical = extract_critical_cells(gradient)

    assert critical.euler_characteristic == 1
    assert critical.counts[0] >= 1
    assert len(critical) == gradient.num_critical


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(20))
def test_morse_euler_large(generate_random_field, seed):
    gradient = assign_gradient(generate_random_field((32, 32, 32), seed, 8 if seed % 2 else None))
    assert extract_critical_cells(gradient).euler_characteristic == 1


@pytest.mark.parametrize('size', (8, 16, 32))
@pytest.mark.parametrize('kind', FieldKind)
def test_morse_euler_synthetic(generate_field, kind, size):
    gradient = assign_gradient(generate_field(kind.value, (size, size, size), seed=size))
    critical = extract_critical_cells(gradient)

    assert critical.euler_characteristic == 1
    assert critical.counts[0] >= 1
