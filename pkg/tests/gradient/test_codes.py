"""Tests for the :mod:`parallel_msc.gradient.codes` module."""
import numpy
import pytest
from parallel_msc.common.exceptions import InvalidCellError
from parallel_msc.gradient import (
    CRITICAL,
    PAIRED_WITH_COFACET,
    PAIRED_WITH_FACET,
    GradientField,
    decode_direction,
    encode_direction,
)
from parallel_msc.grid import GridDims


@pytest.fixture
def dims():
    return GridDims(2, 2, 2)


@pytest.mark.parametrize('axis', (0, 1, 2))
@pytest.mark.parametrize('sign', (-1, 1))
def test_direction(axis, sign):
    bits = encode_direction(axis, sign)
    assert 0 <= bits < 6
    assert decode_direction(PAIRED_WITH_FACET | bits) == (axis, sign)


def test_invalid_direction():
    with pytest.raises(ValueError):
        encode_direction(3, 1)
    with pytest.raises(ValueError):
        encode_direction(0, 0)


def test_from_pairs(dims):
    """The facet points along ``+x`` to its cofacet and the cofacet back along ``-x``."""
    gradient = GradientField.from_pairs(dims, [(0, 1)])

    assert gradient.code(1) == PAIRED_WITH_FACET | encode_direction(0, -1)
    assert gradient.code(0) == PAIRED_WITH_COFACET | encode_direction(0, 1)
    assert gradient.partner(0) == 1
    assert gradient.partner(1) == 0
    assert gradient.partner(2) is None
    assert gradient.is_critical(2)
    assert not gradient.is_critical(0)
    assert gradient.num_pairs == 1
    assert gradient.num_critical == dims.num_cells - 2


def test_from_pairs_invalid(dims):
    with pytest.raises(InvalidCellError, match=r'is not a valid gradient pair'):
        GradientField.from_pairs(dims, [(0, 4)])


def test_partners(dims):
    quad = dims.cell_id(1, 1, 0)
    cube = dims.cell_id(1, 1, 1)
    gradient = GradientField.from_pairs(dims, [(0, 1), (quad, cube)])
    cells = numpy.array([0, 1, quad, cube, 2])

    assert gradient.partners(cells).tolist() == [1, 0, cube, quad, -1]
    assert [gradient.partner(int(cell)) for cell in cells] == [1, 0, cube, quad, None]


def test_codes_read_only(dims):
    gradient = GradientField(dims, numpy.full(dims.num_cells, CRITICAL, dtype=numpy.uint8))
    with pytest.raises(ValueError):
        gradient.codes[0] = 0


def test_equality(dims):
    first = GradientField.from_pairs(dims, [(0, 1)])
    assert first == GradientField.from_pairs(dims, [(0, 1)])
    assert first != GradientField.from_pairs(dims, [(0, 3)])


def test_invalid_size(dims):
    with pytest.raises(ValueError, match=r'do not match'):
        GradientField(dims, numpy.zeros(5, dtype=numpy.uint8))
