"""Tests for the :mod:`parallel_msc.common.volume` module."""
import numpy
import pytest
from parallel_msc.common.exceptions import VolumeError
from parallel_msc.common.types import ScalarDtype
from parallel_msc.common.volume import VolumeSpec, read_volume, write_volume
from parallel_msc.grid import GridDims


@pytest.fixture
def dims():
    return GridDims(3, 2, 2)


@pytest.mark.parametrize('dtype', ScalarDtype)
@pytest.mark.parametrize('big_endian', (False, True))
def test_write_read(tmp_path, dims, dtype, big_endian):
    values = numpy.arange(dims.num_vertices, dtype=numpy.float64)
    spec = VolumeSpec(tmp_path / 'field.raw', dims, dtype, big_endian)

    write_volume(spec, values)
    field = read_volume(spec)

    assert spec.path.stat().st_size == spec.expected_size
    assert numpy.array_equal(field.values, values)
    assert field.dims == dims


def test_layout(tmp_path, dims):
    """Samples are stored x fastest and in the requested byte order."""
    path = tmp_path / 'field.raw'
    path.write_bytes(numpy.arange(dims.num_vertices, dtype='>u2').tobytes())

    field = read_volume(VolumeSpec(path, dims, 'u16', big_endian=True))

    assert field.volume[1, 0, 2] == 8
    assert field.values.dtype == numpy.float64


def test_unsigned_clipping(tmp_path, dims):
    spec = VolumeSpec(tmp_path / 'field.raw', dims, ScalarDtype.U8)
    values = numpy.linspace(-10, 300, dims.num_vertices)

    write_volume(spec, values)
    samples = read_volume(spec).values

    assert samples.min() == 0
    assert samples.max() == 255


def test_invalid_dtype(tmp_path, dims):
    with pytest.raises(ValueError, match=r'is not a valid sample type'):
        VolumeSpec(tmp_path / 'field.raw', dims, 'i32')


def test_missing_file(tmp_path, dims):
    with pytest.raises(VolumeError, match=r'file does not exist'):
        read_volume(VolumeSpec(tmp_path / 'missing.raw', dims))


def test_size_mismatch(tmp_path, dims):
    path = tmp_path / 'field.raw'
    path.write_bytes(b'\x00' * 7)

    with pytest.raises(VolumeError, match=r'has 7 bytes'):
        read_volume(VolumeSpec(path, dims, ScalarDtype.F32))


def test_write_sample_count(tmp_path, dims):
    with pytest.raises(VolumeError, match=r'do not fill a volume'):
        write_volume(VolumeSpec(tmp_path / 'field.raw', dims), numpy.zeros(5))


def test_write_error(tmp_path, dims):
    spec = VolumeSpec(tmp_path / 'missing' / 'field.raw', dims)

    with pytest.raises(VolumeError, match=r'could not be written'):
        write_volume(spec, numpy.zeros(dims.num_vertices))
