"""Tests for the :mod:`parallel_msc.cli.generate` module."""
import numpy
import pytest
from parallel_msc.cli import cmd_generate, cmd_root
from parallel_msc.common.types import ExitCode


@pytest.mark.parametrize(('dtype', 'itemsize'), (('u8', 1), ('u16', 2), ('f32', 4), ('f64', 8)))
def test_generate(run_cli_command, tmp_path, dtype, itemsize):
    output = tmp_path / 'field.raw'
    options = ['--kind', 'two-bumps', '--dims', 5, 4, 3, '--dtype', dtype, '--out', output]
    result = run_cli_command(cmd_generate, options)

    assert output.stat().st_size == 5 * 4 * 3 * itemsize
    assert 'Success: wrote a two-bumps field of 5x4x3' in result.output


def test_generate_deterministic(run_cli_command, tmp_path):
    first, second = tmp_path / 'first.raw', tmp_path / 'second.raw'

    for output in (first, second):
        run_cli_command(cmd_generate, ['-k', 'white-noise', '-d', 4, 4, 4, '-s', 3, '-o', output])

    assert first.read_bytes() == second.read_bytes()


def test_generate_big_endian(run_cli_command, tmp_path):
    output = tmp_path / 'field.raw'
    run_cli_command(cmd_generate, ['-k', 'ramp', '-d', 3, 2, 2, '--dtype', 'u16', '--big-endian', '-o', output])

    assert numpy.fromfile(output, dtype='>u2').tolist() == [0, 1, 2] * 4


def test_generate_invalid_kind(run_cli_command, tmp_path):
    run_cli_command(cmd_generate, ['-k', 'spiral', '-d', 3, 3, 3, '-o', tmp_path / 'field.raw'], raises=True)


def test_generate_invalid_dims(run_cli_command, tmp_path):
    output = tmp_path / 'field.raw'
    arguments = ['generate', '-k', 'ramp', '-d', 1, 3, 3, '-o', output]
    run_cli_command(cmd_root, arguments, raises=True, exit_code=ExitCode.USAGE)
    assert not output.exists()
