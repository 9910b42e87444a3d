"""Configuration and fixtures for unit test suite."""
import typing as t

import click
import numpy
import pytest
from parallel_msc.common.synthetic import synthetic_field
from parallel_msc.grid import GridDims, ScalarField


@pytest.fixture
def run_cli_command():
    """Run a `click` command with the given options.

    The call will raise if the command triggered an exception or the exit code returned is non-zero.
    """
    from click.testing import Result

    def _run_cli_command(
        command: click.Command,
        options: t.Optional[list] = None,
        raises: bool = False,
        exit_code: t.Optional[int] = None,
    ) -> Result:
        """Run the command and check the result.

        .. note:: the `output_lines` attribute is added to return value containing list of stripped output lines.

        :param options: the list of command line options to pass to the command invocation
        :param raises: whether the command is expected to raise an exception
        :param exit_code: the exit code the command is expected to exit with if it raises
        :return: test result
        """
        import traceback

        runner = click.testing.CliRunner()
        result = runner.invoke(command, [str(option) for option in options or []])

        if raises:
            assert result.exception is not None, result.output
            assert result.exit_code != 0
            if exit_code is not None:
                assert result.exit_code == exit_code, result.output
        else:
            assert result.exception is None, ''.join(traceback.format_exception(*result.exc_info))
            assert result.exit_code == 0, result.output

        result.output_lines = [line.strip() for line in result.output.split('\n') if line.strip()]

        return result

    return _run_cli_command


@pytest.fixture
def generate_field():
    """Return a factory for synthetic scalar fields."""

    def _generate_field(kind: str = 'ramp', dims: tuple = (4, 4, 4), seed: int = 0) -> ScalarField:
        return synthetic_field(kind, GridDims(*dims), seed)

    return _generate_field


@pytest.fixture
def generate_random_field():
    """Return a factory for scalar fields of uniform random samples, optionally quantized to create ties."""

    def _generate_random_field(dims: tuple = (6, 6, 6), seed: int = 0, levels: t.Optional[int] = None) -> ScalarField:
        grid = GridDims(*dims)
        values = numpy.random.default_rng(seed).random(grid.num_vertices)
        if levels is not None:
            values = numpy.floor(values * levels)
        return ScalarField(grid, values)

    return _generate_random_field
