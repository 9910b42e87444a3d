"""Tests for the :mod:`parallel_msc.cli.utils` module."""
import pytest
from parallel_msc.cli import utils
from parallel_msc.common.exceptions import VolumeError
from parallel_msc.workflows import STAGES, StageTimings


def test_echo_timings(capsys):
    utils.echo_timings(StageTimings(gradient=1.5, counting=0.25))
    lines = capsys.readouterr().err.splitlines()

    assert lines[0].split() == ['Stage', 'Time', '(s)']
    assert [line.split()[0] for line in lines[2:]] == [*STAGES, 'total']
    assert lines[-1].split() == ['total', '1.7500']


def test_echo_messages(capsys):
    utils.echo_success('done')
    utils.echo_warning('careful')
    utils.echo_critical('failed')
    captured = capsys.readouterr()

    assert 'done' in captured.out
    assert 'careful' in captured.err
    assert 'failed' in captured.err


def test_write_outputs(tmp_path):
    paths = utils.write_outputs([(tmp_path / 'first.json', b'{}'), (str(tmp_path / 'second.csv'), b'a,b\n')])

    assert paths == [tmp_path / 'first.json', tmp_path / 'second.csv']
    assert paths[0].read_bytes() == b'{}'
    assert paths[1].read_bytes() == b'a,b\n'
    assert sorted(path.name for path in tmp_path.iterdir()) == ['first.json', 'second.csv']


@pytest.mark.parametrize('unwritable', ('missing/output.json', 'directory'))
def test_write_outputs_all_or_nothing(tmp_path, unwritable):
    """A target that cannot be written leaves every other target and no partial files behind."""
    (tmp_path / 'directory').mkdir()
    existing = tmp_path / 'existing.json'
    existing.write_bytes(b'old')
    outputs = [(existing, b'new'), (tmp_path / 'fresh.json', b'{}'), (tmp_path / unwritable, b'{}')]

    with pytest.raises(VolumeError, match=r'could not be written'):
        utils.write_outputs(outputs)

    assert existing.read_bytes() == b'old'
    assert sorted(path.name for path in tmp_path.iterdir()) == ['directory', 'existing.json']
