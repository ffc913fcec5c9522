"""Shared fixtures: a fresh interpreter writing into an in-memory transcript."""
import pytest

from deepr.commands.session import LineSession, make_interpreter
from deepr.language.parser import parse_program
from deepr.ui.console import TranscriptSink


@pytest.fixture
def interp():
    return make_interpreter(sink=TranscriptSink())


@pytest.fixture
def run_r(interp):
    """Feed R source line by line, as the REPL does, and return what was printed."""
    session = LineSession(interp)

    def run(source: str) -> str:
        interp.sink.take()
        for line in source.strip('\n').split('\n'):
            session.feed(line)
        session.finish()
        return interp.sink.take()

    return run


@pytest.fixture
def r_value(interp):
    """Evaluate source in the global environment and return the last value."""
    def evaluate(source: str):
        value = None
        for expr in parse_program(source):
            value = interp.eval(expr, interp.global_env)
        return value

    return evaluate


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep tests away from the user's ~/.deepr directory."""
    monkeypatch.setenv('DEEPR_CONFIG', str(tmp_path / 'config.yml'))
    monkeypatch.setenv('HOME', str(tmp_path))
