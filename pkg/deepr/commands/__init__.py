"""Command-line commands for deepr."""
from .catalog import catalog
from .check import check
from .config import config
from .repl import repl
from .run import run

__all__ = ['catalog', 'check', 'config', 'repl', 'run']
