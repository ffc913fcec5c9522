"""Interpreter construction and line-oriented session driving shared by the commands."""
import logging
from typing import List, Optional

from ..builtins.session import options_from_config
from ..config import DEFAULTS
from ..core.conditions import IncompleteInput, QuitSignal, RSyntaxError
from ..core.evaluator import Interpreter
from ..language.parser import parse_program


logger = logging.getLogger(__name__)

PROMPT = '> '
CONTINUE_PROMPT = '+ '


def make_interpreter(config: Optional[dict] = None, sink=None) -> Interpreter:
    """A fresh interpreter whose options and recursion limit come from ``config``."""
    config = {**DEFAULTS, **(config or {})}
    return Interpreter(sink=sink, options=options_from_config(config),
                       recursion_limit=int(config['recursion_limit']))


class LineSession:
    """Feeds input line by line, evaluating each top-level statement once it is complete.

    ``errors`` counts statements that signalled an error, syntax errors
    included; ``quit_status`` is set once ``q()`` has been called.
    """

    def __init__(self, interp: Interpreter):
        self.interp = interp
        self.buffer: List[str] = []
        self.errors = 0
        self.quit_status: Optional[int] = None

    @property
    def prompt(self) -> str:
        return CONTINUE_PROMPT if self.buffer else PROMPT

    @property
    def pending(self) -> bool:
        return bool(self.buffer)

    def feed(self, line: str) -> bool:
        """Add one line; returns True when the buffered input was evaluated or rejected."""
        self.buffer.append(line)
        source = '\n'.join(self.buffer)
        try:
            exprs = parse_program(source)
        except IncompleteInput:
            return False
        except RSyntaxError as err:
            self.buffer.clear()
            self.errors += 1
            self.interp.report_syntax_error(err)
            return True
        self.buffer.clear()
        for expr in exprs:
            try:
                ok = self.interp.eval_toplevel(expr, auto_print=True)
            except QuitSignal as signal:
                self.quit_status = signal.status
                return True
            if not ok:
                self.errors += 1
                break
        return True

    def interrupt(self) -> None:
        """Abandon the statement being typed or evaluated."""
        logger.debug("interrupt; discarding %d buffered lines", len(self.buffer))
        self.buffer.clear()
        interp = self.interp
        interp.frames.clear()
        interp.builtin_calls.clear()
        interp.handlers.clear()
        interp.pending_warnings.clear()

    def finish(self) -> None:
        """End of input: an unfinished statement is a syntax error, as at the end of a file."""
        if not self.buffer:
            return
        source = '\n'.join(self.buffer)
        self.buffer.clear()
        try:
            parse_program(source)
        except RSyntaxError as err:
            self.errors += 1
            self.interp.report_syntax_error(err)
