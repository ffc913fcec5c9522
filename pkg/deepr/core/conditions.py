"""Conditions, control-flow signals and the warning channel."""
import contextvars
import logging
import textwrap
from dataclasses import dataclass
from typing import Any, Optional


logger = logging.getLogger(__name__)


class _PendingCall:
    """Marker for an error whose call has not been attached yet."""

    def __repr__(self):
        return 'CALL_PENDING'


CALL_PENDING = _PendingCall()


class RCondition(Exception):
    """Root of every R-level condition raised as a Python exception."""

    def __init__(self, message: str, call: Any = CALL_PENDING):
        super().__init__(message)
        self.message = message
        self.call = call


class RError(RCondition):
    """An R error. ``reported`` is set once the message has been printed."""

    def __init__(self, message: str, call: Any = CALL_PENDING, condition: Any = None):
        super().__init__(message, call)
        self.reported = False
        self.condition = condition


class RWarningCondition(RCondition):
    """A warning delivered to a ``tryCatch(warning = )`` handler."""


class RMessageCondition(RCondition):
    """A message delivered to a ``tryCatch(message = )`` handler."""


class RSyntaxError(RCondition):
    """A parse failure carrying its source position.

    ``snippet`` is the statement text up to the offending token and
    ``source_line`` the full text of the line it sits on.
    """

    def __init__(self, message: str, line: int = 0, col: int = 0, snippet: str = '',
                 source_line: str = ''):
        super().__init__(message, None)
        self.line = line
        self.col = col
        self.snippet = snippet
        self.source_line = source_line

    def describe(self, source_name: str = '<text>') -> str:
        """The form used by ``parse(text = )``: position, line and caret."""
        head = f'{source_name}:{self.line}:{self.col}: {self.message}'
        if not self.source_line:
            return head
        prefix = f'{self.line}: '
        return f'{head}\n{prefix}{self.source_line}\n{" " * (len(prefix) + self.col)}^'

    def top_level_message(self) -> str:
        """The form printed by the REPL: the message plus the offending text."""
        if not self.snippet:
            return self.message
        if '\n' in self.snippet:
            return f'{self.message} in:\n"{self.snippet}"'
        return f'{self.message} in "{self.snippet}"'


class IncompleteInput(RSyntaxError):
    """The input ended in the middle of an expression."""


class BreakSignal(Exception):
    pass


class NextSignal(Exception):
    pass


class ReturnSignal(Exception):
    """Unwinds to the closure whose local environment is ``env``."""

    def __init__(self, value: Any, env: Any, visible: bool = True):
        super().__init__()
        self.value = value
        self.env = env
        self.visible = visible


class QuitSignal(Exception):
    """Raised by ``q()`` to end an interactive session."""

    def __init__(self, status: int = 0):
        super().__init__()
        self.status = status


@dataclass
class PendingWarning:
    message: str
    call: Any = None


_sink: contextvars.ContextVar = contextvars.ContextVar('deepr_warning_sink', default=None)


def set_warning_sink(sink: Any) -> contextvars.Token:
    return _sink.set(sink)


def reset_warning_sink(token: contextvars.Token) -> None:
    _sink.reset(token)


def warn(message: str, call: Any = CALL_PENDING) -> None:
    """Signal a warning to the active interpreter.

    ``call`` defaults to the builtin call being evaluated; pass None for
    warnings printed without a call.
    """
    sink = _sink.get()
    if sink is None:
        logger.debug("warning with no active interpreter: %s", message)
        return
    sink.signal_warning(message, call)


def format_condition(kind: str, message: str, call_text: Optional[str]) -> str:
    if call_text:
        return f'{kind} in {call_text}: {message}'
    return f'{kind}: {message}'


REPORT_WIDTH = 74
CONTINUATION_INDENT = {'Error': ' ' * 5, 'Warning': ''}


def wrap_report(kind: str, text: str) -> str:
    """Fold a reported condition at word boundaries onto lines of at most ``REPORT_WIDTH`` columns.

    Text that already spans several lines is left as it is.
    """
    if '\n' in text or len(text) <= REPORT_WIDTH:
        return text
    lines = textwrap.wrap(text, REPORT_WIDTH, subsequent_indent=CONTINUATION_INDENT.get(kind, ''),
                          break_long_words=False, break_on_hyphens=False)
    return '\n'.join(lines)
