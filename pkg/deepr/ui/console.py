"""Output channels of an interpreter session."""
import io
from contextlib import contextmanager
from typing import Iterator, List, Optional

from rich.console import Console


class OutputSink:
    """Plain-text ``out`` and ``err`` channels written through rich consoles.

    Text is written with ``Console.out`` so no markup, highlighting or wrapping
    is applied; transcripts stay byte-exact.
    """

    def __init__(self, console: Optional[Console] = None, err_console: Optional[Console] = None):
        self.console = console or Console(highlight=False, soft_wrap=True)
        self.err_console = err_console or Console(stderr=True, highlight=False, soft_wrap=True)
        self._captures: List[io.StringIO] = []

    def out(self, text: str) -> None:
        if self._captures:
            self._captures[-1].write(text)
            return
        self.write_out(text)

    def err(self, text: str) -> None:
        self.write_err(text)

    def write_out(self, text: str) -> None:
        self.console.out(text, end='', highlight=False)

    def write_err(self, text: str) -> None:
        self.err_console.out(text, end='', highlight=False)

    @contextmanager
    def capture(self) -> Iterator[io.StringIO]:
        """Collect ``out`` text written inside the block instead of emitting it."""
        buffer = io.StringIO()
        self._captures.append(buffer)
        try:
            yield buffer
        finally:
            self._captures.remove(buffer)


class TranscriptSink(OutputSink):
    """Both channels merged into one in-memory transcript, in write order."""

    def __init__(self):
        super().__init__(Console(file=io.StringIO()), Console(file=io.StringIO()))
        self.parts: List[str] = []

    def write_out(self, text: str) -> None:
        self.parts.append(text)

    def write_err(self, text: str) -> None:
        self.parts.append(text)

    def text(self) -> str:
        return ''.join(self.parts)

    def take(self) -> str:
        """Return the transcript so far and start a new one."""
        text, self.parts = self.text(), []
        return text
