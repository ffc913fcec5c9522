"""Golden-file conformance harness.

A corpus file (``*.Rt``) interleaves R source with the output it is expected
to produce, each output line prefixed by ``## ``::

    #% digits: 5

    x <- c(1, 2, NA)
    mean(x, na.rm = TRUE)
    ## [1] 1.5

A chunk is a run of source lines followed by its expected lines; the next
source line after expected output, or a blank line once the source parses,
starts a new chunk. Pragma lines (``#% name`` or ``#% name: value``)
directly above a chunk apply to that chunk. A pragma block separated from
the first chunk by a blank line applies to the whole file.

Pragmas: ``digits: N`` (1 to 17) sets ``options(digits)`` and ``width: N``
(20 to 10000) sets ``options(width)`` while the chunk runs. ``skip`` does not
run the chunk, ``error-ok`` declares that the chunk signals an error and
``fresh-env`` runs it in a new interpreter.
"""
import difflib
import fnmatch
import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from ..config import OPTION_RANGES
from ..core.values import mk_int
from ..language.parser import is_incomplete
from ..ui.console import TranscriptSink
from .session import LineSession, make_interpreter


logger = logging.getLogger(__name__)

CORPUS_SUFFIX = '.Rt'
EXPECTED_PREFIX = '##'
PRAGMA_PREFIX = '#%'
PRAGMA = re.compile(r'^#%\s*([a-z][a-z-]*)\s*(?::\s*(.*?))?\s*$')
OPTION_PRAGMAS = ('digits', 'width')
FLAG_PRAGMAS = ('skip', 'error-ok', 'fresh-env')

PASS = 'pass'
FAIL = 'fail'
SKIPPED = 'skipped'
ERROR_MISMATCH = 'error-mismatch'


class HarnessError(Exception):
    """A corpus file that cannot be read or parsed; names the file and line."""


@dataclass
class Pragmas:
    digits: Optional[int] = None
    width: Optional[int] = None
    skip: bool = False
    error_ok: bool = False
    fresh_env: bool = False

    def merged(self, local: 'Pragmas') -> 'Pragmas':
        return Pragmas(
            digits=local.digits if local.digits is not None else self.digits,
            width=local.width if local.width is not None else self.width,
            skip=self.skip or local.skip,
            error_ok=self.error_ok or local.error_ok,
            fresh_env=self.fresh_env or local.fresh_env,
        )


@dataclass
class Chunk:
    file: str
    line: int
    source: List[str]
    expected: List[str]
    pragmas: Pragmas = field(default_factory=Pragmas)


@dataclass
class ChunkResult:
    file: str
    line: int
    source: str
    expected: List[str]
    actual: List[str]
    status: str

    @property
    def location(self) -> str:
        return f"{self.file}:{self.line}"

    def diff(self) -> List[str]:
        if self.status == PASS or self.status == SKIPPED:
            return []
        return list(difflib.unified_diff(self.expected, self.actual,
                                         fromfile=f"{self.location} expected",
                                         tofile=f"{self.location} actual", lineterm=''))

    def to_json(self) -> dict:
        return {'file': self.file, 'line': self.line, 'status': self.status,
                'diff': '\n'.join(self.diff())}


@dataclass
class ConformanceReport:
    results: List[ChunkResult] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(1 for r in self.results if r.status == status)

    @property
    def failures(self) -> List[ChunkResult]:
        return [r for r in self.results if r.status in (FAIL, ERROR_MISMATCH)]

    @property
    def ok(self) -> bool:
        return not self.failures

    def by_file(self) -> Dict[str, Dict[str, int]]:
        table: Dict[str, Dict[str, int]] = {}
        for r in self.results:
            row = table.setdefault(r.file, {PASS: 0, FAIL: 0, ERROR_MISMATCH: 0, SKIPPED: 0})
            row[r.status] += 1
        return table

    def summary(self) -> dict:
        return {'total': len(self.results), 'passed': self.count(PASS),
                'failed': self.count(FAIL), 'error_mismatch': self.count(ERROR_MISMATCH),
                'skipped': self.count(SKIPPED)}

    def to_json(self) -> dict:
        return {'summary': self.summary(), 'chunks': [r.to_json() for r in self.results]}


def parse_pragma(text: str, file: str, lineno: int, into: Pragmas) -> None:
    match = PRAGMA.match(text)
    if not match:
        raise HarnessError(f"{file}:{lineno}: malformed pragma '{text}'")
    name, value = match.group(1), match.group(2)
    if name in OPTION_PRAGMAS:
        low, high = OPTION_RANGES[name]
        if value is None or not value.isdigit() or not low <= int(value) <= high:
            raise HarnessError(f"{file}:{lineno}: '{name}' pragma needs an integer between {low} and {high}")
        setattr(into, name, int(value))
    elif name in FLAG_PRAGMAS:
        if value:
            raise HarnessError(f"{file}:{lineno}: pragma '{name}' takes no value")
        setattr(into, name.replace('-', '_'), True)
    else:
        raise HarnessError(f"{file}:{lineno}: unknown pragma '{name}'")


def _expected_line(text: str) -> str:
    body = text[len(EXPECTED_PREFIX):]
    return body[1:] if body.startswith(' ') else body


def parse_corpus(text: str, file: str = '<corpus>') -> List[Chunk]:
    """Split corpus text into chunks; raises HarnessError naming the offending line."""
    chunks: List[Chunk] = []
    file_pragmas = Pragmas()
    pending = Pragmas()
    pending_line: Optional[int] = None
    current: Optional[Chunk] = None

    def close():
        nonlocal current
        if current is not None:
            chunks.append(current)
            current = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if line.startswith(PRAGMA_PREFIX):
            if current is not None and (current.expected or not is_incomplete('\n'.join(current.source))):
                close()
            if current is not None:
                raise HarnessError(f"{file}:{lineno}: pragma inside an unfinished expression")
            parse_pragma(line, file, lineno, pending)
            pending_line = pending_line or lineno
        elif line.startswith(EXPECTED_PREFIX):
            if current is None:
                raise HarnessError(f"{file}:{lineno}: expected output with no source above it")
            current.expected.append(_expected_line(line))
        elif not line.strip():
            if current is not None:
                if current.expected or not is_incomplete('\n'.join(current.source)):
                    close()
                else:
                    current.source.append(line)
            elif pending_line is not None:
                if chunks:
                    raise HarnessError(f"{file}:{pending_line}: pragma is not attached to a chunk")
                file_pragmas = file_pragmas.merged(pending)
                pending, pending_line = Pragmas(), None
        else:
            if current is not None and current.expected:
                close()
            if current is None:
                current = Chunk(file, lineno, [], [], file_pragmas.merged(pending))
                pending, pending_line = Pragmas(), None
            current.source.append(line)
    close()
    if pending_line is not None:
        raise HarnessError(f"{file}:{pending_line}: pragma is not attached to a chunk")
    return chunks


def normalise(lines: Iterable[str]) -> List[str]:
    """Strip trailing whitespace from every line and drop trailing blank lines."""
    out = [line.rstrip() for line in lines]
    while out and not out[-1]:
        out.pop()
    return out


def _new_session(sink: TranscriptSink) -> LineSession:
    return LineSession(make_interpreter(sink=sink))


def run_chunks(chunks: Sequence[Chunk]) -> List[ChunkResult]:
    """Evaluate chunks in order, sharing one interpreter except for fresh-env chunks."""
    sink = TranscriptSink()
    shared: Optional[LineSession] = None
    results = []
    for chunk in chunks:
        source = '\n'.join(chunk.source)
        expected = normalise(chunk.expected)
        if chunk.pragmas.skip:
            results.append(ChunkResult(chunk.file, chunk.line, source, expected, [], SKIPPED))
            continue
        if chunk.pragmas.fresh_env:
            session = _new_session(sink)
        else:
            shared = shared or _new_session(sink)
            session = shared
        interp = session.interp
        saved = {name: interp.options.get(name) for name in OPTION_PRAGMAS}
        for name in OPTION_PRAGMAS:
            value = getattr(chunk.pragmas, name)
            if value is not None:
                interp.options[name] = mk_int([value])
        sink.take()
        errors_before = session.errors
        for line in chunk.source:
            session.feed(line)
            if session.quit_status is not None:
                break
        session.finish()
        session.quit_status = None
        for name, value in saved.items():
            if value is not None:
                interp.options[name] = value
        actual = normalise(sink.take().split('\n'))
        errored = session.errors > errors_before
        if actual != expected:
            status = FAIL
        elif errored != chunk.pragmas.error_ok:
            status = ERROR_MISMATCH
        else:
            status = PASS
        logger.debug("%s:%d %s", chunk.file, chunk.line, status)
        results.append(ChunkResult(chunk.file, chunk.line, source, expected, actual, status))
    return results


def run_file(path: str) -> List[ChunkResult]:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as exc:
        raise HarnessError(f"{path}: {exc}") from exc
    return run_chunks(parse_corpus(text, path))


def collect_files(paths: Sequence[Path], pattern: Optional[str] = None) -> List[Path]:
    """Corpus files under ``paths`` (directories are searched recursively), filtered by glob."""
    files: List[Path] = []
    for path in paths:
        if path.is_dir():
            files.extend(sorted(path.rglob(f'*{CORPUS_SUFFIX}')))
        elif path.is_file():
            files.append(path)
        else:
            raise HarnessError(f"{path}: no such file or directory")
    if pattern:
        files = [f for f in files if fnmatch.fnmatch(f.name, pattern) or fnmatch.fnmatch(str(f), pattern)]
    return files


def run_conformance(paths: Sequence[Path], pattern: Optional[str] = None, jobs: int = 1) -> ConformanceReport:
    """Run every selected corpus file, one interpreter per file, and collect the results."""
    files = [str(f) for f in collect_files(paths, pattern)]
    logger.debug("conformance run over %d files with %d jobs", len(files), jobs)
    report = ConformanceReport()
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for results in pool.map(run_file, files):
                report.results.extend(results)
    else:
        for f in files:
            report.results.extend(run_file(f))
    return report

