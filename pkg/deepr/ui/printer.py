"""Rendering values the way ``print.default`` shows them."""
import logging
from dataclasses import dataclass
from typing import Any, List, Optional

from ..core.coercion import as_int_scalar
from ..core.environments import Environment
from ..core.numbers import format_real
from ..core.values import NULL, Builtin, Closure, DotsValue, RObject, Vector
from ..language.ast import Call, Symbol
from ..language.deparse import closure_header, deparse, escape_string, quote_name


logger = logging.getLogger(__name__)

HIDDEN_ATTRIBUTES = ('names', 'dim', 'dimnames', 'srcref')

_EMPTY = {'logical': 'logical(0)', 'integer': 'integer(0)', 'double': 'numeric(0)',
          'character': 'character(0)'}


@dataclass
class PrintSettings:
    width: int = 80
    digits: int = 7
    quote: bool = True


def format_elements(v: Vector, digits: int = 7, quote: bool = True, nsmall: int = 0,
                    na_string: Optional[str] = None) -> List[str]:
    """Unpadded text of every element of an atomic vector under one common format."""
    if v.rtype == 'double':
        return format_real(v.values(), digits, nsmall)
    if v.rtype == 'integer':
        return ['NA' if x is None else str(x) for x in v.values()]
    if v.rtype == 'logical':
        return ['NA' if x is None else ('TRUE' if x else 'FALSE') for x in v.values()]
    if v.rtype == 'character':
        missing = na_string or ('NA' if quote else '<NA>')
        return [missing if s is None else (escape_string(s) if quote else s) for s in v.data]
    raise TypeError(f'cannot format elements of a {v.rtype} vector')


def left_aligned(v: Vector) -> bool:
    return v.rtype == 'character'


def environment_label(interp, env: Environment) -> str:
    return interp.env_registry.label(env)


class Printer:
    """Turns values into output lines; classed list elements go back through ``print``."""

    def __init__(self, interp):
        self.interp = interp

    def settings(self, digits: Optional[int] = None, quote: bool = True) -> PrintSettings:
        options = self.interp.options
        width = as_int_scalar(options.get('width', NULL), 80) or 80
        if digits is None:
            digits = as_int_scalar(options.get('digits', NULL), 7) or 7
        return PrintSettings(max(width, 10), min(max(digits, 1), 22), quote)

    def render(self, value: Any, digits: Optional[int] = None, quote: bool = True) -> List[str]:
        return self._render(value, self.settings(digits, quote), '')

    # dispatch on kind

    def _render(self, value: Any, s: PrintSettings, prefix: str) -> List[str]:
        if value is NULL:
            return ['NULL']
        if isinstance(value, Vector):
            if value.rtype == 'list':
                lines = self._list(value, s, prefix)
            elif value.rtype == 'expression':
                lines = deparse(value.with_attributes(None))
            elif value.get_attr('dim') is not None and len(value.get_attr('dim').data) == 2:
                lines = self._matrix(value, s)
            else:
                lines = self._vector(value, s)
            return lines + self._attribute_trailers(value, s, prefix)
        if isinstance(value, Closure):
            return self._closure(value)
        if isinstance(value, Builtin):
            return [f'{closure_header(value)} .Primitive("{value.name}")']
        if isinstance(value, Environment):
            return [f'<environment: {environment_label(self.interp, value)}>']
        if isinstance(value, Symbol):
            return deparse(value, backtick=True)
        if isinstance(value, Call):
            if value.class_attr() == ['formula']:
                return deparse(Call(value.fn, value.args, value.pos))
            return deparse(value)
        if isinstance(value, DotsValue):
            return ['<...>']
        return [repr(value)]

    # atomic vectors

    def _vector(self, v: Vector, s: PrintSettings) -> List[str]:
        names = v.names()
        n = v.length()
        if n == 0:
            empty = _EMPTY[v.rtype]
            return ['named ' + empty if names is not None else empty]
        cells = format_elements(v, s.digits, s.quote)
        if names is not None:
            return self._named_vector(cells, names, s)
        width = max(len(c) for c in cells)
        cells = [c.ljust(width) if left_aligned(v) else c.rjust(width) for c in cells]
        label_width = len(f'[{n}]')
        per_line = max(1, (s.width - label_width) // (width + 1))
        lines = []
        for start in range(0, n, per_line):
            label = f'[{start + 1}]'.rjust(label_width)
            lines.append(label + ''.join(' ' + c for c in cells[start:start + per_line]))
        return lines

    @staticmethod
    def _named_vector(cells: List[str], names: List[Optional[str]], s: PrintSettings) -> List[str]:
        labels = ['<NA>' if nm is None else nm for nm in names]
        width = max(max(len(c) for c in cells), max(len(nm) for nm in labels))
        per_line = max(1, s.width // (width + 1))
        lines = []
        for start in range(0, len(cells), per_line):
            chunk = range(start, min(start + per_line, len(cells)))
            lines.append(''.join(labels[k].rjust(width) + ' ' for k in chunk))
            lines.append(''.join(cells[k].rjust(width) + ' ' for k in chunk))
        return lines

    # matrices

    def _matrix(self, v: Vector, s: PrintSettings) -> List[str]:
        nrow, ncol = (int(d) for d in v.get_attr('dim').data)
        if nrow == 0 or ncol == 0:
            return [f'<{nrow} x {ncol} matrix>']
        dimnames = v.get_attr('dimnames')
        row_names = col_names = None
        if isinstance(dimnames, Vector) and dimnames.rtype == 'list':
            rn, cn = dimnames.data[0], dimnames.data[1]
            row_names = None if rn is NULL else list(rn.data)
            col_names = None if cn is NULL else list(cn.data)
        row_labels = row_names or [f'[{i + 1},]' for i in range(nrow)]
        row_width = max(len(r) for r in row_labels)
        columns = []
        for j in range(ncol):
            column = Vector(v.rtype, v.data[j * nrow:(j + 1) * nrow], v.na[j * nrow:(j + 1) * nrow])
            cells = format_elements(column, s.digits, s.quote)
            label = col_names[j] if col_names else f'[,{j + 1}]'
            width = max([len(label)] + [len(c) for c in cells])
            left = left_aligned(v)
            columns.append((label.ljust(width) if left else label.rjust(width),
                            [c.ljust(width) if left else c.rjust(width) for c in cells]))
        lines: List[str] = []
        start = 0
        while start < ncol:
            used = row_width
            stop = start
            while stop < ncol and (stop == start or used + len(columns[stop][0]) + 1 <= s.width):
                used += len(columns[stop][0]) + 1
                stop += 1
            lines.append(' ' * row_width + ''.join(' ' + columns[j][0] for j in range(start, stop)))
            for i in range(nrow):
                lines.append(row_labels[i].ljust(row_width)
                             + ''.join(' ' + columns[j][1][i] for j in range(start, stop)))
            start = stop
        return lines

    # lists

    def _list(self, v: Vector, s: PrintSettings, prefix: str) -> List[str]:
        n = v.length()
        names = v.names()
        if n == 0:
            if prefix:
                return ['list()']
            return ['named list()' if names is not None else 'list()']
        lines: List[str] = []
        for k in range(n):
            name = names[k] if names is not None else None
            if name:
                tag = f'{prefix}${quote_name(name)}'
            elif name is None and names is not None:
                tag = f'{prefix}$<NA>'
            else:
                tag = f'{prefix}[[{k + 1}]]'
            lines.append(tag)
            item = v.data[k]
            if isinstance(item, RObject) and item.is_object() and not isinstance(item, Environment):
                lines.extend(self._dispatched(item))
            else:
                lines.extend(self._render(item, s, tag))
            lines.append('')
        return lines

    def _dispatched(self, value: RObject) -> List[str]:
        """Lines ``print`` writes for a classed value, captured."""
        with self.interp.sink.capture() as buffer:
            self.interp.print_value(value)
        return buffer.getvalue().rstrip('\n').split('\n')

    # attributes

    def _attribute_trailers(self, v: Vector, s: PrintSettings, prefix: str) -> List[str]:
        lines: List[str] = []
        for name, value in (v.attributes or {}).items():
            if name in HIDDEN_ATTRIBUTES:
                continue
            tag = f'attr(,"{name}")'
            lines.append(tag)
            lines.extend(self._render(value, s, prefix + tag))
        return lines

    # functions

    def _closure(self, f: Closure) -> List[str]:
        lines = f.srcref.split('\n') if f.srcref else deparse(f)
        if f.env is self.interp.base_env:
            lines.append('<environment: namespace:base>')
        elif f.env is not self.interp.global_env:
            lines.append(f'<environment: {environment_label(self.interp, f.env)}>')
        return lines
