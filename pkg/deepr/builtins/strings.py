"""Strings and output: paste, nchar, sprintf, format, cat and print."""
import math
import re
from typing import Any, List, Optional

from ..core.attributes import keep_only
from ..core.coercion import as_strings, coerce_vector
from ..core.conditions import RError
from ..core.environments import Environment
from ..core.frames import CallArgs
from ..core.numbers import format_real
from ..core.values import NULL, RObject, Vector, mk_int, mk_str
from ..language.ast import Call, Symbol
from ..ui.printer import format_elements, left_aligned
from .helpers import flag, int_arg, str_arg
from .registry import builtin


def _string_args(values: List[Any]) -> List[List[Optional[str]]]:
    out = []
    for value in values:
        if isinstance(value, Symbol):
            out.append([value.name])
        else:
            out.append(as_strings(value))
    return out


def paste_strings(values: List[Any], sep: str, collapse: Optional[str]) -> Vector:
    columns = [col for col in _string_args(values) if col]
    if not columns:
        return mk_str([''] if collapse is not None else [])
    n = max(len(col) for col in columns)
    joined = [sep.join('NA' if col[k % len(col)] is None else col[k % len(col)] for col in columns)
              for k in range(n)]
    if collapse is not None:
        return mk_str([collapse.join(joined)])
    return mk_str(joined)


@builtin('paste', signature='..., sep = " ", collapse = NULL')
def do_paste(args: CallArgs):
    return paste_strings(args.dot_values(), str_arg(args, 'sep', ' '), str_arg(args, 'collapse'))


@builtin('paste0', signature='..., collapse = NULL')
def do_paste0(args: CallArgs):
    return paste_strings(args.dot_values(), '', str_arg(args, 'collapse'))


@builtin('toString', signature='x, ...', generic='self')
def do_to_string(args: CallArgs):
    sep = ', '
    for name, value in args.dots:
        if name == 'sep':
            sep = as_strings(value)[0] or ', '
    return paste_strings([args.get('x', NULL)], '', sep)


def _string_map(args: CallArgs, fn) -> Vector:
    x = args.get('x', NULL)
    if isinstance(x, Vector) and not x.is_atomic():
        raise RError("non-character argument")
    strings = as_strings(x)
    out = mk_str([None if s is None else fn(s) for s in strings])
    return keep_only(out.with_attributes(x.attributes), ('names', 'dim', 'dimnames')) \
        if isinstance(x, Vector) and x.attributes else out


@builtin('toupper', signature='x')
def do_toupper(args: CallArgs):
    return _string_map(args, str.upper)


@builtin('tolower', signature='x')
def do_tolower(args: CallArgs):
    return _string_map(args, str.lower)


@builtin('nchar', signature='x, type = "chars", allowNA = FALSE, keepNA = NA')
def do_nchar(args: CallArgs):
    x = args.get('x', NULL)
    if isinstance(x, Vector) and x.rtype in ('list', 'expression'):
        raise RError("'nchar()' requires a character vector")
    is_character = isinstance(x, Vector) and x.rtype == 'character'
    counts = []
    for s in as_strings(x):
        if s is None:
            counts.append(None if is_character else 2)
        else:
            counts.append(len(s))
    out = mk_int(counts)
    names = x.names() if isinstance(x, Vector) else None
    return out.with_attributes({'names': mk_str(names)}) if names is not None else out


@builtin('substr', signature='x, start, stop')
def do_substr(args: CallArgs):
    x = args.get('x', NULL)
    if not (isinstance(x, Vector) and x.rtype == 'character'):
        raise RError("extracting substrings from a non-character object")
    starts = coerce_vector(args.get('start', NULL), 'integer').values()
    stops = coerce_vector(args.get('stop', NULL), 'integer').values()
    if not starts or not stops:
        raise RError("invalid substring arguments")
    out = []
    for k, s in enumerate(x.data):
        first, last = starts[k % len(starts)], stops[k % len(stops)]
        if s is None or first is None or last is None:
            out.append(None)
        else:
            out.append(s[max(first, 1) - 1:max(last, 0)])
    return mk_str(out, x.attributes)


# sprintf

_SPEC = re.compile(r'%(?:(\d+)\$)?([-+ 0#]*)(\*|\d+)?(?:\.(\d+))?([sdifeEgGxXo%])')


def _format_one(conv: str, flags: str, width: Optional[str], precision: Optional[str],
                value: Vector, k: int) -> str:
    spec = '%' + flags + (width or '') + (f'.{precision}' if precision is not None else '')
    item = value.element(k % value.length())
    if conv == 's':
        text = as_strings(value)[k % value.length()]
        return (spec + 's') % ('NA' if text is None else text)
    if item is None:
        return ('%' + flags.replace('0', '') + (width or '') + 's') % 'NA'
    if conv in 'dixXo':
        if value.rtype == 'double':
            if not float(item).is_integer():
                raise RError(f"invalid format '{spec}{conv}'; use format %f, %e, %g or %a for numeric objects")
            item = int(item)
        elif value.rtype not in ('integer', 'logical'):
            raise RError(f"invalid format '{spec}{conv}'; use format %s for character objects")
        return (spec + ('d' if conv == 'i' else conv)) % int(item)
    if value.rtype == 'character':
        raise RError(f"invalid format '{spec}{conv}'; use format %s for character objects")
    number = float(item)
    if math.isinf(number) or math.isnan(number):
        text = 'NaN' if math.isnan(number) else ('Inf' if number > 0 else '-Inf')
        if number > 0 and '+' in flags:
            text = '+' + text
        return ('%' + flags.replace('0', '').replace('+', '') + (width or '') + 's') % text
    return (spec + conv) % number


def sprintf(fmt: str, values: List[Vector], k: int) -> str:
    pieces: List[str] = []
    pos = 0
    next_arg = 0
    for m in _SPEC.finditer(fmt):
        pieces.append(fmt[pos:m.start()])
        pos = m.end()
        index, flags, width, precision, conv = m.groups()
        if conv == '%':
            pieces.append('%')
            continue
        if width == '*':
            width = str(int(values[next_arg].element(k % values[next_arg].length())))
            next_arg += 1
        slot = int(index) - 1 if index else next_arg
        if not index:
            next_arg += 1
        if slot >= len(values):
            raise RError("too few arguments")
        pieces.append(_format_one(conv, flags, width, precision, values[slot], k))
    pieces.append(fmt[pos:])
    return ''.join(pieces)


@builtin('sprintf', signature='fmt, ...')
def do_sprintf(args: CallArgs):
    fmt = args.get('fmt', NULL)
    if not (isinstance(fmt, Vector) and fmt.rtype == 'character'):
        raise RError("'fmt' is not a character vector")
    values = []
    for value in args.dot_values():
        if value is NULL:
            value = mk_str([])
        if not (isinstance(value, Vector) and value.is_atomic()):
            raise RError(f"unsupported type '{getattr(value, 'rtype', 'unknown')}'")
        values.append(value)
    lengths = [fmt.length()] + [v.length() for v in values]
    if min(lengths) == 0:
        return mk_str([])
    n = max(lengths)
    return mk_str([None if fmt.na[k % fmt.length()] else sprintf(fmt.data[k % fmt.length()], values, k)
                   for k in range(n)])


# format

@builtin('format', signature='x, trim = FALSE, digits = NULL, nsmall = 0L, justify = "left", width = NULL, ...',
         generic='self')
def do_format(args: CallArgs):
    x = args.get('x', NULL)
    interp = args.interp
    digits = int_arg(args, 'digits') or interp.printer.settings().digits
    nsmall = int_arg(args, 'nsmall', 0) or 0
    width = int_arg(args, 'width', 0) or 0
    if x is NULL:
        return mk_str([])
    if isinstance(x, Vector) and x.rtype == 'list':
        items = [format_value(interp, item, digits, nsmall) for item in x.data]
        return mk_str([', '.join(cells) for cells in items], x.attributes)
    if not isinstance(x, Vector):
        return mk_str(interp.printer.render(x))
    cells = format_value(interp, x, digits, nsmall, na_string='NA')
    if not flag(args, 'trim', False) and cells:
        width = max([width] + [len(c) for c in cells])
    justify = str_arg(args, 'justify', 'left')
    if left_aligned(x) and justify == 'left':
        cells = [c.ljust(width) for c in cells]
    elif left_aligned(x) and justify == 'centre':
        cells = [c.center(width) for c in cells]
    else:
        cells = [c.rjust(width) for c in cells]
    return keep_only(mk_str(cells).with_attributes(x.attributes), ('names', 'dim', 'dimnames'))


def format_value(interp, x: Any, digits: int, nsmall: int = 0, na_string: str = 'NA') -> List[str]:
    if isinstance(x, Vector) and x.is_atomic():
        return format_elements(x, digits, quote=False, nsmall=nsmall, na_string=na_string)
    return [' '.join(interp.printer.render(x))]


# output

def cat_strings(value: Any, position: int, digits: int) -> List[str]:
    if value is NULL:
        return []
    if isinstance(value, Symbol):
        return [value.name]
    if isinstance(value, Vector) and value.rtype == 'double':
        return [format_real([x], digits)[0] for x in value.values()]
    if isinstance(value, Vector) and value.is_atomic():
        return ['NA' if s is None else s for s in as_strings(value)]
    if isinstance(value, Vector) and value.rtype == 'list':
        out: List[str] = []
        for item in value.data:
            if isinstance(item, Vector) and item.is_atomic() and item.length() == 1 or item is NULL:
                out.extend(cat_strings(item, position, digits))
            else:
                raise RError(f"argument {position} (type 'list') cannot be handled by 'cat'")
        return out
    kind = 'language' if isinstance(value, Call) else \
        ('environment' if isinstance(value, Environment) else getattr(value, 'rtype', 'unknown'))
    raise RError(f"argument {position} (type '{kind}') cannot be handled by 'cat'")


@builtin('cat', signature='..., file = "", sep = " ", fill = FALSE, labels = NULL, append = FALSE',
         visibility='off')
def do_cat(args: CallArgs):
    interp = args.interp
    seps = [s if s is not None else 'NA' for s in as_strings(args.get('sep', mk_str([' '])))] or ['']
    digits = interp.printer.settings().digits
    items: List[str] = []
    for position, value in enumerate(args.dot_values(), start=1):
        items.extend(cat_strings(value, position, digits))
    pieces = []
    for k, item in enumerate(items):
        if k:
            pieces.append(seps[(k - 1) % len(seps)])
        pieces.append(item)
    if flag(args, 'fill', False) and pieces and not pieces[-1].endswith('\n'):
        pieces.append('\n')
    text = ''.join(pieces)
    if text:
        interp.sink.out(text)
    return NULL


def _print_settings(args: CallArgs):
    digits = None
    quote = True
    for name, value in args.dots:
        if name == 'digits' and value is not NULL:
            digits = int(coerce_vector(value, 'integer').element(0))
        elif name == 'quote':
            quote = bool(coerce_vector(value, 'logical').element(0))
    return digits, quote


def print_default(args: CallArgs) -> RObject:
    interp = args.interp
    x = args.get('x', NULL)
    digits, quote = _print_settings(args)
    if digits is not None and not 1 <= digits <= 22:
        raise RError("invalid printing digits %d" % digits)
    for line in interp.printer.render(x, digits, quote):
        interp.sink.out(line + '\n')
    return x


@builtin('print', signature='x, ...', generic='self', visibility='off')
def do_print(args: CallArgs):
    return print_default(args)


@builtin('print.default', signature='x, ...', visibility='off')
def do_print_default(args: CallArgs):
    return print_default(args)


@builtin('noquote', signature='obj, right = FALSE')
def do_noquote(args: CallArgs):
    obj = args.get('obj', NULL)
    classes = (obj.class_attr() or []) if isinstance(obj, RObject) else []
    if 'noquote' in classes:
        return obj
    attrs = dict(obj.attributes or {})
    attrs['class'] = mk_str(['noquote'] + classes)
    return obj.with_attributes(attrs)
