"""Vector construction, sequences, attributes, type predicates and coercions."""
import math
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from ..core.attributes import attr_get, attr_set, dims_of, implicit_class, inherits, with_names
from ..core.coercion import as_strings, as_vector, coerce_vector, common_type_of, to_list
from ..core.conditions import RError, warn
from ..core.environments import Environment, env_as_list
from ..core.frames import CallArgs
from ..core.indexing import subset, take
from ..core.values import (INT_MAX, NULL, Builtin, Closure, RObject, Vector, empty_vector,
                           identical, is_function, mk_double, mk_int, mk_list, mk_logical, mk_str,
                           na_vector, type_of)
from ..language.ast import Call, Symbol
from .helpers import flag, int_arg, r_bool, str_arg
from .registry import builtin
from .subset import call_to_list, list_to_call


# c() and unlist()

class _Names:
    """Accumulates element names with R's ``outer.inner`` / ``outer<k>`` rules."""

    def __init__(self):
        self.names: List[str] = []
        self.any = False

    def leaf(self, base: str, name: str, counter: List[int], total: int) -> None:
        counter[0] += 1
        if base and name:
            out = f'{base}.{name}'
        elif base:
            out = f'{base}{counter[0]}' if total > 1 else base
        else:
            out = name
        self.any = self.any or bool(out)
        self.names.append(out)


def _leaf_count(value: Any, recursive: bool) -> int:
    if value is NULL:
        return 0
    if isinstance(value, Vector):
        if recursive and value.rtype in ('list', 'expression'):
            return sum(_leaf_count(v, True) for v in value.data)
        return value.length()
    return 1


def _walk(items: Sequence[Tuple[str, Any]], base: str, total: int, counter: List[int],
          names: _Names, leaves: List[Any], recursive: bool) -> None:
    for name, value in items:
        if value is NULL:
            continue
        if not isinstance(value, Vector):
            names.leaf(base, name, counter, total)
            leaves.append(value)
            continue
        inner = value.names() or [''] * value.length()
        is_list = value.rtype in ('list', 'expression')
        sub = [(inner[k] or '', value.data[k] if is_list else
                Vector(value.rtype, value.data[k:k + 1], value.na[k:k + 1]))
               for k in range(value.length())]
        count = _leaf_count(value, recursive)
        if is_list and recursive:
            if name:
                scope = f'{base}.{name}' if base else name
                _walk(sub, scope, count, [0], names, leaves, recursive)
                counter[0] += count
            else:
                _walk(sub, base, total, counter, names, leaves, recursive)
            continue
        if name:
            scope = f'{base}.{name}' if base else name
            inner_counter = [0]
            for inner_name, elt in sub:
                names.leaf(scope, inner_name, inner_counter, count)
                leaves.append(elt)
            counter[0] += count
        else:
            for inner_name, elt in sub:
                names.leaf(base, inner_name, counter, total)
                leaves.append(elt)


def _leaves_to_vector(leaves: List[Any], names: _Names) -> RObject:
    if not leaves:
        return NULL
    if all(isinstance(v, Vector) and v.is_atomic() for v in leaves):
        rtype = common_type_of(leaves)
        parts = [coerce_vector(v, rtype) for v in leaves]
        out: RObject = Vector(rtype, np.concatenate([p.data for p in parts]),
                              np.concatenate([p.na for p in parts]))
    else:
        out = mk_list(leaves)
    if names.any:
        out = with_names(out, names.names)
    return out


def combine(items: Sequence[Tuple[Optional[str], Any]], recursive: bool = False) -> RObject:
    """``c(...)``: concatenate under the common type, composing names."""
    items = [(name or '', value) for name, value in items]
    plain = all((isinstance(v, Vector) and v.is_atomic() and not name and v.get_attr('names') is None)
                or v is NULL for name, v in items)
    if plain:
        vectors = [v for _, v in items if v is not NULL]
        if not vectors:
            return NULL
        rtype = common_type_of(vectors)
        parts = [coerce_vector(v, rtype) for v in vectors]
        return Vector(rtype, np.concatenate([p.data for p in parts]),
                      np.concatenate([p.na for p in parts]))
    names = _Names()
    leaves: List[Any] = []
    total = sum(_leaf_count(v, recursive) for _, v in items)
    _walk(items, '', total, [0], names, leaves, recursive)
    keep_lists = not recursive and any(
        not (isinstance(v, Vector) and v.is_atomic()) and v is not NULL for _, v in items)
    if keep_lists:
        out: RObject = mk_list(leaves)
        return with_names(out, names.names) if names.any else out
    return _leaves_to_vector(leaves, names)


@builtin('c', signature='...', generic='self')
def do_c(args: CallArgs):
    return combine(args.dots)


@builtin('unlist', signature='x, recursive = TRUE, use.names = TRUE')
def do_unlist(args: CallArgs):
    x = args.get('x', NULL)
    if not (isinstance(x, Vector) and x.rtype in ('list', 'expression')):
        return x
    recursive = flag(args, 'recursive', True)
    names = x.names() or [''] * x.length()
    out = combine(list(zip(names, x.data)), recursive=recursive)
    if not flag(args, 'use.names', True) and isinstance(out, Vector):
        out = with_names(out, None)
    return out


@builtin('list', signature='...')
def do_list(args: CallArgs):
    names = args.dot_names()
    return mk_list(args.dot_values(), [n or '' for n in names] if any(names) else None)


# constructors

def _length_arg(args: CallArgs, name: str = 'length') -> int:
    n = int_arg(args, name, 0)
    if n is None or n < 0:
        raise RError(f"invalid '{name}' argument")
    return n


_ZERO = {'logical': False, 'integer': 0, 'double': 0.0, 'character': ''}


def zeros(mode: str, n: int) -> Vector:
    if mode in ('list', 'expression'):
        return Vector(mode, mk_list([NULL] * n).data)
    if mode == 'numeric':
        mode = 'double'
    if mode not in _ZERO:
        raise RError(f"vector: cannot make a vector of mode '{mode}'.")
    return Vector(mode, np.array([_ZERO[mode]] * n, dtype=empty_vector(mode).data.dtype),
                  np.zeros(n, dtype=bool))


@builtin('vector', signature='mode = "logical", length = 0L')
def do_vector(args: CallArgs):
    return zeros(str_arg(args, 'mode', 'logical'), _length_arg(args))


@builtin('logical', signature='length = 0L')
def do_logical(args: CallArgs):
    return zeros('logical', _length_arg(args))


@builtin('integer', signature='length = 0L')
def do_integer(args: CallArgs):
    return zeros('integer', _length_arg(args))


@builtin('numeric', 'double', signature='length = 0L')
def do_numeric(args: CallArgs):
    return zeros('double', _length_arg(args))


@builtin('character', signature='length = 0L')
def do_character(args: CallArgs):
    return zeros('character', _length_arg(args))


# replication and sequences

@builtin('rep', signature='x, times = 1L, length.out = NA, each = 1L', generic='self')
def do_rep(args: CallArgs):
    x = args.get('x', NULL)
    if x is NULL:
        return NULL
    if not isinstance(x, Vector):
        raise RError(f"attempt to replicate an object of type '{x.rtype}'")
    each = int_arg(args, 'each', 1)
    if each is None or each < 0:
        raise RError("invalid 'each' argument")
    positions = np.repeat(np.arange(x.length()), each)
    times = args.get('times', NULL)
    counts = coerce_vector(times, 'integer') if times is not NULL else mk_int([1])
    if bool(np.any(counts.na)) or bool(np.any(counts.data < 0)):
        raise RError("invalid 'times' argument")
    if counts.length() == 1:
        positions = np.tile(positions, int(counts.data[0]))
    elif counts.length() == len(positions):
        positions = np.repeat(positions, counts.data.astype(np.int64))
    else:
        raise RError("invalid 'times' argument")
    length_out = int_arg(args, 'length.out', None)
    if length_out is not None:
        if length_out < 0:
            raise RError("invalid 'length.out' argument")
        positions = np.resize(positions, length_out) if len(positions) else np.full(length_out, -1)
    return _rep_take(x, positions)


def _rep_take(x: Vector, positions: np.ndarray) -> Vector:
    picked = [int(p) if p >= 0 else None for p in positions]
    out = take(x, picked)
    names = x.names()
    if names is not None:
        out = with_names(out, [names[p] if p is not None else None for p in picked])
    return out


@builtin('rep_len', signature='x, length.out')
def do_rep_len(args: CallArgs):
    x = args.get('x', NULL)
    n = _length_arg(args, 'length.out')
    if not isinstance(x, Vector):
        raise RError("attempt to replicate non-vector")
    positions = np.resize(np.arange(x.length()), n) if x.length() else np.full(n, -1)
    return with_names(_rep_take(x, positions), None)


def _whole(x: float) -> bool:
    return math.isfinite(x) and x == math.floor(x) and abs(x) <= INT_MAX


def colon(start: Any, end: Any) -> Vector:
    for value in (start, end):
        if not isinstance(value, Vector) or value.length() == 0:
            raise RError("argument of length 0")
        if value.length() > 1:
            warn(f"numerical expression has {value.length()} elements: only the first used")
    a = coerce_vector(start, 'double').element(0)
    b = coerce_vector(end, 'double').element(0)
    if a is None or b is None or math.isnan(a) or math.isnan(b):
        raise RError("NA/NaN argument")
    count = int(math.floor(abs(b - a) + 1e-10)) + 1
    step = 1 if b >= a else -1
    values = a + step * np.arange(count, dtype=np.float64)
    if _whole(a) and _whole(values[-1]):
        return Vector('integer', values.astype(np.int32), np.zeros(count, dtype=bool))
    return Vector('double', values, np.zeros(count, dtype=bool))


@builtin(':', signature='from, to')
def do_colon(args: CallArgs):
    return colon(args.get('from', NULL), args.get('to', NULL))


def _num(args: CallArgs, name: str) -> Optional[float]:
    value = args.get(name)
    if value is None:
        return None
    if not isinstance(value, Vector) or value.length() != 1:
        raise RError(f"'{name}' must be of length 1")
    x = coerce_vector(value, 'double').element(0)
    if x is None or not math.isfinite(x):
        raise RError(f"'{name}' must be a finite number")
    return x


def _sequence(values: np.ndarray, integral: bool) -> Vector:
    if integral and all(_whole(float(v)) for v in values):
        return Vector('integer', values.astype(np.int32), np.zeros(len(values), dtype=bool))
    return Vector('double', values.astype(np.float64), np.zeros(len(values), dtype=bool))


def _is_int(args: CallArgs, name: str) -> bool:
    value = args.get(name)
    return value is None or (isinstance(value, Vector) and value.rtype == 'integer')


@builtin('seq', signature='from = 1, to = 1, by, length.out = NULL, along.with = NULL, ...',
         generic='self')
def do_seq(args: CallArgs):
    along = args.get('along.with')
    if along is not None and along is not NULL:
        return mk_int(range(1, along.length() + 1))
    has_from, has_to, has_by = args.has('from'), args.has('to'), args.has('by')
    length_out = args.get('length.out', NULL)
    n = None
    if length_out is not NULL:
        n_value = coerce_vector(length_out, 'double').element(0)
        if n_value is None or n_value < 0:
            raise RError("'length.out' must be a non-negative number")
        n = int(math.ceil(n_value))
    if has_from and not (has_to or has_by or n is not None):
        start = args.get('from')
        if isinstance(start, Vector) and start.length() == 1:
            return colon(mk_int([1]), start)
        return mk_int(range(1, start.length() + 1))
    if n is not None:
        if has_from and has_to:
            a, b = _num(args, 'from'), _num(args, 'to')
            if n == 1:
                return _sequence(np.array([a]), _is_int(args, 'from'))
            by = (b - a) / (n - 1)
            values = a + by * np.arange(n)
            return _sequence(values, _is_int(args, 'from') and _is_int(args, 'to') and by == int(by))
        by = _num(args, 'by') if has_by else 1.0
        if has_to:
            b = _num(args, 'to')
            values = b - by * np.arange(n - 1, -1, -1)
        else:
            a = _num(args, 'from') if has_from else 1.0
            values = a + by * np.arange(n)
        return _sequence(values, float(by).is_integer() and _is_int(args, 'from') and _is_int(args, 'by'))
    a = _num(args, 'from') if has_from else 1.0
    b = _num(args, 'to') if has_to else 1.0
    if not has_by:
        return colon(mk_double([a]), mk_double([b]))
    by = _num(args, 'by')
    if by == 0 and a == b:
        return _sequence(np.array([a]), _is_int(args, 'from'))
    if by == 0 or (b - a) / by < 0:
        raise RError("wrong sign in 'by' argument")
    count = int(math.floor((b - a) / by + 1e-10)) + 1
    values = a + by * np.arange(count)
    return _sequence(values, _is_int(args, 'from') and _is_int(args, 'by'))


@builtin('seq_len', signature='length.out')
def do_seq_len(args: CallArgs):
    n = int_arg(args, 'length.out')
    if n is None or n < 0:
        raise RError("argument of length 0" if n is None else
                     "argument must be coercible to non-negative integer")
    return mk_int(range(1, n + 1))


@builtin('seq_along', signature='along.with')
def do_seq_along(args: CallArgs):
    return mk_int(range(1, _length_of(args.get('along.with', NULL)) + 1))


# length and names

def _length_of(x: Any) -> int:
    if isinstance(x, Environment):
        return len(x.frame)
    return x.length()


@builtin('length', signature='x', generic='self')
def do_length(args: CallArgs):
    return mk_int([_length_of(args.get('x', NULL))])


@builtin('length<-', signature='x, value', generic='self')
def do_set_length(args: CallArgs):
    x = args.get('x', NULL)
    n = int_arg(args, 'value')
    if n is None or n < 0:
        raise RError("invalid value")
    if x is NULL:
        return NULL if n == 0 else na_vector('logical', n)
    if not isinstance(x, Vector):
        raise RError("invalid argument")
    positions = [k if k < x.length() else None for k in range(n)]
    out = take(x, positions)
    names = x.names()
    if names is not None:
        out = with_names(out, [names[k] if k is not None else '' for k in positions])
    return out


@builtin('names', signature='x', generic='self')
def do_names(args: CallArgs):
    x = args.get('x', NULL)
    if isinstance(x, Environment):
        return mk_str(x.names())
    if isinstance(x, Call):
        names = [''] + [a.name or '' for a in x.args]
        return mk_str(names) if any(names) else NULL
    return attr_get(x, 'names') if isinstance(x, RObject) else NULL


@builtin('names<-', signature='x, value', generic='self')
def do_set_names(args: CallArgs):
    x = args.get('x', NULL)
    value = args.get('value', NULL)
    if isinstance(x, Call):
        items = call_to_list(x)
        return list_to_call(attr_set(items, 'names', value))
    return attr_set(x, 'names', value)


@builtin('setNames', signature='object = nm, nm')
def do_set_names_fn(args: CallArgs):
    return attr_set(args.get('object', NULL), 'names', args.get('nm', NULL))


@builtin('unname', signature='obj, force = FALSE')
def do_unname(args: CallArgs):
    x = args.get('obj', NULL)
    return attr_set(attr_set(x, 'names', NULL), 'dimnames', NULL)


# attributes

def _attribute_name(args: CallArgs) -> str:
    which = str_arg(args, 'which')
    if which is None:
        raise RError("exactly one attribute 'which' must be given")
    return which


@builtin('attr', signature='x, which, exact = FALSE')
def do_attr(args: CallArgs):
    x = args.get('x', NULL)
    which = _attribute_name(args)
    attrs = (x.attributes or {}) if isinstance(x, RObject) else {}
    if which in attrs:
        return attrs[which]
    if not flag(args, 'exact', False):
        partial = [k for k in attrs if k.startswith(which)]
        if len(partial) == 1:
            return attrs[partial[0]]
    return NULL


@builtin('attr<-', signature='x, which, value')
def do_set_attr(args: CallArgs):
    return attr_set(args.get('x', NULL), _attribute_name(args), args.get('value', NULL))


def _ordered_attributes(x: RObject) -> List[Tuple[str, RObject]]:
    attrs = x.attributes or {}
    first = [('names', attrs['names'])] if 'names' in attrs else []
    return first + [(k, v) for k, v in attrs.items() if k != 'names']


@builtin('attributes', signature='x')
def do_attributes(args: CallArgs):
    x = args.get('x', NULL)
    pairs = _ordered_attributes(x) if isinstance(x, RObject) else []
    if not pairs:
        return NULL
    return mk_list([v for _, v in pairs], [k for k, _ in pairs])


def set_all_attributes(x: RObject, pairs: Sequence[Tuple[str, RObject]]) -> RObject:
    pairs = sorted(pairs, key=lambda kv: kv[0] == 'dimnames')
    for name, value in pairs:
        x = attr_set(x, name, value)
    return x


@builtin('attributes<-', signature='x, value')
def do_set_attributes(args: CallArgs):
    x = args.get('x', NULL)
    value = args.get('value', NULL)
    if isinstance(x, RObject) and x.attributes:
        x = x.with_attributes(None)
    if value is NULL:
        return x
    if not (isinstance(value, Vector) and value.rtype == 'list'):
        raise RError("attributes must be a list or NULL")
    names = value.names()
    if value.length() and (names is None or any(not n for n in names)):
        raise RError("attributes must be named")
    return set_all_attributes(x, list(zip(names or [], value.data)))


@builtin('structure', signature='.Data, ...')
def do_structure(args: CallArgs):
    if not args.has('.Data'):
        raise RError('argument ".Data" is missing, with no default')
    x = args.get('.Data')
    pairs = []
    for name, value in args.dots:
        if not name:
            raise RError("attributes must be named")
        pairs.append(('names' if name == '.Names' else name, value))
    return set_all_attributes(x, pairs)


@builtin('class', signature='x')
def do_class(args: CallArgs):
    return mk_str(implicit_class(args.get('x', NULL)))


@builtin('oldClass', signature='x')
def do_old_class(args: CallArgs):
    return attr_get(args.get('x', NULL), 'class')


@builtin('class<-', 'oldClass<-', signature='x, value')
def do_set_class(args: CallArgs):
    return attr_set(args.get('x', NULL), 'class', args.get('value', NULL))


@builtin('inherits', signature='x, what, which = FALSE')
def do_inherits(args: CallArgs):
    x = args.get('x', NULL)
    what = [w for w in as_strings(args.get('what', NULL)) if w is not None]
    if flag(args, 'which', False):
        classes = implicit_class(x)
        return mk_int([classes.index(w) + 1 if w in classes else 0 for w in what])
    return r_bool(inherits(x, what))


@builtin('unclass', signature='x')
def do_unclass(args: CallArgs):
    return attr_set(args.get('x', NULL), 'class', NULL)


@builtin('dim', signature='x', generic='self')
def do_dim(args: CallArgs):
    return attr_get(args.get('x', NULL), 'dim')


@builtin('dim<-', signature='x, value')
def do_set_dim(args: CallArgs):
    return attr_set(args.get('x', NULL), 'dim', args.get('value', NULL))


@builtin('dimnames', signature='x')
def do_dimnames(args: CallArgs):
    return attr_get(args.get('x', NULL), 'dimnames')


@builtin('dimnames<-', signature='x, value')
def do_set_dimnames(args: CallArgs):
    return attr_set(args.get('x', NULL), 'dimnames', args.get('value', NULL))


@builtin('levels', signature='x')
def do_levels(args: CallArgs):
    return attr_get(args.get('x', NULL), 'levels')


@builtin('levels<-', signature='x, value')
def do_set_levels(args: CallArgs):
    return attr_set(args.get('x', NULL), 'levels', args.get('value', NULL))


@builtin('nrow', signature='x')
def do_nrow(args: CallArgs):
    dims = dims_of(args.get('x', NULL))
    return mk_int([dims[0]]) if dims else NULL


@builtin('ncol', signature='x')
def do_ncol(args: CallArgs):
    dims = dims_of(args.get('x', NULL))
    return mk_int([dims[1]]) if dims and len(dims) > 1 else NULL


@builtin('matrix', signature='data = NA, nrow = 1, ncol = 1, byrow = FALSE, dimnames = NULL')
def do_matrix(args: CallArgs):
    data = args.get('data', mk_logical([None]))
    if not isinstance(data, Vector):
        raise RError("'data' must be of a vector type, was 'NULL'")
    n = data.length()
    nrow = int_arg(args, 'nrow', None) if args.has('nrow') else None
    ncol = int_arg(args, 'ncol', None) if args.has('ncol') else None
    if nrow is None and ncol is None:
        nrow, ncol = n, 1
    elif nrow is None:
        nrow = int(math.ceil(n / ncol)) if ncol else 0
    elif ncol is None:
        ncol = int(math.ceil(n / nrow)) if nrow else 0
    total = nrow * ncol
    if n > 0 and total > 0:
        if (n > nrow and n % nrow) or (n < nrow and nrow % n):
            warn(f"data length [{n}] is not a sub-multiple or multiple of the number of rows [{nrow}]")
        elif (n > ncol and n % ncol) or (n < ncol and ncol % n):
            warn(f"data length [{n}] is not a sub-multiple or multiple of the number of columns [{ncol}]")
    if n == 0:
        positions: List[Optional[int]] = [None] * total
    elif flag(args, 'byrow', False):
        positions = [(r * ncol + c) % n for c in range(ncol) for r in range(nrow)]
    else:
        positions = [k % n for k in range(total)]
    out = take(data, positions)
    out = attr_set(out, 'dim', mk_int([nrow, ncol]))
    dimnames = args.get('dimnames', NULL)
    if dimnames is not NULL:
        out = attr_set(out, 'dimnames', dimnames)
    return out


@builtin('t', signature='x', generic='self')
def do_transpose(args: CallArgs):
    x = args.get('x', NULL)
    if not isinstance(x, Vector):
        raise RError("argument is not a matrix")
    dims = dims_of(x)
    if dims is None:
        nrow, ncol = x.length(), 1
        dimnames = NULL
        names = x.get_attr('names')
        if names is not None:
            dimnames = mk_list([NULL, names])
    else:
        if len(dims) != 2:
            raise RError("argument is not a matrix")
        nrow, ncol = dims
        old = x.get_attr('dimnames')
        dimnames = mk_list([old.data[1], old.data[0]]) if old is not None else NULL
    positions = [c * nrow + r for r in range(nrow) for c in range(ncol)]
    out = attr_set(take(x, positions), 'dim', mk_int([ncol, nrow]))
    return attr_set(out, 'dimnames', dimnames) if dimnames is not NULL else out


# coercion and predicates

_AS = {
    'as.logical': 'logical',
    'as.integer': 'integer',
    'as.numeric': 'double',
    'as.double': 'double',
    'as.character': 'character',
}


# as.numeric dispatches to as.double methods
_METHOD_PREFIX = {'as.numeric': 'as.double'}


def _make_as(name: str, target: str):
    @builtin(name, signature='x, ...', generic=_METHOD_PREFIX.get(name, 'self'))
    def do_as(args: CallArgs):
        x = args.get('x', NULL)
        if isinstance(x, Symbol) and target == 'character':
            return mk_str([x.name])
        if isinstance(x, Call) and target == 'character':
            return mk_str(as_strings(call_to_list(x)))
        return as_vector(x, target)
    return do_as


for _name, _target in _AS.items():
    _make_as(_name, _target)


@builtin('as.vector', signature='x, mode = "any"')
def do_as_vector(args: CallArgs):
    x = args.get('x', NULL)
    mode = str_arg(args, 'mode', 'any')
    if mode == 'any':
        if isinstance(x, Vector) and x.is_atomic():
            return x.with_attributes(None)
        if isinstance(x, Vector):
            names = x.get_attr('names')
            return x.with_attributes({'names': names} if names is not None else None)
        return x
    target = {'numeric': 'double', 'symbol': 'name'}.get(mode, mode)
    if target == 'name':
        return Symbol(as_strings(x)[0])
    return as_vector(x, target)


@builtin('as.list', signature='x, ...', generic='self')
def do_as_list(args: CallArgs):
    x = args.get('x', NULL)
    interp = args.interp
    if isinstance(x, Environment):
        return env_as_list(x, interp.force, sort=True)
    if isinstance(x, Call):
        return call_to_list(x)
    if isinstance(x, Closure):
        names = [n for n, _ in x.formals] + ['']
        return mk_list([d for _, d in x.formals] + [x.body], names)
    if isinstance(x, Symbol):
        return mk_list([x])
    out = to_list(x)
    names = x.get_attr('names') if isinstance(x, Vector) else None
    return out.with_attributes({'names': names} if names is not None else None)


def _type_test(name: str, test):
    @builtin(name, signature='x')
    def do_is(args: CallArgs):
        return r_bool(bool(test(args.get('x', NULL))))
    return do_is


def _is_vector_of(*types: str):
    return lambda x: isinstance(x, Vector) and x.rtype in types


for _name, _test in {
    'is.null': lambda x: x is NULL,
    'is.function': is_function,
    'is.primitive': lambda x: isinstance(x, Builtin),
    'is.numeric': lambda x: _is_vector_of('integer', 'double')(x) and x.get_attr('levels') is None,
    'is.double': _is_vector_of('double'),
    'is.integer': _is_vector_of('integer'),
    'is.character': _is_vector_of('character'),
    'is.logical': _is_vector_of('logical'),
    'is.list': _is_vector_of('list'),
    'is.atomic': lambda x: isinstance(x, Vector) and x.is_atomic(),
    'is.object': lambda x: isinstance(x, RObject) and x.is_object(),
    'is.expression': _is_vector_of('expression'),
    'is.language': lambda x: isinstance(x, (Symbol, Call)),
}.items():
    _type_test(_name, _test)


@builtin('is.vector', signature='x, mode = "any"')
def do_is_vector(args: CallArgs):
    x = args.get('x', NULL)
    mode = str_arg(args, 'mode', 'any')
    if not isinstance(x, Vector) or any(k != 'names' for k in (x.attributes or {})):
        return r_bool(False)
    if mode == 'any':
        return r_bool(True)
    if mode == 'numeric':
        return r_bool(x.rtype in ('integer', 'double'))
    return r_bool(x.rtype == mode)


def type_name(x: Any) -> str:
    if isinstance(x, Builtin):
        return 'special' if x.special or x.formals is None else 'builtin'
    return type_of(x)


@builtin('typeof', signature='x')
def do_typeof(args: CallArgs):
    return mk_str([type_name(args.get('x', NULL))])


@builtin('mode', signature='x')
def do_mode(args: CallArgs):
    x = args.get('x', NULL)
    rtype = type_name(x)
    if rtype in ('integer', 'double'):
        mode = 'numeric'
    elif rtype in ('closure', 'builtin', 'special'):
        mode = 'function'
    elif rtype == 'symbol':
        mode = 'name'
    elif rtype == 'language':
        mode = '(' if isinstance(x, Call) and x.fn_name() == '(' else 'call'
    else:
        mode = rtype
    return mk_str([mode])


@builtin('identical', signature='x, y, ...')
def do_identical(args: CallArgs):
    return r_bool(identical(args.get('x', NULL), args.get('y', NULL)))


# reordering

@builtin('rev', signature='x', generic='self')
def do_rev(args: CallArgs):
    x = args.get('x', NULL)
    if x is NULL:
        return NULL
    if not isinstance(x, Vector):
        raise RError("argument is not a vector")
    return subset(x, [mk_int(range(x.length(), 0, -1))])


def _head_count(args: CallArgs, n_total: int) -> int:
    n = int_arg(args, 'n', 6)
    if n is None:
        raise RError("invalid 'n' - must be numeric, possibly NA.")
    return min(n, n_total) if n >= 0 else max(n_total + n, 0)


@builtin('head', signature='x, n = 6L, ...', generic='self')
def do_head(args: CallArgs):
    x = args.get('x', NULL)
    if x is NULL:
        return NULL
    k = _head_count(args, x.length())
    return subset(x, [mk_int(range(1, k + 1))])


@builtin('tail', signature='x, n = 6L, ...', generic='self')
def do_tail(args: CallArgs):
    x = args.get('x', NULL)
    if x is NULL:
        return NULL
    total = x.length()
    k = _head_count(args, total)
    return subset(x, [mk_int(range(total - k + 1, total + 1))])


@builtin('append', signature='x, values, after = length(x)')
def do_append(args: CallArgs):
    x = args.get('x', NULL)
    values = args.get('values', NULL)
    n = _length_of(x) if x is not NULL else 0
    after = int_arg(args, 'after', n)
    if after is None or after >= n:
        return combine([(None, x), (None, values)])
    if after <= 0:
        return combine([(None, values), (None, x)])
    front = subset(x, [mk_int(range(1, after + 1))])
    back = subset(x, [mk_int(range(after + 1, n + 1))])
    return combine([(None, front), (None, values), (None, back)])
