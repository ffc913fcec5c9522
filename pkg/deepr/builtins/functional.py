"""Higher-order functions: lapply, Map, Reduce and Filter."""
import logging
from typing import Any, List, Optional, Tuple

from ..core.coercion import as_logical_scalar, to_list
from ..core.conditions import RError
from ..core.environments import Environment
from ..core.frames import CallArgs
from ..core.indexing import extract, subset
from ..core.values import NULL, Vector, mk_int, mk_list
from ..language.ast import DOTS, Arg, Call, Symbol
from .construction import combine
from .helpers import flag, function_arg
from .registry import builtin


logger = logging.getLogger(__name__)


def elements(x: Any) -> List[Any]:
    """What ``x[[i]]`` yields for every position of ``x``."""
    if x is NULL:
        return []
    if isinstance(x, Environment):
        raise RError("cannot iterate over an environment")
    if not isinstance(x, Vector):
        return list(to_list(x).data)
    if x.rtype in ('list', 'expression'):
        return list(x.data)
    return [extract(x, mk_int([k + 1])) for k in range(x.length())]


def _element_call(fn_name: str, sources: List[str], with_dots: bool) -> Call:
    args = [Arg(None, Call(Symbol('[['), [Arg(None, Symbol(src)), Arg(None, Symbol('i'))]))
            for src in sources]
    if with_dots:
        args.append(Arg(None, DOTS))
    return Call(Symbol(fn_name), args)


@builtin('lapply', signature='X, FUN, ...')
def do_lapply(args: CallArgs):
    interp = args.interp
    x = args.get('X', NULL)
    f = function_arg(args, 'FUN')
    call = _element_call('FUN', ['X'], True)
    results = [interp.call_function(f, [(None, item)] + list(args.dots), args.env, call)
               for item in elements(x)]
    names = x.names() if isinstance(x, Vector) else None
    return mk_list(results, names)


def _map_names(first: Any) -> Optional[List[Optional[str]]]:
    if not isinstance(first, Vector):
        return None
    names = first.names()
    if names is not None:
        return names
    if first.rtype == 'character':
        return list(first.data)
    return None


def map_values(interp, f: Any, inputs: List[Tuple[Optional[str], Any]],
               more: List[Tuple[Optional[str], Any]], env: Environment) -> Vector:
    columns = [elements(value) for _, value in inputs]
    if not columns or any(len(col) == 0 for col in columns):
        return mk_list([])
    n = max(len(col) for col in columns)
    call = _element_call('f', ['dots'] * len(columns), bool(more))
    results = []
    for k in range(n):
        values = [(name, col[k % len(col)]) for (name, _), col in zip(inputs, columns)]
        results.append(interp.call_function(f, values + more, env, call))
    names = _map_names(inputs[0][1])
    if names is not None and len(names) != n:
        names = None
    return mk_list(results, names)


def _more_args(value: Any) -> List[Tuple[Optional[str], Any]]:
    if value is NULL or value is None:
        return []
    more = to_list(value)
    names = more.names() or [None] * more.length()
    return [(name or None, item) for name, item in zip(names, more.data)]


@builtin('Map', signature='f, ...')
def do_map(args: CallArgs):
    f = function_arg(args, 'f')
    inputs = [(name, value) for name, value in args.dots if name != 'MoreArgs']
    more = [value for name, value in args.dots if name == 'MoreArgs']
    return map_values(args.interp, f, inputs, _more_args(more[0] if more else None), args.env)


@builtin('mapply', signature='FUN, ..., MoreArgs = NULL, SIMPLIFY = TRUE, USE.NAMES = TRUE')
def do_mapply(args: CallArgs):
    f = function_arg(args, 'FUN')
    out = map_values(args.interp, f, list(args.dots), _more_args(args.get('MoreArgs')), args.env)
    if flag(args, 'SIMPLIFY', True) and out.length() and all(
            isinstance(v, Vector) and v.is_atomic() and v.length() == 1 for v in out.data):
        names = out.names()
        return combine([(name, v) for name, v in zip(names or [None] * out.length(), out.data)])
    return out


def _simplified(items: List[Any]) -> Any:
    if items and all(isinstance(v, Vector) and v.is_atomic() and v.length() == 1 for v in items):
        return combine([(None, v) for v in items])
    return mk_list(items)


@builtin('Reduce', signature='f, x, init, right = FALSE, accumulate = FALSE, simplify = TRUE')
def do_reduce(args: CallArgs):
    interp = args.interp
    f = function_arg(args, 'f')
    items = elements(args.get('x', NULL))
    right = flag(args, 'right', False)
    if right:
        items.reverse()
    if args.has('init'):
        items.insert(0, args.get('init'))
    if not items:
        return mk_list([]) if flag(args, 'accumulate', False) else NULL
    call = Call(Symbol('f'), [Arg(None, Symbol('init')), Arg(None, Call(
        Symbol('[['), [Arg(None, Symbol('x')), Arg(None, Symbol('i'))]))])
    acc = items[0]
    steps = [acc]
    for item in items[1:]:
        pair = [(None, item), (None, acc)] if right else [(None, acc), (None, item)]
        acc = interp.call_function(f, pair, args.env, call)
        steps.append(acc)
    if not flag(args, 'accumulate', False):
        return acc
    if right:
        steps.reverse()
    return _simplified(steps) if flag(args, 'simplify', True) else mk_list(steps)


@builtin('Filter', signature='f, x')
def do_filter(args: CallArgs):
    interp = args.interp
    f = function_arg(args, 'f')
    x = args.get('x', NULL)
    keep = []
    call = _element_call('f', ['x'], False)
    for k, item in enumerate(elements(x)):
        verdict = interp.call_function(f, [(None, item)], args.env, call)
        if isinstance(verdict, Vector) and verdict.length() and verdict.is_atomic():
            if as_logical_scalar(verdict):
                keep.append(k + 1)
    logger.debug("Filter kept %d of %d", len(keep), x.length() if x is not NULL else 0)
    return subset(x, [mk_int(keep)])
