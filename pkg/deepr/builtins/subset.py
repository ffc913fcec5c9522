"""Subsetting operators and their replacement functions."""
from typing import Any, List, Optional

from ..core import indexing
from ..core.attributes import dispatch_classes
from ..core.coercion import to_list
from ..core.conditions import RError
from ..core.dispatch import find_method
from ..core.frames import CallArgs
from ..core.values import NULL, Vector, mk_int, mk_list, mk_str
from ..language.ast import MISSING_ARG, Arg, Call, Symbol
from .helpers import flag
from .registry import builtin


def call_to_list(call: Call) -> Vector:
    names = [''] + [a.name or '' for a in call.args]
    values = [call.fn] + [a.value for a in call.args]
    return mk_list(values, names if any(names) else None)


def list_to_call(items: Vector) -> Any:
    if items.length() == 0:
        return NULL
    names = items.names() or [None] * items.length()
    return Call(items.data[0], [Arg(names[k] or None, items.data[k])
                                for k in range(1, items.length())])


def _indices(args: CallArgs) -> List[Optional[Any]]:
    return [None if value is MISSING_ARG else value for _, value in args.dots]


def _member_name(args: CallArgs) -> str:
    expr = args.expr('name')
    if isinstance(expr, Symbol):
        return expr.name
    if isinstance(expr, Vector) and expr.rtype == 'character' and expr.length() == 1:
        return expr.data[0]
    raise RError("invalid subscript type '%s'" % getattr(expr, 'rtype', 'language'))


@builtin('[', signature='x, ..., drop = TRUE', generic='self')
def do_subset(args: CallArgs):
    x = args.get('x', NULL)
    indices = _indices(args)
    if isinstance(x, Call):
        return list_to_call(indexing.subset(call_to_list(x), indices))
    return indexing.subset(x, indices, drop=flag(args, 'drop', True))


@builtin('[[', signature='x, ..., exact = TRUE', generic='self')
def do_extract(args: CallArgs):
    x = args.get('x', NULL)
    indices = _indices(args)
    if not indices or indices[0] is None:
        raise RError("invalid subscript type 'symbol'")
    if len(indices) == 2:
        picked = indexing.subset(x, indices)
        if picked.length() != 1:
            raise RError("subscript out of bounds")
        return indexing.extract(picked, mk_int([1]))
    return indexing.extract(x, indices[0], args.interp.force)


@builtin('$', signature='x, name', special=True)
def do_dollar(args: CallArgs):
    interp = args.interp
    x = interp.force(args.values['x'])
    name = _member_name(args)
    if x is not NULL and x.is_object():
        found = find_method(interp, '$', dispatch_classes(x), args.env)
        if found is not None:
            method = found[0]
            return interp.call_function(method, [(None, x), (None, mk_str([name]))],
                                        args.env, args.call)
    return indexing.dollar(x, name, interp.force)


@builtin('[<-', signature='x, ..., value', generic='self')
def do_subset_assign(args: CallArgs):
    x = args.get('x', NULL)
    value = args.get('value', NULL)
    indices = _indices(args)
    if isinstance(x, Call):
        return list_to_call(indexing.subset_assign(call_to_list(x), indices, to_list(value)))
    return indexing.subset_assign(x, indices, value)


@builtin('[[<-', signature='x, ..., value', generic='self')
def do_extract_assign(args: CallArgs):
    x = args.get('x', NULL)
    value = args.get('value', NULL)
    indices = _indices(args)
    if not indices or indices[0] is None:
        raise RError("[[ ]] with missing subscript")
    if len(indices) == 2:
        return indexing.subset_assign(x, indices, value)
    if isinstance(x, Call):
        return list_to_call(indexing.extract_assign(call_to_list(x), indices[0], value))
    return indexing.extract_assign(x, indices[0], value)


@builtin('$<-', signature='x, name, value', special=True)
def do_dollar_assign(args: CallArgs):
    interp = args.interp
    x = interp.force(args.values['x'])
    value = interp.force(args.values['value'])
    return indexing.dollar_assign(x, _member_name(args), value)
