"""Argument conversions shared by the builtin families."""
from typing import Any, List, Optional

from ..core.coercion import as_int_scalar, as_logical_scalar, as_string_scalar, as_strings
from ..core.conditions import RError
from ..core.frames import CallArgs
from ..core.values import NULL, Vector, is_function, mk_logical, mk_str
from ..language.deparse import deparse_one


def flag(args: CallArgs, name: str, default: bool = False) -> bool:
    value = args.get(name)
    if value is None or value is NULL:
        return default
    result = as_logical_scalar(value)
    if result is None:
        raise RError(f"invalid '{name}' argument")
    return result


def int_arg(args: CallArgs, name: str, default: Optional[int] = None) -> Optional[int]:
    value = args.get(name)
    if value is None or value is NULL:
        return default
    return as_int_scalar(value, default)


def str_arg(args: CallArgs, name: str, default: Optional[str] = None) -> Optional[str]:
    value = args.get(name)
    if value is None or value is NULL:
        return default
    if not (isinstance(value, Vector) and value.rtype == 'character' and value.length() >= 1):
        raise RError(f"invalid '{name}' argument")
    return as_string_scalar(value)


def strings(value: Any) -> List[Optional[str]]:
    return as_strings(value)


def function_arg(args: CallArgs, name: str) -> Any:
    """A function value, or the function a string names."""
    value = args.get(name)
    if value is None:
        raise RError(f'argument "{name}" is missing, with no default')
    if is_function(value):
        return value
    if isinstance(value, Vector) and value.rtype == 'character' and value.length() == 1:
        return args.interp.find_function(value.data[0], args.env)
    raise RError(f"'{deparse_name(args, name)}' is not a function, character or symbol")


def deparse_name(args: CallArgs, name: str) -> str:
    for arg in args.call.args:
        if arg.name == name:
            return deparse_one(arg.value)
    return name


def r_bool(value: Optional[bool]) -> Vector:
    return mk_logical([value])


def r_str(value: Optional[str]) -> Vector:
    return mk_str([value])
