"""The coercion hierarchy logical < integer < double < character < list."""
import math
from typing import Any, List, Optional

import numpy as np

from .conditions import RError, warn
from .numbers import double_to_string, parse_number_text
from .values import INT_MAX, INT_NA, NULL, RObject, TYPE_RANK, Vector, empty_vector, mk_list, mk_str


_TRUE_STRINGS = {'TRUE', 'True', 'true', 'T'}
_FALSE_STRINGS = {'FALSE', 'False', 'false', 'F'}


def common_type(a: str, b: str) -> str:
    """The smallest type both ``a`` and ``b`` coerce to without loss."""
    return a if TYPE_RANK[a] >= TYPE_RANK[b] else b


def _type_for_coercion(value: RObject) -> str:
    if value is NULL:
        return 'logical'
    if isinstance(value, Vector):
        return value.rtype
    return 'list'


def common_type_of(values: List[RObject]) -> str:
    result = 'logical'
    for v in values:
        if v is NULL:
            continue
        result = common_type(result, _type_for_coercion(v))
    return result


def _logical_to_strings(v: Vector) -> List[Optional[str]]:
    return [None if v.na[i] else ('TRUE' if v.data[i] else 'FALSE') for i in range(v.length())]


def element_strings(v: Vector) -> List[Optional[str]]:
    """Character rendering of each element; None for NA."""
    if v.rtype == 'character':
        return list(v.data)
    if v.rtype == 'logical':
        return _logical_to_strings(v)
    if v.rtype == 'integer':
        return [None if v.na[i] else str(int(v.data[i])) for i in range(v.length())]
    if v.rtype == 'double':
        return [None if v.na[i] else double_to_string(float(v.data[i])) for i in range(v.length())]
    raise RError(f"cannot coerce type '{v.rtype}' to vector of type 'character'")


def _list_to_atomic(v: Vector, target: str) -> Vector:
    parts = []
    for elt in v.data:
        if not (isinstance(elt, Vector) and elt.is_atomic() and elt.length() == 1):
            raise RError(f"(list) object cannot be coerced to type '{target}'")
        parts.append(coerce_vector(elt, target))
    if not parts:
        return empty_vector(target)
    data = np.concatenate([p.data for p in parts])
    na = np.concatenate([p.na for p in parts])
    return Vector(target, data, na)


def to_list(v: RObject) -> Vector:
    """Each element becomes a length-one vector; names are kept."""
    if v is NULL:
        return mk_list([])
    if not isinstance(v, Vector):
        return mk_list([v])
    if v.rtype in ('list', 'expression'):
        return Vector('list', v.data, v.na, v.attributes)
    items = [Vector(v.rtype, v.data[i:i + 1].copy(), v.na[i:i + 1].copy()) for i in range(v.length())]
    names = v.names()
    return mk_list(items, names)


def coerce_vector(v: RObject, target: str, keep_attributes: bool = False) -> Vector:
    """Convert ``v`` to type ``target``.

    Attributes survive only when ``keep_attributes`` is set or the type is
    unchanged.
    """
    if v is NULL:
        return empty_vector(target)
    if not isinstance(v, Vector):
        if target == 'list':
            return mk_list([v])
        raise RError(f"cannot coerce type '{v.rtype}' to vector of type '{target}'")
    if v.rtype == target:
        return v
    attrs = v.attributes if keep_attributes else None
    if target in ('list', 'expression'):
        out = to_list(v)
        if target == 'expression':
            out = Vector('expression', out.data, out.na)
        return out if not keep_attributes else out.with_attributes(
            {**(v.attributes or {}), **(out.attributes or {})})
    if v.rtype in ('list', 'expression'):
        return _list_to_atomic(v, target)
    if target == 'logical':
        if v.rtype == 'character':
            vals = []
            for s in v.data:
                vals.append(True if s in _TRUE_STRINGS else False if s in _FALSE_STRINGS else None)
            na = np.array([x is None for x in vals], dtype=bool)
            data = np.array([bool(x) for x in vals], dtype=bool)
            return Vector('logical', data, na, attrs)
        na = v.na | (np.isnan(v.data) if v.rtype == 'double' else False)
        data = np.where(na, False, v.data != 0)
        return Vector('logical', data.astype(bool), np.asarray(na, dtype=bool), attrs)
    if target == 'integer':
        if v.rtype == 'logical':
            data = np.where(v.na, INT_NA, v.data.astype(np.int32)).astype(np.int32)
            return Vector('integer', data, v.na.copy(), attrs)
        if v.rtype == 'double':
            return _double_to_integer(v.data, v.na, attrs)
        if v.rtype == 'character':
            dbl = coerce_vector(v, 'double')
            return _double_to_integer(dbl.data, dbl.na, attrs)
    if target == 'double':
        if v.rtype in ('logical', 'integer'):
            data = v.data.astype(np.float64)
            data[v.na] = math.nan
            return Vector('double', data, v.na.copy(), attrs)
        if v.rtype == 'character':
            values = []
            bad = False
            for s in v.data:
                if s is None:
                    values.append(None)
                    continue
                ok, x = parse_number_text(s)
                if not ok:
                    bad = True
                values.append(x)
            if bad:
                warn("NAs introduced by coercion", call=None)
            na = np.array([x is None for x in values], dtype=bool)
            data = np.array([math.nan if x is None else x for x in values], dtype=np.float64)
            return Vector('double', data, na, attrs)
    if target == 'character':
        strings = element_strings(v)
        out = mk_str(strings)
        return out.with_attributes(attrs) if attrs else out
    raise RError(f"cannot coerce type '{v.rtype}' to vector of type '{target}'")


def _double_to_integer(data: np.ndarray, na: np.ndarray, attrs) -> Vector:
    with np.errstate(invalid='ignore'):
        bad = na | np.isnan(data)
        out_of_range = ~bad & (np.abs(np.trunc(np.where(bad, 0, data))) > INT_MAX)
    if bool(np.any(out_of_range)):
        warn("NAs introduced by coercion to integer range", call=None)
    mask = bad | out_of_range
    values = np.where(mask, 0, np.trunc(np.where(mask, 0, data))).astype(np.int64)
    values[mask] = INT_NA
    return Vector('integer', values.astype(np.int32), mask, attrs)


def as_vector(value: RObject, target: str) -> Vector:
    """Coerce and drop all attributes, as ``as.vector`` does for atomics."""
    out = coerce_vector(value, target)
    if out.attributes and target not in ('list', 'expression'):
        out = out.with_attributes(None)
    return out


def as_logical_scalar(value: RObject) -> Optional[bool]:
    if not isinstance(value, Vector) or value.length() == 0:
        return None
    return coerce_vector(value, 'logical').element(0)


def as_int_scalar(value: RObject, default: Optional[int] = None) -> Optional[int]:
    if not isinstance(value, Vector) or value.length() == 0:
        return default
    if value.rtype == 'double':
        x = value.element(0)
        if x is None or math.isnan(x):
            return None
        if math.isinf(x):
            return None
        return int(math.trunc(x))
    return coerce_vector(value, 'integer').element(0)


def as_double_scalar(value: RObject) -> Optional[float]:
    if not isinstance(value, Vector) or value.length() == 0:
        return None
    return coerce_vector(value, 'double').element(0)


def as_string_scalar(value: Any) -> Optional[str]:
    if not isinstance(value, Vector) or value.length() == 0:
        return None
    if value.rtype == 'character':
        return value.data[0]
    return element_strings(value)[0]


def as_strings(value: RObject) -> List[Optional[str]]:
    if value is NULL:
        return []
    if isinstance(value, Vector) and value.rtype in ('list', 'expression'):
        out = []
        for elt in value.data:
            if isinstance(elt, Vector) and elt.is_atomic() and elt.length() == 1:
                out.append(element_strings(elt)[0])
            else:
                from ..language.deparse import deparse
                out.append(' '.join(deparse(elt)))
        return out
    if isinstance(value, Vector):
        return element_strings(value)
    if value.rtype == 'symbol':
        return [value.name]
    raise RError(f"cannot coerce type '{value.rtype}' to vector of type 'character'")


def as_ints(value: RObject) -> List[Optional[int]]:
    if value is NULL:
        return []
    return coerce_vector(value, 'integer').values()


def as_doubles(value: RObject) -> List[Optional[float]]:
    if value is NULL:
        return []
    return coerce_vector(value, 'double').values()


def strings_vector(values, names=None) -> Vector:
    out = mk_str(values)
    if names is not None:
        out = out.with_attributes({'names': mk_str(names)})
    return out
