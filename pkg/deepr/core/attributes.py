"""Attribute maps: validated get/set and the special attributes."""
from typing import Dict, Iterable, List, Optional

import numpy as np

from .coercion import as_strings, coerce_vector
from .conditions import RError
from .values import NULL, RObject, Vector, mk_str


SPECIAL_KEEP_ON_SUBSET = ('names', 'dim', 'dimnames')


def attr_get(value: RObject, name: str) -> RObject:
    result = value.get_attr(name)
    return NULL if result is None else result


def _validated(owner: RObject, name: str, newval: RObject) -> RObject:
    if name == 'names':
        if not isinstance(owner, Vector):
            raise RError("names() applied to a non-vector")
        strings = as_strings(newval)
        n = owner.length()
        if len(strings) > n:
            raise RError(f"'names' attribute [{len(strings)}] must be the same length as the vector [{n}]")
        strings = strings + [None] * (n - len(strings))
        return mk_str(strings)
    if name == 'class':
        if not (isinstance(newval, Vector) and newval.rtype == 'character'):
            raise RError("attempt to set invalid 'class' attribute")
        return newval.with_attributes(None)
    if name == 'dim':
        if not (isinstance(newval, Vector) and newval.rtype in ('integer', 'double', 'logical')):
            raise RError("invalid second argument, must be vector or NULL")
        dims = coerce_vector(newval, 'integer').with_attributes(None)
        if bool(np.any(dims.na)) or bool(np.any(dims.data < 0)):
            raise RError("the dims contain missing or negative values")
        product = int(np.prod(dims.data.astype(np.int64))) if dims.length() else 0
        if product != owner.length():
            raise RError(f"dims [product {product}] do not match the length of object [{owner.length()}]")
        return dims
    return newval


def attr_set(value: RObject, name: str, newval: RObject) -> RObject:
    """Return a copy of ``value`` with attribute ``name`` set; NULL removes it."""
    if value is NULL:
        if newval is NULL:
            return NULL
        raise RError("attempt to set an attribute on NULL")
    attrs = dict(value.attributes or {})
    is_empty_class = (name == 'class' and isinstance(newval, Vector)
                      and newval.rtype == 'character' and newval.length() == 0)
    if newval is NULL or is_empty_class:
        if name not in attrs:
            return value
        del attrs[name]
        return _apply(value, attrs)
    checked = _validated(value, name, newval)
    if name == 'dim':
        attrs.pop('names', None)
        attrs.pop('dimnames', None)
    attrs[name] = checked
    return _apply(value, attrs)


def _apply(value: RObject, attrs: Dict[str, RObject]) -> RObject:
    if value.rtype == 'environment':
        value.attributes = attrs or None
        return value
    return value.with_attributes(attrs or None)


def set_attributes(value: RObject, pairs: Iterable) -> RObject:
    for name, newval in pairs:
        value = attr_set(value, name, newval)
    return value


def keep_only(value: RObject, names: Iterable[str] = ('names',)) -> RObject:
    if not value.attributes:
        return value
    kept = {k: v for k, v in value.attributes.items() if k in names}
    return value.with_attributes(kept or None)


def drop_attributes(value: RObject) -> RObject:
    if not value.attributes:
        return value
    return value.with_attributes(None)


def names_of(value: RObject) -> Optional[List[Optional[str]]]:
    nm = value.get_attr('names') if isinstance(value, RObject) else None
    if nm is None:
        return None
    return list(nm.data)


def with_names(value: Vector, names: Optional[List[Optional[str]]]) -> Vector:
    attrs = dict(value.attributes or {})
    if names is None:
        attrs.pop('names', None)
    else:
        attrs['names'] = mk_str(names)
    return value.with_attributes(attrs or None)


def dims_of(value: RObject) -> Optional[List[int]]:
    dim = value.get_attr('dim')
    if dim is None:
        return None
    return [int(d) for d in dim.data]


def implicit_class(value: RObject) -> List[str]:
    """``class(x)``: the class attribute or the implicit class."""
    explicit = value.class_attr() if isinstance(value, RObject) else None
    if explicit:
        return explicit
    dims = dims_of(value) if isinstance(value, Vector) else None
    if dims is not None:
        return ['matrix', 'array'] if len(dims) == 2 else ['array']
    return [_basic_class(value)]


def dispatch_classes(value: RObject) -> List[str]:
    """The class vector UseMethod walks, implicit classes included."""
    explicit = value.class_attr() if isinstance(value, RObject) else None
    if explicit:
        return explicit
    out: List[str] = []
    dims = dims_of(value) if isinstance(value, Vector) else None
    if dims is not None:
        out.extend(['matrix', 'array'] if len(dims) == 2 else ['array'])
    rtype = value.rtype
    if rtype == 'double':
        out.extend(['double', 'numeric'])
    elif rtype == 'integer':
        out.extend(['integer', 'numeric'])
    else:
        out.append(_basic_class(value))
    return out


def _basic_class(value: RObject) -> str:
    rtype = value.rtype
    if rtype == 'double':
        return 'numeric'
    if rtype in ('closure', 'builtin'):
        return 'function'
    if rtype == 'symbol':
        return 'name'
    if rtype == 'language':
        fn = getattr(value, 'fn_name', lambda: None)()
        if fn == 'if':
            return 'if'
        if fn == 'for':
            return 'for'
        if fn == '<-' or fn == '=':
            return '<-'
        if fn == '{':
            return '{'
        if fn == '(':
            return '('
        return 'call'
    return rtype


def inherits(value: RObject, what: List[str]) -> bool:
    classes = implicit_class(value)
    return any(w in classes for w in what)
