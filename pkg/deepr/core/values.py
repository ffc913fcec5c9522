"""Runtime value model: vectors, NULL, closures, builtins and promises."""
import math
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np


INT_NA = int(np.iinfo(np.int32).min)
INT_MAX = int(np.iinfo(np.int32).max)

ATOMIC_TYPES = ('logical', 'integer', 'double', 'character')
VECTOR_TYPES = ATOMIC_TYPES + ('list', 'expression')
TYPE_RANK = {'logical': 0, 'integer': 1, 'double': 2, 'character': 3, 'list': 4, 'expression': 5}


class RObject:
    """Base class of every value the interpreter manipulates."""

    rtype = 'NULL'

    def __init__(self, attributes: Optional[Dict[str, 'RObject']] = None):
        self.attributes = dict(attributes) if attributes else None

    def length(self) -> int:
        return 1

    def get_attr(self, name: str) -> Optional['RObject']:
        if not self.attributes:
            return None
        return self.attributes.get(name)

    def class_attr(self) -> Optional[List[str]]:
        cls = self.get_attr('class')
        if cls is None:
            return None
        return [c for c in cls.data if c is not None]

    def is_object(self) -> bool:
        return bool(self.attributes) and 'class' in self.attributes

    def with_attributes(self, attributes: Optional[Dict[str, 'RObject']]) -> 'RObject':
        """Return a shallow copy carrying a different attribute map."""
        clone = self._copy()
        clone.attributes = dict(attributes) if attributes else None
        return clone

    def _copy(self) -> 'RObject':
        clone = object.__new__(type(self))
        clone.__dict__.update(self.__dict__)
        return clone


class RNull(RObject):
    """The NULL singleton."""

    rtype = 'NULL'
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance.attributes = None
        return cls._instance

    def __init__(self):
        pass

    def length(self) -> int:
        return 0

    def with_attributes(self, attributes):
        return self

    def __repr__(self):
        return 'NULL'


NULL = RNull()


class Vector(RObject):
    """An atomic vector, a list or an expression vector.

    ``data`` is a numpy array and ``na`` a boolean mask of the same length.
    Integers keep ``INT_NA`` at missing positions, doubles keep NaN, characters
    keep ``None``; list elements are RObjects and never NA.
    """

    def __init__(self, rtype: str, data: np.ndarray, na: Optional[np.ndarray] = None,
                 attributes: Optional[Dict[str, RObject]] = None):
        super().__init__(attributes)
        self.rtype = rtype
        self.data = data
        self.na = na if na is not None else np.zeros(len(data), dtype=bool)

    def length(self) -> int:
        return len(self.data)

    def names(self) -> Optional[List[Optional[str]]]:
        nm = self.get_attr('names')
        if nm is None:
            return None
        return list(nm.data)

    def is_atomic(self) -> bool:
        return self.rtype in ATOMIC_TYPES

    def element(self, i: int) -> Any:
        """Python value of element ``i``; None stands for NA."""
        if self.na[i]:
            return None
        value = self.data[i]
        if self.rtype == 'logical':
            return bool(value)
        if self.rtype == 'integer':
            return int(value)
        if self.rtype == 'double':
            return float(value)
        return value

    def values(self) -> List[Any]:
        return [self.element(i) for i in range(len(self.data))]

    def scalar(self) -> Any:
        return self.element(0) if len(self.data) else None

    def replace(self, data: Optional[np.ndarray] = None, na: Optional[np.ndarray] = None,
                attributes: Any = ...) -> 'Vector':
        return Vector(self.rtype,
                      self.data if data is None else data,
                      self.na if na is None else na,
                      self.attributes if attributes is ... else attributes)

    def __repr__(self):
        return f'Vector({self.rtype}, {self.values()!r})'


def object_array(values: Sequence[Any]) -> np.ndarray:
    arr = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        arr[i] = v
    return arr


def mk_logical(values: Iterable[Optional[bool]], attributes=None) -> Vector:
    vals = list(values)
    na = np.array([v is None for v in vals], dtype=bool)
    data = np.array([bool(v) if v is not None else False for v in vals], dtype=bool)
    return Vector('logical', data, na, attributes)


def mk_int(values: Iterable[Optional[int]], attributes=None) -> Vector:
    vals = list(values)
    na = np.array([v is None for v in vals], dtype=bool)
    data = np.array([INT_NA if v is None else int(v) for v in vals], dtype=np.int32)
    return Vector('integer', data, na, attributes)


def mk_double(values: Iterable[Optional[float]], attributes=None) -> Vector:
    vals = list(values)
    na = np.array([v is None for v in vals], dtype=bool)
    data = np.array([math.nan if v is None else float(v) for v in vals], dtype=np.float64)
    return Vector('double', data, na, attributes)


def mk_str(values: Iterable[Optional[str]], attributes=None) -> Vector:
    vals = list(values)
    na = np.array([v is None for v in vals], dtype=bool)
    return Vector('character', object_array(vals), na, attributes)


def mk_list(values: Iterable[RObject], names: Optional[Sequence[Optional[str]]] = None,
            attributes=None) -> Vector:
    vals = list(values)
    attrs = dict(attributes) if attributes else {}
    if names is not None:
        attrs = {'names': mk_str(names), **{k: v for k, v in attrs.items() if k != 'names'}}
    return Vector('list', object_array(vals), np.zeros(len(vals), dtype=bool), attrs or None)


def mk_expression(values: Iterable[RObject]) -> Vector:
    vals = list(values)
    return Vector('expression', object_array(vals), np.zeros(len(vals), dtype=bool))


def mk_vector(rtype: str, values: Sequence[Any], attributes=None) -> Vector:
    """Build a vector of ``rtype`` from Python values (None is NA)."""
    if rtype == 'logical':
        return mk_logical(values, attributes)
    if rtype == 'integer':
        return mk_int(values, attributes)
    if rtype == 'double':
        return mk_double(values, attributes)
    if rtype == 'character':
        return mk_str(values, attributes)
    if rtype == 'expression':
        return mk_expression(values)
    return mk_list(values, attributes=attributes)


def empty_vector(rtype: str) -> Vector:
    return mk_vector(rtype, [])


def na_vector(rtype: str, n: int = 1) -> Vector:
    if rtype in ('list', 'expression'):
        return mk_vector(rtype, [NULL] * n)
    return mk_vector(rtype, [None] * n)


def scalar_string(s: Optional[str]) -> Vector:
    return mk_str([s])


def scalar_int(i: Optional[int]) -> Vector:
    return mk_int([i])


def scalar_double(x: Optional[float]) -> Vector:
    return mk_double([x])


def scalar_logical(b: Optional[bool]) -> Vector:
    return mk_logical([b])


R_TRUE = scalar_logical(True)
R_FALSE = scalar_logical(False)
R_NA = scalar_logical(None)


class Closure(RObject):
    """A user function: formals, body and the environment it closes over."""

    rtype = 'closure'

    def __init__(self, formals: List[Tuple[str, Any]], body: Any, env: Any,
                 srcref: Optional[str] = None, attributes=None):
        super().__init__(attributes)
        self.formals = formals
        self.body = body
        self.env = env
        self.srcref = srcref

    def formal_names(self) -> List[str]:
        return [name for name, _ in self.formals]

    def __repr__(self):
        return f'Closure({self.formal_names()})'


class Builtin(RObject):
    """A function implemented in Python.

    ``special`` builtins receive their arguments unevaluated. ``generic`` names
    the S3 generic the builtin dispatches on before running, and
    ``visibility`` is one of ``on``, ``off`` or ``impl``.
    """

    rtype = 'builtin'

    def __init__(self, name: str, impl: Callable, formals: List[Tuple[str, Any]],
                 special: bool = False, generic: Optional[str] = None,
                 visibility: str = 'on', group: Optional[str] = None):
        super().__init__(None)
        self.name = name
        self.impl = impl
        self.formals = formals
        self.special = special
        self.generic = generic
        self.visibility = visibility
        self.group = group

    def formal_names(self) -> List[str]:
        return [name for name, _ in self.formals]

    def __repr__(self):
        return f'Builtin({self.name})'


class Promise:
    """An unevaluated argument paired with the environment to evaluate it in."""

    __slots__ = ('expr', 'env', 'value', 'forced', 'forcing', 'is_default')

    def __init__(self, expr: Any, env: Any, is_default: bool = False):
        self.expr = expr
        self.env = env
        self.value = None
        self.forced = False
        self.forcing = False
        self.is_default = is_default

    @classmethod
    def of_value(cls, value: RObject, expr: Any = None) -> 'Promise':
        """A promise that is already forced."""
        promise = cls(value if expr is None else expr, None)
        promise.value = value
        promise.forced = True
        return promise

    def __repr__(self):
        state = 'forced' if self.forced else 'pending'
        return f'Promise({state})'


class DotsValue:
    """The binding of ``...``: an ordered list of (name, promise) pairs."""

    __slots__ = ('items',)

    def __init__(self, items: List[Tuple[Optional[str], Any]]):
        self.items = items

    def __len__(self):
        return len(self.items)


def is_function(value: Any) -> bool:
    return isinstance(value, (Closure, Builtin))


def type_of(value: Any) -> str:
    """Name of the internal type, as reported by ``typeof``."""
    if isinstance(value, Vector):
        return value.rtype
    return value.rtype


def _attributes_identical(a: RObject, b: RObject) -> bool:
    aa = a.attributes or {}
    bb = b.attributes or {}
    if set(aa) != set(bb):
        return False
    return all(identical(aa[k], bb[k]) for k in aa)


def identical(a: Any, b: Any) -> bool:
    """Exact structural equality, NA equal to NA, attributes included."""
    if a is b:
        return True
    if type_of(a) != type_of(b):
        return False
    if isinstance(a, Vector):
        if a.length() != b.length():
            return False
        if not np.array_equal(a.na, b.na):
            return False
        keep = ~a.na
        if a.rtype == 'double':
            x, y = a.data[keep], b.data[keep]
            same = (x == y) | (np.isnan(x) & np.isnan(y))
            if not bool(np.all(same)):
                return False
        elif a.rtype in ('list', 'expression'):
            if not all(identical(x, y) for x, y in zip(a.data, b.data)):
                return False
        elif not bool(np.all(a.data[keep] == b.data[keep])):
            return False
        return _attributes_identical(a, b)
    if a.rtype == 'symbol':
        return a is b
    if a.rtype == 'language':
        if not identical(a.fn, b.fn) or len(a.args) != len(b.args):
            return False
        for x, y in zip(a.args, b.args):
            if (x.name or '') != (y.name or ''):
                return False
            if not identical(_arg_value(x.value), _arg_value(y.value)):
                return False
        return True
    if isinstance(a, Closure):
        return (a.env is b.env and identical(a.body, b.body)
                and [n for n, _ in a.formals] == [n for n, _ in b.formals])
    return False


def _arg_value(value: Any) -> Any:
    if isinstance(value, Promise):
        return value.value if value.forced else value.expr
    return value
