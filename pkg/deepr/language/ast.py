"""Language objects: interned symbols and calls."""
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from ..core.values import RObject, Vector, identical


class Symbol(RObject):
    """An interned name. Two symbols with the same name are the same object."""

    rtype = 'symbol'
    _interned: Dict[str, 'Symbol'] = {}

    def __new__(cls, name: str):
        sym = cls._interned.get(name)
        if sym is None:
            sym = super().__new__(cls)
            sym.name = name
            sym.attributes = None
            cls._interned[name] = sym
        return sym

    def __init__(self, name: str):
        pass

    def with_attributes(self, attributes):
        return self

    def __repr__(self):
        return f'Symbol({self.name!r})'


MISSING_ARG = Symbol('')
DOTS = Symbol('...')


class Arg(NamedTuple):
    name: Optional[str]
    value: Any


class Call(RObject):
    """A call: function position plus ordered, optionally named operands.

    ``pos`` is the (line, column) of the operator or opening token and takes
    no part in structural equality. ``srcref`` holds the source text of a
    ``function`` expression.
    """

    rtype = 'language'

    def __init__(self, fn: Any, args: List[Arg], pos: Optional[Tuple[int, int]] = None,
                 srcref: Optional[str] = None, attributes=None):
        super().__init__(attributes)
        self.fn = fn
        self.args = list(args)
        self.pos = pos
        self.srcref = srcref

    def length(self) -> int:
        return 1 + len(self.args)

    def fn_name(self) -> Optional[str]:
        return self.fn.name if isinstance(self.fn, Symbol) else None

    def arg_values(self) -> List[Any]:
        return [a.value for a in self.args]

    def replace_args(self, args: List[Arg]) -> 'Call':
        return Call(self.fn, args, self.pos, self.srcref, self.attributes)

    def __repr__(self):
        return f'Call({self.fn!r}, {self.args!r})'


def make_call(fn_name: str, *values: Any, **named: Any) -> Call:
    args = [Arg(None, v) for v in values] + [Arg(k, v) for k, v in named.items()]
    return Call(Symbol(fn_name), args)


def is_language(value: Any) -> bool:
    return isinstance(value, (Symbol, Call))


def lang_equal(a: Any, b: Any) -> bool:
    """Structural equality of parse trees; source positions are ignored."""
    if isinstance(a, Call) or isinstance(b, Call):
        if not (isinstance(a, Call) and isinstance(b, Call)):
            return False
        if not lang_equal(a.fn, b.fn) or len(a.args) != len(b.args):
            return False
        return all((x.name or '') == (y.name or '') and lang_equal(x.value, y.value)
                   for x, y in zip(a.args, b.args))
    if isinstance(a, Symbol) or isinstance(b, Symbol):
        return a is b
    if isinstance(a, Vector) and isinstance(b, Vector) and a.rtype == 'list' == b.rtype:
        # formal argument lists of `function`
        if a.length() != b.length() or a.names() != b.names():
            return False
        return all(lang_equal(x, y) for x, y in zip(a.data, b.data))
    return identical(a, b)
