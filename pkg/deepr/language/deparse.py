"""Render language objects and values back to canonical R source."""
import math
import re
from typing import Any, List, Optional

from ..core.numbers import double_to_string
from ..core.values import NULL, Builtin, Closure, Promise, RObject, Vector
from .ast import Call, MISSING_ARG, Symbol


RESERVED = {
    'if', 'else', 'repeat', 'while', 'function', 'for', 'next', 'break', 'in',
    'TRUE', 'FALSE', 'NULL', 'Inf', 'NaN', 'NA', 'NA_integer_', 'NA_real_', 'NA_character_',
}

_SYNTACTIC = re.compile(r'^(?:[A-Za-z]|\.(?![0-9]))[A-Za-z0-9._]*$|^\.$')

BINARY_PREC = {
    '?': 1, '=': 2, '<-': 3, '<<-': 3, '~': 5,
    '||': 6, '|': 6, '&&': 7, '&': 7,
    '==': 9, '!=': 9, '<': 9, '>': 9, '<=': 9, '>=': 9,
    '+': 10, '-': 10, '*': 11, '/': 11, '|>': 12, ':': 13, '^': 15,
    '$': 18, '@': 18, '::': 19, ':::': 19,
}
UNARY_PREC = {'-': 14, '+': 14, '!': 8, '~': 5, '?': 1}
RIGHT_ASSOC = {'^', '<-', '<<-', '='}
TIGHT = {'/', '^', ':', '$', '@', '::', ':::', '%%', '%/%'}
POSTFIX_PREC = 18
ATOM_PREC = 100

_ESCAPES = {'\n': '\\n', '\t': '\\t', '\r': '\\r', '\\': '\\\\', '"': '\\"',
            '\0': '\\0', '\a': '\\a', '\b': '\\b', '\f': '\\f', '\v': '\\v'}


def is_syntactic_name(name: str) -> bool:
    if name in RESERVED:
        return False
    if name == '...' or re.match(r'^\.\.[0-9]+$', name):
        return True
    return bool(_SYNTACTIC.match(name))


def quote_name(name: str) -> str:
    if is_syntactic_name(name):
        return name
    return '`' + name.replace('\\', '\\\\').replace('`', '\\`') + '`'


def escape_string(s: str, quote: str = '"') -> str:
    out = []
    for ch in s:
        if ch in _ESCAPES and (ch != '"' or quote == '"'):
            out.append(_ESCAPES[ch])
        elif ch == quote:
            out.append('\\' + ch)
        elif ord(ch) < 32 or ord(ch) == 127:
            out.append(f'\\{ord(ch):03o}')
        else:
            out.append(ch)
    return quote + ''.join(out) + quote


def _binary_op_name(op: str) -> bool:
    return op in BINARY_PREC or (len(op) >= 2 and op.startswith('%') and op.endswith('%'))


def _op_prec(op: str) -> int:
    if op.startswith('%'):
        return 12
    return BINARY_PREC[op]


def _spaced(op: str) -> bool:
    return op not in TIGHT


def _is_unary_call(node: Any) -> bool:
    # prefix operators chain without parentheses: ~!~b
    return isinstance(node, Call) and isinstance(node.fn, Symbol) \
        and len(node.args) == 1 and not node.args[0].name and node.fn.name in UNARY_PREC


class Deparser:
    def __init__(self, backtick: bool = True):
        self.backtick = backtick

    # entry

    def render(self, node: Any) -> str:
        text, _ = self.node(node)
        return text

    def node(self, node: Any) -> (str, int):
        """Source text of ``node`` and the precedence it binds with."""
        if isinstance(node, Symbol):
            if node is MISSING_ARG:
                return '', ATOM_PREC
            return (quote_name(node.name) if self.backtick else node.name), ATOM_PREC
        if isinstance(node, Call):
            return self.call(node)
        if isinstance(node, Promise):
            return self.node(node.value if node.forced else node.expr)
        return self.value(node), self.value_prec(node)

    def value_prec(self, value: Any) -> int:
        if isinstance(value, Vector) and value.rtype in ('integer', 'double') and value.length() == 1:
            x = value.element(0)
            if x is not None and (x < 0 or (isinstance(x, float) and math.copysign(1, x) < 0 and x == 0)):
                return UNARY_PREC['-']
        return ATOM_PREC

    def child(self, node: Any, min_prec: int, strict: bool) -> str:
        text, prec = self.node(node)
        if prec < min_prec or (strict and prec == min_prec):
            return f'({text})'
        return text

    # calls

    def call(self, call: Call) -> (str, int):
        fn = call.fn
        args = call.args
        name = fn.name if isinstance(fn, Symbol) else None
        named = any(a.name for a in args)
        if name is not None and (not named or name in ('[', '[[')):
            special = self.special_form(name, call)
            if special is not None:
                return special
        return self.plain_call(call), POSTFIX_PREC

    def special_form(self, name: str, call: Call):
        args = [a.value for a in call.args]
        n = len(args)
        if name == '{':
            if not args:
                return '{\n}', ATOM_PREC
            body = '\n'.join(_indent(self.statement(a)) for a in args)
            return '{\n' + body + '\n}', ATOM_PREC
        if name == '(' and n == 1:
            return '(' + self.render(args[0]) + ')', ATOM_PREC
        if name == 'if' and n in (2, 3):
            head = f'if ({self.render(args[0])}) '
            then = self.render(args[1])
            if n == 2:
                return head + then, 0
            alt = self.render(args[2])
            if then.endswith('}'):
                return f'{head}{then} else {alt}', 0
            if '\n' in then:
                return f'{head}{then}\nelse {alt}', 0
            return f'{head}{then} else {alt}', 0
        if name == 'for' and n == 3:
            return f'for ({self.render(args[0])} in {self.render(args[1])}) {self.render(args[2])}', 0
        if name == 'while' and n == 2:
            return f'while ({self.render(args[0])}) {self.render(args[1])}', 0
        if name == 'repeat' and n == 1:
            return f'repeat {self.render(args[0])}', 0
        if name in ('break', 'next') and n == 0:
            return name, ATOM_PREC
        if name == 'function' and n >= 2:
            return f'function({self.formals(args[0])}) {self.render(args[1])}', 0
        if name in ('[', '[[') and n >= 1:
            close = ']' if name == '[' else ']]'
            target = self.child(args[0], POSTFIX_PREC, False)
            return target + name + self.arglist(call.args[1:]) + close, POSTFIX_PREC
        if name in ('$', '@') and n == 2:
            lhs = self.child(args[0], BINARY_PREC[name], False)
            rhs = args[1]
            if isinstance(rhs, Vector) and rhs.rtype == 'character' and rhs.length() == 1:
                rhs_text = escape_string(rhs.data[0])
            else:
                rhs_text = self.render(rhs)
            return f'{lhs}{name}{rhs_text}', BINARY_PREC[name]
        if n == 1 and name in UNARY_PREC:
            prec = UNARY_PREC[name]
            if _is_unary_call(args[0]):
                text, inner = self.node(args[0])
                return f'{name}{text}', min(prec, inner)
            operand = self.child(args[0], prec, False)
            return f'{name}{operand}', prec
        if n == 2 and _binary_op_name(name):
            prec = _op_prec(name)
            right_assoc = name in RIGHT_ASSOC
            lhs = self.child(args[0], prec, right_assoc)
            rhs_node = args[1]
            outer = prec
            if _is_unary_call(rhs_node):
                rhs, inner = self.node(rhs_node)
                outer = min(prec, inner)
            else:
                rhs = self.child(rhs_node, prec, not right_assoc)
            if _spaced(name):
                return f'{lhs} {name} {rhs}', outer
            return f'{lhs}{name}{rhs}', outer
        return None

    def statement(self, node: Any) -> str:
        """A statement inside braces; if/else without a braced branch splits over lines."""
        if isinstance(node, Call) and isinstance(node.fn, Symbol) and node.fn.name == 'if' \
                and len(node.args) == 3 and not any(a.name for a in node.args):
            cond, then, alt = (a.value for a in node.args)
            if not (isinstance(then, Call) and then.fn is Symbol('{')):
                return (f'if ({self.render(cond)}) \n' + _indent(self.render(then))
                        + f'\nelse {self.render(alt)}')
        return self.render(node)

    def plain_call(self, call: Call) -> str:
        fn = call.fn
        if isinstance(fn, Symbol):
            head = quote_name(fn.name)
        elif isinstance(fn, Call):
            head = self.child(fn, POSTFIX_PREC, False)
        elif isinstance(fn, Vector) and fn.rtype == 'character' and fn.length() == 1:
            head = quote_name(fn.data[0])
        else:
            head = '(' + self.render(fn) + ')'
        return f'{head}({self.arglist(call.args)})'

    def arglist(self, args) -> str:
        parts = []
        for a in args:
            value = self.render(a.value)
            if a.name:
                parts.append(f'{quote_name(a.name)} = {value}' if value else f'{quote_name(a.name)} = ')
            else:
                parts.append(value)
        return ', '.join(parts)

    def formals(self, formals: Any) -> str:
        if formals is NULL or formals is None:
            return ''
        if isinstance(formals, list):
            pairs = formals
        else:
            pairs = list(zip(formals.names() or [], formals.data))
        parts = []
        for name, default in pairs:
            if default is MISSING_ARG or default is None:
                parts.append(quote_name(name))
            else:
                parts.append(f'{quote_name(name)} = {self.render(default)}')
        return ', '.join(parts)

    # values

    def value(self, v: Any) -> str:
        if v is NULL:
            return 'NULL'
        if isinstance(v, Closure):
            return self.closure(v)
        if isinstance(v, Builtin):
            return f'.Primitive("{v.name}")'
        if isinstance(v, Vector):
            return self.vector(v)
        if isinstance(v, RObject) and v.rtype == 'environment':
            return '<environment>'
        return repr(v)

    def closure(self, f: Closure) -> str:
        return f'function ({self.formals(f.formals)}) \n{self.render(f.body)}'

    def vector(self, v: Vector) -> str:
        attrs = dict(v.attributes or {})
        names = attrs.pop('names', None)
        core = self.vector_core(v, names)
        if not attrs:
            return core
        extra = ', '.join(f'{self._attr_key(k)} = {self.value(a)}' for k, a in attrs.items())
        return f'structure({core}, {extra})'

    @staticmethod
    def _attr_key(key: str) -> str:
        return {'dim': 'dim', 'dimnames': 'dimnames', 'class': 'class', 'levels': 'levels'}.get(key, quote_name(key))

    def vector_core(self, v: Vector, names: Optional[Vector]) -> str:
        n = v.length()
        name_list = list(names.data) if names is not None else None
        if v.rtype in ('list', 'expression'):
            items = [self.render_list_item(x) for x in v.data]
            head = 'list' if v.rtype == 'list' else 'expression'
            return f'{head}({self._join(items, name_list)})'
        if n == 0:
            return {'logical': 'logical(0)', 'integer': 'integer(0)', 'double': 'numeric(0)',
                    'character': 'character(0)'}[v.rtype]
        if v.rtype == 'integer' and name_list is None and n > 1 and not bool(v.na.any()):
            data = [int(x) for x in v.data]
            if all(data[i + 1] - data[i] == 1 for i in range(n - 1)):
                return f'{data[0]}:{data[-1]}'
        all_na = bool(v.na.all())
        items = [self.atomic_element(v, i, typed_na=all_na) for i in range(n)]
        if n == 1 and name_list is None:
            return items[0]
        return f'c({self._join(items, name_list)})'

    def atomic_element(self, v: Vector, i: int, typed_na: bool) -> str:
        rtype = v.rtype
        if v.na[i]:
            if not typed_na or rtype == 'logical':
                return 'NA'
            return {'integer': 'NA_integer_', 'double': 'NA_real_', 'character': 'NA_character_'}[rtype]
        x = v.data[i]
        if rtype == 'logical':
            return 'TRUE' if x else 'FALSE'
        if rtype == 'integer':
            return f'{int(x)}L'
        if rtype == 'double':
            x = float(x)
            if math.isnan(x):
                return 'NaN'
            if math.isinf(x):
                return 'Inf' if x > 0 else '-Inf'
            return double_to_string(x)
        return escape_string(x)

    def render_list_item(self, x: Any) -> str:
        return self.render(x)

    @staticmethod
    def _join(items: List[str], names: Optional[List[Optional[str]]]) -> str:
        if names is None:
            return ', '.join(items)
        parts = []
        for item, name in zip(items, names):
            parts.append(f'{quote_name(name)} = {item}' if name else item)
        return ', '.join(parts)


def _indent(text: str) -> str:
    return '\n'.join('    ' + line if line else line for line in text.split('\n'))


def deparse(node: Any, backtick: Optional[bool] = None) -> List[str]:
    """Canonical source lines for a language object or value.

    Bare symbols render without backticks unless ``backtick`` is set.
    """
    if backtick is None:
        backtick = not isinstance(node, Symbol)
    return Deparser(backtick).render(node).split('\n')


def deparse_one(node: Any) -> str:
    return ' '.join(line.strip() if k else line for k, line in enumerate(deparse(node)))


def closure_header(f: Any) -> str:
    return f'function ({Deparser().formals(f.formals)}) '
