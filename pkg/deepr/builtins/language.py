"""Control flow, assignment and metaprogramming builtins."""
import logging
from typing import Any, Dict, List, Optional

from ..core.coercion import as_logical_scalar, coerce_vector, to_list
from ..core.conditions import BreakSignal, NextSignal, RError, ReturnSignal, RSyntaxError, RWarningCondition
from ..core.dispatch import dispatch_object, next_method, use_method
from ..core.environments import Environment, as_environment, bind_inherit
from ..core.evaluator import TMP
from ..core.frames import CallArgs, Frame
from ..core.values import (NULL, Builtin, Closure, DotsValue, Promise, RObject, Vector, mk_expression,
                           mk_int, mk_list, mk_logical, mk_str)
from ..language.ast import DOTS, MISSING_ARG, Arg, Call, Symbol, is_language
from ..language.deparse import deparse, deparse_one
from ..language.parser import parse_program
from .helpers import function_arg, int_arg, r_bool, str_arg
from .registry import builtin


logger = logging.getLogger(__name__)


def test_condition(value: Any, call: Call) -> bool:
    """The truth value of an ``if``/``while`` condition."""
    if not isinstance(value, Vector) or value.length() == 0:
        if isinstance(value, Vector) or value is NULL:
            raise RError("argument is of length zero", call)
        raise RError("argument is not interpretable as logical", call)
    if value.length() > 1:
        raise RError("the condition has length > 1", call)
    if value.rtype in ('list', 'expression'):
        raise RError("argument is not interpretable as logical", call)
    result = as_logical_scalar(value)
    if result is None:
        if value.rtype == 'character' and not value.na[0]:
            raise RError("argument is not interpretable as logical", call)
        raise RError("missing value where TRUE/FALSE needed", call)
    return result


@builtin('if', signature=None)
def do_if(interp, call: Call, env: Environment):
    args = call.args
    if test_condition(interp.eval(args[0].value, env), call):
        return interp.eval(args[1].value, env)
    if len(args) > 2:
        return interp.eval(args[2].value, env)
    interp.visible = False
    return NULL


def loop_items(value: Any) -> List[Any]:
    if value is NULL:
        return []
    if not isinstance(value, Vector):
        raise RError("invalid for() loop sequence")
    if value.rtype in ('list', 'expression'):
        return list(value.data)
    levels = value.get_attr('levels')
    if levels is not None and value.rtype == 'integer':
        labels = list(levels.data)
        return [mk_str([None if value.na[k] else labels[value.data[k] - 1]]) for k in range(value.length())]
    return [Vector(value.rtype, value.data[k:k + 1].copy(), value.na[k:k + 1].copy())
            for k in range(value.length())]


@builtin('for', signature=None)
def do_for(interp, call: Call, env: Environment):
    var, seq_expr, body = (a.value for a in call.args)
    for item in loop_items(interp.eval(seq_expr, env)):
        env.assign(var.name, item)
        try:
            interp.eval(body, env)
        except BreakSignal:
            break
        except NextSignal:
            continue
    interp.visible = False
    return NULL


@builtin('while', signature=None)
def do_while(interp, call: Call, env: Environment):
    cond, body = call.args[0].value, call.args[1].value
    while test_condition(interp.eval(cond, env), call):
        try:
            interp.eval(body, env)
        except BreakSignal:
            break
        except NextSignal:
            continue
    interp.visible = False
    return NULL


@builtin('repeat', signature=None)
def do_repeat(interp, call: Call, env: Environment):
    body = call.args[0].value
    while True:
        try:
            interp.eval(body, env)
        except BreakSignal:
            break
        except NextSignal:
            continue
    interp.visible = False
    return NULL


@builtin('break', signature=None)
def do_break(interp, call, env):
    raise BreakSignal()


@builtin('next', signature=None)
def do_next(interp, call, env):
    raise NextSignal()


@builtin('{', signature=None)
def do_begin(interp, call: Call, env: Environment):
    result = NULL
    interp.visible = True
    for arg in call.args:
        result = interp.eval(arg.value, env)
    return result


@builtin('(', signature=None)
def do_paren(interp, call: Call, env: Environment):
    value = interp.eval(call.args[0].value, env)
    interp.visible = True
    return value


@builtin('function', signature=None)
def do_function(interp, call: Call, env: Environment):
    spec = call.args[0].value
    formals = [] if spec is NULL else list(zip(spec.names(), spec.data))
    interp.visible = True
    return Closure(formals, call.args[1].value, env, srcref=call.srcref)


@builtin('return', signature=None)
def do_return(interp, call: Call, env: Environment):
    value = interp.eval(call.args[0].value, env) if call.args else NULL
    if not call.args:
        interp.visible = True
    raise ReturnSignal(value, env, interp.visible)


# assignment

def _with_tmp(expr: Any) -> Any:
    if isinstance(expr, Call):
        first = expr.args[0]
        return Call(expr.fn, [Arg(first.name, _with_tmp(first.value))] + expr.args[1:], expr.pos)
    return TMP


def _target_symbol(expr: Any) -> Symbol:
    while isinstance(expr, Call):
        if not expr.args:
            raise RError("invalid assignment target")
        expr = expr.args[0].value
    if isinstance(expr, Vector) and expr.rtype == 'character' and expr.length() == 1:
        return Symbol(expr.data[0])
    if not isinstance(expr, Symbol):
        raise RError("invalid assignment target")
    return expr


def replacement_value(interp, lhs: Call, value: Any, env: Environment,
                      builtin_setters: Optional[List[Call]] = None) -> Any:
    """New value of the assignment target for ``lhs <- value``, via the ``*tmp*`` protocol.

    Calls made to builtin setters are collected in ``builtin_setters``.
    """
    if isinstance(lhs.fn, Symbol):
        setter_name = lhs.fn.name + '<-'
    elif isinstance(lhs.fn, Vector) and lhs.fn.rtype == 'character':
        setter_name = lhs.fn.data[0] + '<-'
    else:
        raise RError("invalid function in complex assignment")
    inner = lhs.args[0].value
    if isinstance(inner, Call):
        obj_expr = _with_tmp(inner)
        obj = interp.eval(obj_expr, env)
    else:
        obj_expr = TMP
        obj = env.frame[TMP.name]
    setter = interp.find_function(setter_name, env, lhs)
    supplied = ([(lhs.args[0].name, Promise.of_value(obj, obj_expr))]
                + interp.promise_args(lhs.args[1:], env)
                + [('value', Promise.of_value(value))])
    setter_call = Call(Symbol(setter_name),
                       [Arg(None, obj_expr)] + lhs.args[1:] + [Arg('value', value)], lhs.pos)
    if builtin_setters is not None and isinstance(setter, Builtin):
        builtin_setters.append(setter_call)
    new = interp.apply_function(setter, supplied, setter_call, env)
    if isinstance(inner, Call):
        return replacement_value(interp, inner, new, env, builtin_setters)
    return new


def _is_setter_call(call: Any, setters: List[Call]) -> bool:
    return isinstance(call, Call) and any(
        call is c or (call.fn is c.fn and call.pos == c.pos) for c in setters)


def assign_complex(interp, lhs: Call, value: Any, env: Environment, inherit: bool,
                   call: Optional[Call] = None) -> None:
    """Run ``lhs <- value`` for a call-shaped target.

    Conditions raised by builtin setters name ``call``, the assignment as written.
    """
    target = _target_symbol(lhs)
    if inherit:
        holder = env.parent.find(target.name) if env.parent is not None else None
        if holder is None:
            raise RError(f"object '{target.name}' not found")
        current = interp.force(holder.frame[target.name])
    else:
        current = interp.eval_symbol(target, env)
    env.frame[TMP.name] = current
    setters: List[Call] = []
    queued = len(interp.pending_warnings)
    try:
        new = replacement_value(interp, lhs, value, env, setters)
    except (RError, RWarningCondition) as err:
        if call is not None and _is_setter_call(err.call, setters):
            err.call = call
        raise
    finally:
        env.frame.pop(TMP.name, None)
        if call is not None:
            for pending in interp.pending_warnings[queued:]:
                if _is_setter_call(pending.call, setters):
                    pending.call = call
    if inherit:
        bind_inherit(env, target.name, new, interp.global_env)
    else:
        env.assign(target.name, new)


def _assign(interp, call: Call, env: Environment, inherit: bool):
    target, value_expr = call.args[0].value, call.args[1].value
    value = interp.eval(value_expr, env)
    if isinstance(target, Vector) and target.rtype == 'character' and target.length() == 1:
        target = Symbol(target.data[0])
    if isinstance(target, Symbol):
        if inherit:
            bind_inherit(env, target.name, value, interp.global_env)
        else:
            env.assign(target.name, value)
    elif isinstance(target, Call):
        assign_complex(interp, target, value, env, inherit, call)
    else:
        raise RError("invalid (do_set) left-hand side to assignment")
    interp.visible = False
    return value


@builtin('<-', '=', signature=None)
def do_assign(interp, call: Call, env: Environment):
    return _assign(interp, call, env, inherit=False)


@builtin('<<-', signature=None)
def do_super_assign(interp, call: Call, env: Environment):
    return _assign(interp, call, env, inherit=True)


def _scalar_flag(value: Any, op: str, side: str, call: Call) -> Optional[bool]:
    if not isinstance(value, Vector) or value.rtype in ('character', 'list', 'expression'):
        raise RError(f"invalid '{side}' type in 'x {op} y'", call)
    if value.length() > 1:
        raise RError(f"'length = {value.length()}' in coercion to 'logical(1)'", call)
    if value.length() == 0:
        return None
    return as_logical_scalar(value)


@builtin('&&', signature=None)
def do_and(interp, call: Call, env: Environment):
    left = _scalar_flag(interp.eval(call.args[0].value, env), '&&', 'x', call)
    if left is False:
        result = False
    else:
        right = _scalar_flag(interp.eval(call.args[1].value, env), '&&', 'y', call)
        result = right if left else (False if right is False else None)
    interp.visible = True
    return mk_logical([result])


@builtin('||', signature=None)
def do_or(interp, call: Call, env: Environment):
    left = _scalar_flag(interp.eval(call.args[0].value, env), '||', 'x', call)
    if left is True:
        result = True
    else:
        right = _scalar_flag(interp.eval(call.args[1].value, env), '||', 'y', call)
        result = right if left is False else (True if right is True else None)
    interp.visible = True
    return mk_logical([result])


@builtin('~', signature=None)
def do_formula(interp, call: Call, env: Environment):
    formula = Call(call.fn, call.args, call.pos)
    formula.attributes = {'class': mk_str(['formula']), '.Environment': env}
    interp.visible = True
    return formula


@builtin('::', ':::', '@', '?', ':=', signature=None)
def do_unsupported(interp, call: Call, env: Environment):
    raise RError("unsupported operator")


# quoting and substitution

def _forced(args: CallArgs, name: str, default: Any = None) -> Any:
    """Force a special builtin's argument."""
    if not args.has(name):
        return default
    return args.interp.force(args.values[name])


@builtin('quote', signature='expr', special=True)
def do_quote(args: CallArgs):
    return args.expr('expr')


def substitute_expr(expr: Any, mapping: Dict[str, Any], explicit: bool) -> Any:
    if isinstance(expr, Symbol):
        if expr.name not in mapping:
            return expr
        value = mapping[expr.name]
        if isinstance(value, Promise):
            return value.expr
        if value is MISSING_ARG or isinstance(value, DotsValue):
            return expr
        if explicit or is_language(value):
            return value
        return expr
    if isinstance(expr, Call):
        fn = substitute_expr(expr.fn, mapping, explicit)
        new_args: List[Arg] = []
        for arg in expr.args:
            dots = mapping.get('...') if arg.value is DOTS else None
            if isinstance(dots, DotsValue):
                new_args.extend(Arg(name, item.expr if isinstance(item, Promise) else item)
                                for name, item in dots.items)
            else:
                new_args.append(Arg(arg.name, substitute_expr(arg.value, mapping, explicit)))
        return Call(fn, new_args, expr.pos, expr.srcref)
    return expr


@builtin('substitute', signature='expr, env', special=True)
def do_substitute(args: CallArgs):
    expr = args.expr('expr')
    interp = args.interp
    if args.has('env'):
        where = _forced(args, 'env')
        if isinstance(where, Environment):
            mapping = dict(where.frame)
        elif isinstance(where, Vector) and where.rtype == 'list':
            mapping = dict(zip(where.names() or [], where.data))
        else:
            raise RError("invalid environment specified")
        return substitute_expr(expr, mapping, explicit=True)
    if args.env is interp.global_env:
        return expr
    return substitute_expr(expr, args.env.frame, explicit=False)


def is_missing(env: Environment, name: str, depth: int = 0) -> bool:
    if name not in env.frame:
        raise RError("'missing' can only be used for arguments")
    value = env.frame[name]
    if value is MISSING_ARG:
        return True
    if isinstance(value, DotsValue):
        return len(value.items) == 0
    if isinstance(value, Promise):
        if value.is_default:
            return True
        inner = value.expr
        if (not value.forced and isinstance(inner, Symbol) and value.env is not None
                and inner.name in value.env.frame and depth < 100):
            try:
                return is_missing(value.env, inner.name, depth + 1)
            except RError:
                return False
    return False


@builtin('missing', signature='x', special=True)
def do_missing(args: CallArgs):
    expr = args.expr('x')
    if isinstance(expr, Vector) and expr.rtype == 'character':
        expr = Symbol(expr.data[0])
    if not isinstance(expr, Symbol):
        raise RError("invalid use of 'missing'")
    return r_bool(is_missing(args.env, expr.name))


@builtin('on.exit', signature='expr = NULL, add = FALSE, after = TRUE', special=True,
         visibility='off')
def do_on_exit(args: CallArgs):
    frame = args.interp.frame_for_env(args.env)
    add = as_logical_scalar(_forced(args, 'add', mk_logical([False])))
    after = as_logical_scalar(_forced(args, 'after', mk_logical([True])))
    if frame is None:
        return NULL
    expr = args.expr('expr')
    actions = [] if expr is MISSING_ARG or expr is NULL else [expr]
    if add:
        frame.on_exit = frame.on_exit + actions if after else actions + frame.on_exit
    else:
        frame.on_exit = actions
    return NULL


# frames and calls

def _frame_at(args: CallArgs, which: int) -> Optional[Frame]:
    interp = args.interp
    current = interp.frame_for_env(args.env)
    number = current.number if current is not None else 0
    target = number + which if which <= 0 else which
    if target == 0:
        return None
    if target < 0 or target > len(interp.frames):
        raise RError("not that many frames on the stack")
    return interp.frames[target - 1]


@builtin('sys.call', signature='which = 0')
def do_sys_call(args: CallArgs):
    frame = _frame_at(args, int_arg(args, 'which', 0))
    return frame.call if frame is not None else NULL


@builtin('sys.function', signature='which = 0')
def do_sys_function(args: CallArgs):
    frame = _frame_at(args, int_arg(args, 'which', 0))
    if frame is None:
        raise RError("not that many frames on the stack")
    return frame.function


@builtin('sys.nframe', signature='')
def do_sys_nframe(args: CallArgs):
    frame = args.interp.frame_for_env(args.env)
    return mk_int([frame.number if frame is not None else 0])


@builtin('sys.parent', signature='n = 1')
def do_sys_parent(args: CallArgs):
    interp = args.interp
    env = interp.parent_frame(args.env, max(int_arg(args, 'n', 1) or 1, 1))
    frame = interp.frame_for_env(env)
    return mk_int([frame.number if frame is not None else 0])


def _calling_function(args: CallArgs) -> Any:
    frame = args.interp.frame_for_env(args.env)
    return frame.function if frame is not None else NULL


@builtin('parent.frame', signature='n = 1')
def do_parent_frame(args: CallArgs):
    n = int_arg(args, 'n', 1)
    if n is None or n < 1:
        raise RError("invalid 'n' value")
    return args.interp.parent_frame(args.env, n)


@builtin('nargs', signature='')
def do_nargs(args: CallArgs):
    frame = args.interp.frame_for_env(args.env)
    if frame is None:
        return mk_int([0])
    return mk_int([sum(1 for _, item in frame.supplied if item is not MISSING_ARG)])


def matched_call(fn: Any, call: Call, supplied, assigned) -> Call:
    by_formal: Dict[str, Any] = {}
    dots: List[Arg] = []
    for (name, item), formal in zip(supplied, assigned):
        expr = item.expr if isinstance(item, Promise) else item
        if item is MISSING_ARG:
            continue
        if formal == '...':
            dots.append(Arg(name, expr))
        elif formal is not None:
            by_formal[formal] = expr
    out: List[Arg] = []
    for name, _ in fn.formals or []:
        if name == '...':
            out.extend(dots)
        elif name in by_formal:
            out.append(Arg(name, by_formal[name]))
    return Call(call.fn, out, call.pos)


@builtin('match.call', signature='definition = NULL, call = NULL')
def do_match_call(args: CallArgs):
    interp = args.interp
    definition = args.get('definition', NULL)
    call = args.get('call', NULL)
    if call is NULL:
        frame = interp.frame_for_env(args.env)
        if frame is None:
            raise RError("match.call() was called from outside a function")
        if definition is NULL:
            return matched_call(frame.function, frame.call, frame.supplied, frame.matched_to)
        call = frame.call
    if not isinstance(call, Call):
        raise RError("invalid 'call' argument")
    if definition is NULL:
        definition = interp.find_function(call.fn_name(), args.env) if call.fn_name() else NULL
    if not isinstance(definition, (Closure, Builtin)) or definition.formals is None:
        raise RError("invalid 'definition' argument")
    supplied = [(a.name, Promise.of_value(a.value, a.value)) for a in call.args]
    _, _, assigned = interp.match_args(definition.formals, supplied, call)
    return matched_call(definition, call, supplied, assigned)


@builtin('do.call', signature='what, args, quote = FALSE, envir = parent.frame()',
         visibility='impl')
def do_do_call(args: CallArgs):
    interp = args.interp
    what = args.get('what')
    env = args.get('envir') or args.env
    if isinstance(what, Vector) and what.rtype == 'character' and what.length() == 1:
        fn_expr: Any = Symbol(what.data[0])
        f = interp.find_function(what.data[0], env)
    elif isinstance(what, (Closure, Builtin)):
        fn_expr = what
        f = what
    else:
        raise RError("'what' must be a function or character string")
    arglist = to_list(args.get('args', NULL))
    names = arglist.names() or [None] * arglist.length()
    values = [(name or None, value) for name, value in zip(names, arglist.data)]
    call = Call(fn_expr, [Arg(name, value) for name, value in values])
    supplied = [(name, Promise.of_value(value, value)) for name, value in values]
    return interp.apply_function(f, supplied, call, env)


@builtin('match.fun', signature='FUN, descend = TRUE')
def do_match_fun(args: CallArgs):
    return function_arg(args, 'FUN')


# evaluation

def _eval_in(interp, expr: Any, env: Environment) -> Any:
    if isinstance(expr, Vector) and expr.rtype == 'expression':
        result: Any = NULL
        for item in expr.data:
            result = interp.eval(item, env)
        return result
    if isinstance(expr, (Symbol, Call)):
        return interp.eval(expr, env)
    interp.visible = True
    return expr


def _environment_arg(interp, where: Any, enclos: Environment) -> Environment:
    if isinstance(where, Environment):
        return where
    if isinstance(where, Vector) and where.rtype == 'list':
        return as_environment(where, enclos)
    if where is NULL:
        return enclos
    raise RError("invalid 'envir' argument of type '%s'" % getattr(where, 'rtype', 'unknown'))


@builtin('eval', signature='expr, envir = parent.frame(), enclos = parent.frame()',
         visibility='impl')
def do_eval(args: CallArgs):
    interp = args.interp
    enclos = args.get('enclos') or args.env
    env = _environment_arg(interp, args.get('envir', args.env), enclos)
    return _eval_in(interp, args.get('expr', NULL), env)


@builtin('evalq', signature='expr, envir = parent.frame(), enclos = parent.frame()',
         special=True, visibility='impl')
def do_evalq(args: CallArgs):
    interp = args.interp
    enclos = _forced(args, 'enclos') or args.env
    env = _environment_arg(interp, _forced(args, 'envir', args.env), enclos)
    return _eval_in(interp, args.expr('expr'), env)


@builtin('local', signature='expr, envir = new.env()', special=True, visibility='impl')
def do_local(args: CallArgs):
    interp = args.interp
    env = _forced(args, 'envir')
    if env is None:
        env = Environment(args.env)
    elif not isinstance(env, Environment):
        raise RError("invalid 'envir' argument")
    return _eval_in(interp, args.expr('expr'), env)


@builtin('invisible', signature='x = NULL', visibility='off')
def do_invisible(args: CallArgs):
    return args.get('x', NULL)


@builtin('deparse', signature='expr, width.cutoff = 60L, ...')
def do_deparse(args: CallArgs):
    return mk_str(deparse(args.get('expr', NULL)))


@builtin('parse', signature='file = "", n = NULL, text = NULL, keep.source = FALSE')
def do_parse(args: CallArgs):
    text = args.get('text', NULL)
    if text is NULL:
        raise RError("only parsing of 'text' is supported")
    source = '\n'.join(s for s in coerce_vector(text, 'character').data if s is not None)
    try:
        return mk_expression(parse_program(source))
    except RSyntaxError as err:
        raise RError(err.describe('<text>'))


@builtin('expression', special=True)
def do_expression(args: CallArgs):
    return mk_expression([item.expr if isinstance(item, Promise) else item for _, item in args.dots])


@builtin('as.name', 'as.symbol', signature='x')
def do_as_name(args: CallArgs):
    x = args.get('x')
    if isinstance(x, Symbol):
        return x
    text = coerce_vector(x, 'character').data
    if len(text) == 0 or text[0] is None or text[0] == '':
        raise RError("invalid type/length (symbol/0) in vector allocation")
    return Symbol(text[0])


@builtin('call', signature='name, ...')
def do_call(args: CallArgs):
    name = str_arg(args, 'name')
    if name is None:
        raise RError("first argument must be a character string")
    return Call(Symbol(name), [Arg(n, v) for n, v in args.dots])


@builtin('as.call', signature='x')
def do_as_call(args: CallArgs):
    x = args.get('x')
    if isinstance(x, Call):
        return x
    if not (isinstance(x, Vector) and x.rtype in ('list', 'expression')) or x.length() == 0:
        raise RError("invalid argument list")
    names = x.names() or [None] * x.length()
    return Call(x.data[0], [Arg(names[k] or None, x.data[k]) for k in range(1, x.length())])


@builtin('is.call', signature='x')
def do_is_call(args: CallArgs):
    return r_bool(isinstance(args.get('x'), Call))


@builtin('is.name', 'is.symbol', signature='x')
def do_is_name(args: CallArgs):
    return r_bool(isinstance(args.get('x'), Symbol))


@builtin('body', signature='fun = sys.function(sys.parent())')
def do_body(args: CallArgs):
    f = args.get('fun') if args.has('fun') else _calling_function(args)
    return f.body if isinstance(f, Closure) else NULL


@builtin('body<-', signature='fun, envir = environment(fun), value')
def do_set_body(args: CallArgs):
    f = args.get('fun')
    if not isinstance(f, Closure):
        raise RError("'fun' must be a function")
    return Closure(f.formals, args.get('value', NULL), f.env, None, f.attributes)


@builtin('formals', signature='fun = sys.function(sys.parent()), envir = parent.frame()')
def do_formals(args: CallArgs):
    f = args.get('fun') if args.has('fun') else _calling_function(args)
    if isinstance(f, Vector) and f.rtype == 'character':
        f = args.interp.find_function(f.data[0], args.env)
    if not isinstance(f, Closure) or not f.formals:
        return NULL
    return mk_list([default for _, default in f.formals], [name for name, _ in f.formals])


@builtin('environment', signature='fun = NULL')
def do_environment(args: CallArgs):
    f = args.get('fun', NULL)
    if f is NULL:
        return args.env
    if isinstance(f, Closure):
        return f.env
    if isinstance(f, RObject) and f.attributes and '.Environment' in f.attributes:
        return f.attributes['.Environment']
    return NULL


@builtin('environment<-', signature='fun, value')
def do_set_environment(args: CallArgs):
    f = args.get('fun')
    env = args.get('value')
    if not isinstance(env, Environment):
        raise RError("replacement object is not an environment")
    if not isinstance(f, Closure):
        raise RError("'fun' must be a function")
    return Closure(f.formals, f.body, env, f.srcref, f.attributes)


# S3

@builtin('UseMethod', signature='generic, object', special=True)
def do_use_method(args: CallArgs):
    interp = args.interp
    frame = interp.frame_for_env(args.env)
    if frame is None:
        raise RError("UseMethod called from outside a function")
    generic = _forced(args, 'generic')
    if not (isinstance(generic, Vector) and generic.rtype == 'character' and generic.length() == 1):
        raise RError("'generic' argument must be a character string")
    obj = _forced(args, 'object') if args.has('object') else dispatch_object(interp, frame)
    result = use_method(interp, generic.data[0], obj, frame)
    raise ReturnSignal(result, frame.env, interp.visible)


@builtin('NextMethod', signature='generic = NULL, object = NULL, ...', visibility='impl')
def do_next_method(args: CallArgs):
    generic = str_arg(args, 'generic')
    extra = [(name, Promise.of_value(value)) for name, value in args.dots]
    return next_method(args.interp, args.env, generic, extra)


# dots

@builtin('...length', signature='')
def do_dots_length(args: CallArgs):
    return mk_int([len(args.interp.dots_of(args.env).items)])


@builtin('...names', signature='')
def do_dots_names(args: CallArgs):
    items = args.interp.dots_of(args.env).items
    if not any(name for name, _ in items):
        return NULL
    return mk_str([name or '' for name, _ in items])


@builtin('...elt', signature='n')
def do_dots_elt(args: CallArgs):
    n = int_arg(args, 'n')
    if n is None:
        raise RError("indexing '...' with an invalid index")
    return args.interp.dots_element(args.env, n)


# switch and assertions

@builtin('switch', signature='EXPR, ...', special=True, visibility='impl')
def do_switch(args: CallArgs):
    interp = args.interp
    selector = _forced(args, 'EXPR')
    if not isinstance(selector, Vector) or selector.length() != 1 or not selector.is_atomic():
        raise RError("EXPR must be a length 1 vector")
    alternatives = args.dots
    if selector.rtype == 'character':
        key = selector.data[0]
        for k, (name, _) in enumerate(alternatives):
            if name is not None and name == key:
                for _, item in alternatives[k:]:
                    if item is not MISSING_ARG:
                        interp.visible = True
                        return interp.force(item)
                raise RError("empty alternative in numeric switch")
        defaults = [item for name, item in alternatives if not name]
        if len(defaults) > 1:
            raise RError("duplicate 'switch' defaults")
        if defaults:
            interp.visible = True
            return interp.force(defaults[0])
    else:
        k = int(coerce_vector(selector, 'integer').data[0]) if not selector.na[0] else 0
        if 1 <= k <= len(alternatives):
            item = alternatives[k - 1][1]
            if item is MISSING_ARG:
                raise RError("empty alternative in numeric switch")
            interp.visible = True
            return interp.force(item)
    interp.visible = False
    return NULL


@builtin('stopifnot', special=True, visibility='off')
def do_stopifnot(args: CallArgs):
    interp = args.interp
    for _, item in args.dots:
        value = interp.force(item)
        ok = (isinstance(value, Vector) and value.rtype == 'logical'
              and not bool(value.na.any()) and bool(value.data.all()))
        if not ok:
            expr = item.expr if isinstance(item, Promise) else item
            several = isinstance(value, Vector) and value.length() > 1
            verb = 'are not all TRUE' if several else 'is not TRUE'
            raise RError(f"{deparse_one(expr)} {verb}", interp.call_for_env(args.env))
    return NULL


@builtin('interactive', signature='')
def do_interactive(args: CallArgs):
    return r_bool(args.interp.option_true('deepr.interactive'))

