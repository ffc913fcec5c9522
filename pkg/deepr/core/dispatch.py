"""S3 dispatch: UseMethod, NextMethod, internal generics and the Ops group."""
import logging
from dataclasses import replace
from typing import Any, List, Optional, Tuple

from ..language.ast import MISSING_ARG, Call, Symbol
from .attributes import dispatch_classes
from .conditions import RError
from .environments import Environment
from .frames import DispatchState, Frame, Supplied
from .values import DotsValue, Promise, RObject, is_function


logger = logging.getLogger(__name__)

NOT_DISPATCHED = object()


def lookup_method(interp, name: str, *envs: Environment) -> Any:
    for env in envs:
        if env is None:
            continue
        for frame_env in env.chain():
            if name in frame_env.frame:
                value = interp.force(frame_env.frame[name])
                if is_function(value):
                    return value
    return None


def find_method(interp, generic: str, classes: List[str], call_env: Environment,
                def_env: Optional[Environment] = None, group: Optional[str] = None):
    """First ``generic.cls`` (or ``group.cls``) along ``classes``: (method, index, name)."""
    for k, cls in enumerate(classes):
        for prefix in (generic, group):
            if prefix is None:
                continue
            name = f'{prefix}.{cls}'
            method = lookup_method(interp, name, call_env, def_env)
            if method is not None:
                return method, k, name
    return None


def _class_description(classes: List[str]) -> str:
    if len(classes) == 1:
        return classes[0]
    return 'c(' + ', '.join(f"'{c}'" for c in classes) + ')'


def dispatch_object(interp, frame: Frame) -> RObject:
    """The value a generic dispatches on: its first argument."""
    formals = frame.function.formals
    if not formals:
        raise RError("generic function must have at least one argument")
    first = formals[0][0]
    if first == '...':
        dots = frame.env.frame.get('...')
        if not isinstance(dots, DotsValue) or not dots.items:
            raise RError("UseMethod called with no arguments")
        return interp.force(dots.items[0][1])
    return interp.eval(Symbol(first), frame.env)


def use_method(interp, generic: str, obj: RObject, frame: Frame) -> Any:
    classes = dispatch_classes(obj)
    found = find_method(interp, generic, classes + ['default'], frame.caller, frame.function.env)
    if found is None:
        raise RError(f"no applicable method for '{generic}' applied to an object of class "
                     f"\"{_class_description(classes)}\"")
    method, k, name = found
    logger.debug("UseMethod(%s) -> %s", generic, name)
    state = DispatchState(generic, classes + ['default'], k, obj)
    call = Call(Symbol(name), frame.call.args, frame.call.pos)
    return interp.apply_function(method, frame.supplied, call, frame.caller, dispatch=state)


def _forwarded_args(frame: Frame) -> Supplied:
    """The current method's arguments, re-read from its frame."""
    out: Supplied = []
    for (name, item), formal in zip(frame.supplied, frame.matched_to):
        if formal is None or formal == '...':
            out.append((name, item))
        else:
            if frame.env.frame.get(formal, MISSING_ARG) is MISSING_ARG:
                out.append((name, item))
            else:
                out.append((name, Promise(Symbol(formal), frame.env)))
    return out


def next_method(interp, env: Environment, generic: Optional[str], extra: Supplied) -> Any:
    frame = interp.frame_for_env(env)
    if frame is None or frame.dispatch is None:
        raise RError("NextMethod called from outside a method dispatch")
    state = frame.dispatch
    generic = generic or state.generic
    supplied = _forwarded_args(frame) + list(extra)
    remaining = state.classes[state.position + 1:]
    if remaining and remaining[-1] != 'default':
        remaining = remaining + ['default']
    found = find_method(interp, generic, remaining, frame.caller, frame.function.env,
                        group=state.group)
    base_fn = interp.base_env.frame.get(generic)
    if found is not None:
        method, k, name = found
        logger.debug("NextMethod(%s) -> %s", generic, name)
        new_state = replace(state, generic=generic, position=state.position + 1 + k)
        call = Call(Symbol(name), frame.call.args, frame.call.pos)
        return interp.apply_function(method, supplied, call, frame.caller, dispatch=new_state)
    if is_function(base_fn):
        logger.debug("NextMethod(%s) -> internal", generic)
        call = Call(Symbol(generic), frame.call.args, frame.call.pos)
        return interp.apply_function(base_fn, supplied, call, frame.caller, internal=True)
    raise RError(f"no more methods for '{generic}'")


def dispatch_internal(interp, f, supplied: Supplied, call: Call, env: Environment) -> Any:
    """Try a user method before running an internal generic builtin."""
    if f.group == 'Ops':
        return dispatch_ops(interp, f, supplied, call, env)
    if not supplied:
        return NOT_DISPATCHED
    obj = interp.force(supplied[0][1])
    if not (isinstance(obj, RObject) and obj.is_object()):
        return NOT_DISPATCHED
    classes = dispatch_classes(obj)
    found = find_method(interp, f.generic, classes, env)
    if found is None:
        return NOT_DISPATCHED
    method, k, name = found
    if method is f:
        return NOT_DISPATCHED
    logger.debug("internal %s -> %s", f.generic, name)
    state = DispatchState(f.generic, classes + ['default'], k, obj)
    method_call = Call(Symbol(name), call.args, call.pos)
    return interp.apply_function(method, supplied, method_call, env, dispatch=state)


def _operand_method(interp, op: str, value: Any, env: Environment) -> Optional[Tuple[Any, int, str, List[str]]]:
    if not (isinstance(value, RObject) and value.is_object()):
        return None
    classes = value.class_attr() or []
    found = find_method(interp, op, classes, env, group='Ops')
    if found is None:
        return None
    method, k, name = found
    return method, k, name, classes


def dispatch_ops(interp, f, supplied: Supplied, call: Call, env: Environment) -> Any:
    """Binary and unary operator dispatch on the classes of both operands."""
    values = [interp.force(item) for _, item in supplied]
    left = _operand_method(interp, f.name, values[0], env) if values else None
    right = _operand_method(interp, f.name, values[1], env) if len(values) > 1 else None
    if left is not None and right is not None and left[0] is not right[0]:
        interp.signal_warning(f'Incompatible methods ("{left[2]}", "{right[2]}") for "{f.name}"', None)
        return NOT_DISPATCHED
    chosen = left or right
    if chosen is None:
        return NOT_DISPATCHED
    method, k, name, classes = chosen
    obj = values[0] if chosen is left else values[1]
    logger.debug("Ops %s -> %s", f.name, name)
    state = DispatchState(f.name, classes + ['default'], k, obj, group='Ops')
    method_call = Call(Symbol(name), call.args, call.pos)
    return interp.apply_function(method, supplied, method_call, env, dispatch=state)

