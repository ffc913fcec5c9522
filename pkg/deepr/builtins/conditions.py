"""Signalling and handling conditions: stop, warning, tryCatch and friends."""
import logging
from typing import Any, Dict, List, Optional

from ..core.attributes import inherits
from ..core.coercion import as_logical_scalar, as_strings
from ..core.conditions import QuitSignal, RError, RMessageCondition, RWarningCondition
from ..core.frames import CallArgs, HandlerEntry
from ..core.values import NULL, Vector, is_function, mk_list, mk_str
from ..language.ast import Call
from ..language.deparse import deparse_one
from .helpers import flag, int_arg, str_arg
from .registry import builtin


logger = logging.getLogger(__name__)

ERROR_CLASSES = ['simpleError', 'error', 'condition']
WARNING_CLASSES = ['simpleWarning', 'warning', 'condition']
MESSAGE_CLASSES = ['simpleMessage', 'message', 'condition']


def make_condition(message: str, call: Any, classes: List[str]) -> Vector:
    call = NULL if call is None else call
    return mk_list([mk_str([message]), call], ['message', 'call'],
                   attributes={'class': mk_str(classes)})


def condition_field(cond: Any, name: str) -> Any:
    if isinstance(cond, Vector) and cond.rtype == 'list':
        names = cond.names() or []
        if name in names:
            return cond.data[names.index(name)]
    return NULL


def is_condition(value: Any) -> bool:
    return isinstance(value, Vector) and value.rtype == 'list' and inherits(value, ['condition'])


def message_text(values: List[Any]) -> str:
    parts: List[str] = []
    for value in values:
        parts.extend('NA' if s is None else s for s in as_strings(value))
    return ''.join(parts)


def _signal_call(args: CallArgs) -> Optional[Call]:
    return args.interp.call_for_env(args.env) if flag(args, 'call.', True) else None


@builtin('stop', signature='..., call. = TRUE, domain = NULL')
def do_stop(args: CallArgs):
    values = args.dot_values()
    if len(values) == 1 and is_condition(values[0]):
        cond = values[0]
        call = condition_field(cond, 'call')
        message = message_text([condition_field(cond, 'message')])
        raise RError(message, None if call is NULL else call, condition=cond)
    raise RError(message_text(values), _signal_call(args))


@builtin('warning', signature='..., call. = TRUE, immediate. = FALSE, domain = NULL',
         visibility='off')
def do_warning(args: CallArgs):
    values = args.dot_values()
    if len(values) == 1 and is_condition(values[0]):
        cond = values[0]
        call = condition_field(cond, 'call')
        message = message_text([condition_field(cond, 'message')])
        args.interp.signal_warning(message, None if call is NULL else call)
        return mk_str([message])
    message = message_text(values)
    args.interp.signal_warning(message, _signal_call(args))
    return mk_str([message])


@builtin('message', signature='..., domain = NULL, appendLF = TRUE', visibility='off')
def do_message(args: CallArgs):
    interp = args.interp
    text = message_text(args.dot_values())
    if flag(args, 'appendLF', True):
        text += '\n'
    for entry in reversed(interp.handlers):
        if 'muffle-message' in entry.kinds:
            return NULL
        if 'message' in entry.kinds:
            raise RMessageCondition(text, None)
    interp.sink.err(text)
    return NULL


def _handler_condition(exc: Exception) -> Vector:
    if isinstance(exc, RError):
        if exc.condition is not None:
            return exc.condition
        return make_condition(exc.message, exc.call if isinstance(exc.call, Call) else None,
                              ERROR_CLASSES)
    if isinstance(exc, RWarningCondition):
        return make_condition(exc.message, exc.call if isinstance(exc.call, Call) else None,
                              WARNING_CLASSES)
    return make_condition(exc.message, None, MESSAGE_CLASSES)


def _handled_kind(cls: str) -> str:
    if cls in WARNING_CLASSES[:2]:
        return 'warning'
    if cls in MESSAGE_CLASSES[:2]:
        return 'message'
    return 'error'


def _pick_handler(handlers: Dict[str, Any], cond: Vector) -> Any:
    for cls in cond.class_attr() or []:
        if cls in handlers:
            return handlers[cls]
    return None


def _remove(interp, entry: HandlerEntry) -> None:
    if entry in interp.handlers:
        interp.handlers.remove(entry)


def _force(args: CallArgs, name: str) -> Any:
    return args.interp.force(args.values[name])


@builtin('tryCatch', signature='expr, ..., finally', special=True, visibility='impl')
def do_try_catch(args: CallArgs):
    interp = args.interp
    handlers: Dict[str, Any] = {}
    for name, item in args.dots:
        if name:
            handler = interp.force(item)
            if not is_function(handler):
                raise RError(f"handler for '{name}' is not a function")
            handlers[name] = handler
    kinds = frozenset(_handled_kind(name) for name in handlers)
    entry = HandlerEntry(kinds)
    interp.handlers.append(entry)
    try:
        try:
            return _force(args, 'expr') if args.has('expr') else NULL
        except (RError, RWarningCondition, RMessageCondition) as exc:
            cond = _handler_condition(exc)
            handler = _pick_handler(handlers, cond)
            if handler is None:
                raise
            _remove(interp, entry)
            logger.debug("tryCatch handling %s", (cond.class_attr() or ['?'])[0])
            return interp.call_function(handler, [(None, cond)], args.env,
                                        Call(args.call.fn, args.call.args, args.call.pos))
    finally:
        _remove(interp, entry)
        if args.has('finally'):
            visible = interp.visible
            _force(args, 'finally')
            interp.visible = visible


def try_error_text(err: RError) -> str:
    call = err.call if isinstance(err.call, Call) else None
    if call is not None:
        return f'Error in {deparse_one(call)} : {err.message}\n'
    return f'Error : {err.message}\n'


@builtin('try', signature='expr, silent = FALSE, outFile', special=True, visibility='impl')
def do_try(args: CallArgs):
    interp = args.interp
    entry = HandlerEntry(frozenset({'error'}))
    interp.handlers.append(entry)
    try:
        return _force(args, 'expr')
    except RError as err:
        _remove(interp, entry)
        text = try_error_text(err)
        silent = args.has('silent') and bool(as_logical_scalar(_force(args, 'silent')))
        if not silent:
            interp.sink.err(text)
        cond = _handler_condition(err)
        interp.visible = False
        return mk_str([text], attributes={'class': mk_str(['try-error']), 'condition': cond})
    finally:
        _remove(interp, entry)


@builtin('suppressWarnings', signature='expr, classes = "warning"', special=True,
         visibility='impl')
def do_suppress_warnings(args: CallArgs):
    interp = args.interp
    entry = HandlerEntry(frozenset({'muffle'}))
    interp.handlers.append(entry)
    try:
        return _force(args, 'expr') if args.has('expr') else NULL
    finally:
        _remove(interp, entry)


@builtin('suppressMessages', signature='expr, classes = "message"', special=True,
         visibility='impl')
def do_suppress_messages(args: CallArgs):
    interp = args.interp
    entry = HandlerEntry(frozenset({'muffle-message'}))
    interp.handlers.append(entry)
    try:
        return _force(args, 'expr') if args.has('expr') else NULL
    finally:
        _remove(interp, entry)


def _condition_arg(args: CallArgs, classes: List[str]) -> Vector:
    message = str_arg(args, 'message')
    if message is None:
        raise RError('argument "message" is missing, with no default')
    call = args.get('call', NULL)
    return make_condition(message, None if call is NULL else call, classes)


@builtin('simpleError', signature='message, call = NULL')
def do_simple_error(args: CallArgs):
    return _condition_arg(args, ERROR_CLASSES)


@builtin('simpleWarning', signature='message, call = NULL')
def do_simple_warning(args: CallArgs):
    return _condition_arg(args, WARNING_CLASSES)


@builtin('simpleCondition', signature='message, call = NULL')
def do_simple_condition(args: CallArgs):
    return _condition_arg(args, ['simpleCondition', 'condition'])


def _classed_condition(args: CallArgs, base: List[str]) -> Vector:
    message = str_arg(args, 'message')
    extra = [c for c in as_strings(args.get('class', NULL)) if c is not None]
    call = args.get('call', NULL)
    return make_condition(message or '', None if call is NULL else call, extra + base)


@builtin('errorCondition', signature='message, ..., class = character(), call = NULL')
def do_error_condition(args: CallArgs):
    return _classed_condition(args, ['error', 'condition'])


@builtin('warningCondition', signature='message, ..., class = character(), call = NULL')
def do_warning_condition(args: CallArgs):
    return _classed_condition(args, ['warning', 'condition'])


@builtin('conditionMessage', signature='c')
def do_condition_message(args: CallArgs):
    return condition_field(args.get('c'), 'message')


@builtin('conditionCall', signature='c')
def do_condition_call(args: CallArgs):
    return condition_field(args.get('c'), 'call')


@builtin('q', 'quit', signature='save = "default", status = 0, runLast = TRUE')
def do_quit(args: CallArgs):
    status = int_arg(args, 'status', 0) or 0
    logger.debug("quit requested with status %d", status)
    raise QuitSignal(status)