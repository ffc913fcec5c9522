"""The interpreter: evaluation, the call protocol and top-level statement handling."""
import logging
import sys
import threading
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..language.ast import DOTS, MISSING_ARG, Arg, Call, Symbol
from ..language.deparse import deparse_one
from ..language.parser import parse_program
from .conditions import (CALL_PENDING, BreakSignal, NextSignal, PendingWarning, QuitSignal, RError,
                         ReturnSignal, RSyntaxError, RWarningCondition, format_condition,
                         reset_warning_sink, set_warning_sink, wrap_report)
from .environments import EmptyEnvironment, Environment, EnvironmentRegistry
from .frames import CallArgs, DispatchState, Frame, HandlerEntry, Supplied
from .values import (NULL, Builtin, Closure, DotsValue, Promise, RObject, Vector, is_function,
                     mk_str)


logger = logging.getLogger(__name__)

RECURSION_MESSAGE = "evaluation nested too deeply: infinite recursion / options(expressions=)?"
PROMISE_LOOP_MESSAGE = "promise already under evaluation: recursive default argument reference or earlier problems?"
TMP = Symbol('*tmp*')

# One R call nests between four and a few dozen Python frames; statements run
# on a worker thread whose stack is sized for this limit.
PYTHON_RECURSION_LIMIT = 250_000
EVAL_STACK_BYTES = 768 * 1024 * 1024
EVAL_THREAD_NAME = 'deepr-eval'

sys.setrecursionlimit(max(sys.getrecursionlimit(), PYTHON_RECURSION_LIMIT))


def _is_constant(expr: Any) -> bool:
    return not isinstance(expr, (Symbol, Call))


class Interpreter:
    """One R session: the environment tree, the call stack and the output sink."""

    def __init__(self, sink=None, options: Optional[Dict[str, RObject]] = None,
                 recursion_limit: int = 5000):
        from ..builtins import install_base
        from ..ui.console import OutputSink
        from ..ui.printer import Printer

        self.sink = sink or OutputSink()
        self.empty_env = EmptyEnvironment()
        self.base_env = Environment(self.empty_env, 'base')
        self.global_env = Environment(self.base_env, 'R_GlobalEnv')
        self.frames: List[Frame] = []
        self.builtin_calls: List[Tuple[Call, Environment]] = []
        self.handlers: List[HandlerEntry] = []
        self.pending_warnings: List[PendingWarning] = []
        self.visible = True
        self.recursion_limit = recursion_limit
        self.env_registry = EnvironmentRegistry()
        self.options: Dict[str, RObject] = dict(options or {})
        self.lcg_state: Optional[int] = None
        self.interrupt_pending = False
        self.printer = Printer(self)
        install_base(self)
        self.base_env.locked = True

    # evaluation

    def eval(self, expr: Any, env: Environment) -> Any:
        if self.interrupt_pending:
            self.interrupt_pending = False
            raise KeyboardInterrupt
        if isinstance(expr, Symbol):
            return self.eval_symbol(expr, env)
        if isinstance(expr, Call):
            return self.eval_call(expr, env)
        self.visible = True
        return expr

    def eval_symbol(self, sym: Symbol, env: Environment) -> Any:
        name = sym.name
        if name == '...':
            raise RError("'...' used in an incorrect context", self.call_for_env(env))
        if name.startswith('..') and name[2:].isdigit():
            return self.dots_element(env, int(name[2:]))
        for frame_env in env.chain():
            frame = frame_env.frame
            if name in frame:
                value = frame[name]
                break
        else:
            raise RError(f"object '{name}' not found", self.call_for_env(env))
        if value is MISSING_ARG:
            raise RError(f'argument "{name}" is missing, with no default', self.call_for_env(env))
        if isinstance(value, Promise):
            value = self.force(value)
        self.visible = True
        return value

    def force(self, value: Any) -> Any:
        """Evaluate a promise at most once; other values pass through."""
        if not isinstance(value, Promise):
            return value
        if value.forced:
            return value.value
        if value.forcing:
            raise RError(PROMISE_LOOP_MESSAGE)
        value.forcing = True
        try:
            result = self.eval(value.expr, value.env)
        finally:
            value.forcing = False
        value.value = result
        value.forced = True
        value.env = None
        return result

    def find_function(self, name: str, env: Environment, call: Any = None) -> Any:
        for frame_env in env.chain():
            if name in frame_env.frame:
                value = frame_env.frame[name]
                if isinstance(value, Promise):
                    value = self.force(value)
                if is_function(value):
                    return value
        raise RError(f'could not find function "{name}"', call)

    def eval_call(self, call: Call, env: Environment) -> Any:
        head = call.fn
        if isinstance(head, Symbol):
            f = self.find_function(head.name, env, call)
        else:
            f = self.eval(head, env)
            if not is_function(f):
                raise RError("attempt to apply non-function", self.call_for_env(env))
        if isinstance(f, Builtin) and f.formals is None:
            return self.apply_form(f, call, env)
        return self.apply_function(f, self.promise_args(call.args, env), call, env)

    def promise_args(self, args: List[Arg], env: Environment) -> Supplied:
        supplied: Supplied = []
        for arg in args:
            value = arg.value
            if value is DOTS:
                dots = env.find('...')
                if dots is None:
                    raise RError("'...' used in an incorrect context", self.call_for_env(env))
                binding = dots.frame['...']
                if isinstance(binding, DotsValue):
                    supplied.extend(binding.items)
                continue
            if value is MISSING_ARG:
                supplied.append((arg.name, MISSING_ARG))
            elif _is_constant(value):
                supplied.append((arg.name, Promise.of_value(value)))
            else:
                supplied.append((arg.name, Promise(value, env)))
        return supplied

    def apply_function(self, f: Any, supplied: Supplied, call: Call, env: Environment,
                       dispatch: Optional[DispatchState] = None, internal: bool = False) -> Any:
        if isinstance(f, Closure):
            return self.apply_closure(f, supplied, call, env, dispatch)
        if isinstance(f, Builtin):
            if f.formals is None:
                args = [Arg(name, value.expr if isinstance(value, Promise) and not value.forced
                            else self.force(value)) for name, value in supplied]
                return self.apply_form(f, Call(call.fn, args, call.pos), env)
            return self.apply_builtin(f, supplied, call, env, internal)
        raise RError("attempt to apply non-function")

    def call_function(self, f: Any, values: List[Tuple[Optional[str], Any]], env: Environment,
                      call: Optional[Call] = None) -> Any:
        """Apply ``f`` to already evaluated arguments."""
        supplied = [(name, Promise.of_value(value)) for name, value in values]
        if call is None:
            call = Call(Symbol('FUN'), [Arg(name, value) for name, value in values])
        return self.apply_function(f, supplied, call, env)

    # argument matching

    def match_args(self, formals: List[Tuple[str, Any]], supplied: Supplied, call: Call):
        """Bind supplied arguments to formals: exact names, partial names, positions, then dots."""
        names = [name for name, _ in formals]
        has_dots = '...' in names
        before_dots = names[:names.index('...')] if has_dots else names
        matched: Dict[str, Any] = {}
        assigned: List[Optional[str]] = [None] * len(supplied)
        for k, (name, item) in enumerate(supplied):
            if name and name != '...' and name in names:
                if name in matched:
                    raise RError(f'formal argument "{name}" matched by multiple actual arguments', call)
                matched[name] = item
                assigned[k] = name
        for k, (name, item) in enumerate(supplied):
            if assigned[k] is not None or not name:
                continue
            candidates = [n for n in before_dots if n.startswith(name) and n not in matched]
            if len(candidates) > 1:
                raise RError(f"argument {k + 1} matches multiple formal arguments", call)
            if candidates:
                formal = candidates[0]
                matched[formal] = item
                assigned[k] = formal
                if self.option_true('warnPartialMatchArgs'):
                    self.signal_warning(f"partial argument match of '{name}' to '{formal}'", call)
        free = [n for n in before_dots if n not in matched]
        dots: Supplied = []
        unused: List[Tuple[Optional[str], Any]] = []
        for k, (name, item) in enumerate(supplied):
            if assigned[k] is not None:
                continue
            if not name and free:
                formal = free.pop(0)
                matched[formal] = item
                assigned[k] = formal
            elif has_dots:
                dots.append((name, item))
                assigned[k] = '...'
            else:
                unused.append((name, item))
        if unused:
            shown = ', '.join(self._describe_arg(name, item) for name, item in unused)
            plural = 's' if len(unused) > 1 else ''
            raise RError(f"unused argument{plural} ({shown})", call)
        return matched, dots, assigned

    @staticmethod
    def _describe_arg(name: Optional[str], item: Any) -> str:
        expr = item.expr if isinstance(item, Promise) else item
        text = deparse_one(expr) if expr is not MISSING_ARG else ''
        return f'{name} = {text}' if name else text

    # closures

    def apply_closure(self, f: Closure, supplied: Supplied, call: Call, caller: Environment,
                      dispatch: Optional[DispatchState] = None) -> Any:
        if len(self.frames) >= self.recursion_limit:
            raise RError(RECURSION_MESSAGE, None)
        local = Environment(f.env)
        matched, dots, assigned = self.match_args(f.formals, supplied, call)
        frame_vars = local.frame
        for name, default in f.formals:
            if name == '...':
                frame_vars['...'] = DotsValue(dots)
            elif name in matched and matched[name] is not MISSING_ARG:
                frame_vars[name] = matched[name]
            elif default is not MISSING_ARG:
                frame_vars[name] = Promise(default, local, is_default=True)
            else:
                frame_vars[name] = MISSING_ARG
        if dispatch is not None:
            frame_vars['.Generic'] = mk_str([dispatch.generic])
            frame_vars['.Class'] = mk_str(dispatch.classes[dispatch.position:-1])
        frame = Frame(f, local, call, caller, len(self.frames) + 1, supplied, assigned,
                      dispatch=dispatch)
        self.frames.append(frame)
        try:
            try:
                result = self.eval(f.body, local)
            except ReturnSignal as signal:
                if signal.env is not local:
                    raise
                result = signal.value
                self.visible = signal.visible
            except (BreakSignal, NextSignal):
                raise RError("no loop for break/next, jumping to top level", None)
            except RecursionError:
                raise RError(RECURSION_MESSAGE, None)
            except RError as err:
                if err.call is CALL_PENDING:
                    err.call = call
                if frame.on_exit and not err.reported and not self.handles('error'):
                    self.report_error(err)
                raise
        finally:
            if frame.on_exit:
                self.run_on_exit(frame)
            self.frames.pop()
        return result

    def run_on_exit(self, frame: Frame) -> None:
        visible = self.visible
        actions, frame.on_exit = frame.on_exit, []
        for expr in actions:
            self.eval(expr, frame.env)
        self.visible = visible

    # builtins

    def apply_builtin(self, f: Builtin, supplied: Supplied, call: Call, env: Environment,
                      internal: bool = False) -> Any:
        if f.special:
            matched, dots, _ = self.match_args(f.formals, supplied, call)
        else:
            for _, item in supplied:
                if isinstance(item, Promise):
                    self.force(item)
            if f.generic and not internal:
                from .dispatch import NOT_DISPATCHED, dispatch_internal
                result = dispatch_internal(self, f, supplied, call, env)
                if result is not NOT_DISPATCHED:
                    return result
            matched, dots, _ = self.match_args(f.formals, supplied, call)
            matched = {k: self.force(v) for k, v in matched.items()}
            dots = [(name, self.force(v)) for name, v in dots]
        args = CallArgs(self, call, env, matched, dots)
        self.builtin_calls.append((call, env))
        self.visible = True
        try:
            result = f.impl(args)
        except RError as err:
            if err.call is CALL_PENDING:
                err.call = call
            raise
        finally:
            self.builtin_calls.pop()
        if f.visibility == 'off':
            self.visible = False
        elif f.visibility == 'on':
            self.visible = True
        return result

    def apply_form(self, f: Builtin, call: Call, env: Environment) -> Any:
        try:
            return f.impl(self, call, env)
        except RError as err:
            if err.call is CALL_PENDING:
                err.call = call
            raise

    # frames

    def frame_for_env(self, env: Environment) -> Optional[Frame]:
        for frame in reversed(self.frames):
            if frame.env is env:
                return frame
        return None

    def call_for_env(self, env: Environment) -> Optional[Call]:
        frame = self.frame_for_env(env)
        return frame.call if frame is not None else None

    def parent_frame(self, env: Environment, n: int = 1) -> Environment:
        for _ in range(n):
            frame = self.frame_for_env(env)
            if frame is None:
                return self.global_env
            env = frame.caller
        return env

    def dots_of(self, env: Environment) -> DotsValue:
        holder = env.find('...')
        binding = holder.frame['...'] if holder is not None else None
        if not isinstance(binding, DotsValue):
            raise RError("incorrect context: the current call has no '...' to look in")
        return binding

    def dots_element(self, env: Environment, k: int) -> Any:
        dots = self.dots_of(env)
        if k < 1 or k > len(dots.items):
            raise RError(f"the ... list contains fewer than {k} elements"
                         if k > 0 else "indexing '...' with non-positive index 0")
        return self.force(dots.items[k - 1][1])

    # conditions

    def handles(self, kind: str) -> bool:
        return any(kind in entry.kinds for entry in self.handlers)

    def signal_warning(self, message: str, call: Any = CALL_PENDING) -> None:
        if call is CALL_PENDING:
            call = self.builtin_calls[-1][0] if self.builtin_calls else None
        for entry in reversed(self.handlers):
            if 'muffle' in entry.kinds:
                return
            if 'warning' in entry.kinds:
                raise RWarningCondition(message, call)
        logger.debug("warning queued: %s", message)
        self.pending_warnings.append(PendingWarning(message, call))

    def call_text(self, call: Any) -> Optional[str]:
        if call is None or call is CALL_PENDING:
            return None
        return deparse_one(call)

    def flush_warnings(self) -> None:
        warnings, self.pending_warnings = self.pending_warnings, []
        for w in warnings:
            text = format_condition('Warning', w.message, self.call_text(w.call))
            self.sink.err(wrap_report('Warning', text) + '\n')

    def report_error(self, err: RError) -> None:
        self.flush_warnings()
        call = None if err.call is CALL_PENDING else err.call
        text = format_condition('Error', err.message, self.call_text(call))
        self.sink.err(wrap_report('Error', text) + '\n')
        err.reported = True

    def report_syntax_error(self, err: RSyntaxError) -> None:
        self.sink.err(format_condition('Error', err.top_level_message(), None) + '\n')

    def option_true(self, name: str) -> bool:
        value = self.options.get(name)
        return isinstance(value, Vector) and value.length() > 0 and not value.na[0] and bool(value.data[0])

    # top level

    def print_value(self, value: Any, env: Optional[Environment] = None) -> None:
        """Print through the ``print`` generic, as auto-printing does."""
        env = env or self.global_env
        if isinstance(value, RObject) and value.is_object():
            printer = self.find_function('print', self.base_env)
            call = Call(Symbol('print'), [Arg(None, Symbol('x'))])
            self.apply_function(printer, [(None, Promise.of_value(value, Symbol('x')))], call, env)
            return
        for line in self.printer.render(value):
            self.sink.out(line + '\n')

    def on_eval_stack(self, fn: Callable[..., Any], *args: Any) -> Any:
        """Call ``fn`` on a worker thread with a stack deep enough for the recursion limit.

        Exceptions cross back to the calling thread. An interrupt while waiting
        is forwarded to the evaluator, which raises it at the next ``eval``.
        """
        if threading.current_thread().name == EVAL_THREAD_NAME:
            return fn(*args)
        outcome: Dict[str, Any] = {}

        def target():
            try:
                outcome['value'] = fn(*args)
            except BaseException as exc:
                outcome['error'] = exc

        try:
            previous = threading.stack_size(EVAL_STACK_BYTES)
        except (ValueError, RuntimeError):
            logger.debug("cannot size the evaluation stack; evaluating in place")
            return fn(*args)
        try:
            worker = threading.Thread(target=target, name=EVAL_THREAD_NAME, daemon=True)
            worker.start()
        except RuntimeError:
            logger.debug("cannot start the evaluation thread; evaluating in place")
            return fn(*args)
        finally:
            threading.stack_size(previous)
        while True:
            try:
                worker.join()
                break
            except KeyboardInterrupt:
                self.interrupt_pending = True
        self.interrupt_pending = False
        if 'error' in outcome:
            raise outcome['error']
        return outcome.get('value')

    def eval_toplevel(self, expr: Any, auto_print: bool = True) -> bool:
        """Evaluate one top-level expression; returns False when it signalled an error."""
        return self.on_eval_stack(self._eval_toplevel, expr, auto_print)

    def _eval_toplevel(self, expr: Any, auto_print: bool) -> bool:
        token = set_warning_sink(self)
        ok = True
        try:
            self.visible = True
            try:
                value = self.eval(expr, self.global_env)
            except ReturnSignal as signal:
                value = signal.value
            if auto_print and self.visible:
                self.print_value(value)
        except RError as err:
            ok = False
            if not err.reported:
                self.report_error(err)
        except RWarningCondition as cond:
            ok = False
            self.report_error(RError(cond.message, cond.call))
        except (BreakSignal, NextSignal):
            ok = False
            self.report_error(RError("no loop for break/next, jumping to top level", None))
        except RecursionError:
            ok = False
            self.frames.clear()
            self.report_error(RError(RECURSION_MESSAGE, None))
        except QuitSignal:
            self.flush_warnings()
            raise
        finally:
            self.builtin_calls.clear()
            self.handlers.clear()
            reset_warning_sink(token)
        self.flush_warnings()
        return ok

    def run_source(self, source: str, auto_print: bool = True) -> bool:
        """Parse and evaluate every statement; stop at the first error."""
        try:
            exprs = parse_program(source)
        except RSyntaxError as err:
            self.report_syntax_error(err)
            return False
        for expr in exprs:
            if not self.eval_toplevel(expr, auto_print):
                return False
        return True

    def run_prelude(self, source: str) -> bool:
        """Evaluate R source directly in the base environment."""
        try:
            for expr in parse_program(source):
                self.eval(expr, self.base_env)
        except RError as err:
            logger.error("prelude failed: %s", err.message)
            return False
        return True
