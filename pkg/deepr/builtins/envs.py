"""Environment builtins: creation, reflection and binding access."""
import logging
from typing import Any, List

from ..core.coercion import as_strings
from ..core.conditions import RError
from ..core.environments import Environment, as_environment, env_names, env_remove
from ..core.frames import CallArgs
from ..core.values import NULL, Promise, Vector, is_function, mk_list, mk_str
from ..language.ast import Symbol
from .helpers import flag, r_bool, str_arg
from .registry import builtin


logger = logging.getLogger(__name__)


def environment_arg(args: CallArgs, name: str = 'envir') -> Environment:
    """An environment argument; defaults to the calling environment."""
    value = args.get(name)
    if value is None:
        return args.env
    return to_environment(args.interp, value)


def to_environment(interp, value: Any) -> Environment:
    if isinstance(value, Environment):
        return value
    if isinstance(value, Vector) and value.rtype in ('integer', 'double') and value.length() == 1:
        pos = int(value.data[0])
        if pos == -1:
            return interp.global_env
        env = interp.global_env
        for _ in range(pos - 1):
            env = env.parent
            if env is None:
                raise RError("invalid 'pos' argument")
        return env
    if isinstance(value, Vector) and value.rtype == 'character' and value.length() == 1:
        name = value.data[0]
        if name in ('.GlobalEnv', 'R_GlobalEnv'):
            return interp.global_env
        if name in ('package:base', 'base'):
            return interp.base_env
        raise RError(f'no item called "{name}" on the search list')
    if isinstance(value, Vector) and value.rtype == 'list':
        return as_environment(value, interp.empty_env)
    raise RError("invalid 'envir' argument")


@builtin('new.env', signature='hash = TRUE, parent = parent.frame(), size = 29L')
def do_new_env(args: CallArgs):
    parent = args.get('parent')
    if parent is not None and not isinstance(parent, Environment):
        raise RError("'enclos' must be an environment")
    return Environment(parent or args.env)


@builtin('globalenv', signature='')
def do_globalenv(args: CallArgs):
    return args.interp.global_env


@builtin('emptyenv', signature='')
def do_emptyenv(args: CallArgs):
    return args.interp.empty_env


@builtin('baseenv', signature='')
def do_baseenv(args: CallArgs):
    return args.interp.base_env


@builtin('topenv', signature='envir = parent.frame()')
def do_topenv(args: CallArgs):
    env = environment_arg(args)
    interp = args.interp
    for candidate in env.chain():
        if candidate is interp.global_env or candidate is interp.base_env:
            return candidate
    return interp.global_env


@builtin('parent.env', signature='env')
def do_parent_env(args: CallArgs):
    env = args.get('env')
    if not isinstance(env, Environment):
        raise RError("argument is not an environment")
    if env.parent is None:
        raise RError("the empty environment has no parent")
    return env.parent


@builtin('parent.env<-', signature='env, value')
def do_set_parent_env(args: CallArgs):
    env = args.get('env')
    value = args.get('value')
    if not isinstance(env, Environment):
        raise RError("argument is not an environment")
    if not isinstance(value, Environment):
        raise RError("'parent' is not an environment")
    if env is args.interp.empty_env:
        raise RError("can not set the parent of the empty environment")
    if any(candidate is env for candidate in value.chain()):
        raise RError("cycles in parent environments are not allowed")
    env.parent = value
    return env


@builtin('environmentName', signature='env')
def do_environment_name(args: CallArgs):
    env = args.get('env')
    if isinstance(env, Environment) and env.name:
        return mk_str([env.name])
    return mk_str([''])


@builtin('as.environment', signature='x')
def do_as_environment(args: CallArgs):
    return to_environment(args.interp, args.get('x', NULL))


@builtin('is.environment', signature='x')
def do_is_environment(args: CallArgs):
    return r_bool(isinstance(args.get('x'), Environment))


def _name_arg(args: CallArgs) -> str:
    name = str_arg(args, 'x')
    if name is None:
        raise RError("invalid first argument")
    return name


def _find_binding(interp, env: Environment, name: str, mode: str, inherits: bool) -> Any:
    """The bound value or None; ``mode='function'`` skips other values."""
    chain = env.chain() if inherits else [env]
    for frame_env in chain:
        if name in frame_env.frame:
            value = interp.force(frame_env.frame[name])
            if mode == 'function' and not is_function(value):
                continue
            return value
    return None


@builtin('get', signature='x, pos = -1L, envir = as.environment(pos), mode = "any", inherits = TRUE')
def do_get(args: CallArgs):
    name = _name_arg(args)
    env = environment_arg(args) if args.has('envir') else \
        (to_environment(args.interp, args.get('pos')) if args.has('pos') else args.env)
    mode = str_arg(args, 'mode', 'any')
    value = _find_binding(args.interp, env, name, mode, flag(args, 'inherits', True))
    if value is None:
        if mode == 'function':
            raise RError(f"object '{name}' of mode 'function' was not found")
        raise RError(f"object '{name}' not found")
    return value


@builtin('get0', signature='x, envir = pos.to.env(-1L), mode = "any", inherits = TRUE, ifnotfound = NULL')
def do_get0(args: CallArgs):
    name = _name_arg(args)
    value = _find_binding(args.interp, environment_arg(args), name, str_arg(args, 'mode', 'any'),
                          flag(args, 'inherits', True))
    return args.get('ifnotfound', NULL) if value is None else value


@builtin('mget', signature='x, envir = as.environment(-1L), mode = "any", inherits = FALSE')
def do_mget(args: CallArgs):
    env = environment_arg(args)
    names = [n for n in as_strings(args.get('x', NULL)) if n is not None]
    values = []
    for name in names:
        value = _find_binding(args.interp, env, name, 'any', flag(args, 'inherits', False))
        if value is None:
            raise RError(f"value for '{name}' not found")
        values.append(value)
    return mk_list(values, names)


@builtin('exists', signature='x, where = -1, envir = parent.frame(), frame, mode = "any", inherits = TRUE')
def do_exists(args: CallArgs):
    name = _name_arg(args)
    env = environment_arg(args) if args.has('envir') else \
        (to_environment(args.interp, args.get('where')) if args.has('where') else args.env)
    mode = str_arg(args, 'mode', 'any')
    return r_bool(_find_binding(args.interp, env, name, mode, flag(args, 'inherits', True)) is not None)


@builtin('assign', signature='x, value, pos = -1, envir = as.environment(pos), inherits = FALSE, immediate = TRUE',
         visibility='off')
def do_assign(args: CallArgs):
    name = _name_arg(args)
    value = args.get('value', NULL)
    env = environment_arg(args) if args.has('envir') else \
        (to_environment(args.interp, args.get('pos')) if args.has('pos') else args.env)
    if flag(args, 'inherits', False):
        target = env.find(name)
        if target is not None and target is not args.interp.empty_env:
            env = target
    env.assign(name, value)
    return value


@builtin('rm', signature='..., list = character(), envir = as.environment(pos), inherits = FALSE',
         special=True, visibility='off')
def do_rm(args: CallArgs):
    interp = args.interp
    names: List[str] = []
    for _, item in args.dots:
        expr = item.expr if isinstance(item, Promise) else item
        if isinstance(expr, Symbol):
            names.append(expr.name)
        elif isinstance(expr, Vector) and expr.rtype == 'character' and expr.length() == 1:
            names.append(expr.data[0])
        else:
            raise RError("... must contain names or character strings")
    if args.has('list'):
        names.extend(n for n in as_strings(interp.force(args.values['list'])) if n is not None)
    env = to_environment(interp, interp.force(args.values['envir'])) if args.has('envir') else args.env
    logger.debug("rm %s", names)
    env_remove(env, names)
    return NULL


@builtin('ls', 'objects', signature='name, pos = -1L, envir = as.environment(pos), all.names = FALSE, pattern, sorted = TRUE')
def do_ls(args: CallArgs):
    if args.has('name'):
        env = to_environment(args.interp, args.get('name'))
    else:
        env = environment_arg(args)
    all_names = flag(args, 'all.names', False)
    if not flag(args, 'sorted', True):
        return mk_str(env.names(all_names, sort=False))
    return env_names(env, all_names)


@builtin('sys.frames', signature='')
def do_sys_frames(args: CallArgs):
    return mk_list([frame.env for frame in args.interp.frames]) if args.interp.frames else NULL

