"""Session state: options and the linear congruential generator."""
import logging
from typing import Any, List, Optional, Tuple

from ..config import OPTION_RANGES
from ..core.coercion import as_strings, coerce_vector
from ..core.conditions import RError
from ..core.frames import CallArgs
from ..core.values import NULL, Vector, mk_double, mk_int, mk_list, mk_logical
from .helpers import int_arg, str_arg
from .registry import builtin


logger = logging.getLogger(__name__)

LCG_MULTIPLIER = 75
LCG_INCREMENT = 74
LCG_MODULUS = 2 ** 16 + 1


def _option_updates(args: CallArgs) -> Tuple[List[Tuple[str, Any]], List[str]]:
    """Named values to set and bare names to query."""
    updates: List[Tuple[str, Any]] = []
    queries: List[str] = []
    for name, value in args.dots:
        if name:
            updates.append((name, value))
        elif isinstance(value, Vector) and value.rtype == 'list':
            names = value.names() or []
            updates.extend((n, v) for n, v in zip(names, value.data) if n)
        elif isinstance(value, Vector) and value.rtype == 'character':
            queries.extend(n for n in as_strings(value) if n is not None)
        elif value is not NULL:
            raise RError("invalid argument")
    return updates, queries


def _checked_option(name: str, value: Any) -> Any:
    bounds = OPTION_RANGES.get(name)
    if bounds is None or value is NULL:
        return value
    low, high = bounds
    number = None
    if isinstance(value, Vector) and value.rtype in ('integer', 'double') and value.length() == 1:
        number = value.element(0)
    if number is None or number != number or not low <= number <= high or number != int(number):
        raise RError(f"invalid '{name}' parameter, allowed {low}...{high}")
    return mk_int([int(number)])


@builtin('options', signature='...', visibility='impl')
def do_options(args: CallArgs):
    interp = args.interp
    options = interp.options
    updates, queries = _option_updates(args)
    updates = [(name, _checked_option(name, value)) for name, value in updates]
    if not updates and not queries:
        interp.visible = True
        names = sorted(options)
        return mk_list([options[n] for n in names], names)
    if queries and not updates:
        interp.visible = True
        return mk_list([options.get(n, NULL) for n in queries], queries)
    old = []
    for name, value in updates:
        old.append((name, options.get(name, NULL)))
        if value is NULL:
            options.pop(name, None)
        else:
            options[name] = value
        logger.debug("option %s set", name)
    interp.visible = False
    return mk_list([v for _, v in old], [n for n, _ in old])


@builtin('getOption', signature='x, default = NULL')
def do_get_option(args: CallArgs):
    name = str_arg(args, 'x')
    if name is None:
        raise RError("'x' must be a character string")
    return args.interp.options.get(name, args.get('default', NULL))


def lcg_step(state: int, a: int = LCG_MULTIPLIER, c: int = LCG_INCREMENT, m: int = LCG_MODULUS) -> int:
    return (a * state + c) % m


def _parameter(args: CallArgs, name: str, default: int) -> int:
    value = int_arg(args, name, default)
    if value is None:
        raise RError(f"invalid '{name}' argument")
    return value


@builtin('lcg_next', signature='state, a = 75, c = 74, m = 65537')
def do_lcg_next(args: CallArgs):
    states = coerce_vector(args.get('state', NULL), 'double').values()
    a = _parameter(args, 'a', LCG_MULTIPLIER)
    c = _parameter(args, 'c', LCG_INCREMENT)
    m = _parameter(args, 'm', LCG_MODULUS)
    if m <= 0:
        raise RError("'m' must be positive")
    out: List[Optional[float]] = []
    for state in states:
        out.append(None if state is None else float(lcg_step(int(state), a, c, m)))
    return mk_double(out)


@builtin('lcg', signature='n, seed')
def do_lcg(args: CallArgs):
    """``n`` successive states after ``seed``; without a seed the sequence continues."""
    interp = args.interp
    n = _parameter(args, 'n', 1)
    if n < 0:
        raise RError("invalid 'n' argument")
    if args.has('seed'):
        state = _parameter(args, 'seed', 0)
    elif interp.lcg_state is not None:
        state = interp.lcg_state
    else:
        raise RError("no generator state; supply 'seed'")
    out = []
    for _ in range(n):
        state = lcg_step(state)
        out.append(float(state))
    interp.lcg_state = state
    return mk_double(out)


def options_from_config(config: dict) -> dict:
    """Initial ``options()`` values seeded from the configuration file."""
    return {
        'digits': mk_int([int(config.get('digits', 7))]),
        'width': mk_int([int(config.get('width', 80))]),
        'warnPartialMatchArgs': mk_logical([bool(config.get('warn_partial_match_args', False))]),
    }
