"""Operators, elementwise mathematics and summaries."""
import math
from typing import List, Optional

import numpy as np

from ..core import arith
from ..core.coercion import coerce_vector
from ..core.conditions import RError, warn
from ..core.frames import CallArgs
from ..core.indexing import subset
from ..core.values import NULL, RObject, Vector, mk_double, mk_int, mk_logical
from .helpers import flag, int_arg
from .registry import builtin


def _operands(args: CallArgs):
    return args.get('e1', NULL), args.get('e2')


def _make_arith(op: str):
    @builtin(op, signature='e1, e2', generic='self', group='Ops')
    def do_arith(args: CallArgs):
        x, y = _operands(args)
        if y is None:
            if op in ('+', '-'):
                return arith.unary_minus(x, op)
            raise RError("invalid unary operator")
        return arith.arith(op, x, y)
    return do_arith


def _make_compare(op: str):
    @builtin(op, signature='e1, e2', generic='self', group='Ops')
    def do_compare(args: CallArgs):
        x, y = _operands(args)
        if y is None:
            raise RError("invalid unary operator")
        return arith.compare(op, x, y)
    return do_compare


def _make_logic(op: str):
    @builtin(op, signature='e1, e2', generic='self', group='Ops')
    def do_logic(args: CallArgs):
        x, y = _operands(args)
        if y is None:
            raise RError("invalid unary operator")
        return arith.logic(op, x, y)
    return do_logic


for _op in arith.ARITH_OPS:
    _make_arith(_op)
for _op in arith.COMPARE_OPS:
    _make_compare(_op)
for _op in arith.LOGIC_OPS:
    _make_logic(_op)


@builtin('!', signature='x', generic='self', group='Ops')
def do_not(args: CallArgs):
    return arith.logical_not(args.get('x', NULL))


@builtin('xor', signature='x, y')
def do_xor(args: CallArgs):
    return arith.xor(args.get('x', NULL), args.get('y', NULL))


# elementwise mathematics

MATH_FUNCTIONS = ('abs', 'sqrt', 'exp', 'floor', 'ceiling', 'trunc', 'log2', 'log10', 'log1p',
                  'expm1', 'sin', 'cos', 'tan', 'asin', 'acos', 'atan', 'sinh', 'cosh', 'tanh')


def _make_math(name: str):
    @builtin(name, signature='x', generic='self')
    def do_math(args: CallArgs):
        return arith.math_unary(name, args.get('x', NULL))
    return do_math


for _name in MATH_FUNCTIONS:
    _make_math(_name)


def _digits(args: CallArgs, default: int) -> int:
    value = args.get('digits')
    if value is None:
        return default
    d = coerce_vector(value, 'double').element(0)
    if d is None or math.isnan(d):
        raise RError("invalid second argument")
    return int(d)


@builtin('round', signature='x, digits = 0', generic='self')
def do_round(args: CallArgs):
    return arith.math_unary('round', args.get('x', NULL), digits=_digits(args, 0))


@builtin('signif', signature='x, digits = 6', generic='self')
def do_signif(args: CallArgs):
    return arith.math_unary('signif', args.get('x', NULL), digits=_digits(args, 6))


@builtin('log', signature='x, base = exp(1)', generic='self')
def do_log(args: CallArgs):
    base = args.get('base')
    b = None if base is None else coerce_vector(base, 'double').element(0)
    return arith.math_unary('log', args.get('x', NULL), base=b)


# summaries

def _make_summary(kind: str):
    @builtin(kind, signature='..., na.rm = FALSE', generic='self')
    def do_summary(args: CallArgs):
        return arith.aggregate(kind, args.dot_values(), flag(args, 'na.rm', False))
    return do_summary


for _kind in ('sum', 'prod', 'min', 'max'):
    _make_summary(_kind)


@builtin('range', signature='..., na.rm = FALSE', generic='self')
def do_range(args: CallArgs):
    na_rm = flag(args, 'na.rm', False)
    low = arith.aggregate('min', args.dot_values(), na_rm)
    high = arith.aggregate('max', args.dot_values(), na_rm)
    return Vector(low.rtype, np.concatenate([low.data, coerce_vector(high, low.rtype).data]),
                  np.concatenate([low.na, high.na]))


@builtin('mean', signature='x, ...', generic='self')
def do_mean(args: CallArgs):
    na_rm = any(name == 'na.rm' and bool(coerce_vector(v, 'logical').element(0))
                for name, v in args.dots)
    return arith.mean(args.get('x', NULL), na_rm)


def _numeric_values(x: RObject, na_rm: bool, fname: str) -> Optional[np.ndarray]:
    """Finite-or-NaN doubles of ``x``; None when an NA remains."""
    if not isinstance(x, Vector) or x.rtype not in ('logical', 'integer', 'double'):
        raise RError("need numeric data" if fname == 'median' else "is.atomic(x) is not TRUE")
    xd = coerce_vector(x, 'double')
    data = xd.data
    missing = np.isnan(data)
    if bool(np.any(missing)):
        if not na_rm:
            return None
        data = data[~missing]
    return data


@builtin('median', signature='x, na.rm = FALSE, ...', generic='self')
def do_median(args: CallArgs):
    x = args.get('x', NULL)
    data = _numeric_values(x, flag(args, 'na.rm', False), 'median')
    integral = isinstance(x, Vector) and x.rtype in ('logical', 'integer')
    if data is None:
        return mk_int([None]) if integral else mk_double([None])
    n = len(data)
    if n == 0:
        return mk_int([None]) if integral else mk_double([None])
    ordered = np.sort(data)
    half = n // 2
    if n % 2:
        value = float(ordered[half])
        return mk_int([int(value)]) if integral else mk_double([value])
    return mk_double([(float(ordered[half - 1]) + float(ordered[half])) / 2])


def variance(data: np.ndarray) -> Optional[float]:
    n = len(data)
    if n < 2:
        return None
    centre = float(np.mean(data))
    return float(np.sum((data - centre) ** 2)) / (n - 1)


@builtin('var', signature='x, y = NULL, na.rm = FALSE, use')
def do_var(args: CallArgs):
    data = _numeric_values(args.get('x', NULL), flag(args, 'na.rm', False), 'var')
    return mk_double([None if data is None else variance(data)])


@builtin('sd', signature='x, na.rm = FALSE')
def do_sd(args: CallArgs):
    data = _numeric_values(args.get('x', NULL), flag(args, 'na.rm', False), 'sd')
    v = None if data is None else variance(data)
    return mk_double([None if v is None else math.sqrt(v)])


@builtin('diff', signature='x, lag = 1L, differences = 1L, ...', generic='self')
def do_diff(args: CallArgs):
    x = args.get('x', NULL)
    if not isinstance(x, Vector):
        raise RError("'x' must be a vector")
    lag = int_arg(args, 'lag', 1)
    times = int_arg(args, 'differences', 1)
    if lag is None or lag < 1 or times is None or times < 1:
        raise RError("'lag' and 'differences' must be integers >= 1")
    for _ in range(times):
        n = x.length()
        if lag >= n:
            return Vector(x.rtype, x.data[:0], x.na[:0])
        head = subset(x, [mk_int(range(lag + 1, n + 1))])
        tail = subset(x, [mk_int(range(1, n - lag + 1))])
        x = arith.arith('-', head.with_attributes(None), tail.with_attributes(None))
    return x


def _make_cumulant(kind: str):
    @builtin(kind, signature='x', generic='self')
    def do_cumulate(args: CallArgs):
        return arith.cumulate(kind, args.get('x', NULL))
    return do_cumulate


for _kind in ('cumsum', 'cumprod', 'cummin', 'cummax'):
    _make_cumulant(_kind)


def _make_parallel(kind: str):
    @builtin(kind, signature='..., na.rm = FALSE')
    def do_parallel(args: CallArgs):
        values = args.dot_values()
        if not values:
            raise RError("no arguments")
        na_rm = flag(args, 'na.rm', False)
        result = values[0]
        for value in values[1:]:
            result = arith.pairwise_extreme(kind, result, value, na_rm)
        return result
    return do_parallel


for _kind in ('pmin', 'pmax'):
    _make_parallel(_kind)


# NA and finiteness tests

def _keep_structure(x: RObject) -> Optional[dict]:
    attrs = {k: v for k, v in (x.attributes or {}).items() if k in arith.STRUCTURAL}
    return attrs or None


@builtin('is.na', signature='x', generic='self')
def do_is_na(args: CallArgs):
    x = args.get('x', NULL)
    if x is NULL:
        return mk_logical([])
    if not isinstance(x, Vector):
        warn(f"is.na() applied to non-(list or vector) of type '{x.rtype}'")
        return mk_logical([False])
    if x.rtype in ('list', 'expression'):
        flags = [isinstance(v, Vector) and v.is_atomic() and v.length() == 1 and bool(v.na[0])
                 for v in x.data]
        return mk_logical(flags, _keep_structure(x))
    missing = x.na | np.isnan(x.data) if x.rtype == 'double' else x.na.copy()
    return Vector('logical', missing, np.zeros(x.length(), dtype=bool), _keep_structure(x))


def _double_test(args: CallArgs, test, default: bool) -> Vector:
    x = args.get('x', NULL)
    if not isinstance(x, Vector):
        return mk_logical([])
    if x.rtype == 'double':
        with np.errstate(invalid='ignore'):
            data = test(x.data) & ~x.na
        return Vector('logical', np.asarray(data, dtype=bool), np.zeros(x.length(), dtype=bool),
                      _keep_structure(x))
    if x.rtype in ('logical', 'integer'):
        values = ~x.na if default else np.zeros(x.length(), dtype=bool)
        return Vector('logical', values, np.zeros(x.length(), dtype=bool), _keep_structure(x))
    return Vector('logical', np.zeros(x.length(), dtype=bool), np.zeros(x.length(), dtype=bool),
                  _keep_structure(x))


@builtin('is.nan', signature='x')
def do_is_nan(args: CallArgs):
    return _double_test(args, np.isnan, False)


@builtin('is.finite', signature='x')
def do_is_finite(args: CallArgs):
    return _double_test(args, np.isfinite, True)


@builtin('is.infinite', signature='x')
def do_is_infinite(args: CallArgs):
    return _double_test(args, np.isinf, False)


def _logical_values(values: List[RObject]) -> List[Vector]:
    out = []
    for value in values:
        if value is NULL:
            continue
        if not isinstance(value, Vector) or value.rtype not in ('logical', 'integer', 'double'):
            kind = getattr(value, 'rtype', 'unknown')
            raise RError(f"invalid 'type' ({kind}) of argument")
        if value.rtype == 'double':
            warn("coercing argument of type 'double' to logical")
        out.append(coerce_vector(value, 'logical'))
    return out


@builtin('all', signature='..., na.rm = FALSE')
def do_all(args: CallArgs):
    values = _logical_values(args.dot_values())
    na_rm = flag(args, 'na.rm', False)
    seen_na = False
    for v in values:
        if bool(np.any(~v.data & ~v.na)):
            return mk_logical([False])
        seen_na = seen_na or bool(np.any(v.na))
    return mk_logical([None if seen_na and not na_rm else True])


@builtin('any', signature='..., na.rm = FALSE')
def do_any(args: CallArgs):
    values = _logical_values(args.dot_values())
    na_rm = flag(args, 'na.rm', False)
    seen_na = False
    for v in values:
        if bool(np.any(v.data & ~v.na)):
            return mk_logical([True])
        seen_na = seen_na or bool(np.any(v.na))
    return mk_logical([None if seen_na and not na_rm else False])