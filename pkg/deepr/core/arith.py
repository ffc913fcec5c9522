"""Vectorised arithmetic, comparison and logic with recycling and NA rules."""
import math
from typing import List, Optional, Tuple

import numpy as np

from .coercion import coerce_vector, element_strings
from .conditions import RError, warn
from .values import (INT_MAX, INT_NA, NULL, RObject, Vector, empty_vector, mk_double, mk_int,
                     mk_logical, na_vector)


ARITH_OPS = ('+', '-', '*', '/', '^', '%%', '%/%')
COMPARE_OPS = ('<', '>', '<=', '>=', '==', '!=')
LOGIC_OPS = ('&', '|')
STRUCTURAL = ('names', 'dim', 'dimnames')

RECYCLE_WARNING = "longer object length is not a multiple of shorter object length"


def recycle_plan(n1: int, n2: int) -> Tuple[int, bool]:
    """Output length and whether the shorter operand tiles unevenly."""
    if n1 == 0 or n2 == 0:
        return 0, False
    n = max(n1, n2)
    return n, n % min(n1, n2) != 0


def _merge_attributes(x: RObject, y: RObject, n: int, only: Optional[Tuple[str, ...]] = None):
    def pick(v):
        attrs = v.attributes or {}
        if only is not None:
            attrs = {k: a for k, a in attrs.items() if k in only}
        return attrs
    xa = pick(x) if isinstance(x, Vector) else {}
    ya = pick(y) if isinstance(y, Vector) else {}
    nx = x.length() if isinstance(x, Vector) else 0
    ny = y.length() if isinstance(y, Vector) else 0
    if n == 0:
        return None
    if nx == ny:
        merged = dict(ya)
        merged.update(xa)
        return merged or None
    if nx > ny:
        return dict(xa) or None
    return dict(ya) or None


def _numeric_operand(v: RObject, what: str = "binary operator") -> Vector:
    if v is NULL:
        return empty_vector('integer')
    if not isinstance(v, Vector) or v.rtype not in ('logical', 'integer', 'double'):
        raise RError(f"non-numeric argument to {what}")
    if v.rtype == 'logical':
        return coerce_vector(v, 'integer')
    return v


def _recycled(v: Vector, n: int) -> Tuple[np.ndarray, np.ndarray]:
    if v.length() == n:
        return v.data, v.na
    idx = np.arange(n) % v.length()
    return v.data[idx], v.na[idx]


def _as_float(v: Vector) -> Vector:
    return v if v.rtype == 'double' else coerce_vector(v, 'double')


def _int_result(values: np.ndarray, na: np.ndarray, attrs) -> Vector:
    overflow = ~na & ((values > INT_MAX) | (values < -INT_MAX))
    if bool(np.any(overflow)):
        warn("NAs produced by integer overflow")
    na = na | overflow
    out = np.where(na, INT_NA, values).astype(np.int32)
    return Vector('integer', out, na, attrs)


def _double_result(values: np.ndarray, na_in: np.ndarray, attrs) -> Vector:
    na = na_in & np.isnan(values)
    return Vector('double', values.astype(np.float64), na, attrs)


def arith(op: str, x: RObject, y: RObject) -> Vector:
    """Elementwise ``x op y`` with recycling, type promotion and overflow to NA."""
    xv = _numeric_operand(x)
    yv = _numeric_operand(y)
    n, uneven = recycle_plan(xv.length(), yv.length())
    if uneven:
        warn(RECYCLE_WARNING)
    attrs = _merge_attributes(x, y, n)
    both_int = xv.rtype == 'integer' and yv.rtype == 'integer'
    if n == 0:
        rtype = 'integer' if both_int and op not in ('/', '^') else 'double'
        return Vector(rtype, empty_vector(rtype).data, np.zeros(0, dtype=bool), attrs)
    if both_int and op not in ('/', '^'):
        a, ana = _recycled(xv, n)
        b, bna = _recycled(yv, n)
        a = a.astype(np.int64)
        b = b.astype(np.int64)
        na = ana | bna
        with np.errstate(all='ignore'):
            if op == '+':
                res = a + b
            elif op == '-':
                res = a - b
            elif op == '*':
                res = a * b
            else:
                zero = b == 0
                safe = np.where(zero, 1, b)
                res = np.mod(a, safe) if op == '%%' else np.floor_divide(a, safe)
                na = na | zero
        res = np.where(na, 0, res)
        return _int_result(res, na, attrs)
    a, ana = _recycled(_as_float(xv), n)
    b, bna = _recycled(_as_float(yv), n)
    with np.errstate(all='ignore'):
        if op == '+':
            res = a + b
        elif op == '-':
            res = a - b
        elif op == '*':
            res = a * b
        elif op == '/':
            res = a / b
        elif op == '^':
            res = np.power(a, b)
            res = np.where((a == 1) | (b == 0), 1.0, res)
        elif op == '%%':
            res = np.where(b == 0, np.nan, np.mod(a, np.where(b == 0, 1, b)))
        elif op == '%/%':
            res = np.floor_divide(a, b)
        else:
            raise RError(f"invalid operator '{op}'")
    return _double_result(res, ana | bna, attrs)


def unary_minus(x: RObject, op: str = '-') -> Vector:
    xv = _numeric_operand(x, "unary operator")
    if op == '+':
        return xv if x is not NULL else xv
    if xv.rtype == 'integer':
        data = np.where(xv.na, INT_NA, -xv.data.astype(np.int64)).astype(np.int32)
        return Vector('integer', data, xv.na.copy(), xv.attributes)
    return Vector('double', -xv.data, xv.na.copy(), xv.attributes)


def _comparable(v: RObject, op: str) -> Vector:
    if v is NULL:
        return empty_vector('logical')
    if not isinstance(v, Vector) or not v.is_atomic():
        kind = v.rtype if isinstance(v, RObject) else type(v).__name__
        raise RError(f"comparison ({op}) is possible only for atomic and list types"
                     if kind not in ('list', 'expression') else
                     f"comparison of these types is not implemented")
    return v


_PY_COMPARE = {
    '<': lambda a, b: a < b, '>': lambda a, b: a > b,
    '<=': lambda a, b: a <= b, '>=': lambda a, b: a >= b,
    '==': lambda a, b: a == b, '!=': lambda a, b: a != b,
}


def compare(op: str, x: RObject, y: RObject) -> Vector:
    """Elementwise relational operator; strings compare by code point."""
    xv = _comparable(x, op)
    yv = _comparable(y, op)
    n, uneven = recycle_plan(xv.length(), yv.length())
    if uneven:
        warn(RECYCLE_WARNING)
    attrs = _merge_attributes(x, y, n, STRUCTURAL)
    if n == 0:
        return Vector('logical', np.zeros(0, dtype=bool), np.zeros(0, dtype=bool), attrs)
    fn = _PY_COMPARE[op]
    if 'character' in (xv.rtype, yv.rtype):
        xs = element_strings(xv)
        ys = element_strings(yv)
        out = []
        for i in range(n):
            a = xs[i % len(xs)]
            b = ys[i % len(ys)]
            out.append(None if a is None or b is None else fn(a, b))
        return mk_logical(out, attrs)
    a, ana = _recycled(_as_float(xv), n)
    b, bna = _recycled(_as_float(yv), n)
    with np.errstate(invalid='ignore'):
        res = fn(a, b)
    na = ana | bna | np.isnan(a) | np.isnan(b)
    return Vector('logical', np.where(na, False, res).astype(bool), na, attrs)


def _logical_operand(v: RObject, op: str) -> Vector:
    if v is NULL:
        return empty_vector('logical')
    if not isinstance(v, Vector) or v.rtype not in ('logical', 'integer', 'double'):
        raise RError(f"operations are possible only for numeric, logical or complex types")
    return coerce_vector(v, 'logical')


def logic(op: str, x: RObject, y: RObject) -> Vector:
    """Three-valued ``&`` and ``|``: a known FALSE (TRUE) decides ``&`` (``|``)."""
    xv = _logical_operand(x, op)
    yv = _logical_operand(y, op)
    n, uneven = recycle_plan(xv.length(), yv.length())
    if uneven:
        warn(RECYCLE_WARNING)
    attrs = _merge_attributes(x, y, n, STRUCTURAL)
    if n == 0:
        return Vector('logical', np.zeros(0, dtype=bool), np.zeros(0, dtype=bool), attrs)
    a, ana = _recycled(xv, n)
    b, bna = _recycled(yv, n)
    known_a = ~ana
    known_b = ~bna
    if op == '&':
        decided_false = (known_a & ~a) | (known_b & ~b)
        na = ~decided_false & (ana | bna)
        res = ~decided_false & ~na
    else:
        decided_true = (known_a & a) | (known_b & b)
        na = ~decided_true & (ana | bna)
        res = decided_true
    return Vector('logical', res.astype(bool), na.astype(bool), attrs)


def logical_not(x: RObject) -> Vector:
    xv = _logical_operand(x, '!')
    attrs = None
    if isinstance(x, Vector) and x.attributes:
        keep = x.attributes if x.rtype == 'logical' else {
            k: a for k, a in x.attributes.items() if k in STRUCTURAL}
        attrs = keep or None
    return Vector('logical', np.where(xv.na, False, ~xv.data).astype(bool), xv.na.copy(), attrs)


def xor(x: RObject, y: RObject) -> Vector:
    xv = _logical_operand(x, 'xor')
    yv = _logical_operand(y, 'xor')
    n, uneven = recycle_plan(xv.length(), yv.length())
    if uneven:
        warn(RECYCLE_WARNING)
    if n == 0:
        return mk_logical([])
    a, ana = _recycled(xv, n)
    b, bna = _recycled(yv, n)
    na = ana | bna
    return Vector('logical', np.where(na, False, a != b).astype(bool), na,
                  _merge_attributes(x, y, n, STRUCTURAL))


# unary mathematics

_FLOAT_FUNS = {
    'sqrt': np.sqrt, 'exp': np.exp, 'floor': np.floor, 'ceiling': np.ceil, 'trunc': np.trunc,
    'log2': np.log2, 'log10': np.log10, 'log1p': np.log1p, 'expm1': np.expm1,
    'sin': np.sin, 'cos': np.cos, 'tan': np.tan, 'asin': np.arcsin, 'acos': np.arccos,
    'atan': np.arctan, 'sinh': np.sinh, 'cosh': np.cosh, 'tanh': np.tanh,
}


def _nan_check(before_nan: np.ndarray, result: np.ndarray):
    if bool(np.any(np.isnan(result) & ~before_nan)):
        warn("NaNs produced")


def math_unary(fun: str, x: RObject, digits: Optional[float] = None,
               base: Optional[float] = None) -> Vector:
    """Elementwise mathematical function keeping every attribute of ``x``."""
    if not isinstance(x, Vector) or x.rtype not in ('logical', 'integer', 'double'):
        raise RError("non-numeric argument to mathematical function")
    attrs = x.attributes
    if fun == 'abs':
        if x.rtype in ('logical', 'integer'):
            xi = coerce_vector(x, 'integer')
            data = np.where(xi.na, INT_NA, np.abs(xi.data.astype(np.int64))).astype(np.int32)
            return Vector('integer', data, xi.na.copy(), attrs)
        return Vector('double', np.abs(x.data), x.na.copy(), attrs)
    if fun in ('round', 'signif') and x.rtype in ('logical', 'integer'):
        xi = coerce_vector(x, 'integer')
        if fun == 'round' and (digits is None or digits >= 0):
            return Vector('integer', xi.data, xi.na, attrs)
    xd = _as_float(x)
    data = xd.data
    before = np.isnan(data)
    with np.errstate(all='ignore'):
        if fun == 'round':
            result = _round(data, 0 if digits is None else int(digits))
        elif fun == 'signif':
            result = _signif(data, 6 if digits is None else max(int(digits), 1))
        elif fun == 'log':
            result = np.log(data)
            if base is not None:
                result = result / math.log(base)
        elif fun in _FLOAT_FUNS:
            result = _FLOAT_FUNS[fun](data)
        else:
            raise RError(f"could not find function \"{fun}\"")
    if fun in ('sqrt', 'log', 'log2', 'log10', 'log1p', 'asin', 'acos'):
        _nan_check(before, result)
    if fun in ('floor', 'ceiling', 'trunc') and x.rtype == 'integer':
        result = result.astype(np.float64)
    return Vector('double', result, xd.na & np.isnan(result), attrs)


def _round(data: np.ndarray, digits: int) -> np.ndarray:
    if digits == 0:
        return np.round(data)
    return np.array([x if not math.isfinite(x) else round(float(x), digits) for x in data],
                    dtype=np.float64)


def _signif(data: np.ndarray, digits: int) -> np.ndarray:
    return np.array([x if not math.isfinite(x) or x == 0 else float(f'{x:.{digits}g}') for x in data],
                    dtype=np.float64)


# aggregation

def _summary_operands(args: List[RObject], fname: str) -> List[Vector]:
    out = []
    for a in args:
        if a is NULL:
            continue
        if not isinstance(a, Vector) or a.rtype in ('list', 'expression'):
            kind = a.rtype if isinstance(a, RObject) else 'unknown'
            raise RError(f"invalid 'type' ({kind}) of argument")
        if a.rtype == 'character' and fname in ('sum', 'prod'):
            raise RError("invalid 'type' (character) of argument")
        out.append(a)
    return out


def _flatten(values: List[Vector], rtype: str) -> Tuple[np.ndarray, np.ndarray]:
    if not values:
        empty = empty_vector(rtype)
        return empty.data, empty.na
    parts = [coerce_vector(v, rtype) for v in values]
    return np.concatenate([p.data for p in parts]), np.concatenate([p.na for p in parts])


def aggregate(kind: str, args: List[RObject], na_rm: bool = False) -> Vector:
    """``sum``, ``prod``, ``min``, ``max`` over any number of vectors."""
    values = _summary_operands(args, kind)
    types = [v.rtype for v in values]
    if kind in ('sum', 'prod'):
        if kind == 'sum' and all(t in ('logical', 'integer') for t in types):
            data, na = _flatten(values, 'integer')
            if na_rm:
                data = data[~na]
                na = na[~na]
            if bool(np.any(na)):
                return mk_int([None])
            total = int(np.sum(data.astype(np.int64)))
            if abs(total) > INT_MAX:
                warn("integer overflow - use sum(as.numeric(.))")
                return mk_int([None])
            return mk_int([total])
        data, na = _flatten(values, 'double')
        if na_rm:
            keep = ~np.isnan(data)
            data, na = data[keep], na[keep]
        if bool(np.any(na)):
            return mk_double([None])
        return mk_double([float(np.sum(data)) if kind == 'sum' else float(np.prod(data))])
    # min / max
    if 'character' in types:
        rtype = 'character'
    elif 'double' in types:
        rtype = 'double'
    else:
        rtype = 'integer'
    data, na = _flatten(values, rtype)
    if rtype == 'double' and na_rm:
        keep = ~np.isnan(data)
        data, na = data[keep], na[keep]
    elif na_rm:
        data, na = data[~na], na[~na]
    if bool(np.any(na)):
        return na_vector(rtype, 1)
    if rtype == 'double' and bool(np.any(np.isnan(data))):
        return mk_double([math.nan])
    if len(data) == 0:
        if rtype == 'character':
            raise RError(f"no non-missing arguments to {kind}; returning {'Inf' if kind == 'min' else '-Inf'}")
        warn(f"no non-missing arguments to {kind}; returning {'Inf' if kind == 'min' else '-Inf'}")
        return mk_double([math.inf if kind == 'min' else -math.inf])
    if rtype == 'character':
        picked = min(data) if kind == 'min' else max(data)
        return Vector('character', np.array([picked], dtype=object), np.zeros(1, dtype=bool))
    picked = np.min(data) if kind == 'min' else np.max(data)
    if rtype == 'integer':
        return mk_int([int(picked)])
    return mk_double([float(picked)])

def mean(x: RObject, na_rm: bool = False) -> Vector:
    if not isinstance(x, Vector) or x.rtype not in ('logical', 'integer', 'double'):
        warn("argument is not numeric or logical: returning NA")
        return mk_double([None])
    xd = _as_float(x)
    data, na = xd.data, xd.na
    if na_rm:
        keep = ~np.isnan(data)
        data, na = data[keep], na[keep]
    if bool(np.any(na)):
        return mk_double([None])
    n = len(data)
    if n == 0:
        return mk_double([math.nan])
    s = float(np.sum(data)) / n
    if math.isfinite(s):
        s += float(np.sum(data - s)) / n
    return mk_double([s])


def cumulate(kind: str, x: RObject) -> Vector:
    """Prefix scan; the first NA turns every later element into NA."""
    if x is NULL:
        return mk_double([])
    if not isinstance(x, Vector) or x.rtype not in ('logical', 'integer', 'double'):
        if isinstance(x, Vector) and x.rtype == 'character':
            x = coerce_vector(x, 'double')
        else:
            raise RError(f"invalid 'type' of argument")
    names = x.get_attr('names')
    attrs = {'names': names} if names is not None else None
    int_kind = x.rtype in ('logical', 'integer') and kind != 'cumprod'
    n = x.length()
    xv = coerce_vector(x, 'integer' if int_kind else 'double')
    out: List[Optional[float]] = []
    acc = None
    poisoned = False
    for i in range(n):
        if poisoned or xv.na[i]:
            poisoned = True
            out.append(None)
            continue
        v = int(xv.data[i]) if int_kind else float(xv.data[i])
        if not int_kind and math.isnan(v):
            poisoned = True
            out.append(None)
            continue
        if acc is None:
            acc = v
        elif kind == 'cumsum':
            acc = acc + v
        elif kind == 'cumprod':
            acc = acc * v
        elif kind == 'cummin':
            acc = min(acc, v)
        else:
            acc = max(acc, v)
        if int_kind and abs(acc) > INT_MAX:
            warn("integer overflow in 'cumsum'; use 'cumsum(as.numeric(.))'")
            poisoned = True
            out.append(None)
            continue
        out.append(acc)
    if int_kind:
        return mk_int(out, attrs)
    return mk_double(out, attrs)


def pairwise_extreme(kind: str, x: RObject, y: RObject, na_rm: bool = False) -> Vector:
    """``pmin``/``pmax`` of two operands with recycling."""
    xv = _numeric_operand(x, "pmin/pmax")
    yv = _numeric_operand(y, "pmin/pmax")
    n, _ = recycle_plan(xv.length(), yv.length())
    rtype = 'integer' if xv.rtype == yv.rtype == 'integer' else 'double'
    a, ana = _recycled(coerce_vector(xv, rtype), n)
    b, bna = _recycled(coerce_vector(yv, rtype), n)
    pick = np.minimum if kind == 'pmin' else np.maximum
    out = pick(a, b)
    if na_rm:
        out = np.where(ana, b, np.where(bna, a, out))
        na = ana & bna
    else:
        na = ana | bna
    attrs = x.attributes if isinstance(x, Vector) and xv.length() == n else None
    if rtype == 'integer':
        return Vector('integer', np.where(na, INT_NA, out).astype(np.int32), na, attrs)
    return Vector('double', np.where(na, np.nan, out), na, attrs)
