"""Matching, ordering, binning and set-like operations on vectors."""
import math
from typing import Hashable, List, Optional, Sequence

import numpy as np

from ..core.attributes import with_names
from ..core.coercion import coerce_vector, common_type_of
from ..core.conditions import RError
from ..core.frames import CallArgs
from ..core.indexing import subset
from ..core.values import NULL, RObject, Vector, mk_int, mk_logical
from ..language.deparse import deparse_one
from .helpers import flag, int_arg
from .registry import builtin


def _keys(x: RObject, rtype: str) -> List[Hashable]:
    """Hashable element keys under ``rtype``; NA and NaN get distinct keys."""
    if x is NULL:
        return []
    if not isinstance(x, Vector):
        raise RError("'match' requires vector arguments")
    if x.rtype in ('list', 'expression'):
        return [deparse_one(v) for v in x.data]
    v = coerce_vector(x, rtype)
    keys: List[Hashable] = []
    for k in range(v.length()):
        if v.na[k]:
            keys.append(('NA',))
        elif rtype == 'double' and math.isnan(v.data[k]):
            keys.append(('NaN',))
        else:
            keys.append(v.element(k))
    return keys


def match_positions(x: RObject, table: RObject) -> List[Optional[int]]:
    rtype = common_type_of([x, table])
    if rtype in ('logical', 'integer'):
        rtype = 'double'
    first = {}
    for pos, key in enumerate(_keys(table, rtype)):
        first.setdefault(key, pos + 1)
    return [first.get(key) for key in _keys(x, rtype)]


@builtin('match', signature='x, table, nomatch = NA_integer_, incomparables = NULL')
def do_match(args: CallArgs):
    nomatch = int_arg(args, 'nomatch', None)
    positions = match_positions(args.get('x', NULL), args.get('table', NULL))
    return mk_int([nomatch if p is None else p for p in positions])


@builtin('%in%', signature='x, table')
def do_in(args: CallArgs):
    positions = match_positions(args.get('x', NULL), args.get('table', NULL))
    return mk_logical([p is not None for p in positions])


# ordering

def _sort_values(x: RObject) -> Vector:
    if not isinstance(x, Vector) or not x.is_atomic():
        raise RError("argument is not a vector" if x is NULL else
                     f"unimplemented type '{getattr(x, 'rtype', 'unknown')}' in 'orderVector1'")
    return x


def _missing(v: Vector, k: int) -> bool:
    return bool(v.na[k]) or (v.rtype == 'double' and math.isnan(v.data[k]))


def stable_order(keys: Sequence[Vector], decreasing: bool = False, na_last: bool = True) -> List[int]:
    """0-based stable permutation; later keys break ties, NA last."""
    n = keys[0].length() if keys else 0
    for key in keys:
        if key.length() != n:
            raise RError("argument lengths differ")
    order = list(range(n))
    for key in reversed(keys):
        present = [i for i in order if not _missing(key, i)]
        absent = [i for i in order if _missing(key, i)]
        present.sort(key=key.element, reverse=decreasing)
        order = present + absent if na_last else absent + present
    return order


@builtin('order', signature='..., na.last = TRUE, decreasing = FALSE, method')
def do_order(args: CallArgs):
    keys = [_sort_values(v) for v in args.dot_values()]
    if not keys:
        return mk_int([])
    decreasing = flag(args, 'decreasing', False)
    return mk_int([i + 1 for i in stable_order(keys, decreasing, flag(args, 'na.last', True))])


@builtin('sort', signature='x, decreasing = FALSE, na.last = NA, ...', generic='self')
def do_sort(args: CallArgs):
    x = args.get('x', NULL)
    if x is NULL:
        return NULL
    x = _sort_values(x)
    order = stable_order([x], flag(args, 'decreasing', False))
    kept = [i + 1 for i in order if not _missing(x, i)]
    out = subset(x, [mk_int(kept)])
    return out if x.get_attr('names') is not None else out.with_attributes(None)


@builtin('rank', signature='x, na.last = TRUE, ties.method = "average"')
def do_rank(args: CallArgs):
    x = _sort_values(args.get('x', NULL))
    order = stable_order([x])
    ranks: List[Optional[float]] = [None] * x.length()
    k = 0
    while k < len(order):
        j = k
        while j + 1 < len(order) and not _missing(x, order[k]) \
                and x.element(order[j + 1]) == x.element(order[k]):
            j += 1
        for pos in order[k:j + 1]:
            ranks[pos] = (k + j) / 2 + 1
        k = j + 1
    out = Vector('double', np.array([math.nan if r is None else r for r in ranks]),
                 np.zeros(x.length(), dtype=bool))
    names = x.names()
    return with_names(out, names) if names is not None else out


@builtin('findInterval', signature='x, vec, rightmost.closed = FALSE, all.inside = FALSE, left.open = FALSE')
def do_find_interval(args: CallArgs):
    vec = coerce_vector(args.get('vec', NULL), 'double')
    if bool(np.any(vec.na)) or bool(np.any(np.diff(vec.data) < 0)):
        raise RError("'vec' must be sorted non-decreasingly and not contain NAs")
    x = coerce_vector(args.get('x', NULL), 'double')
    side = 'left' if flag(args, 'left.open', False) else 'right'
    found = np.searchsorted(vec.data, x.data, side=side)
    if flag(args, 'rightmost.closed', False) and vec.length():
        found = np.where(x.data == vec.data[-1], vec.length() - 1, found)
    if flag(args, 'all.inside', False) and vec.length():
        found = np.clip(found, 1, vec.length() - 1)
    missing = x.na | np.isnan(x.data)
    return mk_int([None if missing[k] else int(found[k]) for k in range(x.length())])


# positions

@builtin('which', signature='x, arr.ind = FALSE, useNames = TRUE')
def do_which(args: CallArgs):
    x = args.get('x', NULL)
    if not (isinstance(x, Vector) and x.rtype == 'logical'):
        raise RError("argument to 'which' is not logical")
    hits = [k for k in range(x.length()) if not x.na[k] and x.data[k]]
    out = mk_int([k + 1 for k in hits])
    names = x.names()
    if names is not None:
        out = with_names(out, [names[k] for k in hits])
    return out


def _which_extreme(args: CallArgs, pick_max: bool) -> Vector:
    x = coerce_vector(args.get('x', NULL), 'double')
    best: Optional[int] = None
    for k in range(x.length()):
        if _missing(x, k):
            continue
        if best is None or (x.data[k] > x.data[best] if pick_max else x.data[k] < x.data[best]):
            best = k
    if best is None:
        return mk_int([])
    out = mk_int([best + 1])
    names = args.get('x').names() if isinstance(args.get('x'), Vector) else None
    return with_names(out, [names[best]]) if names is not None else out


@builtin('which.min', signature='x')
def do_which_min(args: CallArgs):
    return _which_extreme(args, pick_max=False)


@builtin('which.max', signature='x')
def do_which_max(args: CallArgs):
    return _which_extreme(args, pick_max=True)


def _element_keys(x: RObject) -> List[Hashable]:
    if x is NULL:
        return []
    if not isinstance(x, Vector):
        raise RError("duplicated() applies only to vectors")
    return _keys(x, x.rtype)


def duplicated_flags(x: RObject, from_last: bool = False) -> List[bool]:
    keys = _element_keys(x)
    seen = set()
    flags = [False] * len(keys)
    indices = range(len(keys) - 1, -1, -1) if from_last else range(len(keys))
    for k in indices:
        flags[k] = keys[k] in seen
        seen.add(keys[k])
    return flags


@builtin('duplicated', signature='x, incomparables = FALSE, fromLast = FALSE, ...', generic='self')
def do_duplicated(args: CallArgs):
    return mk_logical(duplicated_flags(args.get('x', NULL), flag(args, 'fromLast', False)))


@builtin('unique', signature='x, incomparables = FALSE, ...', generic='self')
def do_unique(args: CallArgs):
    x = args.get('x', NULL)
    if x is NULL:
        return NULL
    flags = duplicated_flags(x)
    kept = [k + 1 for k, dup in enumerate(flags) if not dup]
    out = subset(x, [mk_int(kept)])
    return out.with_attributes(None) if out.is_atomic() else out


@builtin('anyDuplicated', signature='x, incomparables = FALSE, ...')
def do_any_duplicated(args: CallArgs):
    flags = duplicated_flags(args.get('x', NULL))
    return mk_int([flags.index(True) + 1 if True in flags else 0])


@builtin('tabulate', signature='bin, nbins = max(1L, bin, na.rm = TRUE)')
def do_tabulate(args: CallArgs):
    bins = coerce_vector(args.get('bin', NULL), 'integer')
    values = [int(b) for b, missing in zip(bins.data, bins.na) if not missing]
    nbins = int_arg(args, 'nbins', None)
    if nbins is None:
        nbins = max([1] + values)
    if nbins < 0:
        raise RError("invalid 'nbins' argument")
    counts = [0] * nbins
    for b in values:
        if 1 <= b <= nbins:
            counts[b - 1] += 1
    return mk_int(counts)
