"""Subsetting and subassignment: ``[``, ``[[``, ``$`` and their replacement forms."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, List, Optional, Sequence

import numpy as np

from ..language.ast import Call
from .coercion import coerce_vector, common_type, to_list
from .conditions import RError, warn
from .values import NULL, Promise, RObject, Vector, empty_vector, mk_int, mk_list, mk_str, na_vector, object_array


class IndexKind(str, Enum):
    MISSING = 'missing'
    POSITIVE = 'positive'
    NEGATIVE = 'negative'
    LOGICAL = 'logical'
    CHARACTER = 'character'


@dataclass
class Indexer:
    """Resolved subscript: 0-based positions, None for NA or out of range.

    ``new_names`` is filled when a character subscript names elements that do
    not exist yet and the indexer is used for assignment.
    """

    kind: IndexKind
    positions: List[Optional[int]]
    new_names: List[Optional[str]] = field(default_factory=list)


def _names(x: RObject) -> Optional[List[Optional[str]]]:
    nm = x.get_attr('names') if isinstance(x, RObject) else None
    return None if nm is None else list(nm.data)


def _not_subsettable(x: RObject):
    return RError(f"object of type '{x.rtype}' is not subsettable")


def resolve(i: Optional[RObject], n: int, names: Optional[Sequence[Optional[str]]] = None,
            assign: bool = False) -> Indexer:
    """Translate subscript ``i`` against a vector of length ``n``."""
    if i is None:
        return Indexer(IndexKind.MISSING, list(range(n)))
    if i is NULL:
        return Indexer(IndexKind.POSITIVE, [])
    if not isinstance(i, Vector):
        raise RError(f"invalid subscript type '{i.rtype}'")
    if i.rtype in ('list', 'expression'):
        raise RError("invalid subscript type 'list'")
    if i.rtype == 'logical':
        m = max(n, i.length()) if i.length() else 0
        positions: List[Optional[int]] = []
        for k in range(m):
            j = k % i.length()
            if i.na[j]:
                positions.append(None)
            elif i.data[j]:
                positions.append(k if assign or k < n else None)
        return Indexer(IndexKind.LOGICAL, positions)
    if i.rtype == 'character':
        lookup = {}
        for pos, name in enumerate(names or []):
            if name is not None and name != '' and name not in lookup:
                lookup[name] = pos
        positions = []
        new_names: List[Optional[str]] = []
        for s in i.data:
            if s is not None and s in lookup:
                positions.append(lookup[s])
            elif assign:
                lookup_key = s if s is not None else None
                pos = n + len(new_names)
                if lookup_key is not None and lookup_key != '':
                    lookup[lookup_key] = pos
                new_names.append(s)
                positions.append(pos)
            else:
                positions.append(None)
        return Indexer(IndexKind.CHARACTER, positions, new_names)
    values = coerce_vector(i, 'double')
    data = np.trunc(values.data)
    na = values.na | np.isnan(values.data)
    known = data[~na]
    has_neg = bool(np.any(known < 0))
    has_pos = bool(np.any(known > 0))
    if has_neg:
        if has_pos or bool(np.any(na)):
            raise RError("only 0's may be mixed with negative subscripts")
        excluded = {int(-v) - 1 for v in known if v < 0}
        return Indexer(IndexKind.NEGATIVE, [k for k in range(n) if k not in excluded])
    positions = []
    for v, missing in zip(data, na):
        if missing:
            positions.append(None)
        elif v == 0:
            continue
        else:
            k = int(v) - 1
            positions.append(k if assign or k < n else None)
    return Indexer(IndexKind.POSITIVE, positions)


def take(x: Vector, positions: Sequence[Optional[int]]) -> Vector:
    n = x.length()
    if x.rtype in ('list', 'expression'):
        out = [x.data[p] if p is not None and p < n else NULL for p in positions]
        return Vector(x.rtype, object_array(out), np.zeros(len(out), dtype=bool))
    fill = na_vector(x.rtype, 1)
    idx = np.array([p if p is not None and p < n else -1 for p in positions], dtype=np.int64)
    if len(idx) == 0:
        return empty_vector(x.rtype)
    missing = idx < 0
    safe = np.where(missing, 0, idx)
    if n == 0:
        data = np.repeat(fill.data, len(idx))
        na = np.ones(len(idx), dtype=bool)
    else:
        data = x.data[safe].copy()
        na = x.na[safe].copy()
        if bool(np.any(missing)):
            data[missing] = fill.data[0]
            na[missing] = True
    return Vector(x.rtype, data, na)


def subset(x: RObject, indices: List[Optional[RObject]], drop: bool = True) -> RObject:
    """``x[i]`` or ``x[i, j]``; only ``names`` (or ``dim``/``dimnames`` of a matrix slice) survive."""
    if x is NULL:
        return NULL
    if isinstance(x, Call):
        items = [x.fn] + [a.value for a in x.args]
        picked = subset(mk_list(items), indices, drop)
        return picked
    if not isinstance(x, Vector):
        raise _not_subsettable(x)
    dims = x.get_attr('dim')
    if len(indices) == 2:
        if dims is None or dims.length() != 2:
            raise RError("incorrect number of dimensions")
        return _matrix_subset(x, indices[0], indices[1], drop)
    if len(indices) > 2:
        raise RError("incorrect number of dimensions")
    i = indices[0] if indices else None
    names = _names(x)
    idx = resolve(i, x.length(), names)
    out = take(x, idx.positions)
    if names is not None:
        out_names = [names[p] if p is not None and p < len(names) else None for p in idx.positions]
        out = out.with_attributes({'names': mk_str(out_names)})
    elif idx.kind == IndexKind.CHARACTER:
        out = out.with_attributes({'names': mk_str([None] * len(idx.positions))})
    return out


def _dimnames(x: Vector) -> List[Optional[List[Optional[str]]]]:
    dn = x.get_attr('dimnames')
    if dn is None:
        return [None, None]
    out = []
    for k in range(2):
        part = dn.data[k] if k < dn.length() else NULL
        out.append(None if part is NULL else list(part.data))
    return out


def _matrix_positions(x: Vector, i, j):
    nrow, ncol = (int(d) for d in x.get_attr('dim').data)
    rnames, cnames = _dimnames(x)
    rows = resolve(i, nrow, rnames)
    cols = resolve(j, ncol, cnames)
    if any(p is None for p in rows.positions) or any(p is None for p in cols.positions):
        raise RError("subscript out of bounds")
    return rows.positions, cols.positions, rnames, cnames


def _matrix_subset(x: Vector, i, j, drop: bool) -> Vector:
    nrow = int(x.get_attr('dim').data[0])
    rows, cols, rnames, cnames = _matrix_positions(x, i, j)
    flat = [c * nrow + r for c in cols for r in rows]
    out = take(x, flat)
    sub_rn = [rnames[r] for r in rows] if rnames is not None else None
    sub_cn = [cnames[c] for c in cols] if cnames is not None else None
    if drop and (len(rows) == 1 or len(cols) == 1):
        if len(rows) == 1 and len(cols) != 1 and sub_cn is not None:
            return out.with_attributes({'names': mk_str(sub_cn)})
        if len(cols) == 1 and len(rows) != 1 and sub_rn is not None:
            return out.with_attributes({'names': mk_str(sub_rn)})
        return out
    attrs = {'dim': mk_int([len(rows), len(cols)])}
    if sub_rn is not None or sub_cn is not None:
        attrs['dimnames'] = mk_list([NULL if sub_rn is None else mk_str(sub_rn),
                                     NULL if sub_cn is None else mk_str(sub_cn)])
    return out.with_attributes(attrs)


def _single_position(i: RObject, x: RObject, for_list: bool) -> Optional[int]:
    """Position for ``[[``; None means a missing name on a list."""
    if not isinstance(i, Vector) or i.rtype in ('list', 'expression'):
        raise RError("invalid subscript type 'list'" if isinstance(i, Vector) else
                     f"invalid subscript type '{getattr(i, 'rtype', 'symbol')}'")
    if i.length() == 0:
        raise RError("subscript out of bounds")
    if i.length() > 1:
        raise RError("attempt to select more than one element")
    n = x.length()
    if i.na[0]:
        if for_list:
            return None
        raise RError("subscript out of bounds")
    if i.rtype == 'character':
        names = _names(x) or []
        key = i.data[0]
        for pos, name in enumerate(names):
            if name == key:
                return pos
        if for_list:
            return None
        raise RError("subscript out of bounds")
    value = coerce_vector(i, 'double').data[0]
    k = int(np.trunc(value))
    if k < 0:
        if n == 2 and k in (-1, -2):
            return 1 if k == -1 else 0
        raise RError("invalid negative subscript in get1index <real>")
    if k == 0 or k > n:
        raise RError("subscript out of bounds")
    return k - 1


def extract(x: RObject, i: RObject, force: Optional[Callable[[Any], Any]] = None) -> RObject:
    """``x[[i]]``: a single element without attributes; a vector subscript recurses into lists."""
    if x is NULL:
        return NULL
    if x.rtype == 'environment':
        key = i.scalar() if isinstance(i, Vector) and i.rtype == 'character' else None
        if key is None:
            raise RError("wrong args for environment subassignment")
        value = x.frame.get(key, NULL)
        if isinstance(value, Promise):
            value = force(value) if force is not None else value.value
        return value
    if isinstance(x, Call):
        items = mk_list([x.fn] + [a.value for a in x.args])
        return extract(items, i, force)
    if not isinstance(x, Vector):
        raise _not_subsettable(x)
    if isinstance(i, Vector) and i.length() > 1 and x.rtype in ('list', 'expression'):
        current: RObject = x
        for k in range(i.length()):
            part = Vector(i.rtype, i.data[k:k + 1], i.na[k:k + 1])
            if not isinstance(current, (Vector, Call)) and current is not NULL:
                raise RError("subscript out of bounds")
            if current is NULL:
                raise RError("subscript out of bounds")
            if isinstance(current, Vector) and current.is_atomic() and k < i.length() - 1:
                raise RError("subscript out of bounds")
            current = extract(current, part, force)
        return current
    for_list = x.rtype in ('list', 'expression')
    pos = _single_position(i, x, for_list)
    if pos is None:
        return NULL
    if for_list:
        return x.data[pos]
    return Vector(x.rtype, x.data[pos:pos + 1].copy(), x.na[pos:pos + 1].copy())


def dollar(x: RObject, name: str, force: Optional[Callable[[Any], Any]] = None) -> RObject:
    if x is NULL:
        return NULL
    if x.rtype == 'environment':
        return extract(x, mk_str([name]), force)
    if isinstance(x, Vector) and x.rtype in ('list', 'expression'):
        for pos, nm in enumerate(_names(x) or []):
            if nm == name:
                return x.data[pos]
        return NULL
    if isinstance(x, Vector):
        raise RError("$ operator is invalid for atomic vectors")
    raise _not_subsettable(x)


# replacement forms

def _extend(x: Vector, new_length: int) -> Vector:
    n = x.length()
    if new_length <= n:
        return x
    pad = na_vector(x.rtype, new_length - n)
    attrs = dict(x.attributes or {})
    attrs.pop('dim', None)
    attrs.pop('dimnames', None)
    names = _names(x)
    if names is not None:
        attrs['names'] = mk_str(names + [''] * (new_length - n))
    return Vector(x.rtype, np.concatenate([x.data, pad.data]), np.concatenate([x.na, pad.na]),
                  attrs or None)


def _target_base(x: RObject, value: RObject) -> Vector:
    if x is NULL:
        if isinstance(value, Vector):
            return empty_vector(value.rtype)
        return empty_vector('list')
    if not isinstance(x, Vector):
        raise _not_subsettable(x)
    return x


def _delete_positions(x: Vector, positions: Sequence[Optional[int]]) -> Vector:
    drop = {p for p in positions if p is not None and p < x.length()}
    keep = [k for k in range(x.length()) if k not in drop]
    names = _names(x)
    attrs = dict(x.attributes or {})
    attrs.pop('dim', None)
    attrs.pop('dimnames', None)
    if names is not None:
        attrs['names'] = mk_str([names[k] for k in keep])
    data = object_array([x.data[k] for k in keep])
    return Vector(x.rtype, data, np.zeros(len(keep), dtype=bool), attrs or None)


def _assign_positions(x: RObject, idx: Indexer, value: RObject) -> RObject:
    base = _target_base(x, value)
    is_list = base.rtype in ('list', 'expression')
    if value is NULL:
        if is_list:
            return _delete_positions(base, idx.positions)
        if not idx.positions:
            return x
        raise RError("replacement has length zero")
    if not isinstance(value, Vector):
        if not is_list:
            base = coerce_vector(base, 'list', keep_attributes=True)
            is_list = True
        value = mk_list([value])
    positions = [p for p in idx.positions if p is not None]
    if len(positions) < len(idx.positions) and value.length() > 1:
        raise RError("NAs are not allowed in subscripted assignments")
    if not positions:
        return base if x is not NULL else x
    if value.length() == 0:
        raise RError("replacement has length zero")
    if len(idx.positions) % value.length() != 0:
        warn("number of items to replace is not a multiple of replacement length")
    if is_list:
        value = to_list(value) if value.rtype != base.rtype else value
    else:
        target = common_type(base.rtype, value.rtype)
        if target in ('list', 'expression'):
            base = coerce_vector(base, target, keep_attributes=True)
            is_list = True
        elif target != base.rtype:
            base = coerce_vector(base, target, keep_attributes=True)
        if value.rtype != base.rtype:
            value = coerce_vector(value, base.rtype)
    n_before = base.length()
    out = _extend(base, max([n_before] + [p + 1 for p in positions]))
    data = out.data.copy()
    na = out.na.copy()
    m = value.length()
    for k, p in enumerate(idx.positions):
        if p is None:
            continue
        data[p] = value.data[k % m]
        na[p] = value.na[k % m]
    attrs = dict(out.attributes or {})
    if idx.new_names:
        names = _names(out) or [''] * out.length()
        for offset, nm in enumerate(idx.new_names):
            pos = n_before + offset
            if pos < len(names):
                names[pos] = nm
        attrs['names'] = mk_str(names)
    return Vector(out.rtype, data, na, attrs or None)


def subset_assign(x: RObject, indices: List[Optional[RObject]], value: RObject) -> RObject:
    """``x[i] <- value`` with coercion, recycling and extension."""
    if isinstance(x, Vector) and len(indices) == 2:
        dims = x.get_attr('dim')
        if dims is None or dims.length() != 2:
            raise RError("incorrect number of subscripts on matrix")
        nrow = int(dims.data[0])
        rows, cols, _, _ = _matrix_positions(x, indices[0], indices[1])
        flat = [c * nrow + r for c in cols for r in rows]
        if value is NULL:
            raise RError("replacement has length zero")
        return _assign_positions(x, Indexer(IndexKind.POSITIVE, flat), value)
    if len(indices) > 2:
        raise RError("incorrect number of subscripts")
    base = _target_base(x, value) if x is NULL else x
    if not isinstance(base, Vector):
        raise _not_subsettable(base)
    i = indices[0] if indices else None
    idx = resolve(i, base.length(), _names(base), assign=True)
    return _assign_positions(x, idx, value)


def extract_assign(x: RObject, i: RObject, value: RObject) -> RObject:
    """``x[[i]] <- value``; assigning NULL to a list element deletes it."""
    if isinstance(x, RObject) and x.rtype == 'environment':
        key = i.scalar() if isinstance(i, Vector) and i.rtype == 'character' else None
        if key is None:
            raise RError("wrong args for environment subassignment")
        x.assign(key, value)
        return x
    if isinstance(i, Vector) and i.length() > 1 and isinstance(x, Vector) and x.rtype == 'list':
        head = Vector(i.rtype, i.data[:1], i.na[:1])
        rest = Vector(i.rtype, i.data[1:], i.na[1:])
        inner = extract(x, head)
        return extract_assign(x, head, extract_assign(inner, rest, value))
    if x is NULL:
        if value is NULL:
            return NULL
        if isinstance(value, Vector) and value.is_atomic() and value.length() == 1:
            x = empty_vector(value.rtype)
        else:
            x = mk_list([])
    if not isinstance(x, Vector):
        raise _not_subsettable(x)
    if not isinstance(i, Vector) or i.length() != 1:
        if isinstance(i, Vector) and i.length() == 0:
            raise RError("[[ ]] with missing subscript")
        raise RError("more elements supplied than there are to replace")
    idx = resolve(i, x.length(), _names(x), assign=True)
    if not idx.positions or idx.positions[0] is None:
        raise RError("[[ ]] subscript out of bounds")
    if x.rtype in ('list', 'expression'):
        if value is NULL:
            if idx.positions[0] >= x.length():
                return x
            return _delete_positions(x, idx.positions)
        return _assign_positions(x, idx, mk_list([value]))
    if not isinstance(value, Vector) or not value.is_atomic():
        as_list = coerce_vector(x, 'list', keep_attributes=True)
        if value is NULL:
            return _delete_positions(as_list, idx.positions)
        return _assign_positions(as_list, idx, mk_list([value]))
    if value.length() != 1:
        if value.length() == 0:
            raise RError("replacement has length zero")
        raise RError("more elements supplied than there are to replace")
    return _assign_positions(x, idx, value)


def dollar_assign(x: RObject, name: str, value: RObject) -> RObject:
    key = mk_str([name])
    if isinstance(x, RObject) and x.rtype == 'environment':
        x.assign(name, value)
        return x
    if x is NULL:
        if value is NULL:
            return NULL
        return _assign_positions(mk_list([]), resolve(key, 0, None, assign=True), mk_list([value]))
    if isinstance(x, Vector) and x.is_atomic():
        warn("Coercing LHS to a list")
        x = coerce_vector(x, 'list', keep_attributes=True)
    if not isinstance(x, Vector):
        raise RError(f"invalid type for $ assignment")
    return extract_assign(x, key, value)


def which_true(x: Vector) -> List[int]:
    return [k for k in range(x.length()) if not x.na[k] and x.data[k]]

