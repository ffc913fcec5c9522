"""The builtin registry.

Families register their functions with the :func:`builtin` decorator when
imported; :func:`install` turns the registry into ``Builtin`` values bound in
the base environment.

Three calling conventions exist:

* ordinary builtins get a ``CallArgs`` of forced values;
* ``special`` builtins get a ``CallArgs`` whose values are unforced promises;
* forms (``formals=None``) get ``(interp, call, env)`` and read the call
  themselves; control flow is written this way.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from ..language.parser import parse_one
from ..core.values import Builtin


logger = logging.getLogger(__name__)


@dataclass
class BuiltinSpec:
    name: str
    impl: Callable
    signature: Optional[str]
    special: bool = False
    generic: Optional[str] = None
    visibility: str = 'on'
    group: Optional[str] = None


REGISTRY: Dict[str, BuiltinSpec] = {}


def builtin(*names: str, signature: Optional[str] = '...', special: bool = False,
            generic: Optional[str] = None, visibility: str = 'on', group: Optional[str] = None):
    """Register ``fn`` under each of ``names``.

    ``signature`` is the R formal list, e.g. ``"x, times = 1, ..."``; pass
    None for a form. ``generic`` names the S3 generic to try first;
    ``'self'`` means the builtin's own name.
    """
    def decorator(fn: Callable) -> Callable:
        for name in names:
            if name in REGISTRY:
                raise ValueError(f"builtin {name!r} registered twice")
            REGISTRY[name] = BuiltinSpec(name, fn, signature, special,
                                         name if generic == 'self' else generic, visibility, group)
        return fn
    return decorator


_signature_cache: Dict[str, List[Tuple[str, object]]] = {}


def parse_signature(signature: str) -> List[Tuple[str, object]]:
    """Formals of an R signature string, parsed by the language parser itself."""
    cached = _signature_cache.get(signature)
    if cached is not None:
        return cached
    if not signature:
        formals: List[Tuple[str, object]] = []
    else:
        fn = parse_one(f'function({signature}) NULL')
        spec = fn.args[0].value
        formals = [(name, value) for name, value in zip(spec.names(), spec.data)]
    _signature_cache[signature] = formals
    return formals


def make_builtin(spec: BuiltinSpec) -> Builtin:
    formals = None if spec.signature is None else parse_signature(spec.signature)
    return Builtin(spec.name, spec.impl, formals, special=spec.special, generic=spec.generic,
                   visibility=spec.visibility, group=spec.group)


def install(env) -> int:
    for spec in REGISTRY.values():
        env.frame[spec.name] = make_builtin(spec)
    logger.debug("installed %d builtins", len(REGISTRY))
    return len(REGISTRY)
