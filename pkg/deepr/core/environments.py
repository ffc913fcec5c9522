"""Environments: frames of bindings chained through their enclosures."""
import itertools
import logging
from typing import Any, Callable, Dict, Iterator, List, Optional

from .conditions import RError
from .values import RObject, Vector, is_function, mk_list, mk_str


logger = logging.getLogger(__name__)


class Environment(RObject):
    """A mutable frame plus a reference to its enclosure.

    Bindings hold either values or promises; ``force`` turns a promise into
    its value when the binding is read.
    """

    rtype = 'environment'
    _ids = itertools.count(1)

    def __init__(self, parent: Optional['Environment'], name: Optional[str] = None):
        super().__init__(None)
        self.frame: Dict[str, Any] = {}
        self.parent = parent
        self.name = name
        self.locked = False
        self.uid = next(self._ids)

    def _copy(self):
        return self

    def with_attributes(self, attributes):
        self.attributes = dict(attributes) if attributes else None
        return self

    def length(self) -> int:
        return len(self.frame)

    def get_local(self, name: str) -> Any:
        return self.frame.get(name)

    def has_local(self, name: str) -> bool:
        return name in self.frame

    def chain(self) -> Iterator['Environment']:
        env = self
        while env is not None:
            yield env
            env = env.parent

    def find(self, name: str) -> Optional['Environment']:
        for env in self.chain():
            if name in env.frame:
                return env
        return None

    def assign(self, name: str, value: Any) -> None:
        if self.locked:
            raise RError("cannot add bindings to a locked environment")
        self.frame[name] = value

    def remove(self, name: str) -> None:
        if self.locked:
            raise RError("cannot remove bindings from a locked environment")
        del self.frame[name]

    def names(self, all_names: bool = False, sort: bool = True) -> List[str]:
        keys = [k for k in self.frame if all_names or not k.startswith('.')]
        return sorted(keys) if sort else keys

    def __repr__(self):
        return f'Environment({self.name or self.uid})'


class EmptyEnvironment(Environment):
    def __init__(self):
        super().__init__(None, 'R_EmptyEnv')
        self.locked = True


def lookup(env: Environment, name: str, force: Callable[[Any], Any], mode: str = 'any') -> Any:
    """Resolve ``name`` walking the chain; ``mode='function'`` skips non-functions."""
    for frame_env in env.chain():
        if name not in frame_env.frame:
            continue
        value = frame_env.frame[name]
        if mode == 'function':
            value = force(value)
            if is_function(value):
                return value
            continue
        return force(value)
    if mode == 'function':
        raise RError(f'could not find function "{name}"')
    raise RError(f"object '{name}' not found")


def bind(env: Environment, name: str, value: Any) -> None:
    env.assign(name, value)


def bind_inherit(env: Environment, name: str, value: Any, global_env: Environment) -> None:
    """``<<-``: rewrite the first binding found above ``env``, else create it in global."""
    parent = env.parent
    target = parent.find(name) if parent is not None else None
    if target is None or isinstance(target, EmptyEnvironment):
        target = global_env
    if target.locked:
        raise RError(f"cannot change value of locked binding for '{name}'")
    target.frame[name] = value


def env_names(env: Environment, all_names: bool = False) -> Vector:
    return mk_str(env.names(all_names))


def env_remove(env: Environment, names: List[str]) -> None:
    for name in names:
        if name not in env.frame:
            raise RError(f"object '{name}' not found")
        env.remove(name)


def as_environment(x: Vector, parent: Environment) -> Environment:
    """A new environment whose bindings are the elements of a named list."""
    names = x.names()
    if x.length() and (names is None or any(not n for n in names)):
        raise RError("all elements of a list must be named")
    env = Environment(parent)
    for name, value in zip(names or [], x.data if x.rtype == 'list' else _elements(x)):
        env.frame[name] = value
    return env


def _elements(x: Vector) -> List[RObject]:
    return [Vector(x.rtype, x.data[i:i + 1].copy(), x.na[i:i + 1].copy()) for i in range(x.length())]


def env_as_list(env: Environment, force: Callable[[Any], Any], all_names: bool = False,
                sort: bool = False) -> Vector:
    keys = env.names(all_names, sort=sort)
    return mk_list([force(env.frame[k]) for k in keys], keys)


class EnvironmentRegistry:
    """Stable ``#N`` ordinals for printing environments, assigned on first display."""

    def __init__(self):
        self._ordinals: Dict[int, int] = {}

    def label(self, env: Environment) -> str:
        if env.name:
            return env.name
        ordinal = self._ordinals.setdefault(env.uid, len(self._ordinals) + 1)
        return f'#{ordinal}'
