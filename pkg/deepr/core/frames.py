"""Call frames, dispatch state and the argument bundle handed to builtins."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..language.ast import MISSING_ARG, Call
from .environments import Environment
from .values import NULL, Promise, RObject


Supplied = List[Tuple[Optional[str], Any]]


@dataclass
class DispatchState:
    """Where an S3 method sits in the walk along its object's class vector."""

    generic: str
    classes: List[str]
    position: int
    object: RObject
    group: Optional[str] = None


@dataclass
class Frame:
    """One closure activation.

    ``supplied`` holds the arguments in call order and ``matched_to`` the
    formal each of them was bound to (``...`` for dots).
    """

    function: Any
    env: Environment
    call: Call
    caller: Environment
    number: int
    supplied: Supplied
    matched_to: List[Optional[str]]
    on_exit: List[Any] = field(default_factory=list)
    dispatch: Optional[DispatchState] = None


@dataclass
class CallArgs:
    """Matched arguments of a builtin call.

    Ordinary builtins see forced values; special builtins see the promises.
    Formals that were not supplied are absent from ``values``; empty
    arguments such as the row slot of ``x[, 1]`` appear as ``MISSING_ARG``.
    """

    interp: Any
    call: Call
    env: Environment
    values: Dict[str, Any]
    dots: Supplied

    def get(self, name: str, default: Any = None) -> Any:
        value = self.values.get(name, MISSING_ARG)
        return default if value is MISSING_ARG else value

    def has(self, name: str) -> bool:
        return self.values.get(name, MISSING_ARG) is not MISSING_ARG

    def __getitem__(self, name: str) -> Any:
        return self.get(name, NULL)

    def dot_values(self) -> List[Any]:
        return [value for _, value in self.dots]

    def dot_names(self) -> List[Optional[str]]:
        return [name for name, _ in self.dots]

    def expr(self, name: str) -> Any:
        """Unevaluated expression of a special builtin's argument."""
        value = self.values.get(name, MISSING_ARG)
        return value.expr if isinstance(value, Promise) else value


@dataclass(eq=False)
class HandlerEntry:
    """An active ``tryCatch``, ``try`` or ``suppressWarnings`` scope."""

    kinds: frozenset
