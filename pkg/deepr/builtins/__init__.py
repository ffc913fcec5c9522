"""The base library: builtin families, constants and the R-level prelude."""
import logging
import math
import string

from ..core.values import Builtin, Closure, mk_double, mk_logical, mk_str
from . import (arithmetic, conditions, construction, envs, functional, language,  # noqa: F401
               search, session, strings, subset)
from .prelude import PRELUDE
from .registry import install
from .session import options_from_config


logger = logging.getLogger(__name__)

MONTHS = ['January', 'February', 'March', 'April', 'May', 'June', 'July',
          'August', 'September', 'October', 'November', 'December']


def base_constants() -> dict:
    return {
        'pi': mk_double([math.pi]),
        'T': mk_logical([True]),
        'F': mk_logical([False]),
        'LETTERS': mk_str(list(string.ascii_uppercase)),
        'letters': mk_str(list(string.ascii_lowercase)),
        'month.name': mk_str(MONTHS),
        'month.abb': mk_str([m[:3] for m in MONTHS]),
    }


def install_base(interp) -> None:
    """Populate ``interp.base_env`` with builtins, constants and prelude closures."""
    install(interp.base_env)
    for name, value in base_constants().items():
        interp.base_env.frame[name] = value
    interp.base_env.frame['.GlobalEnv'] = interp.global_env
    interp.options = {**options_from_config({}), **interp.options}
    if not interp.run_prelude(PRELUDE):
        raise RuntimeError("base prelude failed to evaluate")
    for value in interp.base_env.frame.values():
        if isinstance(value, Closure):
            value.srcref = None
    logger.debug("base environment holds %d bindings", len(interp.base_env.frame))


def catalog(interp) -> list:
    """Sorted names of every function the base environment provides."""
    return sorted(name for name, value in interp.base_env.frame.items()
                  if isinstance(value, (Builtin, Closure)))
