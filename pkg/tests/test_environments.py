import random

import pytest

from deepr.core.conditions import RError
from deepr.core.environments import Environment, bind_inherit, lookup
from deepr.core.values import mk_int


def identity(value):
    return value


def test_lookup_finds_the_nearest_binding():
    rng = random.Random(17)
    names = ['a', 'b', 'c', 'd']
    for _ in range(300):
        chain = [Environment(None)]
        for _ in range(2):
            chain.append(Environment(chain[-1]))
        for depth, env in enumerate(chain):
            for name in names:
                if rng.random() < 0.4:
                    env.frame[name] = mk_int([depth * 10 + names.index(name)])
        innermost = chain[-1]
        for name in names:
            holders = [env for env in reversed(chain) if name in env.frame]
            if holders:
                assert lookup(innermost, name, identity) is holders[0].frame[name]
            else:
                with pytest.raises(RError, match=f"object '{name}' not found"):
                    lookup(innermost, name, identity)


def test_function_mode_skips_non_functions(interp):
    env = Environment(interp.base_env)
    env.frame['sum'] = mk_int([1])
    found = lookup(env, 'sum', interp.force, mode='function')
    assert found is interp.base_env.frame['sum']


def test_super_assignment_rewrites_the_enclosing_binding(interp):
    outer = Environment(interp.global_env)
    outer.frame['n'] = mk_int([1])
    inner = Environment(outer)
    bind_inherit(inner, 'n', mk_int([2]), interp.global_env)
    assert outer.frame['n'].values() == [2]
    bind_inherit(inner, 'fresh', mk_int([3]), interp.global_env)
    assert 'fresh' in interp.global_env.frame
    assert 'fresh' not in inner.frame


def test_ls_hides_dot_names(run_r):
    out = run_r('''
.test <- 1; visible <- 2
ls()
ls(all.names = TRUE)
''')
    assert out == '[1] "visible"\n[1] ".test"   "visible"\n'


def test_environments_print_with_stable_ordinals(run_r):
    out = run_r('''
environment()
baseenv()
emptyenv()
e <- new.env(); f <- new.env()
e; f; e
''')
    assert out.split('\n') == [
        '<environment: R_GlobalEnv>',
        '<environment: base>',
        '<environment: R_EmptyEnv>',
        '<environment: #1>',
        '<environment: #2>',
        '<environment: #1>',
        '',
    ]


def test_functions_print_with_their_environment(run_r):
    out = run_r('''
make <- function() function(x) x
g <- make()
g
identity
''')
    assert out == ('function(x) x\n<environment: #1>\n'
                   'function (x) \nx\n<environment: namespace:base>\n')


def test_builtins_print_as_primitives(run_r):
    assert run_r('sum') == 'function (..., na.rm = FALSE)  .Primitive("sum")\n'


def test_scope_is_lexical_not_dynamic(run_r):
    out = run_r('''
x <- "global"
f <- function() x
g <- function() { x <- "local"; f() }
g()
''')
    assert out == '[1] "global"\n'


def test_frames_and_parents(run_r):
    out = run_r('''
f <- function() {
  g <- function() parent.frame()
  h <- function() parent.env(environment())
  identical(g(), environment()) && identical(h(), environment())
}
f()
identical(parent.env(globalenv()), baseenv())
''')
    assert out == '[1] TRUE\n[1] TRUE\n'


def test_exists_and_rm(run_r):
    out = run_r('''
a <- 1
exists("a"); rm(a); exists("a")
rm(a)
''')
    assert out == "[1] TRUE\n[1] FALSE\nError in rm(a): object 'a' not found\n"


def test_local_scope_does_not_leak(run_r):
    out = run_r('''
local({ y <- 2; y * 3 })
exists("y")
''')
    assert out == '[1] 6\n[1] FALSE\n'


def test_base_environment_is_locked(run_r):
    out = run_r('assign("c", 1, envir = baseenv())')
    assert 'cannot add bindings to a locked environment' in out


def test_get_and_assign_with_explicit_environments(run_r):
    out = run_r('''
e <- new.env()
assign("v", 10, envir = e)
get("v", envir = e)
exists("v"); exists("v", envir = e)
mget(c("v"), envir = e)
get("nothing", envir = e)
''')
    assert out.split('\n') == [
        '[1] 10',
        '[1] FALSE',
        '[1] TRUE',
        '$v',
        '[1] 10',
        '',
        "Error in get(\"nothing\", envir = e): object 'nothing' not found",
        '',
    ]


def test_environment_as_mutable_object(run_r):
    out = run_r('''
account <- function(balance) {
  self <- new.env()
  self$balance <- balance
  self$deposit <- function(x) self$balance <- self$balance + x
  self
}
acc <- account(100)
acc$deposit(50)
acc$balance
acc[["balance"]]
''')
    assert out == '[1] 150\n[1] 150\n'


def test_frame_introspection_defaults_to_the_calling_function(run_r):
    out = run_r('''
inner <- function() sys.parent()
outer <- function() inner()
outer()
inner()
g <- function(a, b = 2) names(formals())
g(1)
h <- function() body()
h()
''')
    assert out == '[1] 1\n[1] 0\n[1] "a" "b"\nbody()\n'
