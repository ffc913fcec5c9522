import random

import pytest

from deepr.commands.session import LineSession, make_interpreter
from deepr.ui.console import TranscriptSink


def test_arguments_are_lazy(run_r):
    out = run_r('''
f <- function(a, b) { cat("in f\\n"); a }
f({cat("forced a\\n"); 1}, stop("never"))
''')
    assert out == 'in f\nforced a\n[1] 1\n'


def test_promise_is_forced_once(run_r):
    out = run_r('''
g <- function(x) { x; x; invisible(NULL) }
g({cat("once\\n"); 1})
''')
    assert out == 'once\n'


def test_default_argument_sees_the_local_frame(run_r):
    out = run_r('''
h <- function(x = y) { y <- "local"; x }
h()
''')
    assert out == '[1] "local"\n'


def test_exact_then_partial_then_positional_matching(run_r):
    out = run_r('''
f <- function(spam, jasmine, jam, ..., option) cat(spam, jasmine, jam, length(list(...)), option, "\\n")
f(1, 2, 3, 4, option = "yes")
f(jas = 2, 1, 3)
''')
    assert out.startswith('1 2 3 1 yes \n')
    assert 'Error in f(jas = 2, 1, 3): argument "option" is missing, with no default' in out


def test_ambiguous_partial_match(run_r):
    out = run_r('''
f <- function(jasmine, jam) 1
f(ja = 7)
''')
    assert out == 'Error in f(ja = 7): argument 1 matches multiple formal arguments\n'


def test_unused_arguments(run_r):
    out = run_r('''
f <- function(x) x
f(1, 2, z = 3)
''')
    assert out == 'Error in f(1, 2, z = 3): unused arguments (2, z = 3)\n'


def test_missing_arguments(run_r):
    out = run_r('''
f <- function(x) missing(x)
f()
g <- function(x) x
g()
''')
    assert out == '[1] TRUE\nError in g(): argument "x" is missing, with no default\n'


def test_on_exit_runs_in_registration_order(run_r):
    out = run_r('''
f <- function() { on.exit(cat("first\\n")); on.exit(cat("second\\n"), add = TRUE); cat("body\\n") }
f()
''')
    assert out == 'body\nfirst\nsecond\n'


def test_error_is_reported_before_exit_handlers(run_r):
    out = run_r('''
g <- function() { on.exit(cat("cleanup\\n")); stop("boom") }
g()
''')
    assert out == 'Error in g(): boom\ncleanup\n'


def test_closures_capture_their_environment(run_r):
    out = run_r('''
make_counter <- function() { i <- 0; function() { i <<- i + 1; i } }
counter <- make_counter()
counter(); counter()
''')
    assert out == '[1] 1\n[1] 2\n'


def test_values_are_copied_but_environments_are_shared(run_r):
    out = run_r('''
x <- c(1, 2, 3)
f <- function(v) { v[1] <- 100; v }
y <- f(x)
x
e <- new.env()
set <- function(env) assign("k", 42, envir = env)
set(e)
get("k", envir = e)
''')
    assert out == '[1] 1 2 3\n[1] 42\n'


def test_loops(run_r):
    out = run_r('''
i <- 0
repeat { i <- i + 1; if (i >= 6) break }
i
total <- 0
for (k in 1:10) { if (k %% 2 == 0) next; total <- total + k }
total
n <- 3
while (n > 0) n <- n - 1
n
''')
    assert out == '[1] 6\n[1] 25\n[1] 0\n'


def test_switch_falls_through_empty_alternatives(run_r):
    out = run_r('''
switch("b", a = "A", b = , c = "C")
switch("z", a = 1, 2)
is.null(switch("z", a = 1))
''')
    assert out == '[1] "C"\n[1] 2\n[1] TRUE\n'


def test_error_formats(run_r):
    out = run_r('''
stop("bad")
f <- function() stop("bad")
f()
nope
nofun()
1 + "a"
''')
    assert out.split('\n') == [
        'Error: bad',
        'Error in f(): bad',
        "Error: object 'nope' not found",
        'Error in nofun(): could not find function "nofun"',
        'Error in 1 + "a": non-numeric argument to binary operator',
        '',
    ]


def test_error_abandons_only_the_rest_of_its_line(run_r):
    out = run_r('''
stop("a"); cat("skipped\\n")
cat("next\\n")
''')
    assert out == 'Error: a\nnext\n'


def test_warnings_follow_the_printed_value(run_r):
    out = run_r('''
f <- function() { warning("careful"); 1 }
f()
''')
    assert out == '[1] 1\nWarning in f(): careful\n'


def test_invisible_results_are_not_printed(run_r):
    out = run_r('''
x <- 5
invisible(7)
(x <- 6)
f <- function() invisible(3)
f()
y <- f()
y
''')
    assert out == '[1] 6\n[1] 3\n'


def test_return_leaves_the_function_early(run_r):
    out = run_r('''
f <- function(x) { if (x > 0) return("positive"); "other" }
f(1); f(-1)
''')
    assert out == '[1] "positive"\n[1] "other"\n'


def test_break_outside_a_loop(run_r):
    assert run_r('break') == 'Error: no loop for break/next, jumping to top level\n'


RECURSION_REPORT = ('Error: evaluation nested too deeply: infinite recursion /\n'
                    '     options(expressions=)?\n')


def test_infinite_recursion_is_caught():
    sink = TranscriptSink()
    interp = make_interpreter({'recursion_limit': 100}, sink=sink)
    session = LineSession(interp)
    session.feed('f <- function(n) f(n + 1)')
    session.feed('f(1)')
    session.feed('cat("still alive\\n")')
    out = sink.take()
    assert out == RECURSION_REPORT + 'still alive\n'
    assert interp.frames == []


def test_infinite_recursion_at_the_default_limit():
    sink = TranscriptSink()
    interp = make_interpreter(sink=sink)
    session = LineSession(interp)
    session.feed('deep <- function(n) deep(n + 1)')
    session.feed('deep(1)')
    session.feed('cat("still alive\\n")')
    assert sink.take() == RECURSION_REPORT + 'still alive\n'
    assert interp.frames == []


def test_deep_but_finite_recursion_completes(run_r):
    out = run_r('''
f <- function(n) if (n > 0) f(n - 1) else 0
f(4000)
''')
    assert out == '[1] 0\n'


def test_long_warning_wraps_without_indent(run_r):
    out = run_r('x <- c(1, 10, 100) * 1:8')
    assert out == ('Warning in c(1, 10, 100) * 1:8: longer object length is not a multiple of\n'
                   'shorter object length\n')


def test_long_error_wraps_with_indent(run_r):
    out = run_r('''
x <- NA
if (x > 0.5) "head" else "tail"
''')
    assert out == ('Error in if (x > 0.5) "head" else "tail": missing value where TRUE/FALSE\n'
                   '     needed\n')


def test_recursive_default_argument(run_r):
    out = run_r('''
f <- function(x = x) x
f()
''')
    assert 'promise already under evaluation' in out


def test_substitute_and_deparse_see_the_expression(run_r):
    out = run_r('''
show <- function(e) deparse(substitute(e))
show(testing+1+2+3)
''')
    assert out == '[1] "testing + 1 + 2 + 3"\n'


def test_match_call_reorders_into_formal_order(run_r):
    out = run_r('''
test <- function(x, y, ..., u) match.call()
test(y = "bacon", "spam", "eggs", u = "ham")
''')
    assert out == 'test(x = "spam", y = "bacon", "eggs", u = "ham")\n'


def test_replacement_errors_name_the_assignment(run_r):
    out = run_r('''
x <- 1
attr(x, "class") <- 1
attr(x, "class")[1] <- 1
''')
    assert out == ('Error in attr(x, "class") <- 1: attempt to set invalid \'class\' attribute\n'
                   'Error in attr(x, "class")[1] <- 1: attempt to set invalid \'class\'\n'
                   '     attribute\n')


def test_replacement_warnings_name_the_assignment(run_r):
    out = run_r('''
x <- 1:6
x[1:4] <- 1:3
where <- tryCatch(x[1:4] <- 1:3, warning = function(w) conditionCall(w))
print(where)
''')
    assert out == ('Warning in x[1:4] <- 1:3: number of items to replace is not a multiple of\n'
                   'replacement length\n'
                   'x[1:4] <- 1:3\n')


def test_closure_setter_errors_keep_the_setter_call(run_r):
    out = run_r('''
`add<-` <- function(x, value) stop("nope")
y <- 1
add(y) <- 2
''')
    assert out == 'Error in `add<-`(`*tmp*`, value = 2): nope\n'


@pytest.mark.parametrize('source, report', [
    ('a::b', 'Error in a::b: unsupported operator\n'),
    ('a:::b', 'Error in a:::b: unsupported operator\n'),
    ('x@y', 'Error in x@y: unsupported operator\n'),
    ('?mean', 'Error in ?mean: unsupported operator\n'),
    ('a := 1', 'Error in `:=`(a, 1): unsupported operator\n'),
])
def test_unsupported_operators(run_r, source, report):
    assert run_r(source) == report


FORMALS = 'abcd'
FORCING_USES = ['{0}', 'identity({0})', '{0} + 0', '({0})']


def random_call_shape(rng):
    """Source defining ``f`` and calling it, plus how many promises the call forces."""
    formals = FORMALS[:rng.randint(1, len(FORMALS))]
    uses, forced = [], set()
    for _ in range(rng.randint(0, 6)):
        name = rng.choice(formals)
        if rng.random() < 0.2:
            uses.append(f'missing({name})')
        else:
            uses.append(rng.choice(FORCING_USES).format(name))
            forced.add(name)
    header = ', '.join(f'{name} = tick(0)' for name in formals)
    supplied = [name for name in formals if rng.random() < 0.6]
    named = [name for name in supplied if rng.random() < 0.5]
    args = [f'{name} = tick({k})' for k, name in enumerate(named, start=1)]
    args += [f'tick({k})' for k in range(len(supplied) - len(named))]
    rng.shuffle(args)
    source = (f'count <- 0\n'
              f'f <- function({header}) {{ {"; ".join(uses + ["NULL"])} }}\n'
              f'f({", ".join(args)})\n'
              f'count')
    return source, len(forced)


def test_each_promise_is_forced_at_most_once(r_value):
    r_value('tick <- function(v) { count <<- count + 1; v }')
    rng = random.Random(37)
    for _ in range(500):
        source, forced = random_call_shape(rng)
        assert r_value(source).values() == [forced], source


REPLACEMENT_FORMS = {
    'subset': ('x1[{i}] <- {v}',
               '`*tmp*` <- x2\nx2 <- `[<-`(`*tmp*`, {i}, value = {v})'),
    'names': ('names(x1)[{i}] <- "{s}"',
              '`*tmp*` <- x2\nx2 <- `names<-`(`*tmp*`, value = `[<-`(names(`*tmp*`), {i}, value = "{s}"))'),
    'user': ('add(x1, {i}) <- {v}',
             '`*tmp*` <- x2\nx2 <- `add<-`(`*tmp*`, {i}, value = {v})'),
}


def test_replacement_sugar_matches_the_tmp_expansion(r_value):
    r_value('`add<-` <- function(x, where, value) { x[where] <- x[where] + value; x }')
    rng = random.Random(41)
    for _ in range(200):
        n = rng.randint(2, 5)
        labels = ', '.join(f'{"abcde"[k]} = {rng.randint(-9, 9)}' for k in range(n))
        form = rng.choice(sorted(REPLACEMENT_FORMS))
        sugar, expansion = REPLACEMENT_FORMS[form]
        fill = {'i': rng.randint(1, n if form == 'names' else n + 2),
                'v': rng.randint(-9, 9), 's': rng.choice('pqrs')}
        source = '\n'.join([f'x <- c({labels})', 'x1 <- x', 'x2 <- x',
                            expansion.format(**fill), sugar.format(**fill), 'identical(x1, x2)'])
        assert r_value(source).values() == [True], source
