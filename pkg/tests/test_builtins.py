import random

import pytest

from deepr.builtins.session import LCG_INCREMENT, LCG_MODULUS, LCG_MULTIPLIER, lcg_step


def lines(out):
    return out.split('\n')[:-1]


# strings

def test_paste_recycles_and_collapses(run_r):
    out = run_r('''
paste("a", 1:3, sep = "-")
paste0("x", c("a", "b"), collapse = "+")
paste(c("a", NA), "z")
paste(character(0), collapse = "")
''')
    assert lines(out) == [
        '[1] "a-1" "a-2" "a-3"',
        '[1] "xa+xb"',
        '[1] "a z"  "NA z"',
        '[1] ""',
    ]


def test_nchar_counts_decoded_characters(run_r):
    out = run_r(r'''
nchar("I \"love\" bacon\n\\\"/")
nchar(c("abc", NA))
nchar(NA)
''')
    assert lines(out) == ['[1] 18', '[1]  3 NA', '[1] 2']


def test_case_and_substrings(run_r):
    out = run_r('''
toupper("abc"); tolower("DeF")
substr("abcdef", 2, 4)
substr(c("hello", "world"), 1, 3)
toString(1:3)
''')
    assert lines(out) == [
        '[1] "ABC"',
        '[1] "def"',
        '[1] "bcd"',
        '[1] "hel" "wor"',
        '[1] "1, 2, 3"',
    ]


def test_sprintf_is_vectorised(run_r):
    out = run_r('''
sprintf("%5.2f|%-3d|%s", pi, 7L, "x")
sprintf("%s has %d", c("a", "b"), 1:2)
sprintf("%d%%", 10L)
sprintf("%d", 1.5)
''')
    assert lines(out)[:3] == ['[1] " 3.14|7  |x"', '[1] "a has 1" "b has 2"', '[1] "10%"']
    assert 'invalid format' in lines(out)[3]


def test_format_pads_to_a_common_width(run_r):
    out = run_r('''
format(c(1, 10, 100))
format(2, nsmall = 2)
format(TRUE)
''')
    assert lines(out) == ['[1] "  1" " 10" "100"', '[1] "2.00"', '[1] "TRUE"']


def test_cat_writes_plain_text(run_r):
    out = run_r('''
cat(1, "a", TRUE, NULL, NA, "\\n")
cat(1:3, sep = ", "); cat("\\n")
cat(0.1 + 0.2, "\\n")
cat(list(1, "a"), "\\n")
cat(list(1:2))
''')
    assert lines(out) == [
        '1 a TRUE NA ',
        '1, 2, 3',
        '0.3 ',
        '1 a ',
        "Error in cat(list(1:2)): argument 1 (type 'list') cannot be handled by",
        "     'cat'",
    ]


def test_print_arguments(run_r):
    out = run_r('''
print(pi, digits = 3)
noquote(c("a", "b"))
x <- print("shown")
''')
    assert lines(out) == ['[1] 3.14', '[1] a b', '[1] "shown"']


# sequences and replication

def test_sequences(run_r):
    out = run_r('''
seq(1, 10, by = 3)
seq(5)
seq(0, 1, length.out = 5)
seq(10, 7)
seq_len(0)
seq_along(c("a", "b", "c"))
''')
    assert lines(out) == [
        '[1]  1  4  7 10',
        '[1] 1 2 3 4 5',
        '[1] 0.00 0.25 0.50 0.75 1.00',
        '[1] 10  9  8  7',
        'integer(0)',
        '[1] 1 2 3',
    ]


def test_seq_rejects_a_backwards_step(run_r):
    assert "wrong sign in 'by' argument" in run_r('seq(1, 2, by = -1)')


def test_rep_variants(run_r):
    out = run_r('''
rep(1:2, times = 3)
rep(1:2, each = 2)
rep(c("a", "b"), times = c(2, 1))
rep(1:3, length.out = 7)
rep(c(x = 1), 2)
''')
    assert lines(out) == [
        '[1] 1 2 1 2 1 2',
        '[1] 1 1 2 2',
        '[1] "a" "a" "b"',
        '[1] 1 2 3 1 2 3 1',
        'x x ',
        '1 1 ',
    ]


def test_colon_builds_integers_only_from_whole_numbers(run_r):
    out = run_r('''
typeof(1:3)
typeof(1.5:3)
1.5:3
''')
    assert lines(out) == ['[1] "integer"', '[1] "double"', '[1] 1.5 2.5']


# searching and ordering

def test_ordering(run_r):
    out = run_r('''
order(c(3, 1, NA, 2))
sort(c(3, 1, NA, 2))
sort(c(3, 1, 2), decreasing = TRUE)
sort(c("banana", "Apple", "cherry"))
order(c(1, 1, 2), c(3, 2, 1))
rev(c(a = 1, b = 2))
''')
    assert lines(out) == [
        '[1] 2 4 1 3',
        '[1] 1 2 3',
        '[1] 3 2 1',
        '[1] "Apple"  "banana" "cherry"',
        '[1] 2 1 3',
        'b a ',
        '2 1 ',
    ]


def insertion_order(values, decreasing=False):
    """1-based positions from a stable insertion sort with NAs last."""
    out = []
    for i, v in enumerate(values):
        k = len(out)
        if v is not None:
            while k > 0:
                w = values[out[k - 1] - 1]
                if w is not None and not (w < v if decreasing else w > v):
                    break
                k -= 1
        out.insert(k, i + 1)
    return out


def test_order_matches_insertion_sort(r_value):
    rng = random.Random(31)
    for _ in range(1000):
        values = [None if rng.random() < 0.2 else rng.randint(-3, 3) for _ in range(rng.randint(1, 12))]
        decreasing = rng.random() < 0.5
        literal = ', '.join('NA' if v is None else f'{v}L' for v in values)
        flag = 'TRUE' if decreasing else 'FALSE'
        result = r_value(f'order(c({literal}), decreasing = {flag})')
        assert result.values() == insertion_order(values, decreasing), (values, decreasing)


def test_matching_and_sets(run_r):
    out = run_r('''
match(c("b", "z"), c("a", "b"))
c(1, 5) %in% 1:3
union(1:3, 2:5)
intersect(1:5, c(2, 4, 8))
setdiff(c("a", "b", "c"), "b")
is.element(3, 1:2)
''')
    assert lines(out) == [
        '[1]  2 NA',
        '[1]  TRUE FALSE',
        '[1] 1 2 3 4 5',
        '[1] 2 4',
        '[1] "a" "c"',
        '[1] FALSE',
    ]


def test_positions_and_counts(run_r):
    out = run_r('''
which(c(a = TRUE, b = FALSE, c = TRUE))
which.max(c(3, 9, 2)); which.min(c(3, 9, 2))
findInterval(c(1.5, 3.2, 0), c(0, 1, 2, 3))
tabulate(c(2, 3, 3, 5), nbins = 5)
duplicated(c(1, 2, 1, NA, NA))
unique(c(3, 1, 3, 2))
anyDuplicated(c("x", "y", "x"))
''')
    assert lines(out) == [
        'a c ',
        '1 3 ',
        '[1] 2',
        '[1] 3',
        '[1] 2 4 1',
        '[1] 0 1 2 0 1',
        '[1] FALSE FALSE  TRUE FALSE  TRUE',
        '[1] 3 1 2',
        '[1] 3',
    ]


def test_ifelse_keeps_missing_tests(run_r):
    out = run_r('ifelse(c(1, NA, 3) > 2, "big", "small")')
    assert out == '[1] "small" NA      "big"  \n'


# higher-order functions

def test_map_and_lapply(run_r):
    out = run_r('''
Map(function(x, y) x + y, 1:2, 3:4)
Map(nchar, c("ab", "c"))
unlist(lapply(1:3, function(i) i^2))
''')
    assert out == ('[[1]]\n[1] 4\n\n[[2]]\n[1] 6\n\n'
                   '$ab\n[1] 2\n\n$c\n[1] 1\n\n'
                   '[1] 1 4 9\n')


def test_reduce_filter_and_friends(run_r):
    out = run_r('''
Reduce(`+`, 1:4, accumulate = TRUE)
Reduce(function(a, b) paste0(b, a), letters[1:3])
Reduce(`+`, list(), 0)
Filter(function(x) x %% 2 == 0, 1:6)
mapply(function(x, y) x * y, 1:3, 4:6)
Position(function(x) x > 2, c(1, 3, 5))
Find(function(x) x > 2, c(1, 3, 5))
Negate(is.null)(1)
''')
    assert lines(out) == [
        '[1]  1  3  6 10',
        '[1] "cba"',
        '[1] 0',
        '[1] 2 4 6',
        '[1]  4 10 18',
        '[1] 2',
        '[1] 3',
        '[1] TRUE',
    ]


def test_do_call_accepts_names_and_functions(run_r):
    out = run_r('''
do.call("sum", list(1, 2, 3))
do.call(paste, list("a", "b", sep = "-"))
''')
    assert lines(out) == ['[1] 6', '[1] "a-b"']


# conditions

def test_try_catch_handlers(run_r):
    out = run_r('''
tryCatch(stop("boom"), error = function(e) conditionMessage(e))
tryCatch(warning("w"), warning = function(w) paste("caught", conditionMessage(w)))
tryCatch(10, finally = cat("done\\n"))
x <- tryCatch(message("hi"), message = function(m) cat("got", conditionMessage(m)))
''')
    assert lines(out) == ['[1] "boom"', '[1] "caught w"', 'done', '[1] 10', 'got hi']


def test_try_catch_runs_finally_after_the_handler(run_r):
    out = run_r('''
f <- function() {
  tryCatch({
    warning("first")
    cat("not reached\\n")
  }, warning = function(w) cat("caught:", conditionMessage(w), "\\n"),
  finally = cat("finally\\n"))
}
x <- f()
''')
    assert out == 'caught: first \nfinally\n'


def test_unhandled_conditions_pass_through(run_r):
    out = run_r('''
tryCatch(stop("deep"), warning = function(w) "wrong handler")
cat("after\\n")
''')
    assert out == 'Error: deep\nafter\n'


def test_condition_objects_print(run_r):
    out = run_r('''
f <- function() stop("inner")
tryCatch(f(), error = function(e) e)
simpleError("plain")
e <- tryCatch(stop("x"), error = function(e) e)
class(e)
is.null(conditionCall(e))
''')
    assert lines(out) == [
        '<simpleError in f(): inner>',
        '<simpleError: plain>',
        '[1] "simpleError" "error"       "condition"  ',
        '[1] TRUE',
    ]


def test_try_reports_and_returns_a_try_error(run_r):
    out = run_r('''
r <- try(stop("oops"))
class(r)
r2 <- try(stop("quiet"), silent = TRUE)
inherits(r2, "try-error")
g <- function() stop("in g")
r3 <- try(g())
''')
    assert lines(out) == [
        'Error : oops',
        '[1] "try-error"',
        '[1] TRUE',
        'Error in g() : in g',
    ]


def test_suppression(run_r):
    out = run_r('''
suppressWarnings(as.numeric("x"))
suppressMessages(message("hidden"))
message("shown")
''')
    assert lines(out) == ['[1] NA', 'shown']


def test_coercion_warning_has_no_call(run_r):
    out = run_r('as.numeric("x")')
    assert out == '[1] NA\nWarning: NAs introduced by coercion\n'


def test_top_level_warning_has_no_call(run_r):
    assert run_r('warning("top")') == 'Warning: top\n'


def test_stopifnot(run_r):
    out = run_r('''
stopifnot(TRUE, 1 < 2)
stopifnot(c(TRUE, FALSE))
f <- function(x) stopifnot(x > 0)
f(-1)
''')
    assert lines(out) == [
        'Error: c(TRUE, FALSE) are not all TRUE',
        'Error in f(-1): x > 0 is not TRUE',
    ]


# session state

def test_lcg_step_matches_the_recurrence():
    state = 1
    for _ in range(1000):
        expected = (LCG_MULTIPLIER * state + LCG_INCREMENT) % LCG_MODULUS
        state = lcg_step(state)
        assert state == expected
        assert 0 <= state < LCG_MODULUS


def test_lcg_builtins(run_r):
    out = run_r('''
lcg_next(1)
lcg(3, seed = 1)
lcg(1)
lcg_next(c(0, NA), a = 3, c = 1, m = 7)
''')
    assert lines(out) == ['[1] 149', '[1]   149 11249 57305', '[1] 38044', '[1]  1 NA']


def test_lcg_needs_a_seed_first(run_r):
    assert "no generator state; supply 'seed'" in run_r('lcg(2)')


def test_options_change_printing(run_r):
    out = run_r('''
getOption("width")
old <- options(digits = 3)
pi
options(old)
pi
getOption("nothing", "fallback")
''')
    assert lines(out) == ['[1] 80', '[1] 3.14', '[1] 3.141593', '[1] "fallback"']


@pytest.mark.parametrize('source, report', [
    ('options(digits = 0)', "Error in options(digits = 0): invalid 'digits' parameter, allowed 1...17\n"),
    ('options(digits = 22)', "Error in options(digits = 22): invalid 'digits' parameter, allowed 1...17\n"),
    ('options(width = 10)', "Error in options(width = 10): invalid 'width' parameter, allowed 20...10000\n"),
    ('options(digits = "x")', "Error in options(digits = \"x\"): invalid 'digits' parameter, allowed 1...17\n"),
])
def test_options_reject_out_of_range_values(run_r, source, report):
    assert run_r(source) == report


def test_rejected_options_leave_the_others_unchanged(run_r):
    out = run_r('''
options(digits = 4, width = 5)
getOption("digits")
options(digits = 17)
getOption("digits")
''')
    assert lines(out)[-2:] == ['[1] 7', '[1] 17']


@pytest.mark.parametrize('source, expected', [
    ('interactive()', '[1] FALSE'),
    ('identity(5)', '[1] 5'),
    ('isTRUE(c(TRUE, TRUE))', '[1] FALSE'),
    ('isFALSE(FALSE)', '[1] TRUE'),
    ('all.equal(1, 1 + 1e-10)', '[1] TRUE'),
    ('all.equal(1, 1.1)', '[1] "Mean relative difference: 0.1"'),
    ('xor(TRUE, FALSE)', '[1] TRUE'),
    ('is.na(c(1, NA, NaN))', '[1] FALSE  TRUE  TRUE'),
    ('is.nan(c(1, NA, NaN))', '[1] FALSE FALSE  TRUE'),
    ('round(2.567, 1)', '[1] 2.6'),
    ('signif(123456, 2)', '[1] 120000'),
    ('range(c(4, 2, 9))', '[1] 2 9'),
    ('median(c(5, 1, 3, 2))', '[1] 2.5'),
    ('var(c(1, 2, 3, 4))', '[1] 1.666667'),
    ('diff(c(1, 4, 9, 16))', '[1] 3 5 7'),
    ('cumprod(1:5)', '[1]   1   2   6  24 120'),
    ('pmax(c(1, 5), c(3, 2))', '[1] 3 5'),
    ('head(letters, 3)', '[1] "a" "b" "c"'),
    ('tail(1:10, -7)', '[1]  8  9 10'),
    ('append(1:3, 99, after = 1)', '[1]  1 99  2  3'),
])
def test_small_builtins(run_r, source, expected):
    assert run_r(source) == expected + '\n'
