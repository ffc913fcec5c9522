def test_print_method_is_used_for_auto_printing(run_r):
    out = run_r('''
print.money <- function(x, ...) cat("$", format(unclass(x)), "\\n")
m <- structure(5, class = "money")
m
print(m)
''')
    assert out == '$ 5 \n$ 5 \n'


def test_use_method_and_next_method_walk_the_class_vector(run_r):
    out = run_r('''
describe <- function(x, ...) UseMethod("describe")
describe.default <- function(x, ...) cat("something\\n")
describe.dog <- function(x, ...) { cat("a dog\\n"); NextMethod() }
describe.animal <- function(x, ...) { cat("an animal\\n"); NextMethod() }
d <- structure(list(), class = c("dog", "animal"))
describe(d)
describe(1)
''')
    assert out == 'a dog\nan animal\nsomething\nsomething\n'


def test_dispatch_uses_implicit_classes(run_r):
    out = run_r('''
kind <- function(x) UseMethod("kind")
kind.numeric <- function(x) "numeric"
kind.integer <- function(x) "integer"
kind.matrix <- function(x) "matrix"
kind.function <- function(x) "function"
kind(1); kind(1L); kind(matrix(1:4, 2)); kind(sum)
''')
    assert out == '[1] "numeric"\n[1] "integer"\n[1] "matrix"\n[1] "function"\n'


def test_no_applicable_method(run_r):
    out = run_r('''
area <- function(s) UseMethod("area")
area(1)
''')
    assert "no applicable method for 'area' applied to an object of class \"c('double', 'numeric')\"" in out


def test_ops_group_generic(run_r):
    out = run_r('''
Ops.money <- function(e1, e2) {
  v <- get(.Generic)(unclass(e1), unclass(e2))
  if (.Generic %in% c("+", "-")) structure(v, class = "money") else v
}
a <- structure(5, class = "money")
b <- structure(7, class = "money")
unclass(a + b)
a < b
class(b - a)
''')
    assert out == '[1] 12\n[1] TRUE\n[1] "money"\n'


def test_internal_generic_dispatches_to_user_method(run_r):
    out = run_r('''
length.stack <- function(x) 99L
s <- structure(list(1, 2), class = "stack")
length(s)
length(unclass(s))
''')
    assert out == '[1] 99\n[1] 2\n'


def test_method_sees_dispatch_variables(run_r):
    out = run_r('''
speak <- function(x) UseMethod("speak")
speak.cat <- function(x) cat(.Generic, .Class, "\\n")
speak(structure(1, class = c("cat", "pet")))
''')
    assert out == 'speak cat pet \n'


def test_class_and_inherits(run_r):
    out = run_r('''
class(matrix(1:4, 2))
class(1L); class("a"); class(NULL); class(sum)
x <- structure(list(), class = c("dog", "animal"))
inherits(x, "animal"); inherits(x, c("cat", "fish"))
inherits(x, c("cat", "animal"), which = TRUE)
''')
    assert out.split('\n') == [
        '[1] "matrix" "array" ',
        '[1] "integer"',
        '[1] "character"',
        '[1] "NULL"',
        '[1] "function"',
        '[1] TRUE',
        '[1] FALSE',
        '[1] 0 2',
        '',
    ]


def test_print_default_shows_the_class_attribute(run_r):
    out = run_r('structure(1:3, class = "tagged")')
    assert out == '[1] 1 2 3\nattr(,"class")\n[1] "tagged"\n'


def test_as_numeric_uses_as_double_methods(run_r):
    out = run_r('''
as.double.codes <- function(x, ...) as.double(attr(x, "labels")[unclass(x)])
x <- structure(c(2L, 1L), labels = c("10", "20"), class = "codes")
as.double(x)
as.numeric(x)
''')
    assert out == '[1] 20 10\n[1] 20 10\n'


def test_next_method_forwards_reassigned_arguments(run_r):
    out = run_r('''
`[<-.coded` <- function(x, i, value) {
  value <- match(value, attr(x, "labels"))
  NextMethod()
}
x <- structure(c(1, 1, 1), labels = c("a", "b"), class = "coded")
x[2:3] <- c("b", "z")
unclass(x)
''')
    assert out == '[1]  1  2 NA\nattr(,"labels")\n[1] "a" "b"\n'


def test_incompatible_operator_methods_fall_back_with_a_warning(run_r):
    out = run_r('''
`==.A` <- function(e1, e2) "A"
`==.B` <- function(e1, e2) "B"
structure(c(1, 2, 3), class = "A") == structure(c(2, NA, 3), class = "B")
''')
    assert out == ('[1] FALSE    NA  TRUE\n'
                   'Warning: Incompatible methods ("==.A", "==.B") for "=="\n')
