import random

import pytest

from deepr.core.values import NULL, mk_double, mk_int, mk_list, mk_logical, mk_str
from deepr.language.ast import Arg, Call, Symbol, lang_equal
from deepr.language.deparse import deparse, deparse_one, escape_string, quote_name
from deepr.language.parser import parse_one

from test_parser import random_tree, strip_parens


@pytest.mark.parametrize('source', [
    'x + 1',
    'a/b',
    'a^2',
    'x%%2',
    'x %in% y',
    '-(1 + 2)',
    '(a + b) * c',
    'f(x, y = 2)',
    'x[1]',
    'x[[i]]',
    'm[, 2]',
    'x$name',
    'a <- b <- 3',
    'if (a) b else c',
    'for (i in xs) print(i)',
    'while (TRUE) break',
    'function(x, y = 2) x + y',
    '!is.null(x)',
    '`my var` + 1',
    'f("a\\nb")',
])
def test_canonical_source_survives_deparse(source):
    assert deparse(parse_one(source)) == [source]


def test_braces_are_indented():
    block = parse_one('{\n a <- 1\n a + 1\n}')
    assert deparse(block) == ['{', '    a <- 1', '    a + 1', '}']
    assert deparse_one(block) == '{ a <- 1 a + 1 }'


def test_statement_if_else_without_braces_splits_lines():
    block = parse_one('{\n if (x) 1 else 2\n}')
    assert deparse(block) == ['{', '    if (x) ', '        1', '    else 2', '}']


@pytest.mark.parametrize('value, text', [
    (mk_int([5]), '5L'),
    (mk_int([1, 2, 3]), '1:3'),
    (mk_int([3, 1]), 'c(3L, 1L)'),
    (mk_double([1.5, 2]), 'c(1.5, 2)'),
    (mk_double([1e-20]), '1e-20'),
    (mk_double([None]), 'NA_real_'),
    (mk_double([1, None]), 'c(1, NA)'),
    (mk_logical([True, None]), 'c(TRUE, NA)'),
    (mk_str(['a', 'b"']), 'c("a", "b\\"")'),
    (mk_str([None]), 'NA_character_'),
    (mk_double([1, 2], {'names': mk_str(['a', 'b'])}), 'c(a = 1, b = 2)'),
    (mk_list([mk_double([1]), mk_str(['z'])], ['p', '']), 'list(p = 1, "z")'),
    (mk_double([]), 'numeric(0)'),
    (NULL, 'NULL'),
])
def test_values_deparse_to_constructors(value, text):
    assert deparse_one(value) == text


def test_extra_attributes_use_structure():
    value = mk_double([1], {'class': mk_str(['money'])})
    assert deparse_one(value) == 'structure(1, class = "money")'


def test_names_are_backticked_only_when_needed():
    assert quote_name('x.y') == 'x.y'
    assert quote_name('my var') == '`my var`'
    assert quote_name('if') == '`if`'
    assert quote_name('2x') == '`2x`'
    assert deparse(Symbol('my var')) == ['my var']


def test_string_escapes():
    assert escape_string('tab\there') == '"tab\\there"'
    assert escape_string("it's", "'") == "'it\\'s'"
    assert escape_string('\x01') == '"\\001"'


def test_generated_trees_round_trip_through_source():
    rng = random.Random(7)
    for _ in range(1000):
        tree, _, _ = random_tree(rng, rng.randint(1, 5))
        text = deparse_one(tree)
        assert lang_equal(strip_parens(parse_one(text)), tree), text


def test_unary_minus_on_the_right_is_not_wrapped():
    tree = Call(Symbol('-'), [Arg(None, Symbol('a')), Arg(None, Call(Symbol('-'), [Arg(None, Symbol('b'))]))])
    assert deparse_one(tree) == 'a - -b'


@pytest.mark.parametrize('source', [
    'x[1]$name[[2]]',
    'x$f(1)',
    'x$a[1]',
    'x$a$b',
    'x@slot[2]',
    'f(x)$y',
    '(a + b)$c',
    '-x$y',
    'x$a^2',
])
def test_dollar_binds_like_subsetting(source):
    tree = parse_one(source)
    assert deparse_one(tree) == source
    assert lang_equal(parse_one(deparse_one(tree)), tree)


@pytest.mark.parametrize('source', [
    '~!~b * 2',
    '-!x',
    '!-x',
    '`:=`(a, b)',
    '`:=`(~!~b * 2, ha@x$y <<- headache)',
])
def test_prefix_operators_chain_without_parentheses(source):
    tree = parse_one(source)
    assert deparse_one(tree) == source
    assert lang_equal(parse_one(deparse_one(tree)), tree)


def test_walrus_deparses_as_a_call():
    assert deparse_one(parse_one('a := b')) == '`:=`(a, b)'


def test_low_binding_prefix_chain_is_wrapped_as_an_operand():
    inner = Call(Symbol('-'), [Arg(None, Call(Symbol('!'), [Arg(None, Symbol('x'))]))])
    tree = Call(Symbol('+'), [Arg(None, inner), Arg(None, Symbol('y'))])
    assert deparse_one(tree) == '(-!x) + y'
    assert lang_equal(strip_parens(parse_one(deparse_one(tree))), tree)
