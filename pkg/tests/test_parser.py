import random

import numpy as np
import pytest

from deepr.core.conditions import IncompleteInput, RSyntaxError
from deepr.core.values import mk_double
from deepr.language.ast import Arg, Call, Symbol, lang_equal
from deepr.language.parser import is_incomplete, parse_one, parse_program


# operator -> (level, right associative); unary minus sits between ':' and '^'
BINARY_LEVELS = {
    '+': (1, False), '-': (1, False),
    '*': (2, False), '/': (2, False),
    '%%': (3, False),
    ':': (4, False),
    '^': (6, True),
}
UNARY_LEVEL = 5
LEAF_LEVEL = 99


def random_tree(rng, depth):
    """A random (tree, text, level) triple rendered with minimal parentheses."""
    if depth == 0 or rng.random() < 0.25:
        name = rng.choice('abcd')
        return Symbol(name), name, LEAF_LEVEL
    if rng.random() < 0.15:
        operand, text, level = random_tree(rng, depth - 1)
        if level < UNARY_LEVEL:
            text = f'({text})'
        return Call(Symbol('-'), [Arg(None, operand)]), f'-{text}', UNARY_LEVEL
    op = rng.choice(sorted(BINARY_LEVELS))
    level, right_assoc = BINARY_LEVELS[op]
    lhs, ltext, llevel = random_tree(rng, depth - 1)
    rhs, rtext, rlevel = random_tree(rng, depth - 1)
    if llevel < level or (right_assoc and llevel == level):
        ltext = f'({ltext})'
    if rlevel < level or (not right_assoc and rlevel == level):
        rtext = f'({rtext})'
    tree = Call(Symbol(op), [Arg(None, lhs), Arg(None, rhs)])
    return tree, f'{ltext} {op} {rtext}', level


def strip_parens(node):
    if isinstance(node, Call):
        if node.fn is Symbol('('):
            return strip_parens(node.args[0].value)
        return Call(node.fn, [Arg(a.name, strip_parens(a.value)) for a in node.args])
    return node


def call(op, *operands):
    return Call(Symbol(op), [Arg(None, x) for x in operands])


def test_precedence_matches_minimal_parenthesisation():
    rng = random.Random(20240611)
    for _ in range(10000):
        tree, text, _ = random_tree(rng, rng.randint(1, 6))
        parsed = strip_parens(parse_one(text))
        assert lang_equal(parsed, tree), text


ARITH_LEVELS = {'+': (1, False), '-': (1, False), '*': (2, False), '/': (2, False), '^': (6, True)}
LEAVES = ['0', '1', '2', '3', '5', '7', '0.5']


def r_arith(op, x, y):
    with np.errstate(all='ignore'):
        if op == '+':
            return x + y
        if op == '-':
            return x - y
        if op == '*':
            return x * y
        if op == '/':
            return x / y
        if x == 1 or y == 0:
            return np.float64(1.0)
        return np.power(x, y)


def random_arith(rng, depth):
    """A random arithmetic (value, text, level) triple; the value is computed from the tree."""
    if depth == 0 or rng.random() < 0.25:
        leaf = rng.choice(LEAVES)
        return np.float64(float(leaf)), leaf, LEAF_LEVEL
    if rng.random() < 0.15:
        value, text, level = random_arith(rng, depth - 1)
        if level < UNARY_LEVEL:
            text = f'({text})'
        return -value, f'-{text}', UNARY_LEVEL
    op = rng.choice(sorted(ARITH_LEVELS))
    level, right_assoc = ARITH_LEVELS[op]
    lvalue, ltext, llevel = random_arith(rng, depth - 1)
    rvalue, rtext, rlevel = random_arith(rng, depth - 1)
    if llevel < level or (right_assoc and llevel == level):
        ltext = f'({ltext})'
    if rlevel < level or (not right_assoc and rlevel == level):
        rtext = f'({rtext})'
    return r_arith(op, lvalue, rvalue), f'{ltext} {op} {rtext}', level


def test_precedence_evaluates_like_a_recursive_oracle(interp):
    rng = random.Random(4242)
    for _ in range(10000):
        expected, text, _ = random_arith(rng, rng.randint(1, 6))
        got = interp.eval(parse_one(text), interp.global_env).data[0]
        if np.isnan(expected):
            assert np.isnan(got), text
        else:
            assert got == expected, text


@pytest.mark.parametrize('source, expected', [
    ('-a^b', call('-', call('^', Symbol('a'), Symbol('b')))),
    ('a^b^c', call('^', Symbol('a'), call('^', Symbol('b'), Symbol('c')))),
    ('-a:b', call(':', call('-', Symbol('a')), Symbol('b'))),
    ('a - b - c', call('-', call('-', Symbol('a'), Symbol('b')), Symbol('c'))),
    ('!a & b', call('!', call('&', Symbol('a'), Symbol('b')))),
    ('a | b & c', call('|', Symbol('a'), call('&', Symbol('b'), Symbol('c')))),
    ('a %in% b * c', call('*', call('%in%', Symbol('a'), Symbol('b')), Symbol('c'))),
    ('a <- b <- c', call('<-', Symbol('a'), call('<-', Symbol('b'), Symbol('c')))),
    ('a -> b', call('<-', Symbol('b'), Symbol('a'))),
    ('"f" <- 1', call('<-', Symbol('f'), mk_double([1.0]))),
])
def test_operator_shapes(source, expected):
    assert lang_equal(parse_one(source), expected)


def test_comparisons_do_not_chain():
    with pytest.raises(RSyntaxError) as info:
        parse_one('a < b < c')
    assert not isinstance(info.value, IncompleteInput)
    assert "unexpected '<'" in info.value.message


def test_pipe_inserts_first_argument():
    assert lang_equal(parse_one('x |> f(y)'), parse_one('f(x, y)'))
    assert lang_equal(parse_one('x |> f() |> g(2)'), parse_one('g(f(x), 2)'))


def test_pipe_placeholder_must_be_named():
    assert lang_equal(parse_one('x |> f(1, y = _)'), parse_one('f(1, y = x)'))
    with pytest.raises(RSyntaxError):
        parse_one('x |> f(_)')


def test_pipe_requires_a_call():
    with pytest.raises(RSyntaxError) as info:
        parse_one('x |> function(y) y')
    assert 'RHS' in info.value.message


def test_backslash_lambda_is_function():
    lam = parse_one('\\(x) x + 1')
    assert lam.fn is Symbol('function')
    assert lang_equal(lam.args[1].value, parse_one('x + 1'))
    assert lam.args[0].value.names() == ['x']


def test_function_keeps_source_text():
    fn = parse_one('function(a, b = 2) {\n  a + b\n}')
    assert fn.srcref == 'function(a, b = 2) {\n  a + b\n}'


def test_repeated_formal_argument():
    with pytest.raises(RSyntaxError) as info:
        parse_one('function(a, a) 1')
    assert "repeated formal argument 'a'" in info.value.message


def test_string_in_call_position_becomes_symbol():
    assert parse_one('"sum"(1, 2)').fn is Symbol('sum')


def test_empty_index_arguments_are_missing():
    node = parse_one('m[, 1]')
    assert node.fn is Symbol('[')
    assert node.args[1].value is Symbol('')
    assert len(parse_one('x[]').args) == 2


@pytest.mark.parametrize('source', [
    'f(1,', '{', 'x <- ', '"abc', 'if (TRUE)', 'function(x)', '1 +\n', 'c(1,\n2',
])
def test_incomplete_input(source):
    assert is_incomplete(source)
    with pytest.raises(IncompleteInput):
        parse_program(source)


@pytest.mark.parametrize('source', ['1 + 1', ')', '1 2', 'x <- 3; y <- 4'])
def test_complete_or_broken_input_is_not_incomplete(source):
    assert not is_incomplete(source)


def test_syntax_error_message_names_token_and_text():
    with pytest.raises(RSyntaxError) as info:
        parse_program('x <- 1 2')
    err = info.value
    assert err.message == 'unexpected numeric constant'
    assert err.top_level_message() == 'unexpected numeric constant in "x <- 1 2"'


def test_top_level_else_is_an_error_but_not_inside_braces():
    with pytest.raises(RSyntaxError):
        parse_program('if (TRUE) 1\nelse 2')
    block = parse_one('{\n  if (FALSE) 1\n  else 2\n}')
    assert len(block.args) == 1
    assert len(block.args[0].value.args) == 3


def test_newlines_inside_parentheses_continue_the_expression():
    assert lang_equal(parse_one('f(1,\n  2)'), parse_one('f(1, 2)'))
    assert len(parse_program('1\n+2')) == 2


def test_semicolons_separate_statements():
    assert len(parse_program('a <- 1; b <- 2; a + b')) == 3


def test_integer_and_double_literals():
    assert parse_one('5L').rtype == 'integer'
    assert parse_one('5').rtype == 'double'
    assert parse_one('0x10').data[0] == 16.0
    assert parse_one('1e3').data[0] == 1000.0
