import math
import random

import pytest

from deepr.core import arith
from deepr.core.coercion import coerce_vector
from deepr.core.conditions import RError, reset_warning_sink, set_warning_sink
from deepr.core.values import INT_MAX, NULL, mk_double, mk_int, mk_logical, mk_str


class WarningRecorder:
    def __init__(self):
        self.messages = []

    def signal_warning(self, message, call):
        self.messages.append(message)


@pytest.fixture
def warnings():
    recorder = WarningRecorder()
    token = set_warning_sink(recorder)
    yield recorder.messages
    reset_warning_sink(token)


def random_values(rng, n, na_rate=0.2):
    return [None if rng.random() < na_rate else rng.randint(-50, 50) for _ in range(n)]


def test_recycling_matches_reference(warnings):
    rng = random.Random(11)
    ops = {'+': lambda a, b: a + b, '-': lambda a, b: a - b, '*': lambda a, b: a * b}
    for _ in range(500):
        n1, n2 = rng.randint(0, 7), rng.randint(0, 7)
        a, b = random_values(rng, n1), random_values(rng, n2)
        op = rng.choice(sorted(ops))
        warnings.clear()
        result = arith.arith(op, mk_int(a), mk_int(b))
        n = 0 if 0 in (n1, n2) else max(n1, n2)
        expected = []
        for i in range(n):
            x, y = a[i % n1], b[i % n2]
            expected.append(None if x is None or y is None else ops[op](x, y))
        assert result.rtype == 'integer'
        assert result.values() == expected
        uneven = n > 0 and n % min(n1, n2) != 0
        assert (arith.RECYCLE_WARNING in warnings) == uneven


def reference_and(x, y):
    if x is False or y is False:
        return False
    return None if None in (x, y) else True


def reference_or(x, y):
    if x is True or y is True:
        return True
    return None if None in (x, y) else False


def reference_xor(x, y):
    return None if None in (x, y) else x != y


LOGIC_REFERENCE = {'&': reference_and, '|': reference_or}


def test_comparison_and_logic_recycle_like_reference(warnings):
    rng = random.Random(29)
    for _ in range(500):
        n1, n2 = rng.randint(0, 7), rng.randint(0, 7)
        op = rng.choice(['<', '&', '|'])
        if op == '<':
            a, b = random_values(rng, n1), random_values(rng, n2)
            x, y = mk_int(a), mk_int(b)
        else:
            a = [rng.choice([True, False, None]) for _ in range(n1)]
            b = [rng.choice([True, False, None]) for _ in range(n2)]
            x, y = mk_logical(a), mk_logical(b)
        warnings.clear()
        result = arith.compare(op, x, y) if op == '<' else arith.logic(op, x, y)
        n = 0 if 0 in (n1, n2) else max(n1, n2)
        expected = []
        for i in range(n):
            p, q = a[i % n1], b[i % n2]
            if op == '<':
                expected.append(None if p is None or q is None else p < q)
            else:
                expected.append(LOGIC_REFERENCE[op](p, q))
        assert result.rtype == 'logical'
        assert result.values() == expected
        uneven = n > 0 and n % min(n1, n2) != 0
        assert (arith.RECYCLE_WARNING in warnings) == uneven


TRUTH_VALUES = [True, False, None]


@pytest.mark.parametrize('x', TRUTH_VALUES)
@pytest.mark.parametrize('y', TRUTH_VALUES)
def test_three_valued_truth_table(x, y):
    xv, yv = mk_logical([x]), mk_logical([y])
    assert arith.logic('&', xv, yv).values() == [reference_and(x, y)]
    assert arith.logic('|', xv, yv).values() == [reference_or(x, y)]
    assert arith.xor(xv, yv).values() == [reference_xor(x, y)]


def test_truth_table_through_the_language(run_r):
    out = run_r('''
x <- c(TRUE, TRUE, TRUE, FALSE, FALSE, FALSE, NA, NA, NA)
y <- c(TRUE, FALSE, NA, TRUE, FALSE, NA, TRUE, FALSE, NA)
x & y
x | y
xor(x, y)
''')
    assert out.split('\n')[:-1] == [
        '[1]  TRUE FALSE    NA FALSE FALSE FALSE    NA FALSE    NA',
        '[1]  TRUE  TRUE  TRUE  TRUE FALSE    NA  TRUE    NA    NA',
        '[1] FALSE  TRUE    NA  TRUE FALSE    NA    NA    NA    NA',
    ]


def test_comparison_recycles_and_propagates_na(warnings):
    result = arith.compare('<', mk_double([1, 5, None, math.nan]), mk_double([3]))
    assert result.values() == [True, False, None, None]
    assert warnings == []


def test_strings_compare_by_code_point():
    assert arith.compare('<', mk_str(['a']), mk_str(['B'])).values() == [False]
    assert arith.compare('==', mk_str(['x', None]), mk_str(['x'])).values() == [True, None]


def test_integer_overflow_becomes_na(warnings):
    result = arith.arith('+', mk_int([INT_MAX, 1]), mk_int([1]))
    assert result.values() == [None, 2]
    assert warnings == ['NAs produced by integer overflow']


def test_sum_overflow(warnings):
    assert arith.aggregate('sum', [mk_int([INT_MAX, 1])]).values() == [None]
    assert warnings == ['integer overflow - use sum(as.numeric(.))']


@pytest.mark.parametrize('op, x, y, expected', [
    ('%%', -5, 3, 1),
    ('%/%', -5, 3, -2),
    ('%%', 5, 0, None),
    ('%/%', 5, 0, None),
])
def test_integer_modulo_and_division(op, x, y, expected):
    assert arith.arith(op, mk_int([x]), mk_int([y])).values() == [expected]


def test_double_division_and_powers():
    assert arith.arith('/', mk_int([1]), mk_int([2])).values() == [0.5]
    assert arith.arith('/', mk_double([1]), mk_double([0])).values() == [math.inf]
    assert arith.arith('^', mk_double([1]), mk_double([None])).values() == [1.0]
    assert arith.arith('^', mk_double([None]), mk_double([0])).values() == [1.0]
    nan = arith.arith('%%', mk_double([5]), mk_double([0]))
    assert math.isnan(nan.data[0]) and not nan.na[0]


def test_na_and_nan_stay_distinct():
    result = arith.arith('+', mk_double([None, math.nan]), mk_double([1]))
    assert list(result.na) == [True, False]
    assert math.isnan(result.data[1])


def test_logic_is_three_valued():
    na, t, f = None, True, False
    x = mk_logical([na, na, na, t, f])
    y = mk_logical([f, t, na, t, na])
    assert arith.logic('&', x, y).values() == [False, None, None, True, False]
    assert arith.logic('|', x, y).values() == [None, True, None, True, None]


def test_logic_rejects_strings():
    with pytest.raises(RError, match='operations are possible only'):
        arith.logic('&', mk_str(['a']), mk_logical([True]))


def test_non_numeric_argument():
    with pytest.raises(RError, match='non-numeric argument to binary operator'):
        arith.arith('+', mk_str(['1']), mk_double([1]))


def test_zero_length_operands():
    assert arith.arith('+', mk_double([]), mk_double([1, 2])).length() == 0
    assert arith.arith('+', NULL, mk_int([1])).rtype == 'integer'


def test_names_follow_the_longer_operand():
    named = mk_double([1, 2], {'names': mk_str(['a', 'b'])})
    assert arith.arith('*', named, mk_double([10])).names() == ['a', 'b']
    assert arith.arith('*', mk_double([10]), named).names() == ['a', 'b']


def test_unary_minus_keeps_type():
    assert arith.unary_minus(mk_int([1, None])).values() == [-1, None]
    assert arith.unary_minus(mk_logical([True])).rtype == 'integer'


def test_min_max_of_nothing_warns(warnings):
    assert arith.aggregate('max', []).values() == [-math.inf]
    assert warnings == ['no non-missing arguments to max; returning -Inf']


def test_summaries_respect_na_rm():
    values = [mk_double([1, None, 3])]
    assert arith.aggregate('sum', values).values() == [None]
    assert arith.aggregate('sum', values, na_rm=True).values() == [4.0]
    assert arith.aggregate('min', [mk_int([4, 2]), mk_double([3])]).values() == [2.0]
    assert arith.mean(mk_int([1, 2, 3, 4])).values() == [2.5]


def test_cumulative_sum_stops_at_na():
    assert arith.cumulate('cumsum', mk_int([1, 2, None, 4])).values() == [1, 3, None, None]


def test_coercion_between_types(warnings):
    assert coerce_vector(mk_str(['1.5', 'x', None]), 'double').values() == [1.5, None, None]
    assert warnings == ['NAs introduced by coercion']
    assert coerce_vector(mk_double([2.9, -2.9]), 'integer').values() == [2, -2]
    assert coerce_vector(mk_str(['T', 'false', 'yes']), 'logical').values() == [True, False, None]
    assert coerce_vector(mk_logical([True, None]), 'character').values() == ['TRUE', None]
    assert coerce_vector(mk_double([1e15, 0.1]), 'character').values() == ['1e+15', '0.1']
