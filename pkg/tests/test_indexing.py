import random

import pytest

from deepr.core.conditions import RError, reset_warning_sink, set_warning_sink
from deepr.core.indexing import dollar, dollar_assign, extract, extract_assign, subset, subset_assign
from deepr.core.values import NULL, mk_double, mk_int, mk_list, mk_logical, mk_str


class Recorder:
    def __init__(self):
        self.messages = []

    def signal_warning(self, message, call):
        self.messages.append(message)


@pytest.fixture
def warnings():
    recorder = Recorder()
    token = set_warning_sink(recorder)
    yield recorder.messages
    reset_warning_sink(token)


def reference_positive(x, idx):
    out = []
    for k in idx:
        if k is None or k > len(x):
            out.append(None)
        elif k > 0:
            out.append(x[k - 1])
    return out


def reference_logical(x, mask):
    if not mask:
        return []
    out = []
    for k in range(max(len(x), len(mask))):
        flag = mask[k % len(mask)]
        if flag is None:
            out.append(None)
        elif flag:
            out.append(x[k] if k < len(x) else None)
    return out


def reference_assign(x, idx, value):
    out = list(x)
    for j, k in enumerate(idx):
        while len(out) < k:
            out.append(None)
        out[k - 1] = value[j % len(value)]
    return out


def test_positive_subscripts_match_reference():
    rng = random.Random(3)
    for _ in range(300):
        x = [rng.randint(0, 9) for _ in range(rng.randint(0, 8))]
        idx = [None if rng.random() < 0.1 else rng.randint(0, 10) for _ in range(rng.randint(0, 6))]
        result = subset(mk_int(x), [mk_int(idx)])
        assert result.values() == reference_positive(x, idx), (x, idx)


def test_negative_subscripts_match_reference():
    rng = random.Random(5)
    for _ in range(300):
        x = [rng.randint(0, 9) for _ in range(rng.randint(0, 8))]
        idx = [-rng.randint(1, 10)] + [-rng.randint(0, 10) for _ in range(rng.randint(0, 3))]
        dropped = {-k for k in idx}
        expected = [v for pos, v in enumerate(x, start=1) if pos not in dropped]
        assert subset(mk_int(x), [mk_int(idx)]).values() == expected, (x, idx)


def test_logical_subscripts_recycle():
    rng = random.Random(9)
    for _ in range(300):
        x = [rng.randint(0, 9) for _ in range(rng.randint(0, 8))]
        mask = [rng.choice([True, False, None]) for _ in range(rng.randint(0, 10))]
        result = subset(mk_int(x), [mk_logical(mask)])
        assert result.values() == reference_logical(x, mask), (x, mask)


def test_positive_assignment_extends_with_na():
    rng = random.Random(13)
    for _ in range(300):
        x = [rng.randint(0, 9) for _ in range(rng.randint(0, 6))]
        idx = [rng.randint(1, 9) for _ in range(rng.randint(1, 4))]
        value = [rng.randint(10, 20) for _ in range(rng.choice([1, len(idx)]))]
        result = subset_assign(mk_int(x), [mk_int(idx)], mk_int(value))
        assert result.values() == reference_assign(x, idx, value), (x, idx, value)


def test_mixed_signs_are_rejected():
    with pytest.raises(RError, match="only 0's may be mixed with negative subscripts"):
        subset(mk_int([1, 2, 3]), [mk_double([-1, 2])])


def test_character_subscripts_use_names():
    x = mk_double([1, 2, 3], {'names': mk_str(['a', 'b', 'c'])})
    picked = subset(x, [mk_str(['c', 'zz', 'a'])])
    assert picked.values() == [3.0, None, 1.0]
    assert picked.names() == ['c', None, 'a']


def test_character_assignment_appends_named_elements():
    x = mk_double([1], {'names': mk_str(['a'])})
    out = subset_assign(x, [mk_str(['b'])], mk_double([2]))
    assert out.values() == [1.0, 2.0]
    assert out.names() == ['a', 'b']


def test_assignment_promotes_the_target():
    out = subset_assign(mk_int([1, 2]), [mk_int([2])], mk_str(['x']))
    assert out.rtype == 'character'
    assert out.values() == ['1', 'x']


def test_uneven_replacement_warns(warnings):
    subset_assign(mk_int([1, 2, 3]), [mk_int([1, 2, 3])], mk_int([7, 8]))
    assert warnings == ['number of items to replace is not a multiple of replacement length']


def test_null_assignment_deletes_list_elements():
    lst = mk_list([mk_double([1]), mk_double([2]), mk_double([3])], ['a', 'b', 'c'])
    out = subset_assign(lst, [mk_int([2])], NULL)
    assert out.names() == ['a', 'c']
    out = extract_assign(lst, mk_str(['a']), NULL)
    assert out.names() == ['b', 'c']


def test_double_bracket_extracts_single_elements():
    lst = mk_list([mk_double([1]), mk_list([mk_str(['deep'])], ['inner'])], ['a', 'b'])
    assert extract(lst, mk_str(['a'])).values() == [1.0]
    assert extract(lst, mk_str(['b', 'inner'])).values() == ['deep']
    assert extract(lst, mk_str(['zz'])) is NULL
    with pytest.raises(RError, match='subscript out of bounds'):
        extract(mk_int([1, 2]), mk_int([5]))
    with pytest.raises(RError, match='attempt to select more than one element'):
        extract(mk_int([1, 2]), mk_int([1, 2]))


def test_dollar_on_lists_and_atomics(warnings):
    lst = mk_list([mk_double([1])], ['value'])
    assert dollar(lst, 'value').values() == [1.0]
    assert dollar(lst, 'missing') is NULL
    with pytest.raises(RError, match=r'\$ operator is invalid for atomic vectors'):
        dollar(mk_int([1]), 'x')
    out = dollar_assign(mk_int([1]), 'y', mk_double([2]))
    assert out.rtype == 'list'
    assert warnings == ['Coercing LHS to a list']


def test_subset_keeps_only_names():
    x = mk_double([1, 2], {'names': mk_str(['a', 'b']), 'class': mk_str(['thing'])})
    out = subset(x, [mk_int([2])])
    assert set(out.attributes) == {'names'}


def test_matrix_subscripts():
    m = mk_int(range(1, 7), {'dim': mk_int([2, 3])})
    assert subset(m, [mk_int([2]), None]).values() == [2, 4, 6]
    assert subset(m, [None, mk_int([2])]).values() == [3, 4]
    with pytest.raises(RError, match='incorrect number of dimensions'):
        subset(mk_int([1, 2]), [mk_int([1]), mk_int([1])])
