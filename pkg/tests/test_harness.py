import json

import pytest

from deepr.commands.harness import (ERROR_MISMATCH, FAIL, PASS, SKIPPED, HarnessError, collect_files,
                                    normalise, parse_corpus, run_chunks, run_conformance, run_file)


def statuses(text):
    return [r.status for r in run_chunks(parse_corpus(text, 'case.Rt'))]


def test_chunks_split_on_new_source_after_output():
    chunks = parse_corpus('''x <- 1
x
## [1] 1
y <- 2
y
## [1] 2
''', 'case.Rt')
    assert [c.line for c in chunks] == [1, 4]
    assert chunks[0].source == ['x <- 1', 'x']
    assert chunks[1].expected == ['[1] 2']


def test_blank_lines_end_a_chunk_only_when_the_source_parses():
    chunks = parse_corpus('''f <- function(x) {

  x + 1
}
f(1)
## [1] 2

g <- 1
''', 'case.Rt')
    assert len(chunks) == 2
    assert chunks[0].source == ['f <- function(x) {', '', '  x + 1', '}', 'f(1)']
    assert chunks[1].source == ['g <- 1']
    assert chunks[1].expected == []


def test_expected_prefix_forms():
    chunks = parse_corpus('cat("a\\n\\nb\\n")\n## a\n##\n## b\n', 'case.Rt')
    assert chunks[0].expected == ['a', '', 'b']


def test_pragma_scoping():
    chunks = parse_corpus('''#% digits: 3

pi
## [1] 3.14
#% skip
stop("never")
#% error-ok
#% digits: 5
pi
## [1] 3.1416
''', 'case.Rt')
    assert [c.pragmas.digits for c in chunks] == [3, 3, 5]
    assert [c.pragmas.skip for c in chunks] == [False, True, False]
    assert [c.pragmas.error_ok for c in chunks] == [False, False, True]


@pytest.mark.parametrize('text, message', [
    ('## [1] 1\n', 'expected output with no source above it'),
    ('#% colour: red\nx\n', "unknown pragma 'colour'"),
    ('#% digits: 18\nx\n', "'digits' pragma needs an integer between 1 and 17"),
    ('#% width: 19\nx\n', "'width' pragma needs an integer between 20 and 10000"),
    ('#% width\nx\n', "'width' pragma needs an integer"),
    ('#% skip: yes\nx\n', "pragma 'skip' takes no value"),
    ('x\n## [1] 1\n\n#% skip\n', 'pragma is not attached to a chunk'),
    ('#% fresh-env\n\nx <- 1\n\n#% skip\n\ny\n', 'pragma is not attached to a chunk'),
])
def test_malformed_corpus_names_the_line(text, message):
    with pytest.raises(HarnessError, match=message) as info:
        parse_corpus(text, 'bad.Rt')
    assert str(info.value).startswith('bad.Rt:')


def test_statuses():
    assert statuses('''1 + 1
## [1] 2
1 + 1
## [1] 3
stop("x")
## Error: x
#% error-ok
stop("x")
## Error: x
#% error-ok
1
## [1] 1
#% skip
this is not even R
''') == [PASS, FAIL, ERROR_MISMATCH, PASS, ERROR_MISMATCH, SKIPPED]


def test_chunks_share_state_unless_fresh():
    assert statuses('''x <- 41
x + 1
## [1] 42
#% fresh-env
#% error-ok
x
## Error: object 'x' not found
x
## [1] 41
''') == [PASS, PASS, PASS]


def test_digits_pragma_is_restored_after_its_chunk():
    assert statuses('''#% digits: 3
pi
## [1] 3.14
pi
## [1] 3.141593
''') == [PASS, PASS]


def test_trailing_whitespace_and_blank_lines_are_ignored():
    assert normalise(['a  ', 'b', '', '']) == ['a', 'b']
    assert statuses('c(a = 1)\n## a\n## 1\n') == [PASS]


def test_warnings_and_messages_are_part_of_the_transcript():
    assert statuses('''f <- function() { message("note"); warning("careful"); 1 }
f()
## note
## [1] 1
## Warning in f(): careful
''') == [PASS]


def test_failures_carry_a_diff():
    result = run_chunks(parse_corpus('1\n## [1] 2\n', 'case.Rt'))[0]
    assert result.status == FAIL
    diff = result.diff()
    assert '-[1] 2' in diff and '+[1] 1' in diff
    assert result.to_json()['line'] == 1


def test_quit_inside_a_chunk_does_not_stop_the_run():
    assert statuses('''cat("a\\n"); q()
## a
1
## [1] 1
''') == [PASS, PASS]


def test_run_conformance_over_a_directory(tmp_path):
    (tmp_path / 'one.Rt').write_text('1\n## [1] 1\n')
    nested = tmp_path / 'more'
    nested.mkdir()
    (nested / 'two.Rt').write_text('2\n## [1] 3\n')
    (tmp_path / 'notes.txt').write_text('ignored')
    report = run_conformance([tmp_path])
    assert report.summary() == {'total': 2, 'passed': 1, 'failed': 1, 'error_mismatch': 0, 'skipped': 0}
    assert not report.ok
    payload = json.loads(json.dumps(report.to_json()))
    assert [c['status'] for c in payload['chunks']] == [FAIL, PASS]
    assert len(collect_files([tmp_path], 'one*')) == 1


def test_missing_paths_are_reported(tmp_path):
    with pytest.raises(HarnessError, match='no such file or directory'):
        collect_files([tmp_path / 'absent.Rt'])
    with pytest.raises(HarnessError):
        run_file(str(tmp_path / 'absent.Rt'))


def test_width_pragma_is_restored_after_its_chunk():
    assert statuses('''#% width: 30
1:20
##  [1]  1  2  3  4  5  6  7  8
##  [9]  9 10 11 12 13 14 15 16
## [17] 17 18 19 20
1:20
##  [1]  1  2  3  4  5  6  7  8  9 10 11 12 13 14 15 16 17 18 19 20
''') == [PASS, PASS]


def test_file_level_width_pragma():
    chunks = parse_corpus('''#% width: 72
#% digits: 4

pi
## [1] 3.142
#% width: 40
pi
## [1] 3.142
''', 'case.Rt')
    assert [(c.pragmas.width, c.pragmas.digits) for c in chunks] == [(72, 4), (40, 4)]
