from pathlib import Path

import pytest

from deepr.commands.harness import PASS, SKIPPED, collect_files, parse_corpus, run_file
from deepr.language.ast import lang_equal
from deepr.language.deparse import deparse
from deepr.language.parser import parse_program


CORPUS_DIR = Path(__file__).parent / 'corpus'
CORPUS_FILES = collect_files([CORPUS_DIR])


def test_corpus_is_large_enough():
    total = sum(len(parse_corpus(path.read_text(encoding='utf-8'), str(path))) for path in CORPUS_FILES)
    assert total >= 150


@pytest.mark.parametrize('path', CORPUS_FILES, ids=lambda p: p.name)
def test_corpus_file_conforms(path):
    results = run_file(str(path))
    failures = [r for r in results if r.status not in (PASS, SKIPPED)]
    assert not failures, '\n\n'.join('\n'.join([f"{r.location} {r.status}"] + r.diff()) for r in failures)


@pytest.mark.parametrize('path', CORPUS_FILES, ids=lambda p: p.name)
def test_corpus_sources_reparse_to_the_same_tree(path):
    for chunk in parse_corpus(path.read_text(encoding='utf-8'), str(path)):
        for expr in parse_program('\n'.join(chunk.source)):
            text = '\n'.join(deparse(expr))
            again = parse_program(text)
            assert len(again) == 1 and lang_equal(again[0], expr), f"{chunk.file}:{chunk.line}: {text}"
