from pathlib import Path

from deepr.builtins import catalog
from deepr.builtins.prelude import PRELUDE
from deepr.builtins.registry import REGISTRY
from deepr.commands.catalog import render_markdown
from deepr.commands.session import make_interpreter

DOCS = Path(__file__).resolve().parent.parent / 'docs' / 'builtins.md'


def test_reference_table_is_current():
    assert DOCS.read_text(encoding='utf-8') == render_markdown(catalog(make_interpreter()))


def test_catalog_holds_builtins_and_prelude_closures():
    names = catalog(make_interpreter())
    assert set(REGISTRY) <= set(names)
    assert 'identity' in names and 'identity' in PRELUDE
    assert 'pi' not in names and '.GlobalEnv' not in names
