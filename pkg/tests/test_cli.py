import json

import pytest
from click.testing import CliRunner

from deepr import __version__
from deepr.builtins import catalog
from deepr.cli import main
from deepr.commands.catalog import render_markdown
from deepr.commands.session import make_interpreter
from deepr.config import load_config


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def script(tmp_path):
    def write(text, name='script.R'):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def test_version(runner):
    result = runner.invoke(main, ['--version'])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_run_evaluates_without_auto_printing(runner, script):
    result = runner.invoke(main, ['run', script('1 + 1\nx <- 2\ncat("x is", x, "\\n")\n')])
    assert result.exit_code == 0
    assert result.output == 'x is 2 \n'


def test_run_stops_at_the_first_error(runner, script):
    path = script('f <- function() stop("boom")\ncat("before\\n")\nf()\ncat("after\\n")\n')
    result = runner.invoke(main, ['run', path])
    assert result.exit_code == 1
    assert 'before' in result.output
    assert 'Error in f(): boom' in result.output
    assert 'after' not in result.output


def test_run_reports_syntax_errors(runner, script):
    result = runner.invoke(main, ['run', script('x <- (1 + \n')])
    assert result.exit_code == 1
    assert 'Error' in result.output


def test_run_exit_status_from_quit(runner, script):
    result = runner.invoke(main, ['run', script('cat("bye\\n")\nq(status = 4)\ncat("unreached\\n")\n')])
    assert result.exit_code == 4
    assert result.output == 'bye\n'


def test_run_missing_file(runner, tmp_path):
    result = runner.invoke(main, ['run', str(tmp_path / 'absent.R')])
    assert result.exit_code == 2


def test_run_uses_configured_digits(runner, script, tmp_path):
    config = tmp_path / 'custom.yml'
    config.write_text('digits: 3\n')
    result = runner.invoke(main, ['--config', str(config), 'run', script('print(pi)\n')])
    assert result.exit_code == 0
    assert result.output == '[1] 3.14\n'


def test_repl_reads_standard_input(runner):
    result = runner.invoke(main, ['repl'], input='x <- c(1,\n2)\nx * 2\nq(status = 3)\n')
    assert result.exit_code == 3
    assert result.output == '[1] 2 4\n'


def test_repl_is_the_default_command(runner):
    result = runner.invoke(main, [], input='"hello"\n')
    assert result.exit_code == 0
    assert result.output == '[1] "hello"\n'


def test_check_passes_a_clean_corpus(runner, tmp_path):
    (tmp_path / 'good.Rt').write_text('1 + 1\n## [1] 2\n')
    result = runner.invoke(main, ['check', str(tmp_path)])
    assert result.exit_code == 0
    assert '1 passed' in result.output


def test_check_fails_on_mismatch_and_reports_json(runner, tmp_path):
    (tmp_path / 'bad.Rt').write_text('1 + 1\n## [1] 3\n')
    result = runner.invoke(main, ['check', '--json', str(tmp_path)])
    assert result.exit_code == 1
    payload = json.loads(result.output)
    assert payload['summary']['failed'] == 1
    assert payload['chunks'][0]['status'] == 'fail'
    assert '+[1] 2' in payload['chunks'][0]['diff']


def test_check_rejects_malformed_corpus(runner, tmp_path):
    (tmp_path / 'broken.Rt').write_text('## orphan\n')
    result = runner.invoke(main, ['check', str(tmp_path)])
    assert result.exit_code == 2


def test_check_filter(runner, tmp_path):
    (tmp_path / 'a.Rt').write_text('1\n## [1] 1\n')
    (tmp_path / 'b.Rt').write_text('1\n## [1] 9\n')
    result = runner.invoke(main, ['check', '--filter', 'a*', '--json', str(tmp_path)])
    assert result.exit_code == 0
    assert json.loads(result.output)['summary']['total'] == 1


def test_config_show_and_set(runner):
    result = runner.invoke(main, ['config', 'show'])
    assert result.exit_code == 0
    assert 'recursion_limit' in result.output
    result = runner.invoke(main, ['config', 'set', 'digits', '5'])
    assert result.exit_code == 0
    assert load_config()['digits'] == 5


@pytest.mark.parametrize('key, value', [('digits', 'many'), ('colour', 'red'), ('width', '-3')])
def test_config_set_rejects_bad_values(runner, key, value):
    result = runner.invoke(main, ['config', 'set', key, value])
    assert result.exit_code == 2


def test_broken_config_file_is_a_usage_error(runner, tmp_path):
    config = tmp_path / 'broken.yml'
    config.write_text('digits: [unclosed\n')
    result = runner.invoke(main, ['--config', str(config), 'catalog'])
    assert result.exit_code == 2


def test_catalog_lists_base_functions(runner):
    result = runner.invoke(main, ['catalog'])
    assert result.exit_code == 0
    names = result.output.splitlines()
    assert names == sorted(names)
    assert {'sum', 'paste', 'identity', 'tryCatch', '[<-'} <= set(names)


def test_catalog_markdown(runner):
    result = runner.invoke(main, ['catalog', '--markdown'])
    assert result.exit_code == 0
    assert result.output == render_markdown(catalog(make_interpreter()))
    assert '| `\\|\\|` |' in result.output
