import logging
from pathlib import Path

import pytest
import yaml

from deepr.config import DEFAULTS, ConfigError, coerce_value, config_path, history_path, load_config, save_config
from deepr.commands.session import make_interpreter


def test_defaults_when_no_file_exists():
    assert load_config() == DEFAULTS


def test_environment_variable_names_the_file(tmp_path, monkeypatch):
    target = tmp_path / 'elsewhere.yml'
    monkeypatch.setenv('DEEPR_CONFIG', str(target))
    assert config_path() == target
    assert config_path(str(tmp_path / 'explicit.yml')) == tmp_path / 'explicit.yml'


def test_save_writes_only_changed_keys():
    config = dict(DEFAULTS, width=120)
    target = save_config(config)
    assert yaml.safe_load(target.read_text()) == {'width': 120}
    assert load_config()['width'] == 120


@pytest.mark.parametrize('key, raw, expected', [
    ('digits', '5', 5),
    ('warn_partial_match_args', 'yes', True),
    ('warn_partial_match_args', 'off', False),
    ('log_level', 'debug', 'DEBUG'),
    ('history_file', '/tmp/h', '/tmp/h'),
])
def test_values_are_coerced(key, raw, expected):
    assert coerce_value(key, raw) == expected


@pytest.mark.parametrize('key, raw, message', [
    ('digits', 'x', 'expects an integer'),
    ('recursion_limit', '0', 'must be positive'),
    ('digits', '18', 'must be between 1 and 17'),
    ('width', '19', 'must be between 20 and 10000'),
    ('warn_partial_match_args', 'maybe', 'expects true or false'),
    ('log_level', 'loud', 'must be one of'),
    ('nope', '1', 'unknown configuration key'),
])
def test_bad_values_are_rejected(key, raw, message):
    with pytest.raises(ConfigError, match=message):
        coerce_value(key, raw)


def test_unknown_keys_in_the_file_are_ignored(tmp_path, caplog):
    target = tmp_path / 'config.yml'
    target.write_text('digits: 4\nflavour: mint\n')
    with caplog.at_level(logging.WARNING, logger='deepr.config'):
        config = load_config(str(target))
    assert config['digits'] == 4
    assert 'flavour' not in config
    assert 'ignoring unknown configuration key' in caplog.text


@pytest.mark.parametrize('text', ['- just\n- a list\n', 'digits: [1\n'])
def test_unreadable_files_raise(tmp_path, text):
    target = tmp_path / 'config.yml'
    target.write_text(text)
    with pytest.raises(ConfigError):
        load_config(str(target))


def test_history_path_expands_home(tmp_path):
    assert history_path({'history_file': '~/.deepr/history'}) == Path(tmp_path) / '.deepr' / 'history'


def test_interpreter_takes_options_from_config(run_r):
    interp = make_interpreter({'digits': 4, 'width': 30, 'recursion_limit': 50})
    assert interp.options['digits'].values() == [4]
    assert interp.options['width'].values() == [30]
    assert run_r('getOption("digits")') == '[1] 7\n'
