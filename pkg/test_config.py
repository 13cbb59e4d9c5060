"""
Tests for configuration loading
"""

import pytest

from cnpkit.config import CnpkitConfig, load_config


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ('CNPKIT_CONFIG', 'CNPKIT_NODE_CEILING', 'CNPKIT_LOG_LEVEL', 'CNPKIT_MAX_COVER_SETS'):
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    config = CnpkitConfig()
    assert config.node_ceiling == 10 ** 7
    assert config.default_budget == 4
    assert config.log_file is None


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv('CNPKIT_NODE_CEILING', '1e5')
    monkeypatch.setenv('CNPKIT_LOG_LEVEL', 'DEBUG')
    config = CnpkitConfig.from_env()
    assert config.node_ceiling == 100000
    assert config.log_level == 'DEBUG'


def test_bad_integer(monkeypatch):
    monkeypatch.setenv('CNPKIT_NODE_CEILING', 'lots')
    with pytest.raises(ValueError):
        CnpkitConfig.from_env()


def test_yaml_file(tmp_path):
    path = tmp_path / 'cnpkit.yaml'
    path.write_text('max_cover_sets: 30\nclosure_guard: 6\n')
    config = CnpkitConfig.from_yaml(str(path))
    assert config.max_cover_sets == 30
    assert config.closure_guard == 6


def test_yaml_unknown_key(tmp_path):
    path = tmp_path / 'cnpkit.yaml'
    path.write_text('node_cieling: 5\n')
    with pytest.raises(ValueError):
        CnpkitConfig.from_yaml(str(path))


def test_environment_wins_over_file(tmp_path, monkeypatch):
    path = tmp_path / 'cnpkit.yaml'
    path.write_text('max_cover_sets: 30\nnode_ceiling: 50\n')
    monkeypatch.setenv('CNPKIT_CONFIG', str(path))
    monkeypatch.setenv('CNPKIT_MAX_COVER_SETS', '12')
    config = load_config()
    assert config.max_cover_sets == 12
    assert config.node_ceiling == 50
