#!/usr/bin/env python3
"""
Tests for environment-based configuration and the export helpers.
"""

import os
import sys

import pytest

# Add the app directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'app'))

from config import Config, config, get_config
from src.core.models import Tolerance, resolve_tolerance
from src.utils.common import generate_export_filename, render_json, resolve_output_path


@pytest.fixture
def settings(monkeypatch):
    for name in ('OPFRAME_TOL', 'OPFRAME_RTOL', 'OPFRAME_JOBS', 'OPFRAME_SEED', 'LOG_LEVEL', 'LOG_TO_FILE', 'DEBUG'):
        monkeypatch.delenv(name, raising=False)
    return Config()


def test_defaults(settings):
    assert settings.tolerance_config == {'absolute': 1e-9, 'relative': 1e-9}
    assert settings.max_workers == 1
    assert settings.default_seed == 7
    assert settings.log_level == 'WARNING'
    assert settings.log_to_file is False
    assert settings.validate_config()


def test_environment_overrides_are_read_live(settings, monkeypatch):
    monkeypatch.setenv('OPFRAME_TOL', '1e-6')
    monkeypatch.setenv('OPFRAME_JOBS', '3')
    monkeypatch.setenv('LOG_LEVEL', 'debug')
    assert settings.tolerance_absolute == 1e-6
    assert settings.max_workers == 3
    assert settings.log_level == 'DEBUG'
    assert Tolerance.default().absolute == 1e-6


def test_debug_forces_debug_logging(settings, monkeypatch):
    monkeypatch.setenv('LOG_LEVEL', 'ERROR')
    assert settings.get_logging_config()['level'] == 'ERROR'
    monkeypatch.setenv('DEBUG', 'true')
    assert settings.get_logging_config()['level'] == 'DEBUG'


@pytest.mark.parametrize("name,value", [
    ('OPFRAME_TOL', '-1'),
    ('OPFRAME_RTOL', 'nan'),
    ('OPFRAME_JOBS', '0'),
    ('LOG_LEVEL', 'CHATTY'),
])
def test_invalid_settings_fail_validation(settings, monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    assert not settings.validate_config()


def test_env_file_is_loaded(tmp_path, monkeypatch):
    monkeypatch.delenv('OPFRAME_SEED', raising=False)
    env_file = tmp_path / '.env'
    env_file.write_text('OPFRAME_SEED=123\n')
    try:
        assert Config(str(env_file)).default_seed == 123
    finally:
        os.environ.pop('OPFRAME_SEED', None)


def test_global_instance():
    assert get_config() is config


def test_explicit_tolerance_wins(settings):
    explicit = Tolerance(absolute=1e-3, relative=0.0)
    assert resolve_tolerance(explicit) is explicit
    assert resolve_tolerance(None).absolute == 1e-9


def test_tolerance_bound_scales():
    tol = Tolerance(absolute=1e-9, relative=1e-6)
    assert tol.bound(2.0) == pytest.approx(1e-9 + 2e-6)
    assert tol.close(1.0 + 5e-7, 1.0)
    assert not tol.close(1.0 + 5e-6, 1.0)


def test_generate_export_filename():
    path = generate_export_filename('qp', 'dist', dim=2, frame='KD', base_dir='data')
    assert path == os.path.join('data', 'qp', 'kd_d2_dist.csv')


def test_render_json_is_deterministic():
    assert render_json({'b': 1, 'a': [1.5, None]}) == '{"a":[1.5,null],"b":1}'


def test_resolve_output_path(monkeypatch, tmp_path):
    monkeypatch.setenv('DATA_DIR', str(tmp_path))
    assert resolve_output_path('run.json', 'QP') == os.path.join(str(tmp_path), 'qp', 'run.json')
    assert resolve_output_path(os.path.join('out', 'run.json'), 'qp') == os.path.join('out', 'run.json')
    assert resolve_output_path('run.json', 'qp', base_dir='data') == os.path.join('data', 'qp', 'run.json')


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
