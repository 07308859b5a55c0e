
# internal packages
from contractile.config import FILENAME, Settings, SettingsManager, load_settings
from contractile.errors import ConfigError

# external packages
import pytest


def test_defaults(tmp_path):
    settings = load_settings(tmp_path, environ={})
    assert settings == Settings()
    assert settings.memsize('riscv-pmp') == 4096
    assert settings.memsize('minimalcaps') == 1024


def test_create_and_read(tmp_path):
    manager = SettingsManager(str(tmp_path))
    assert not manager.existing_settings
    assert "written" in manager.create()
    assert (tmp_path / FILENAME).exists()
    assert SettingsManager(str(tmp_path)).read() == Settings()
    assert "already exist" in SettingsManager(str(tmp_path)).create()


def test_update(tmp_path):
    path = tmp_path / 'custom.ini'
    SettingsManager(str(path)).update(Settings(fuel=300, seed=9))
    settings = SettingsManager(str(path)).read()
    assert (settings.fuel, settings.seed) == (300, 9)
    assert settings.riscv_memsize == 4096


def test_partial_file(tmp_path):
    (tmp_path / FILENAME).write_text("[contractile]\nfuzz_trials = 0x10\n", encoding='utf-8')
    settings = load_settings(tmp_path, environ={})
    assert settings.fuzz_trials == 16
    assert settings.fuel == 10000


@pytest.mark.parametrize('body', ["colour = 1\n", "fuel = 0\n", "fuel = lots\n"])
def test_bad_file(tmp_path, body):
    (tmp_path / FILENAME).write_text("[contractile]\n" + body, encoding='utf-8')
    with pytest.raises(ConfigError):
        load_settings(tmp_path, environ={})


def test_memsize_from_environment(tmp_path):
    settings = load_settings(tmp_path, environ={'CONTRACTILE_MEMSIZE': '8192'})
    assert settings.riscv_memsize == settings.minimalcaps_memsize == 8192


def test_empty_environment_value_is_ignored(tmp_path):
    assert load_settings(tmp_path, environ={'CONTRACTILE_MEMSIZE': ''}) == Settings()


@pytest.mark.parametrize('raw', ['abc', '0', '-4'])
def test_bad_environment_value(tmp_path, raw):
    with pytest.raises(ConfigError):
        load_settings(tmp_path, environ={'CONTRACTILE_MEMSIZE': raw})


def test_process_environment(tmp_path, monkeypatch):
    monkeypatch.setenv('CONTRACTILE_MEMSIZE', '2048')
    assert load_settings(tmp_path).riscv_memsize == 2048
