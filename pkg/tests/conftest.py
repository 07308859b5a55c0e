
# built-ins
import pathlib

# internal packages
from contractile.blocks import femto_assets
from contractile.isa import minimalcaps, riscv
from contractile.verifier import verify_all

# external packages
import numpy as np
import pytest


FIXTURES = pathlib.Path(__file__).resolve().parent.parent / 'contractile' / 'fixtures'


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help="run the exhaustive grids and full-size campaigns")


def pytest_configure(config):
    config.addinivalue_line('markers', "slow: exhaustive grids and full-size fuzz campaigns")


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope='session')
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope='session')
def mc_bundle():
    return minimalcaps.universal_bundle()


@pytest.fixture(scope='session')
def mc_interp(mc_bundle):
    return minimalcaps.interpreter(mc_bundle.program)


@pytest.fixture(scope='session')
def rv_program():
    return riscv.build_program(riscv.DEFAULT_MEMSIZE, riscv.build_lemmas(riscv.DEFAULT_MEMSIZE))


@pytest.fixture(scope='session')
def rv_bundle():
    return riscv.universal_bundle(riscv.DEFAULT_MEMSIZE)


@pytest.fixture(scope='session')
def rv_interp(rv_program):
    return riscv.interpreter(rv_program)


@pytest.fixture(scope='session')
def mc_report(mc_bundle):
    return verify_all(mc_bundle)


@pytest.fixture(scope='session')
def rv_report(rv_bundle):
    return verify_all(rv_bundle)


@pytest.fixture(scope='session')
def femto():
    return femto_assets(riscv.DEFAULT_MEMSIZE)


@pytest.fixture
def rng():
    return np.random.default_rng(1)


@pytest.fixture
def no_memsize_env(monkeypatch):
    monkeypatch.delenv('CONTRACTILE_MEMSIZE', raising=False)
