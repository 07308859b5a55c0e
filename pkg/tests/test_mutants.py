
# internal packages
from contractile import mutants
from contractile.errors import NotFound
from contractile.fuzz.integrity import IntegrityReport
from contractile.mutants import MUTANTS, MutantOutcome, run_mutant

# external packages
import pytest


@pytest.mark.parametrize('name', [
    'store-no-write-check',
    'store-no-move-cursor',
    'pmp-reversed-priority',
    'pmpcfg-no-lock-check',
    'femto-leaky-pmp',
])
def test_verification_kills(name):
    outcome = run_mutant(name)
    assert outcome.mutant == name
    assert outcome.killed, outcome.result


@pytest.mark.slow
def test_fuzzing_kills_allow_all():
    outcome = run_mutant('pmp-allow-all')
    assert outcome.killed
    assert outcome.check.startswith("fuzz-integrity")


def test_memsize_is_ignored_by_minimalcaps_mutants():
    assert run_mutant('store-no-write-check', memsize=2048).killed


def test_unknown_mutant():
    with pytest.raises(NotFound):
        run_mutant('no-such-mutant')


def test_every_mutant_is_listed():
    assert len(MUTANTS) == 6


def test_to_dict():
    outcome = MutantOutcome('m', "breaks something", "verify f", 'Failed', True)
    assert outcome.to_dict() == {'mutant': 'm', 'description': "breaks something",
                                 'check': "verify f", 'result': 'Failed', 'killed': True}


@pytest.mark.parametrize('found, killed', [(0, False), (1, False), (2, True), (200, True)])
def test_allow_all_kill_rate(monkeypatch, found, killed):
    calls = {}

    def fake_fuzz(seed, trials, fuel, **kwargs):
        calls.update(kwargs)
        return IntegrityReport(seed, trials, fuel, violations=[object()] * found)

    monkeypatch.setattr(mutants, 'fuzz_integrity', fake_fuzz)
    outcome = mutants.femto_allow_all(trials=200)
    assert calls['stop_after'] is None
    assert outcome.killed == killed
    assert outcome.result == f"{found}/200 violating trial(s)"
