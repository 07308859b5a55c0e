
# built-ins
import json

# internal packages
from contractile.__main__ import main
from contractile.logic.sexpr import loads_contract

# external packages
import pytest


@pytest.fixture
def run(tmp_path, no_memsize_env):

    def _run(*argv):
        return main(['--config', str(tmp_path), *argv])

    return _run


def test_run_image(run, fixtures_dir, capsys):
    code = run('run', '--isa', 'riscv-pmp', '--image', str(fixtures_dir / 'femtokernel.img'),
               '--fuel', '20')
    assert code == 0
    assert "priv=User pc=0x58" in capsys.readouterr().out


def test_run_dump_range(run, fixtures_dir, capsys):
    code = run('run', '--isa', 'riscv-pmp', '--image', str(fixtures_dir / 'femtokernel.img'),
               '--fuel', '20', '--dump-range', '0x54', '0x58')
    assert code == 0
    assert "0x0054: 0x0000002a" in capsys.readouterr().out


def test_unknown_isa(run, capsys):
    assert run('verify', '--isa', 'nope') == 2
    assert "nope" in capsys.readouterr().err


def test_missing_image(run, tmp_path):
    assert run('run', '--isa', 'riscv-pmp', '--image', str(tmp_path / 'missing.img')) == 2


def test_non_positive_trials():
    with pytest.raises(SystemExit) as info:
        main(['fuzz-integrity', '--trials', '0'])
    assert info.value.code == 2


def test_verify_function(run, tmp_path, capsys):
    report = tmp_path / 'report.json'
    assert run('verify', '--isa', 'minimalcaps', '--function', 'exec_addi',
               '--json', str(report)) == 0
    rows = json.loads(report.read_text(encoding='utf-8'))
    assert [(r['function'], r['status']) for r in rows] == [('exec_addi', 'Verified')]
    assert "exec_addi" in capsys.readouterr().out


def test_verify_block(run, fixtures_dir):
    code = run('verify-block', '--block', str(fixtures_dir / 'femto_init.blk'),
               '--contract', str(fixtures_dir / 'femto_init.contract'))
    assert code == 0


def test_verify_leaky_block(run, fixtures_dir):
    code = run('verify-block', '--block', str(fixtures_dir / 'femto_init_leaky.blk'),
               '--contract', str(fixtures_dir / 'femto_init.contract'))
    assert code == 1


def test_fuzz_integrity(run, capsys):
    assert run('fuzz-integrity', '--trials', '5', '--fuel', '300', '--quiet') == 0
    assert "pass" in capsys.readouterr().out


def test_fuzz_confinement(run):
    assert run('fuzz-confinement', '--programs', '10', '--fuel', '100', '--quiet') == 0


def test_femto(run, tmp_path, femto):
    out = tmp_path / 'femto'
    assert run('femto', '--output', str(out)) == 0
    assert sorted(p.name for p in out.iterdir()) == sorted([
        'femtokernel.img', 'femto_init.blk', 'femto_handler.blk', 'femto_init.contract',
        'femto_handler.contract'])
    text = (out / 'femto_handler.contract').read_text(encoding='utf-8')
    assert loads_contract(text) == femto.contracts['handler']


def test_mutants(run, tmp_path):
    outcomes = tmp_path / 'mutants.json'
    assert run('mutants', '--only', 'store-no-write-check', '--json', str(outcomes)) == 0
    assert json.loads(outcomes.read_text(encoding='utf-8'))[0]['killed']


def test_bad_config(tmp_path, no_memsize_env):
    (tmp_path / 'contractile.ini').write_text("[contractile]\nfuel = -5\n", encoding='utf-8')
    assert main(['--config', str(tmp_path), 'femto', '--output', str(tmp_path)]) == 2
