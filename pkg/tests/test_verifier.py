
# built-ins
import json

# internal packages
from contractile.core import builder as b
from contractile.core.program import FunctionDecl
from contractile.core.types import BITS32, BOOL, INT
from contractile.errors import NotFound, WellformednessError
from contractile.fuzz import random_mc_state, random_rv_state
from contractile.isa import minimalcaps, riscv
from contractile.logic.assertions import EMP, Contract, PointsToMem, Pred, Pure, star
from contractile.logic.terms import App, Var
from contractile.verifier import (FAILED, RESIDUAL, SKIPPED, VERIFIED, Report, VerificationResult,
                                  check_contract, verify_all, verify_contract)
from contractile.verifier.report import COLUMNS

# external packages
import pytest


class TestBundledPrograms:

    def test_minimalcaps(self, mc_report):
        assert mc_report.ok
        assert set(mc_report.statuses().values()) == {VERIFIED}
        assert 'exec_store' in mc_report.statuses()
        assert 'fdeCycle' not in mc_report.statuses()

    def test_riscv(self, rv_report):
        assert rv_report.ok
        assert set(rv_report.statuses().values()) == {VERIFIED}
        assert 'pmp_check' in rv_report.statuses()

    def test_runs_are_deterministic(self, mc_bundle, mc_report, rv_bundle, rv_report):
        assert verify_all(mc_bundle).records(timing=False) == mc_report.records(timing=False)
        assert verify_all(rv_bundle).records(timing=False) == rv_report.records(timing=False)


class TestFrame:

    def test_minimalcaps_predicate(self, mc_bundle):
        contract = mc_bundle.contracts['exec_addi']
        token = Pred('V', (Var('framed', minimalcaps.WORD),))
        framed = Contract(contract.logic_vars + (('framed', minimalcaps.WORD),),
                          star(contract.pre, token), star(contract.post, token), contract.result)
        bundle = mc_bundle.derive(contracts={'exec_addi': framed})
        assert verify_contract(bundle, 'exec_addi').status == VERIFIED

    def test_riscv_memory(self, rv_bundle):
        contract = rv_bundle.contracts['pmpcfg_write']
        cell = PointsToMem(Var('fa', BITS32), Var('fw', BITS32))
        framed = Contract(contract.logic_vars + (('fa', BITS32), ('fw', BITS32)),
                          star(contract.pre, cell), star(contract.post, cell), contract.result)
        bundle = rv_bundle.derive(contracts={'pmpcfg_write': framed})
        assert verify_contract(bundle, 'pmpcfg_write').status == VERIFIED


def test_foreign_function_is_skipped(mc_bundle):
    result = verify_contract(mc_bundle, 'read_mem')
    assert result.status == SKIPPED
    assert result.ok


def test_missing_function(mc_bundle):
    with pytest.raises(NotFound):
        verify_contract(mc_bundle, 'nowhere')


def test_ill_formed_program_is_refused(mc_bundle):
    program = mc_bundle.program.replace(FunctionDecl('stray', (), INT, b.var('nowhere')))
    with pytest.raises(WellformednessError):
        verify_all(mc_bundle.derive(program=program))


def test_wrong_contract_leaves_a_residual(rv_bundle):
    # ignores the lock bit: unlocked writes do change the address, and the
    # prover cannot refute the open equality
    old = Var('old', BITS32)
    wrong = Contract((('locked', BOOL), ('old', BITS32), ('new', BITS32)), EMP,
                     Pure(App('eq', (Var('result'), old))))
    bundle = rv_bundle.derive(name='riscv-wrong', contracts={'pmpaddr_write': wrong})
    result = verify_contract(bundle, 'pmpaddr_write')
    assert result.status == RESIDUAL
    assert not result.ok
    assert result.residual
    assert verify_contract(rv_bundle, 'pmpaddr_write').status == VERIFIED


class TestReport:

    def setup_method(self):
        self.report = Report('toy', [
            VerificationResult('zeta', VERIFIED, paths=2, millis=1.5),
            VerificationResult('alpha', FAILED, paths=1, message="postcondition of alpha"),
            VerificationResult('ext', SKIPPED),
        ])

    def test_order_and_lookup(self):
        assert [r.function for r in self.report] == ['alpha', 'ext', 'zeta']
        assert self.report['zeta'].paths == 2
        with pytest.raises(KeyError):
            self.report['nope']

    def test_ok(self):
        assert not self.report.ok
        assert Report('toy', self.report.results[1:]).ok

    def test_statuses(self):
        assert self.report.statuses() == {'alpha': FAILED, 'ext': SKIPPED, 'zeta': VERIFIED}

    def test_json(self):
        rows = json.loads(self.report.to_json(timing=False))
        assert rows[0] == {'function': 'alpha', 'status': FAILED, 'paths': 1, 'chunks_matched': 0,
                           'residual': ''}

    def test_dataframe(self):
        df = self.report.to_dataframe()
        assert list(df.columns[:len(COLUMNS)]) == list(COLUMNS)
        assert len(df) == 3
        assert df['calls_inlined'].sum() == 0

    def test_table_rows(self):
        rows = self.report.table_rows()
        assert rows[0][0] == 'Function'
        assert rows[-1][:2] == ['zeta', VERIFIED]


def _mc_state(rng):
    return random_mc_state(rng, 1024, minimalcaps.make_state)


def _rv_state(rng):
    return random_rv_state(rng, 4096, riscv.make_state)


class TestDifferential:

    @pytest.mark.parametrize('fn', sorted(minimalcaps.CONTRACTS))
    def test_minimalcaps(self, mc_bundle, mc_report, mc_interp, rng, fn):
        result = check_contract(mc_bundle, fn, mc_interp, _mc_state, rng, samples=100)
        assert result.ok, result.violations
        if fn in mc_bundle.verified_functions():
            assert mc_report[fn].status == VERIFIED
            assert result.checked > 0
        else:
            assert result.skipped

    @pytest.mark.parametrize('fn', sorted(riscv.UNIVERSAL_CONTRACTS))
    def test_riscv(self, rv_bundle, rv_report, rv_interp, rng, fn):
        result = check_contract(rv_bundle, fn, rv_interp, _rv_state, rng, samples=100)
        assert result.ok, result.violations
        if fn in rv_bundle.verified_functions():
            assert rv_report[fn].status == VERIFIED
            assert result.checked > 0
        else:
            assert result.skipped

    def test_riscv_pmp_check_samples_every_run(self, rv_bundle, rv_interp, rng):
        result = check_contract(rv_bundle, 'pmp_check', rv_interp, _rv_state, rng, samples=50)
        assert result.checked == 50

    def test_foreign_function_is_skipped(self, mc_bundle, mc_interp, rng):
        result = check_contract(mc_bundle, 'read_mem', mc_interp,
                                lambda r: random_mc_state(r, 64, minimalcaps.make_state), rng)
        assert result.skipped
        assert result.checked == 0
