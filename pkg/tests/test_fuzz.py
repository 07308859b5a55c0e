
# internal packages
from contractile.blocks import DATA_ADDR, LEAKY_PMPCFG0, SECRET
from contractile.fuzz import (clear_bits, drop_words, fuzz_confinement, fuzz_integrity, minimize,
                              random_mc_program, random_rv_instruction, random_rv_words,
                              reachable_authority, run_trial, trial_seed, trial_state)
from contractile.fuzz.generators import MC_KINDS
from contractile.isa import minimalcaps, riscv
from contractile.isa.minimalcaps import Cap, Int, decode_mc
from contractile.isa.riscv import encode_rv, instr
from contractile.mutants import allow_all_pmp_check

# external packages
import numpy
import pytest


# writes 7 over the private word
ATTACK = [encode_rv(instr('OPIMM', 'ADD', 'x5', 'x0', 7)),
          encode_rv(instr('SW', 'x5', 'x0', DATA_ADDR))]


class TestIntegrity:

    def test_attack_is_contained(self, rv_interp):
        outcome = run_trial(rv_interp, ATTACK, 200)
        assert outcome.ok
        assert outcome.ending == 'repeat'
        assert outcome.secret == SECRET
        assert outcome.kernel_intact

    def test_attack_succeeds_without_pmp(self, rv_program):
        interp = riscv.interpreter(rv_program.replace(allow_all_pmp_check()))
        outcome = run_trial(interp, ATTACK, 200)
        assert outcome.secret == 7
        assert not outcome.ok

    def test_attack_succeeds_with_leaky_config(self, rv_interp):
        outcome = run_trial(rv_interp, ATTACK, 200, pmpcfg0=LEAKY_PMPCFG0)
        assert outcome.secret == 7
        assert not outcome.ok

    def test_small_campaign(self):
        report = fuzz_integrity(seed=1, trials=20, fuel=500)
        assert report.ok
        assert sum(report.endings.values()) == 20
        assert report.summary_rows()[1][0] == 20

    @pytest.mark.slow
    def test_campaign_finds_allow_all(self, rv_program):
        report = fuzz_integrity(seed=1, trials=200, fuel=2000,
                                program=rv_program.replace(allow_all_pmp_check()))
        assert not report.ok
        violation = report.violations[0]
        assert violation.minimized
        assert len(violation.minimized) <= len(violation.words)
        assert violation.disassembly()[0].startswith("0x0058:")

    @pytest.mark.slow
    def test_full_campaign(self):
        assert fuzz_integrity(seed=1, trials=1000, fuel=10000).ok

    @pytest.mark.parametrize('trials, fuel', [(0, 10), (10, 0)])
    def test_bad_arguments(self, trials, fuel):
        with pytest.raises(ValueError):
            fuzz_integrity(trials=trials, fuel=fuel)

    def test_trial_seed_is_stable(self):
        assert trial_seed(1, 5) == trial_seed(1, 5)
        assert trial_seed(1, 5) != trial_seed(1, 6)


class TestConfinement:

    def test_reachable_authority(self):
        state = minimalcaps.make_state(64, registers={
            'pc': Cap('R', 0, 3, 0), 'R0': Cap('R', 10, 12, 10),
            'R1': Int(0), 'R2': Int(0), 'R3': Int(0)},
            memory={11: Cap('RW', 20, 21, 20)})
        readable, writable = reachable_authority(state)
        assert readable == {0, 1, 2, 3, 10, 11, 12, 20, 21}
        assert writable == {20, 21}

    def test_object_capabilities_grant_nothing(self):
        state = minimalcaps.make_state(64, registers={
            'pc': Cap('R', 0, 0, 0), 'R0': Cap('O', 0, 63, 0),
            'R1': Int(0), 'R2': Int(0), 'R3': Int(0)})
        assert reachable_authority(state) == ({0}, set())

    def test_trial_state(self, rng):
        state = trial_state(rng, 256)
        assert state.registers['pc'].tag == 'Cap'

    def test_small_campaign(self):
        report = fuzz_confinement(seed=1, programs=50, fuel=200)
        assert report.ok
        assert sum(report.endings.values()) == 50

    @pytest.mark.slow
    def test_full_campaign(self):
        assert fuzz_confinement(seed=1, programs=500, fuel=1000).ok

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            fuzz_confinement(programs=0)


class TestMinimize:

    def test_minimize(self):
        assert minimize([1, 7, 3], lambda ws: 7 in ws) == [7]

    def test_drop_words_keeps_one(self):
        assert drop_words([5, 6], lambda ws: True) == [6]

    def test_clear_bits(self):
        assert clear_bits([0b111], lambda ws: ws[0] & 4) == [4]

    def test_program_must_fail(self):
        with pytest.raises(ValueError):
            minimize([1, 2], lambda ws: False)


class TestGenerators:

    def test_riscv_instructions_encode(self, rng):
        for _ in range(200):
            assert 0 <= encode_rv(random_rv_instruction(rng)) < 1 << 32

    def test_riscv_words(self, rng):
        words = random_rv_words(rng, 16)
        assert len(words) == 16
        assert all(0 <= w < 1 << 32 for w in words)

    def test_minimalcaps_program(self, rng):
        for w in random_mc_program(rng, 50):
            assert decode_mc(w).tag in MC_KINDS

    def test_replay(self):
        a = random_rv_words(numpy.random.default_rng(trial_seed(3, 0)), 8)
        b = random_rv_words(numpy.random.default_rng(trial_seed(3, 0)), 8)
        assert a == b
