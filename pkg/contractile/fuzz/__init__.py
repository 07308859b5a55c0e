from .generators import (random_mc_instruction, random_mc_program, random_mc_state,
                         random_rv_instruction, random_rv_state, random_rv_word, random_rv_words)
from .integrity import IntegrityReport, TrialOutcome, Violation, fuzz_integrity, run_trial, trial_seed
from .confinement import (ConfinementReport, ConfinementViolation, fuzz_confinement,
                          reachable_authority, run_confined, trial_state)
from .minimize import clear_bits, drop_words, minimize
