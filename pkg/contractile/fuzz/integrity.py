"""
Femtokernel integrity fuzzing

Each trial places random adversary words at 88, boots the femtokernel and
runs the machine. Afterwards the private word at 84 must still hold 42 and
the kernel bytes [0, 88) must be unchanged. The machine is deterministic, so
a trial ends as soon as a state repeats; the write counter stands in for the
memory in the state key because memory only changes through writes.
"""

# built-ins
import logging
from dataclasses import dataclass, field

# external packages
import numpy
from tqdm import tqdm

# internal packages
from .generators import random_rv_words
from .minimize import minimize
from ..blocks.femtokernel import (ADV_ADDR, DATA_ADDR, KERNEL_PMPCFG0, SECRET,
                                  femtokernel_state)
from ..errors import MachineFailure
from ..isa.riscv.encoding import decode_rv, show_rv
from ..isa.riscv.runtime import DEFAULT_MEMSIZE, interpreter as rv_interpreter
from ..isa.riscv.specification import build_lemmas
from ..isa.riscv.semantics import build_program


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialOutcome:

    """
    Attributes
    ----------
    steps : int
        fdeStep calls executed
    ending : str
        'fuel', 'repeat' (a state recurred) or 'failure'
    secret : int
        Word at 84 after the run
    kernel_intact : bool
        Bytes [0, 88) equal their boot values
    """

    steps: int
    ending: str
    secret: int
    kernel_intact: bool

    @property
    def ok(self):
        return self.secret == SECRET and self.kernel_intact


@dataclass
class Violation:

    trial: int
    seed: int
    words: list
    outcome: TrialOutcome
    minimized: list = field(default_factory=list)

    def disassembly(self, words=None):
        if words is None:
            words = self.minimized or self.words
        return [f"{ADV_ADDR + 4 * i:#06x}: {w:08x}  {show_rv(decode_rv(w))}"
                for i, w in enumerate(words)]


@dataclass
class IntegrityReport:

    seed: int
    trials: int
    fuel: int
    steps: int = 0
    endings: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def summary_rows(self):
        rows = [['Trials', 'Steps', 'Repeats', 'Out of fuel', 'Failures', 'Violations']]
        rows.append([self.trials, self.steps, self.endings.get('repeat', 0),
                     self.endings.get('fuel', 0), self.endings.get('failure', 0),
                     len(self.violations)])
        return rows


def _state_key(state, writes):
    return tuple(state.registers.items()), writes


def run_trial(interp, words, fuel, memsize=DEFAULT_MEMSIZE, pmpcfg0=KERNEL_PMPCFG0):

    """
    Boots the femtokernel with `words` as user code and runs at most `fuel` steps

    Returns
    -------
    TrialOutcome
    """

    state = femtokernel_state(memsize, words, pmpcfg0)
    boot = [state.read_byte(a) for a in range(ADV_ADDR)]
    seen = set()
    writes, scanned = 0, 0
    ending, steps = 'fuel', 0

    for steps in range(fuel):
        key = _state_key(state, writes)
        if key in seen:
            ending = 'repeat'
            break
        seen.add(key)
        try:
            interp.call('fdeStep', [], state)
        except MachineFailure as e:
            logger.debug("step %d failed: %s", steps, e.message)
            ending = 'failure'
            break
        writes += sum(1 for kind, _ in state.trace[scanned:] if kind == 'write')
        scanned = len(state.trace)
    else:
        steps = fuel

    intact = all(state.read_byte(a) == b for a, b in enumerate(boot))
    return TrialOutcome(steps, ending, state.read_word(DATA_ADDR), intact)


def trial_seed(seed, trial):

    """Seed of one trial; `numpy.random.default_rng(trial_seed(s, t))` replays it"""

    return int(numpy.random.SeedSequence([seed, trial]).generate_state(1)[0])


def fuzz_integrity(seed=1, trials=1000, fuel=10000, adv_words=16, memsize=DEFAULT_MEMSIZE,
                   program=None, pmpcfg0=KERNEL_PMPCFG0, shrink=True, progress=False,
                   stop_after=1):

    """
    Runs the femtokernel integrity campaign

    Parameters
    ----------
    program : Program, optional
        The RISC-V program to run; defaults to the bundled machine, mutants
        pass their own
    stop_after : int or None
        Stop once this many violations were found; None runs every trial

    Returns
    -------
    IntegrityReport
    """

    if trials < 1 or fuel < 1:
        raise ValueError("trials and fuel must be positive")
    program = program or build_program(memsize, build_lemmas(memsize))
    interp = rv_interpreter(program)
    report = IntegrityReport(seed, trials, fuel)

    for trial in tqdm(range(trials), desc='integrity', disable=not progress):
        child = trial_seed(seed, trial)
        words = random_rv_words(numpy.random.default_rng(child), adv_words)
        outcome = run_trial(interp, words, fuel, memsize, pmpcfg0)
        report.steps += outcome.steps
        report.endings[outcome.ending] = report.endings.get(outcome.ending, 0) + 1
        if outcome.ok:
            continue

        logger.warning("trial %d (seed %d): word at %d is %d, kernel intact: %s", trial, child,
                       DATA_ADDR, outcome.secret, outcome.kernel_intact)
        violation = Violation(trial, child, words, outcome)
        if shrink:
            violation.minimized = minimize(
                words, lambda ws: not run_trial(interp, ws, fuel, memsize, pmpcfg0).ok)
        report.violations.append(violation)
        if stop_after is not None and len(report.violations) >= stop_after:
            break

    logger.info("integrity: %d trials, %d steps, %d violations", trials, report.steps,
                len(report.violations))
    return report
