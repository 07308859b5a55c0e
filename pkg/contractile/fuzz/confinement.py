"""
Capability confinement fuzzing for MinimalCaps

A random program runs from a random machine. Every memory write it makes must
land inside the writable footprint of the initial state: the union of the
ranges of read-write capabilities reachable from the registers, directly or
by loading through capabilities that grant reading (R, RW, and E once jumped
to).
"""

# built-ins
import logging
from dataclasses import dataclass, field

# external packages
import numpy
from tqdm import tqdm

# internal packages
from .generators import random_mc_state, random_mc_word
from .integrity import trial_seed
from .minimize import minimize
from ..isa.minimalcaps.encoding import decode_mc, show_instr
from ..isa.minimalcaps.runtime import DEFAULT_MEMSIZE, interpreter as mc_interpreter, make_state
from ..isa.minimalcaps.specification import LEMMAS
from ..isa.minimalcaps.semantics import build_program
from ..isa.minimalcaps.types import REGISTERS, Int
from ..machine.state import Failure, Value


logger = logging.getLogger(__name__)

PROGRAM_LENGTH = 16
PLANTED_WORDS = 12


def reachable_authority(state):

    """
    Capabilities reachable from the registers of `state`

    Returns
    -------
    (set, set)
        Readable and writable addresses
    """

    pending = [state.registers[r] for r in ('pc',) + REGISTERS]
    seen = set()
    readable, writable = set(), set()
    while pending:
        word = pending.pop()
        if word.tag != 'Cap':
            continue
        c = word.args[0]
        key = (c.perm, c.begin, c.end)
        if key in seen:
            continue
        seen.add(key)
        cells = range(max(c.begin, 0), min(c.end, state.memsize - 1) + 1)
        if c.perm == 'RW':
            writable.update(cells)
        if c.perm in ('R', 'RW', 'E'):
            readable.update(cells)
            pending.extend(state.read_word(a) for a in cells)
    return readable, writable


@dataclass
class ConfinementViolation:

    index: int
    seed: int
    words: list
    addresses: list
    minimized: list = field(default_factory=list)

    def disassembly(self):
        return [f"{i:3d}: {show_instr(decode_mc(w))}"
                for i, w in enumerate(self.minimized or self.words)]


@dataclass
class ConfinementReport:

    seed: int
    programs: int
    fuel: int
    endings: dict = field(default_factory=dict)
    writes: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def summary_rows(self):
        rows = [['Programs', 'Writes', 'Halted', 'Failed', 'Out of fuel', 'Violations']]
        rows.append([self.programs, self.writes, self.endings.get('halt', 0),
                     self.endings.get('failure', 0), self.endings.get('fuel', 0),
                     len(self.violations)])
        return rows


def trial_state(rng, memsize=DEFAULT_MEMSIZE, length=PROGRAM_LENGTH):

    """A random machine with random words, capabilities among them, planted in memory"""

    state = random_mc_state(rng, memsize, make_state, length)
    program = state.registers['pc'].args[0]
    for _ in range(PLANTED_WORDS):
        addr = int(rng.integers(0, memsize))
        if not program.begin <= addr <= program.end:
            state.write_word(addr, random_mc_word(rng, memsize))
    return state


def _with_program(state, words):
    c = state.registers['pc'].args[0]
    state = state.copy()
    for i in range(c.end - c.begin + 1):
        state.write_word(c.begin + i, Int(words[i]) if i < len(words) else Int(0))
    return state


def _program_of(state):
    c = state.registers['pc'].args[0]
    return [state.read_word(a).args[0] for a in range(c.begin, c.end + 1)]


def run_confined(interp, state, fuel):

    """
    Runs `state` and returns (ending, writes, addresses written outside the footprint)
    """

    _, writable = reachable_authority(state)
    final, outcome = interp.run_fde_cycle(state, fuel)
    if isinstance(outcome, Value):
        ending = 'halt'
    elif isinstance(outcome, Failure):
        ending = 'failure'
    else:
        ending = 'fuel'
    written = [a for kind, a in final.trace if kind == 'write']
    return ending, len(written), sorted({a for a in written if a not in writable})


def fuzz_confinement(seed=1, programs=500, fuel=1000, memsize=DEFAULT_MEMSIZE, program=None,
                     shrink=True, progress=False, stop_after=1):

    """
    Runs `programs` random programs for at most `fuel` steps each

    Parameters
    ----------
    program : Program, optional
        The MinimalCaps core program; defaults to the bundled machine

    Returns
    -------
    ConfinementReport
    """

    if programs < 1 or fuel < 1:
        raise ValueError("programs and fuel must be positive")
    interp = mc_interpreter(program or build_program(LEMMAS))
    report = ConfinementReport(seed, programs, fuel)

    for index in tqdm(range(programs), desc='confinement', disable=not progress):
        child = trial_seed(seed, index)
        state = trial_state(numpy.random.default_rng(child), memsize)
        ending, writes, escaped = run_confined(interp, state, fuel)
        report.writes += writes
        report.endings[ending] = report.endings.get(ending, 0) + 1
        if not escaped:
            continue

        logger.warning("program %d (seed %d) wrote outside its authority at %s", index, child,
                       escaped)
        words = _program_of(state)
        violation = ConfinementViolation(index, child, words, escaped)
        if shrink:
            violation.minimized = minimize(
                words, lambda ws: bool(run_confined(interp, _with_program(state, ws), fuel)[2]))
        report.violations.append(violation)
        if stop_after is not None and len(report.violations) >= stop_after:
            break

    logger.info("confinement: %d programs, %d writes, %d violations", programs, report.writes,
                len(report.violations))
    return report
