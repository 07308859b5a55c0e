"""
The mutation suite

Each mutant breaks one safety-relevant detail of a machine or of the
femtokernel. A mutant is killed when a check that passes on the original
(contract verification, block verification or integrity fuzzing) no longer
passes on the mutant.
"""

# built-ins
import logging
from dataclasses import dataclass

# internal packages
from .blocks.femtokernel import LEAKY_PMPCFG0, femto_assets
from .blocks.verifier import verify_block
from .core import builder as b
from .core.program import FunctionDecl
from .core.types import BOOL
from .errors import NotFound
from .fuzz.integrity import fuzz_integrity
from .isa import minimalcaps, riscv
from .isa.riscv.runtime import DEFAULT_MEMSIZE
from .verifier.verify import VERIFIED, verify_contract


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MutantOutcome:

    """
    Attributes
    ----------
    check : str
        What was run against the mutant
    result : str
        Verification status, or the number of violating fuzz trials
    killed : bool
    """

    mutant: str
    description: str
    check: str
    result: str
    killed: bool

    def to_dict(self):
        return {'mutant': self.mutant, 'description': self.description, 'check': self.check,
                'result': self.result, 'killed': self.killed}


def _verification(name, description, bundle, fn, prover=None):
    result = verify_contract(bundle, fn, prover)
    return MutantOutcome(name, description, f"verify {fn}", result.status,
                         result.status != VERIFIED)


def allow_all_pmp_check():

    """pmp_check granting every access in every mode"""

    original = riscv.pmp_check_decl()
    return FunctionDecl(original.name, original.params, BOOL, b.lit(True))


# MinimalCaps

def mc_store_without_write_check(prover=None):
    program = minimalcaps.build_program(minimalcaps.LEMMAS).replace(
        minimalcaps.store_clause(write_check=False))
    bundle = minimalcaps.universal_bundle(program, name='minimalcaps-store-no-write-check')
    return _verification('store-no-write-check', "Store writes through any capability",
                         bundle, 'exec_store', prover)


def mc_store_without_move_cursor(prover=None):
    program = minimalcaps.build_program(minimalcaps.LEMMAS).replace(
        minimalcaps.store_clause(ghost_move=False))
    bundle = minimalcaps.universal_bundle(program, name='minimalcaps-store-no-move-cursor')
    return _verification('store-no-move-cursor', "Store forgets the move_cursor ghost call",
                         bundle, 'exec_store', prover)


# RISC-V

def _rv_program(memsize, *decls):
    return riscv.build_program(memsize, riscv.build_lemmas(memsize)).replace(*decls)


def rv_reversed_pmp_priority(memsize=DEFAULT_MEMSIZE, prover=None):
    bundle = riscv.universal_bundle(
        memsize, _rv_program(memsize, riscv.pmp_check_decl(order=(1, 0))),
        name='riscv-pmp-reversed-priority')
    return _verification('pmp-reversed-priority', "PMP entry 1 takes priority over entry 0",
                         bundle, 'pmp_check', prover)


def rv_no_lock_check(memsize=DEFAULT_MEMSIZE, prover=None):
    bundle = riscv.universal_bundle(
        memsize, _rv_program(memsize, riscv.pmpcfg_write_decl(lock_check=False)),
        name='riscv-pmp-no-lock-check')
    return _verification('pmpcfg-no-lock-check', "Writes to a locked pmpcfg byte take effect",
                         bundle, 'pmpcfg_write', prover)


# femtokernel

KILL_RATE = 0.01


def femto_leaky_init(memsize=DEFAULT_MEMSIZE, prover=None):

    """Killed only when the leaky init fails at its postcondition"""

    assets = femto_assets(memsize, LEAKY_PMPCFG0)
    result = verify_block(assets.init, assets.contracts['init'], memsize=memsize, prover=prover)
    at_post = f"postcondition of {assets.init.name}" in result.message + result.residual
    return MutantOutcome('femto-leaky-pmp', "The init block grants user code entry 0 with RWX",
                         f"verify-block {assets.init.name}", result.status,
                         result.status != VERIFIED and at_post)


def femto_allow_all(memsize=DEFAULT_MEMSIZE, prover=None, seed=1, trials=200, fuel=2000):

    """Killed when at least KILL_RATE of the fuzz trials violate integrity"""

    report = fuzz_integrity(seed, trials, fuel, memsize=memsize,
                            program=_rv_program(memsize, allow_all_pmp_check()), shrink=False,
                            stop_after=None)
    found = len(report.violations)
    return MutantOutcome('pmp-allow-all', "pmp_check allows every access",
                         f"fuzz-integrity seed {seed}", f"{found}/{trials} violating trial(s)",
                         found / trials >= KILL_RATE)


MUTANTS = {
    'store-no-write-check': mc_store_without_write_check,
    'store-no-move-cursor': mc_store_without_move_cursor,
    'pmp-reversed-priority': rv_reversed_pmp_priority,
    'pmpcfg-no-lock-check': rv_no_lock_check,
    'femto-leaky-pmp': femto_leaky_init,
    'pmp-allow-all': femto_allow_all,
}

MINIMALCAPS_MUTANTS = ('store-no-write-check', 'store-no-move-cursor')


def run_mutant(name, memsize=None, prover=None):

    """
    Raises
    ------
    NotFound
        when no mutant is called `name`
    """

    try:
        build = MUTANTS[name]
    except KeyError:
        raise NotFound(name, 'mutant') from None
    if memsize is None or name in MINIMALCAPS_MUTANTS:
        outcome = build(prover=prover)
    else:
        outcome = build(memsize, prover=prover)
    logger.info("%s: %s -> %s (%s)", name, outcome.check, outcome.result,
                'killed' if outcome.killed else 'survived')
    return outcome


def run_mutants(names=None, memsize=None, prover=None):
    return [run_mutant(name, memsize, prover) for name in (names or MUTANTS)]
