"""
Verification of straight-line RISC-V blocks by chaining symbolic fdeStep runs

A block contract names registers and memory; registers it leaves out are
framed (they keep their value) and the block's own words are owned as
points-to chunks for the whole run. The step function is inlined over the
block bundle, so every step executes one concrete instruction of the block.
"""

# built-ins
import logging
import time

# internal packages
from ..errors import ContractileError
from ..isa.riscv.pmp import pmpcfg_of_byte
from ..isa.riscv.runtime import DEFAULT_MEMSIZE
from ..isa.riscv.specification import block_bundle
from ..logic.assertions import (Contract, PointsToMem, PointsToReg, Pure, assertion_vars, exists,
                                or_, star)
from ..logic.heap import RegChunk, chunk_assertion
from ..logic.solver import Prover
from ..logic.terms import Lit, Term, Var, lift
from ..machine.state import Value
from ..verifier.executor import Path, SymbolicExecutor
from ..verifier.verify import FAILED, VerificationResult, classify


logger = logging.getLogger(__name__)

RESET_PMP = {
    'pmp0cfg': pmpcfg_of_byte(0),
    'pmp1cfg': pmpcfg_of_byte(0),
    'pmpaddr0': 0,
    'pmpaddr1': 0,
}


def _term(value):
    return value if isinstance(value, Term) else lift(value)


def _created(path):
    return {e[1].name: e[1].ty for e in path.events if e[0] == 'forall'}


def specialize_step(word, addr, registers=None, bundle=None, memsize=DEFAULT_MEMSIZE):

    """
    The contract of one fdeStep executing `word` stored at `addr`

    Parameters
    ----------
    registers : dict, optional
        Register values (concrete or terms) of the pre-state. By default the
        machine is in Machine mode with reset PMP registers; every register
        not given holds a fresh variable

    Returns
    -------
    Contract
        Over the fresh variables of the pre-state; the post is a disjunction
        with one alternative per path of the step

    Raises
    ------
    ContractileError
        when a path of the step gets stuck
    """

    bundle = bundle or block_bundle(memsize)
    executor = SymbolicExecutor(bundle)
    fixed = {'pc': addr, 'cur_privilege': 'Machine', **RESET_PMP, **(registers or {})}

    path = Path()
    parts = []
    for reg, ty in bundle.program.registers.items():
        if reg in fixed:
            value = _term(fixed[reg])
        else:
            value, path = executor.fresh(path, reg, ty)
        parts.append(PointsToReg(reg, value))
    pre = star(*parts, PointsToMem(Lit(addr), Lit(word)))
    logic_vars = tuple(_created(path).items())
    bound = {name for name, _ in logic_vars}

    alternatives = []
    for start in executor.produce(path, pre, {}):
        for done, _ in executor.call('fdeStep', (), start):
            post = star(*(chunk_assertion(c) for c in done.heap), *(Pure(f) for f in done.facts))
            types = _created(done)
            hidden = sorted(assertion_vars(post) - bound)
            alternatives.append(exists(tuple((n, types.get(n)) for n in hidden), post))

    stuck = [c for c in executor.closed if c.status == 'stuck']
    if stuck:
        raise ContractileError(f"step at {addr:#x} got stuck: {stuck[0].message}")
    if not alternatives:
        raise ContractileError(f"step at {addr:#x} has no completing path")
    logger.debug("step at %#x: %d alternatives", addr, len(alternatives))
    return Contract(logic_vars, pre, or_(*alternatives))


def _frame(executor, path):

    """Fresh chunks for the registers the path does not own, and their post atoms"""

    owned = {c.reg for c in path.heap if isinstance(c, RegChunk)}
    atoms, valuation = [], {}
    for reg, ty in executor.program.registers.items():
        if reg in owned:
            continue
        value, path = executor.fresh(path, reg, ty)
        key = f'frame:{reg}'
        path = path.evolve(heap=path.heap + (RegChunk(reg, value),))
        atoms.append(PointsToReg(reg, Var(key)))
        valuation[key] = value
    return path, star(*atoms), valuation


def _at(path, addr):
    pc = path.register('pc')
    return pc is not None and path.apply(pc.value) == Lit(addr)


def _run_paths(executor, block, start):

    """
    Steps every path through the block in order; a path whose pc is not the
    next word of the block (after a jump, an mret or a trap, or past the end)
    is finished where it stands
    """

    running, finished = [start], []
    for addr in block.addresses():
        stepped = []
        for path in running:
            if _at(path, addr):
                stepped.extend(q for q, _ in executor.call('fdeStep', (), path))
            else:
                finished.append(path)
        running = stepped
    return finished + running


def verify_block(block, contract, bundle=None, memsize=DEFAULT_MEMSIZE, prover=None,
                 max_alternatives=256):

    """
    Verifies that running the block from any state satisfying the pre ends in
    a state satisfying the post

    Parameters
    ----------
    block : AsmBlock
    contract : Contract

    Returns
    -------
    VerificationResult
        Named after the block
    """

    started = time.perf_counter()
    bundle = bundle or block_bundle(memsize)
    prover = prover or Prover()
    executor = SymbolicExecutor(bundle, prover, max_alternatives)

    path = Path()
    valuation = {}
    for name, ty in contract.logic_vars:
        valuation[name], path = executor.fresh(path, name, ty)

    try:
        for produced in executor.produce(path, star(contract.pre, block.code()), valuation):
            start, framed, frame_valuation = _frame(executor, produced)
            post = star(contract.post, block.code(), framed)
            for done in _run_paths(executor, block, start):
                executor.finish(done, post, {**valuation, **frame_valuation},
                                f"postcondition of {block.name}")
    except ContractileError as e:
        logger.warning("%s: %s", block.name, e)
        millis = (time.perf_counter() - started) * 1000.0
        return VerificationResult(block.name, FAILED, len(executor.closed), message=str(e),
                                  millis=round(millis, 3))

    return classify(executor, block.name, started, prover)


def run_block(interpreter, state, block):

    """
    Concrete counterpart of verify_block: steps from `state` while the pc is
    the next word of the block
    """

    outcome = Value()
    for addr in block.addresses():
        if state.registers.get('pc') != addr:
            break
        state, outcome = interpreter.run_fde_step(state)
        if not isinstance(outcome, Value):
            return state, outcome
    return state, outcome
