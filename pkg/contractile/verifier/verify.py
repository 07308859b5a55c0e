"""
Contract verification of bundled functions
"""

# built-ins
import logging
import time
from dataclasses import asdict, dataclass

# internal packages
from . import vc as V
from .executor import Path, SymbolicExecutor
from .report import Report
from ..core.program import require_wellformed
from ..errors import ContractileError, NotFound
from ..logic.solver import Prover


logger = logging.getLogger(__name__)

VERIFIED = 'Verified'
RESIDUAL = 'Residual'
FAILED = 'Failed'
SKIPPED = 'Skipped'


@dataclass(frozen=True)
class VerificationResult:

    """
    Outcome of verifying one function (or one block) against its contract

    Attributes
    ----------
    status : str
        VERIFIED, RESIDUAL, FAILED or SKIPPED
    residual : str
        Pretty-printed simplified VC; empty when Verified
    message : str
        First reason for a Failed status
    """

    function: str
    status: str
    paths: int = 0
    chunks_matched: int = 0
    residual: str = ''
    message: str = ''
    millis: float = 0.0
    calls_by_contract: int = 0
    calls_inlined: int = 0

    @property
    def ok(self):
        return self.status in (VERIFIED, SKIPPED)

    def to_dict(self):
        return asdict(self)


def first_unprovable(vc):
    if isinstance(vc, V.Unprovable):
        return vc.message
    if isinstance(vc, V.Branch):
        for child in vc.children:
            message = first_unprovable(child)
            if message:
                return message
    elif isinstance(vc, (V.ForAll, V.ExistsVC, V.Assume, V.Assert)):
        return first_unprovable(vc.body)
    return ''


def classify(executor, name, started, prover):

    """Solves the VC collected by `executor` and wraps it in a VerificationResult"""

    solved = V.solve(executor.vc(), prover)
    if V.contains_unprovable(solved):
        status, message = FAILED, first_unprovable(solved)
    elif solved != V.Trivial:
        status, message = RESIDUAL, ''
    else:
        status, message = VERIFIED, ''
    millis = (time.perf_counter() - started) * 1000.0
    logger.info("%s: %s (%d paths, %.1f ms)", name, status, len(executor.closed), millis)
    return VerificationResult(
        function=name,
        status=status,
        paths=len(executor.closed),
        chunks_matched=executor.stats['chunks_matched'],
        residual='' if status == VERIFIED else V.show_vc(solved),
        message=message,
        millis=round(millis, 3),
        calls_by_contract=executor.stats['calls_by_contract'],
        calls_inlined=executor.stats['calls_inlined'],
    )


def verify_contract(bundle, fn, prover=None, max_alternatives=256):

    """
    Verifies function `fn` of a bundle against its contract

    The precondition is produced over fresh logic variables, the body is
    executed symbolically and the postcondition is consumed on every path that
    returns. Register and memory chunks left over at the end are leaks.

    Raises
    ------
    NotFound
        when `fn` is not a function of the bundle or has no contract
    """

    decl = bundle.program.function(fn)
    if decl.foreign:
        return VerificationResult(fn, SKIPPED, message="foreign function")
    contract = bundle.contracts.get(fn)
    if contract is None:
        raise NotFound(fn, 'contract')

    started = time.perf_counter()
    prover = prover or Prover()
    executor = SymbolicExecutor(bundle, prover, max_alternatives)

    path = Path()
    valuation = {}
    for name, ty in contract.logic_vars:
        valuation[name], path = executor.fresh(path, name, ty)

    try:
        for produced in executor.produce(path, contract.pre, valuation):
            frame = {k: produced.apply(v) for k, v in valuation.items()}
            env = {p: frame[p] for p in decl.param_names}
            start = produced.evolve(env=env, frame=frame)
            for done, result in executor.run(decl.body, start):
                post_valuation = {**done.frame, contract.result: done.apply(result)}
                executor.finish(done, contract.post, post_valuation, f"postcondition of {fn}")
    except ContractileError as e:
        logger.warning("%s: %s", fn, e)
        millis = (time.perf_counter() - started) * 1000.0
        return VerificationResult(fn, FAILED, len(executor.closed), message=str(e),
                                  millis=round(millis, 3))

    return classify(executor, fn, started, prover)


def verify_all(bundle, functions=None, prover=None, max_alternatives=256):

    """
    Verifies every selected function of a bundle

    Parameters
    ----------
    functions : iterable of str, optional
        Defaults to `bundle.verified_functions()`

    Returns
    -------
    Report
        Results ordered alphabetically by function name

    Raises
    ------
    WellformednessError
        when the bundle's program fails check_wellformed
    """

    require_wellformed(bundle.program)
    names = sorted(functions) if functions is not None else bundle.verified_functions()
    results = [verify_contract(bundle, name, prover, max_alternatives) for name in names]
    return Report(bundle.name, results)
