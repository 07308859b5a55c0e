"""
Differential testing of contracts against the concrete interpreter

A verified contract promises that running the function from any state that
satisfies the precondition either fails safely or returns in a state that
satisfies the postcondition. This module samples concrete states, binds the
precondition against them, runs the function and checks the postcondition.

Matching a concrete state binds logic variables from register and memory
contents and from the `derive` function of predicates; predicates whose
arguments are all bound are checked with their `holds` function when they
have one, and otherwise taken to hold. Magic wands are not checked.
"""

# built-ins
import itertools
import logging
from dataclasses import dataclass, field

# internal packages
from ..core.types import (BitsType, BoolType, Ctor, EnumType, IntType, RecordType, TupleType,
                          UnionType, UnitType, record_type)
from ..logic.assertions import (PREDICATES, Exists, Or, PointsToMem, PointsToReg, Pred, Pure, Star,
                                Wand, rename_bound)
from ..logic.terms import App, Lit, Var, evaluate, free_vars
from ..machine.state import Failure, Value


logger = logging.getLogger(__name__)


def _same(a, b):
    return a == b and isinstance(a, bool) == isinstance(b, bool)


def _ground(term, valuation):
    return not (free_vars(term) - valuation.keys())


def _evaluate(term, valuation):
    try:
        return True, evaluate(term, valuation)
    except (KeyError, TypeError, ValueError, AttributeError, IndexError, ZeroDivisionError):
        return False, None


def match_value(pattern, value, valuation):

    """
    Binds the variables of a pattern term against a concrete value

    Returns
    -------
    dict or None
    """

    if isinstance(pattern, Var):
        if pattern.name in valuation:
            return valuation if _same(valuation[pattern.name], value) else None
        return {**valuation, pattern.name: value}
    if isinstance(pattern, Lit):
        return valuation if _same(pattern.value, value) else None
    if _ground(pattern, valuation):
        ok, concrete = _evaluate(pattern, valuation)
        return valuation if ok and _same(concrete, value) else None

    op = pattern.op
    if op.startswith('ctor:'):
        if not isinstance(value, Ctor) or value.tag != op[5:]:
            return None
        parts = value.args
    elif op.startswith('record:'):
        names = record_type(op[7:]).field_names
        if not all(hasattr(value, n) for n in names):
            return None
        parts = [getattr(value, n) for n in names]
    elif op == 'tuple' and isinstance(value, tuple):
        parts = value
    else:
        return None
    if len(parts) != len(pattern.args):
        return None
    for p, v in zip(pattern.args, parts):
        valuation = match_value(p, v, valuation)
        if valuation is None:
            return None
    return valuation


class StateMatcher:

    """Enumerates the valuations under which an assertion holds in a concrete state"""

    def __init__(self, state):

        self.state = state
        self.__renames = itertools.count()

    def valuations(self, assertion, valuation):
        return self._go([assertion], dict(valuation), 0)

    def _go(self, pending, valuation, deferred):
        if not pending:
            yield valuation
            return
        first, rest = pending[0], pending[1:]

        if isinstance(first, Star):
            yield from self._go([first.left, first.right] + rest, valuation, deferred)
        elif isinstance(first, Exists):
            name = f"{first.name}'{next(self.__renames)}"
            yield from self._go([rename_bound(first.body, first.name, name, first.ty)] + rest,
                                valuation, deferred)
        elif isinstance(first, Or):
            yield from self._go([first.left] + rest, valuation, deferred)
            yield from self._go([first.right] + rest, valuation, deferred)
        elif isinstance(first, Wand):
            yield from self._go(rest, valuation, deferred)
        elif isinstance(first, PointsToReg):
            if first.reg in self.state.registers:
                extended = match_value(first.value, self.state.registers[first.reg], valuation)
                if extended is not None:
                    yield from self._go(rest, extended, 0)
        elif isinstance(first, PointsToMem):
            if not _ground(first.addr, valuation):
                if deferred <= len(rest):
                    yield from self._go(rest + [first], valuation, deferred + 1)
                return
            ok, addr = _evaluate(first.addr, valuation)
            width = 4 if self.state.byte_addressed else 1
            if ok and isinstance(addr, int) and self.state.in_range(addr, width):
                extended = match_value(first.value, self.state.read_word(addr), valuation)
                if extended is not None:
                    yield from self._go(rest, extended, 0)
        elif isinstance(first, Pred):
            yield from self._predicate(first, rest, valuation, deferred)
        elif isinstance(first, Pure):
            yield from self._pure(first, rest, valuation, deferred)
        else:
            raise TypeError(f"not an assertion: {first!r}")

    def _predicate(self, pred, rest, valuation, deferred):
        decl = PREDICATES.get(pred.name)
        if all(_ground(a, valuation) for a in pred.args):
            if decl is not None and decl.holds is not None:
                values = [_evaluate(a, valuation) for a in pred.args]
                if not all(ok for ok, _ in values) or not decl.holds(self.state, *(v for _, v in values)):
                    return
            yield from self._go(rest, valuation, deferred)
            return
        if decl is None or decl.derive is None:
            if deferred <= len(rest):
                yield from self._go(rest + [pred], valuation, deferred + 1)
            return
        extended = valuation
        for pattern, value in zip(pred.args, decl.derive(self.state)):
            extended = match_value(pattern, value, extended)
            if extended is None:
                return
        yield from self._go(rest, extended, 0)

    def _pure(self, pure, rest, valuation, deferred):
        term = pure.term
        if _ground(term, valuation):
            ok, value = _evaluate(term, valuation)
            if ok and value is True:
                yield from self._go(rest, valuation, deferred)
            return
        if isinstance(term, App) and term.op == 'eq':
            for x, other in (term.args, tuple(reversed(term.args))):
                if _ground(other, valuation):
                    ok, value = _evaluate(other, valuation)
                    if ok:
                        extended = match_value(x, value, valuation)
                        if extended is not None:
                            yield from self._go(rest, extended, 0)
                    return
        if deferred <= len(rest):
            yield from self._go(rest + [pure], valuation, deferred + 1)


def satisfies(assertion, valuation, state):
    return next(StateMatcher(state).valuations(assertion, valuation), None) is not None


# sampling of values for variables the precondition leaves unbound

def sample_value(ty, rng, memsize=64):

    """
    A random concrete value of type `ty`

    Integers and words favour small values and addresses near the memory
    size; other words are uniform over 32 bits.
    """

    if isinstance(ty, BoolType):
        return bool(rng.integers(2))
    if isinstance(ty, UnitType):
        return None
    if isinstance(ty, EnumType):
        return ty.values[int(rng.integers(len(ty.values)))]
    if isinstance(ty, BitsType):
        if rng.random() < 0.7:
            return int(rng.integers(0, memsize + 16))
        return int(rng.integers(0, 1 << 32))
    if isinstance(ty, IntType):
        return int(rng.integers(-8, memsize + 8))
    if isinstance(ty, RecordType):
        return ty.cls(*(sample_value(t, rng, memsize) for _, t in ty.fields))
    if isinstance(ty, TupleType):
        return tuple(sample_value(t, rng, memsize) for t in ty.items)
    if isinstance(ty, UnionType):
        tag = ty.tags[int(rng.integers(len(ty.tags)))]
        return Ctor(tag, tuple(sample_value(t, rng, memsize) for t in ty.arg_types(tag)))
    raise TypeError(f"cannot sample a value of {ty!r}")


@dataclass
class DifferentialResult:

    """
    Outcome of checking one contract against concrete runs

    Attributes
    ----------
    checked : int
        Runs from a state satisfying the precondition
    rejected : int
        Sampled states that did not satisfy the precondition
    failures : int
        Runs that ended in a Failure, which contracts allow
    violations : list of str
        Runs that returned in a state violating the postcondition
    """

    function: str
    checked: int = 0
    rejected: int = 0
    failures: int = 0
    violations: list = field(default_factory=list)
    skipped: bool = False

    @property
    def ok(self):
        return not self.violations


def check_contract(bundle, fn, interpreter, sample_state, rng, samples=100, max_attempts=None):

    """
    Runs `fn` from up to `samples` sampled states satisfying its precondition

    Parameters
    ----------
    bundle : Bundle
    interpreter : Interpreter
        Concrete interpreter of the bundle's program
    sample_state : function
        Called with `rng`, returns a MachineState
    rng : numpy.random.Generator

    Returns
    -------
    DifferentialResult
    """

    decl = bundle.program.function(fn)
    result = DifferentialResult(fn)
    if decl.foreign:
        result.skipped = True
        return result
    contract = bundle.contracts[fn]
    types = dict(contract.logic_vars)
    max_attempts = max_attempts or 20 * samples

    for _ in range(max_attempts):
        if result.checked >= samples:
            break
        state = sample_state(rng)
        seeded = {}
        for name in decl.param_names:
            if rng.random() < 0.5:
                seeded[name] = sample_value(types[name], rng, state.memsize)
        valuation = next(StateMatcher(state).valuations(contract.pre, seeded), None)
        if valuation is None:
            result.rejected += 1
            continue
        for name, ty in contract.logic_vars:
            if name not in valuation:
                valuation[name] = sample_value(ty, rng, state.memsize)
        if not satisfies(contract.pre, valuation, state):
            result.rejected += 1
            continue

        final, outcome = interpreter.run_function(state, fn, [valuation[p] for p in decl.param_names])
        result.checked += 1
        if isinstance(outcome, Failure):
            result.failures += 1
            continue
        if not isinstance(outcome, Value):
            continue
        post_valuation = {**valuation, contract.result: outcome.value}
        if not satisfies(contract.post, post_valuation, final):
            message = (f"{fn}: postcondition violated for "
                       + ", ".join(f"{k}={v!r}" for k, v in sorted(valuation.items())))
            logger.warning(message)
            result.violations.append(message)

    logger.info("%s: %d checked, %d rejected, %d failures, %d violations", fn, result.checked,
                result.rejected, result.failures, len(result.violations))
    return result
