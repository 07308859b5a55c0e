"""
Concrete interpreter for core-language programs

Foreign functions are supplied by a runtime: a dict from function name to a
callable taking the machine state followed by the call arguments. Runtime
functions signal a failed run by raising MachineFailure.
"""

# built-ins
import dataclasses
import logging

# internal packages
from .state import Failure, OutOfFuel, Value
from ..core import syntax as s
from ..core.prims import evaluate_prim
from ..core.types import Ctor, record_type
from ..errors import MachineFailure, NotFound


logger = logging.getLogger(__name__)


def _literal_matches(pattern_value, value):
    return type(pattern_value) is type(value) and pattern_value == value


class Interpreter:

    """
    Parameters
    ----------
    program : Program
    runtime : dict
        Foreign function name to callable(state, *args)
    """

    def __init__(self, program, runtime):

        self.program = program
        self.runtime = dict(runtime)

    # evaluation; `state` is mutated in place

    def eval(self, stm, env, state):
        return getattr(self, '_eval_' + type(stm).__name__)(stm, env, state)

    def _args(self, args, env, state):
        return [self.eval(a, env, state) for a in args]

    def _eval_Literal(self, stm, env, state):
        return stm.value

    def _eval_Var(self, stm, env, state):
        return env[stm.name]

    def _eval_Let(self, stm, env, state):
        value = self.eval(stm.bound, env, state)
        return self.eval(stm.body, {**env, stm.name: value}, state)

    def _eval_Seq(self, stm, env, state):
        self.eval(stm.first, env, state)
        return self.eval(stm.second, env, state)

    def _eval_Prim(self, stm, env, state):
        return evaluate_prim(stm.op, self._args(stm.args, env, state))

    def _eval_Construct(self, stm, env, state):
        return Ctor(stm.tag, tuple(self._args(stm.args, env, state)))

    def _eval_RecordNew(self, stm, env, state):
        return record_type(stm.rtype).cls(*self._args(stm.args, env, state))

    def _eval_RecordGet(self, stm, env, state):
        return getattr(self.eval(stm.record, env, state), stm.field)

    def _eval_RecordSet(self, stm, env, state):
        record = self.eval(stm.record, env, state)
        value = self.eval(stm.value, env, state)
        return dataclasses.replace(record, **{stm.field: value})

    def _eval_TupleProject(self, stm, env, state):
        return self.eval(stm.tuple_, env, state)[stm.index]

    def _eval_If(self, stm, env, state):
        if self.eval(stm.cond, env, state):
            return self.eval(stm.then, env, state)
        return self.eval(stm.orelse, env, state)

    def _eval_Assert(self, stm, env, state):
        if not self.eval(stm.cond, env, state):
            raise MachineFailure(stm.message)
        return None

    def _eval_Fail(self, stm, env, state):
        raise MachineFailure(stm.message)

    def _eval_ReadReg(self, stm, env, state):
        return state.registers[stm.reg]

    def _eval_WriteReg(self, stm, env, state):
        state.registers[stm.reg] = self.eval(stm.value, env, state)
        return None

    def _eval_CallInternal(self, stm, env, state):
        return self.call(stm.fn, self._args(stm.args, env, state), state)

    _eval_CallForeign = _eval_CallInternal

    def _eval_LemmaInvoke(self, stm, env, state):
        return None

    def _eval_Match(self, stm, env, state):
        value = self.eval(stm.scrutinee, env, state)
        for case in stm.cases:
            bindings = self.match(case.pattern, value)
            if bindings is not None:
                return self.eval(case.body, {**env, **bindings}, state)
        raise MachineFailure("no matching case")

    def match(self, pattern, value):

        """Bindings of `pattern` against `value`, or None when it does not match"""

        if isinstance(pattern, s.PWild):
            return {}
        if isinstance(pattern, s.PBind):
            return {pattern.name: value}
        if isinstance(pattern, s.PLit):
            return {} if _literal_matches(pattern.value, value) else None
        if isinstance(pattern, s.PCtor):
            if not isinstance(value, Ctor) or value.tag != pattern.tag:
                return None
            return {n: a for n, a in zip(pattern.names, value.args) if n is not None}
        if isinstance(pattern, s.PTuple):
            return {n: v for n, v in zip(pattern.names, value) if n is not None}
        if isinstance(pattern, s.PRecord):
            names = record_type(pattern.rtype).field_names
            return {n: getattr(value, f) for n, f in zip(pattern.names, names) if n is not None}
        raise TypeError(f"unsupported pattern {pattern!r}")

    def call(self, fn, args, state):
        decl = self.program.function(fn)
        if decl.foreign:
            try:
                implementation = self.runtime[fn]
            except KeyError:
                raise NotFound(fn, 'foreign implementation') from None
            return implementation(state, *args)
        return self.eval(decl.body, dict(zip(decl.param_names, args)), state)

    # entry points; these copy the state they are given

    def exec_statement(self, state, env, stm):

        """
        Runs one statement

        Returns
        -------
        (MachineState, Outcome)
            Value with the statement's value, or Failure; the input state is
            left untouched
        """

        state = state.copy()
        try:
            return state, Value(self.eval(stm, dict(env), state))
        except MachineFailure as e:
            return state, Failure(e.message)

    def run_function(self, state, fn, args=()):
        state = state.copy()
        try:
            return state, Value(self.call(fn, list(args), state))
        except MachineFailure as e:
            return state, Failure(e.message)

    def run_fde_step(self, state):
        return self.run_function(state, 'fdeStep')

    def run_fde_cycle(self, state, fuel):

        """
        Iterates fdeStep at most `fuel` times

        A step returning False (a halt) ends the run with Value(None);
        otherwise the run ends with OutOfFuel or the first Failure.
        """

        if fuel < 0:
            raise ValueError("fuel must be non-negative")
        state = state.copy()
        for step in range(fuel):
            try:
                result = self.call('fdeStep', [], state)
            except MachineFailure as e:
                logger.debug("step %d failed: %s", step, e.message)
                return state, Failure(e.message)
            if result is False:
                logger.debug("halted after %d steps", step + 1)
                return state, Value(None)
        return state, OutOfFuel(fuel)
