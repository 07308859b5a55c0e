"""
Forward symbolic execution of core-language statements

Execution is a generator of (path, value) pairs, one per feasible path that
completes normally. Paths that end otherwise (a failed assertion, a spatial
failure, the end of a verified body) are recorded in `closed`, from which the
verification condition is built.
"""

# built-ins
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field, replace as evolve_dataclass

# internal packages
from . import vc as V
from ..core import syntax as s
from ..core.types import UnitType, ctor_info, domain, record_type
from ..errors import NotFound
from ..logic.heap import ConsumeSearch, MemChunk, RegChunk, produce, substitute_chunk
from ..logic.lemmas import choose_alternative
from ..logic.solver import Prover
from ..logic.terms import (FALSE, TRUE, UNIT_LIT, App, Lit, Var, free_vars, fresh_vars, lift,
                           negate, simplify, subst)


logger = logging.getLogger(__name__)

CONTRACT = 'contract'
INLINE = 'inline'


@dataclass
class Bundle:

    """
    A program together with what the verifier needs to know about it

    Attributes
    ----------
    contracts : dict
        Function name to Contract
    modes : dict
        Function name to CONTRACT or INLINE; functions with a contract default
        to CONTRACT
    ghost_noops : frozenset
        Lemmas whose invocations the executor skips
    verify : tuple
        Functions verify_all checks; defaults to every internal function with
        a contract except fdeCycle
    """

    name: str
    program: object
    contracts: dict
    modes: dict = field(default_factory=dict)
    ghost_noops: frozenset = frozenset()
    verify: tuple = None

    def contract_for(self, fn):
        contract = self.contracts.get(fn)
        if contract is None or self.modes.get(fn, CONTRACT) == INLINE:
            return None
        return contract

    def verified_functions(self):
        if self.verify is not None:
            return tuple(sorted(self.verify))
        functions = self.program.functions
        return tuple(sorted(name for name in self.contracts
                            if name in functions and not functions[name].foreign
                            and name != 'fdeCycle'))

    def derive(self, name=None, program=None, contracts=None, **changes):

        """Copy with a replaced program and/or contracts (used for mutants)"""

        merged = dict(self.contracts)
        merged.update(contracts or {})
        return evolve_dataclass(self, name=name or self.name, program=program or self.program,
                                contracts=merged, **changes)


@dataclass(frozen=True)
class Path:

    """
    State of one symbolic execution path

    Attributes
    ----------
    env : dict
        Program variable to term
    heap : tuple
        Chunks owned by the path
    facts : tuple
        Path condition, as simplified boolean terms
    events : tuple
        ('forall', Var), ('assume', term) and ('assert', term, message)
        records from which the VC is built
    sigma : dict
        Every substitution applied so far, composed
    frame : dict
        Logic variables of the contract under verification
    excluded : dict
        Finite-typed variable name to the set of values it cannot take
    """

    env: dict = field(default_factory=dict)
    heap: tuple = ()
    facts: tuple = ()
    events: tuple = ()
    sigma: dict = field(default_factory=dict)
    frame: dict = field(default_factory=dict)
    excluded: dict = field(default_factory=dict)
    depth: int = 0

    def evolve(self, **changes):
        return evolve_dataclass(self, **changes)

    def apply(self, term):
        if self.sigma and free_vars(term) & self.sigma.keys():
            term = subst(term, self.sigma)
        return simplify(term)

    def record(self, *event):
        return self.evolve(events=self.events + (event,))

    def register(self, reg):
        for chunk in self.heap:
            if isinstance(chunk, RegChunk) and chunk.reg == reg:
                return chunk
        return None


@dataclass(frozen=True)
class ClosedPath:

    path: Path
    status: str
    message: str = ''


class SymbolicExecutor:

    """
    Parameters
    ----------
    bundle : Bundle
    prover : Prover, optional
    max_alternatives : int
        Bound on the consume alternatives tried before committing
    max_depth : int
        Bound on nested inlined calls
    """

    def __init__(self, bundle, prover=None, max_alternatives=256, max_depth=64):

        self.bundle = bundle
        self.program = bundle.program
        self.prover = prover or Prover()
        self.max_alternatives = max_alternatives
        self.max_depth = max_depth
        self.closed = []
        self.stats = Counter()
        self.__names = itertools.count()
        self.__birth = {}

    # variables

    def fresh_name(self, hint):
        name = f"{hint.split('#')[0]}#{next(self.__names)}"
        self.__birth[name] = len(self.__birth)
        return name

    def fresh(self, path, hint, ty):
        term, created = fresh_vars(hint, ty, self.fresh_name)
        return term, path.evolve(events=path.events + tuple(('forall', v) for v in created))

    def birth(self, name):
        return self.__birth.get(name, -1)

    # paths

    def close(self, path, status, message=''):
        if status == 'stuck':
            logger.debug("path stuck: %s", message)
        self.closed.append(ClosedPath(path, status, message))

    def substitute(self, path, name, value):
        mapping = {name: value}

        def over(term):
            return simplify(subst(term, mapping))

        excluded = path.excluded.get(name)
        if excluded and isinstance(value, Lit) and value.value in excluded:
            return None

        facts = []
        for f in path.facts:
            g = over(f)
            if g == FALSE:
                return None
            if g != TRUE and g not in facts:
                facts.append(g)

        sigma = {k: over(v) for k, v in path.sigma.items()}
        sigma[name] = value
        return path.evolve(
            env={k: over(v) for k, v in path.env.items()},
            heap=tuple(substitute_chunk(c, mapping) for c in path.heap),
            facts=tuple(facts),
            sigma=sigma,
            frame={k: over(v) for k, v in path.frame.items()},
            excluded={k: v for k, v in path.excluded.items() if k != name},
        )

    def _equation(self, term):
        if isinstance(term, Var):
            return term.name, TRUE
        if not isinstance(term, App):
            return None
        if term.op == 'not' and isinstance(term.args[0], Var):
            return term.args[0].name, FALSE
        if term.op != 'eq':
            return None
        a, b = term.args
        candidates = []
        if isinstance(a, Var) and a.name not in free_vars(b):
            candidates.append((a, b))
        if isinstance(b, Var) and b.name not in free_vars(a):
            candidates.append((b, a))
        if not candidates:
            return None
        # the younger variable is eliminated
        var, value = max(candidates, key=lambda c: self.birth(c[0].name))
        return var.name, value

    def assume(self, path, term):

        """Path extended by `term`, or None when the extension is infeasible"""

        term = path.apply(term)
        if term == TRUE:
            return path
        if term == FALSE:
            return None
        if isinstance(term, App) and term.op == 'and':
            for c in term.args:
                path = self.assume(path, c)
                if path is None:
                    return None
            return path
        if term in path.facts:
            return path
        if negate(term) in path.facts:
            return None

        path = path.record('assume', term)
        equation = self._equation(term)
        if equation is not None:
            return self.substitute(path, *equation)

        if (isinstance(term, App) and term.op == 'not' and isinstance(term.args[0], App)
                and term.args[0].op == 'eq'):
            x, v = term.args[0].args
            if isinstance(x, Var) and isinstance(v, Lit) and x.ty is not None and domain(x.ty):
                excluded = path.excluded.get(x.name, frozenset()) | {v.value}
                remaining = [d for d in domain(x.ty) if d not in excluded]
                if not remaining:
                    return None
                if len(remaining) == 1:
                    return self.substitute(path, x.name, Lit(remaining[0]))
                path = path.evolve(excluded={**path.excluded, x.name: excluded})
        return path.evolve(facts=path.facts + (term,))

    def produce(self, path, assertion, valuation):

        """Feasible paths after producing `assertion`, one per disjunct"""

        created = []

        def supply(hint, ty):
            term, new = fresh_vars(hint, ty, self.fresh_name)
            created.extend(new)
            return term

        productions = produce(assertion, valuation, path.heap, supply)
        foralls = tuple(('forall', v) for v in created)
        paths = []
        for out in productions:
            p = path.evolve(heap=out.heap, events=path.events + foralls)
            for fact in out.facts:
                p = self.assume(p, fact)
                if p is None:
                    break
            if p is not None:
                paths.append(p)
        return paths

    def consume(self, path, assertion, valuation, message):

        """
        Consumes `assertion`, committing to the first alternative whose
        obligations are all proved (else the first alternative found)

        Returns
        -------
        (Path, dict) or None
            None when the path was closed on a spatial failure or on an
            obligation the path condition refutes
        """

        search = ConsumeSearch(assertion, valuation, path.heap, path.facts)
        chosen = choose_alternative(search, path.facts, self.prover, self.max_alternatives)
        if chosen is None:
            atom = search.failed if search.failed is not None else assertion
            self.close(path, 'stuck', f"{message}: no chunk matches {atom}")
            return None

        self.stats['chunks_matched'] += chosen.matched
        p = path.evolve(heap=chosen.heap)
        for obligation in chosen.obligations:
            p = p.record('assert', obligation, message)
            assumed = self.assume(p, obligation)
            if assumed is None:
                self.close(p, 'done')
                return None
            p = assumed
        return p, chosen.valuation

    # statements

    def run(self, stm, path):
        return getattr(self, '_exec_' + type(stm).__name__)(stm, path)

    def run_args(self, args, path):
        if not args:
            yield path, ()
            return
        for p1, first in self.run(args[0], path):
            for p2, rest in self.run_args(args[1:], p1):
                yield p2, (p2.apply(first),) + rest

    def _rescope(self, saved, path):
        return {k: path.apply(v) for k, v in saved.items()}

    def _with_bindings(self, body, path, bindings):
        saved = path.env
        inner = path.evolve(env={**path.env, **bindings})
        for p, value in self.run(body, inner):
            yield p.evolve(env=self._rescope(saved, p)), value

    def _exec_Literal(self, stm, path):
        yield path, lift(stm.value)

    def _exec_Var(self, stm, path):
        yield path, path.env[stm.name]

    def _exec_Let(self, stm, path):
        for p1, value in self.run(stm.bound, path):
            yield from self._with_bindings(stm.body, p1, {stm.name: value})

    def _exec_Seq(self, stm, path):
        for p1, _ in self.run(stm.first, path):
            yield from self.run(stm.second, p1)

    def _exec_Prim(self, stm, path):
        for p, values in self.run_args(stm.args, path):
            yield p, simplify(App(stm.op, values))

    def _exec_Construct(self, stm, path):
        for p, values in self.run_args(stm.args, path):
            yield p, App('ctor:' + stm.tag, values)

    def _exec_RecordNew(self, stm, path):
        for p, values in self.run_args(stm.args, path):
            yield p, App('record:' + stm.rtype, values)

    def _exec_RecordGet(self, stm, path):
        for p, value in self.run(stm.record, path):
            yield p, simplify(App('field:' + stm.field, (value,)))

    def _exec_RecordSet(self, stm, path):
        for p1, record in self.run(stm.record, path):
            for p2, value in self.run(stm.value, p1):
                record = p2.apply(record)
                if not (isinstance(record, App) and record.op.startswith('record:')):
                    raise TypeError(f"record update on opaque term {record}")
                names = record_type(record.op[7:]).field_names
                args = list(record.args)
                args[names.index(stm.field)] = value
                yield p2, App(record.op, tuple(args))

    def _exec_TupleProject(self, stm, path):
        for p, value in self.run(stm.tuple_, path):
            yield p, simplify(App(f'proj:{stm.index}', (value,)))

    def _exec_If(self, stm, path):
        for p1, cond in self.run(stm.cond, path):
            for branch, guard in ((stm.then, cond), (stm.orelse, negate(cond))):
                p2 = self.assume(p1, guard)
                if p2 is not None:
                    yield from self.run(branch, p2)

    def _exec_Assert(self, stm, path):
        for p1, cond in self.run(stm.cond, path):
            failing = self.assume(p1, negate(cond))
            if failing is not None:
                self.close(failing, 'failed', stm.message)
            passing = self.assume(p1, cond)
            if passing is not None:
                yield passing, UNIT_LIT

    def _exec_Fail(self, stm, path):
        self.close(path, 'failed', stm.message)
        yield from ()

    def _exec_ReadReg(self, stm, path):
        chunk = path.register(stm.reg)
        if chunk is None:
            self.close(path, 'stuck', f"register {stm.reg} is not owned")
            return
        yield path, chunk.value

    def _exec_WriteReg(self, stm, path):
        for p, value in self.run(stm.value, path):
            chunk = p.register(stm.reg)
            if chunk is None:
                self.close(p, 'stuck', f"register {stm.reg} is not owned")
                continue
            heap = tuple(RegChunk(stm.reg, value) if c is chunk else c for c in p.heap)
            yield p.evolve(heap=heap), UNIT_LIT

    def _exec_CallInternal(self, stm, path):
        for p, values in self.run_args(stm.args, path):
            yield from self.call(stm.fn, values, p)

    _exec_CallForeign = _exec_CallInternal

    def _exec_LemmaInvoke(self, stm, path):
        for p, values in self.run_args(stm.args, path):
            if stm.lemma in self.bundle.ghost_noops:
                yield p, UNIT_LIT
            else:
                yield from self.apply_lemma(stm.lemma, values, p)

    def _exec_Match(self, stm, path):
        for p, value in self.run(stm.scrutinee, path):
            yield from self.match(value, stm.cases, p)

    # calls

    def apply_lemma(self, name, args, path):
        decl = self.program.lemmas.get(name)
        if decl is None:
            raise NotFound(name, 'lemma')
        valuation = dict(zip(decl.param_names, args))
        consumed = self.consume(path, decl.pre, valuation, f"precondition of lemma {name}")
        if consumed is None:
            return
        p, valuation = consumed
        for q in self.produce(p, decl.post, valuation):
            yield q, UNIT_LIT

    def call(self, fn, args, path):
        decl = self.program.function(fn)
        contract = self.bundle.contract_for(fn)
        if contract is not None:
            self.stats['calls_by_contract'] += 1
            valuation = dict(zip(decl.param_names, args))
            consumed = self.consume(path, contract.pre, valuation, f"precondition of {fn}")
            if consumed is None:
                return
            p, valuation = consumed
            if isinstance(decl.ret, UnitType):
                result = UNIT_LIT
            else:
                result, p = self.fresh(p, contract.result, decl.ret)
            valuation = {**valuation, contract.result: result}
            for q in self.produce(p, contract.post, valuation):
                yield q, q.apply(result)
            return

        if decl.foreign:
            self.close(path, 'stuck', f"foreign function {fn} has no contract")
            return
        if path.depth >= self.max_depth:
            self.close(path, 'stuck', f"call depth exceeded at {fn}")
            return
        self.stats['calls_inlined'] += 1
        saved = path.env
        inner = path.evolve(env=dict(zip(decl.param_names, args)), depth=path.depth + 1)
        for p, value in self.run(decl.body, inner):
            yield p.evolve(env=self._rescope(saved, p), depth=path.depth), value

    # pattern matching

    def _bindings(self, pattern, value):
        if isinstance(pattern, s.PBind):
            return {pattern.name: value}
        if isinstance(pattern, s.PTuple):
            return {n: simplify(App(f'proj:{i}', (value,)))
                    for i, n in enumerate(pattern.names) if n is not None}
        if isinstance(pattern, s.PRecord):
            names = record_type(pattern.rtype).field_names
            return {n: simplify(App('field:' + f, (value,)))
                    for n, f in zip(pattern.names, names) if n is not None}
        return {}

    def _assume_shape(self, path, value, tag, names):
        _, arg_types = ctor_info(tag)
        args = []
        for i, ty in enumerate(arg_types):
            hint = names[i] if i < len(names) and names[i] else f"{tag.lower()}{i}"
            term, path = self.fresh(path, hint, ty)
            args.append(term)
        shape = App('ctor:' + tag, tuple(args))
        path = self.assume(path, App('eq', (value, shape)))
        if path is None:
            return None, None
        return path, [path.apply(a) for a in args]

    def match(self, value, cases, path):
        value = path.apply(value)
        union = None
        covered = set()
        literal_cases = False

        for case in cases:
            pattern = case.pattern

            if s.is_catch_all(pattern):
                if union is not None and isinstance(pattern, (s.PWild, s.PBind)):
                    for tag in union.tags:
                        if tag in covered:
                            continue
                        p, _ = self._assume_shape(path, value, tag, ())
                        if p is not None:
                            yield from self._with_bindings(
                                case.body, p, self._bindings(pattern, p.apply(value)))
                    return
                yield from self._with_bindings(case.body, path, self._bindings(pattern, value))
                return

            if isinstance(pattern, s.PLit):
                literal_cases = True
                lit = Lit(pattern.value)
                if isinstance(value, Lit):
                    if value == lit:
                        yield from self._with_bindings(case.body, path, {})
                        return
                    continue
                taken = self.assume(path, App('eq', (value, lit)))
                if taken is not None:
                    yield from self._with_bindings(case.body, taken, {})
                path = self.assume(path, negate(App('eq', (value, lit))))
                if path is None:
                    return
                value = path.apply(value)
                continue

            if isinstance(pattern, s.PCtor):
                if isinstance(value, App) and value.op.startswith('ctor:'):
                    if value.op[5:] == pattern.tag:
                        bindings = {n: a for n, a in zip(pattern.names, value.args) if n is not None}
                        yield from self._with_bindings(case.body, path, bindings)
                        return
                    continue
                union, _ = ctor_info(pattern.tag)
                covered.add(pattern.tag)
                p, args = self._assume_shape(path, value, pattern.tag, pattern.names)
                if p is not None:
                    bindings = {n: a for n, a in zip(pattern.names, args) if n is not None}
                    yield from self._with_bindings(case.body, p, bindings)
                continue

            raise TypeError(f"unsupported pattern {pattern!r}")

        if union is not None:
            if any(tag not in covered for tag in union.tags):
                self.close(path, 'failed', "no matching case")
            return
        if literal_cases or not cases:
            self.close(path, 'failed', "no matching case")
        elif isinstance(value, App) and value.op.startswith('ctor:'):
            self.close(path, 'failed', "no matching case")

    # verification conditions

    def path_vc(self, closed):
        leaf = V.Unprovable(closed.message) if closed.status == 'stuck' else V.Trivial
        for event in reversed(closed.path.events):
            kind = event[0]
            if kind == 'forall':
                leaf = V.ForAll(event[1], leaf)
            elif kind == 'assume':
                leaf = V.Assume(event[1], leaf)
            else:
                leaf = V.Assert(event[1], event[2], leaf)
        return leaf

    def vc(self):
        return V.Branch(tuple(self.path_vc(c) for c in self.closed))

    def finish(self, path, post, valuation, message="postcondition", drop_registers=False):

        """Consumes the postcondition of a completed path and checks for leaks"""

        valuation = {k: path.apply(v) for k, v in valuation.items()}
        consumed = self.consume(path, post, valuation, message)
        if consumed is None:
            return
        p, _ = consumed
        kinds = (MemChunk,) if drop_registers else (RegChunk, MemChunk)
        leaks = [c for c in p.heap if isinstance(c, kinds)]
        if leaks:
            self.close(p, 'stuck', "leaked " + ", ".join(str(c) for c in leaks))
            return
        self.close(p, 'done')
