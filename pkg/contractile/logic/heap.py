"""
Symbolic heaps: chunks, production and consumption of assertions

A heap is a tuple of chunks. `produce` adds an assertion's spatial atoms as
chunks and returns its pure part as facts; `ConsumeSearch` enumerates every
way of matching an assertion against a heap. Matching is first-order and
syntactic on simplified terms; pure atoms that are not decided by the
simplifier become proof obligations.
"""

# built-ins
import itertools
from dataclasses import dataclass
from typing import NamedTuple

# internal packages
from .assertions import (Exists, Or, PointsToMem, PointsToReg, Pred, Pure, SPATIAL, Star, Wand,
                         assertion_vars, is_duplicable, rename_bound, subst_assertion)
from .terms import (FALSE, TRUE, App, Lit, Var, conjuncts, fresh_vars, free_vars, simplify,
                    subst)
from ..core.types import record_type
from ..errors import SpatialFailure


@dataclass(frozen=True)
class RegChunk:

    reg: str
    value: object

    def __str__(self):
        return f"{self.reg} ↦ {self.value}"


@dataclass(frozen=True)
class MemChunk:

    addr: object
    value: object

    def __str__(self):
        return f"[{self.addr}] ↦ {self.value}"


@dataclass(frozen=True)
class PredChunk:

    name: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class WandChunk:

    """Un-curried magic wand: surrendering `lhs` yields `rhs`"""

    lhs: object
    rhs: object

    def __str__(self):
        return f"({self.lhs} -∗ {self.rhs})"


def chunk_assertion(chunk):

    """The assertion a chunk stands for"""

    if isinstance(chunk, RegChunk):
        return PointsToReg(chunk.reg, chunk.value)
    if isinstance(chunk, MemChunk):
        return PointsToMem(chunk.addr, chunk.value)
    if isinstance(chunk, PredChunk):
        return Pred(chunk.name, chunk.args)
    return Wand(chunk.lhs, chunk.rhs)


def map_chunk(chunk, fn):

    """Applies `fn` to every term of a chunk"""

    if isinstance(chunk, RegChunk):
        return RegChunk(chunk.reg, fn(chunk.value))
    if isinstance(chunk, MemChunk):
        return MemChunk(fn(chunk.addr), fn(chunk.value))
    if isinstance(chunk, PredChunk):
        return PredChunk(chunk.name, tuple(fn(a) for a in chunk.args))
    return chunk


def substitute_chunk(chunk, mapping):
    if isinstance(chunk, WandChunk):
        return WandChunk(_simplified(subst_assertion(chunk.lhs, mapping)),
                         _simplified(subst_assertion(chunk.rhs, mapping)))
    return map_chunk(chunk, lambda t: simplify(subst(t, mapping)))


def _simplified(a):
    if isinstance(a, Pure):
        return Pure(simplify(a.term))
    if isinstance(a, PointsToReg):
        return PointsToReg(a.reg, simplify(a.value))
    if isinstance(a, PointsToMem):
        return PointsToMem(simplify(a.addr), simplify(a.value))
    if isinstance(a, Pred):
        return Pred(a.name, tuple(simplify(t) for t in a.args))
    if isinstance(a, Star):
        return Star(_simplified(a.left), _simplified(a.right))
    if isinstance(a, Or):
        return Or(_simplified(a.left), _simplified(a.right))
    if isinstance(a, Wand):
        return Wand(_simplified(a.lhs), _simplified(a.rhs))
    if isinstance(a, Exists):
        return Exists(a.name, a.ty, _simplified(a.body))
    return a


class FreshSupply:

    """Makes fresh symbolic variables named `<hint>#<n>`"""

    def __init__(self):

        self.counter = itertools.count()
        self.created = []

    def name(self, hint):
        return f"{hint}#{next(self.counter)}"

    def __call__(self, hint, ty):
        term, created = fresh_vars(hint, ty, self.name)
        self.created.extend(created)
        return term


class Production(NamedTuple):

    heap: tuple
    facts: tuple
    valuation: dict


def produce(a, valuation, heap=(), supply=None):

    """
    Adds assertion `a` to a heap

    Parameters
    ----------
    a : Assertion
    valuation : dict
        Logic variable name to Term; must cover the free variables of `a`
    heap : tuple
    supply : function, optional
        Called with (name hint, Type) for every existential; defaults to a
        FreshSupply

    Returns
    -------
    list of Production
        One per disjunct combination of the Or assertions inside `a`
    """

    supply = supply if supply is not None else FreshSupply()
    results = []

    def term(t, sigma):
        return simplify(subst(t, sigma))

    def go(pending, heap, facts):
        if not pending:
            results.append(Production(tuple(heap), tuple(facts), valuation))
            return
        first, rest = pending[0], pending[1:]
        sigma = valuation
        if isinstance(first, Star):
            go([first.left, first.right] + rest, heap, facts)
        elif isinstance(first, Exists):
            value = supply(first.name, first.ty)
            go([subst_assertion(first.body, {first.name: value})] + rest, heap, facts)
        elif isinstance(first, Or):
            go([first.left] + rest, heap, facts)
            go([first.right] + rest, heap, facts)
        elif isinstance(first, Pure):
            t = term(first.term, sigma)
            go(rest, heap, facts if t == TRUE else facts + [t])
        elif isinstance(first, PointsToReg):
            go(rest, heap + [RegChunk(first.reg, term(first.value, sigma))], facts)
        elif isinstance(first, PointsToMem):
            chunk = MemChunk(term(first.addr, sigma), term(first.value, sigma))
            go(rest, heap + [chunk], facts)
        elif isinstance(first, Pred):
            chunk = PredChunk(first.name, tuple(term(t, sigma) for t in first.args))
            if is_duplicable(first.name) and chunk in heap:
                go(rest, heap, facts)
            else:
                go(rest, heap + [chunk], facts)
        elif isinstance(first, Wand):
            chunk = WandChunk(_simplified(subst_assertion(first.lhs, sigma)),
                              _simplified(subst_assertion(first.rhs, sigma)))
            go(rest, heap + [chunk], facts)
        else:
            raise TypeError(f"cannot produce {first!r}")

    go([a], list(heap), [])
    return results


# matching

def unify(pattern, target, sigma):

    """
    Syntactic matching of a pattern term against a simplified target term

    Pattern variables missing from `sigma` are bound; bound ones must equal
    the target after simplification.

    Returns
    -------
    dict or None
    """

    if isinstance(pattern, Var):
        if pattern.name in sigma:
            return sigma if sigma[pattern.name] == target else None
        return {**sigma, pattern.name: target}
    if isinstance(pattern, Lit):
        return sigma if pattern == target else None
    if not (free_vars(pattern) - sigma.keys()):
        return sigma if simplify(subst(pattern, sigma)) == target else None
    if isinstance(target, App) and target.op == pattern.op and len(target.args) == len(pattern.args):
        for p, t in zip(pattern.args, target.args):
            sigma = unify(p, t, sigma)
            if sigma is None:
                return None
        return sigma
    if pattern.op.startswith('record:') and not isinstance(target, Lit):
        names = record_type(pattern.op[7:]).field_names
        parts = [simplify(App('field:' + f, (target,))) for f in names]
    elif pattern.op == 'tuple' and not isinstance(target, Lit):
        parts = [simplify(App(f'proj:{i}', (target,))) for i in range(len(pattern.args))]
    else:
        return None
    for p, t in zip(pattern.args, parts):
        sigma = unify(p, t, sigma)
        if sigma is None:
            return None
    return sigma


def _unify_terms(patterns, targets, sigma):
    if len(patterns) != len(targets):
        return None
    for p, t in zip(patterns, targets):
        sigma = unify(p, t, sigma)
        if sigma is None:
            return None
    return sigma


def unify_assertion(pattern, target, sigma):

    """Matches two assertions of the same shape, as stored inside wand chunks"""

    if type(pattern) is not type(target):
        return None
    if isinstance(pattern, Pure):
        return unify(pattern.term, target.term, sigma)
    if isinstance(pattern, PointsToReg):
        return unify(pattern.value, target.value, sigma) if pattern.reg == target.reg else None
    if isinstance(pattern, PointsToMem):
        return _unify_terms((pattern.addr, pattern.value), (target.addr, target.value), sigma)
    if isinstance(pattern, Pred):
        if pattern.name != target.name:
            return None
        return _unify_terms(pattern.args, target.args, sigma)
    if isinstance(pattern, (Star, Or)):
        sigma = unify_assertion(pattern.left, target.left, sigma)
        return None if sigma is None else unify_assertion(pattern.right, target.right, sigma)
    if isinstance(pattern, Wand):
        sigma = unify_assertion(pattern.lhs, target.lhs, sigma)
        return None if sigma is None else unify_assertion(pattern.rhs, target.rhs, sigma)
    if isinstance(pattern, Exists):
        # the pattern's binder stands for the target's binder while matching the bodies
        inner = {**sigma, pattern.name: Var(target.name, target.ty)}
        result = unify_assertion(pattern.body, target.body, inner)
        if result is None:
            return None
        result = dict(result)
        if pattern.name in sigma:
            result[pattern.name] = sigma[pattern.name]
        else:
            del result[pattern.name]
        return result
    return None


def unify_atom(atom, chunk, sigma):
    if isinstance(atom, PointsToReg):
        if isinstance(chunk, RegChunk) and chunk.reg == atom.reg:
            return unify(atom.value, chunk.value, sigma)
        return None
    if isinstance(atom, PointsToMem):
        if isinstance(chunk, MemChunk):
            return _unify_terms((atom.addr, atom.value), (chunk.addr, chunk.value), sigma)
        return None
    if isinstance(atom, Pred):
        if isinstance(chunk, PredChunk) and chunk.name == atom.name:
            return _unify_terms(atom.args, chunk.args, sigma)
        return None
    if isinstance(atom, Wand):
        if isinstance(chunk, WandChunk):
            sigma = unify_assertion(atom.lhs, chunk.lhs, sigma)
            return None if sigma is None else unify_assertion(atom.rhs, chunk.rhs, sigma)
        return None
    raise TypeError(f"not a spatial atom: {atom!r}")


class Consumed(NamedTuple):

    heap: tuple
    valuation: dict
    obligations: tuple
    matched: int


def _unbound(atom, sigma):
    return len(assertion_vars(atom) - sigma.keys())


def _bind_equation(term, sigma):

    """(name, value) when `term` is `x = t` with x unbound and t fully bound"""

    if isinstance(term, Var) and term.name not in sigma:
        return term.name, TRUE
    if not (isinstance(term, App) and term.op == 'eq'):
        return None
    for x, other in (term.args, reversed(term.args)):
        if isinstance(x, Var) and x.name not in sigma and not (free_vars(other) - sigma.keys()):
            return x.name, simplify(subst(other, sigma))
    return None


class ConsumeSearch:

    """
    Lazily enumerates the ways an assertion can be consumed from a heap

    Spatial atoms are matched first, the atom with the fewest unbound
    variables before the others; disjunctions are tried left before right;
    pure atoms come last and bind remaining variables from equations or from
    `facts`. Iterating yields `Consumed` alternatives. After exhaustion
    `failed` names the atom that could not be matched on the deepest attempt.
    """

    def __init__(self, assertion, valuation, heap, facts=()):

        self.assertion = assertion
        self.valuation = {k: simplify(v) for k, v in valuation.items()}
        self.heap = tuple(heap)
        self.facts = [c for f in facts for c in conjuncts(f)]
        self.failed = None
        self.__depth = -1
        self.__renames = itertools.count()

    def __iter__(self):
        return self._search([self.assertion], self.valuation, self.heap, (), 0)

    def _note_failure(self, atom, sigma, depth):
        if depth > self.__depth:
            self.__depth = depth
            self.failed = subst_assertion(atom, sigma)

    def _split(self, pending):
        spatial, ors, pures = [], [], []
        stack = list(pending)
        while stack:
            item = stack.pop(0)
            if isinstance(item, Star):
                stack[0:0] = [item.left, item.right]
            elif isinstance(item, Exists):
                name = f"{item.name}'{next(self.__renames)}"
                stack.insert(0, rename_bound(item.body, item.name, name, item.ty))
            elif isinstance(item, SPATIAL):
                spatial.append(item)
            elif isinstance(item, Or):
                ors.append(item)
            elif isinstance(item, Pure):
                pures.append(item)
            else:
                raise TypeError(f"cannot consume {item!r}")
        return spatial, ors, pures

    def _search(self, pending, sigma, heap, obligations, matched):
        spatial, ors, pures = self._split(pending)

        if spatial:
            atom = min(spatial, key=lambda a: _unbound(a, sigma))
            rest = [a for a in spatial if a is not atom] + ors + pures
            found = False
            for i, chunk in enumerate(heap):
                extended = unify_atom(atom, chunk, sigma)
                if extended is None:
                    continue
                found = True
                if isinstance(chunk, PredChunk) and is_duplicable(chunk.name):
                    remaining = heap
                else:
                    remaining = heap[:i] + heap[i + 1:]
                yield from self._search(rest, extended, remaining, obligations, matched + 1)
            if not found:
                self._note_failure(atom, sigma, matched)
            return

        if ors:
            first, rest = ors[0], ors[1:] + pures
            yield from self._search([first.left] + rest, sigma, heap, obligations, matched)
            yield from self._search([first.right] + rest, sigma, heap, obligations, matched)
            return

        yield from self._pures(pures, sigma, heap, list(obligations), matched)

    def _pures(self, pending, sigma, heap, obligations, matched):
        pending = list(pending)
        progress = True
        while progress:
            progress = False
            for item in list(pending):
                if not (free_vars(item.term) - sigma.keys()):
                    pending.remove(item)
                    progress = True
                    t = simplify(subst(item.term, sigma))
                    if t == FALSE:
                        self._note_failure(item, sigma, matched)
                        return
                    if t != TRUE and t not in obligations:
                        obligations.append(t)
                    continue
                binding = _bind_equation(item.term, sigma)
                if binding is not None:
                    pending.remove(item)
                    progress = True
                    sigma = {**sigma, binding[0]: binding[1]}

        if not pending:
            yield Consumed(heap, sigma, tuple(obligations), matched)
            return

        item, rest = pending[0], pending[1:]
        found = False
        for fact in self.facts:
            extended = unify(item.term, fact, sigma)
            if extended is not None:
                found = True
                yield from self._pures(rest, extended, heap, list(obligations), matched)
        if not found:
            self._note_failure(item, sigma, matched)


def consume(a, valuation, heap, facts=(), limit=None):

    """
    All alternatives of consuming `a` (at most `limit`)

    Raises
    ------
    SpatialFailure
        when no alternative exists
    """

    search = ConsumeSearch(a, valuation, heap, facts)
    found = list(itertools.islice(search, limit))
    if not found:
        raise SpatialFailure(search.failed if search.failed is not None else a)
    return found
