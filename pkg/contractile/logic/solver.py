"""
Entailment checking for pure obligations

The prover has no SMT backend. It rewrites the goal with the equalities and
atoms the facts decide, then does case analysis: first over the values of
finite-typed variables, then over the remaining boolean atoms. Operators with
a registered unfolding (the PMP decision) are also tried expanded, each time
after the unexpanded goal.
"""

# built-ins
import logging

# internal packages
from .terms import (FALSE, TRUE, App, Lit, Var, conjuncts, free_vars, replace, simplify, subst,
                    subterms)
from ..core.types import domain


logger = logging.getLogger(__name__)

UNFOLDINGS = {}


def register_unfolding(op, fn):

    """
    Registers a symbolic definition for operator `op`

    `fn` receives the argument terms and returns an equivalent term built from
    simpler operators.
    """

    UNFOLDINGS[op] = fn


def unfold(term):
    if not isinstance(term, App):
        return term
    args = tuple(unfold(a) for a in term.args)
    fn = UNFOLDINGS.get(term.op)
    if fn is not None:
        return unfold(simplify(fn(*args)))
    return App(term.op, args)


def _has_unfoldable(term):
    return any(isinstance(t, App) and t.op in UNFOLDINGS for t in subterms(term))


def _bool_atoms(term, found):
    if isinstance(term, Lit):
        return
    if isinstance(term, App) and term.op in ('and', 'or', 'not'):
        for a in term.args:
            _bool_atoms(a, found)
    elif term not in found:
        found.append(term)


def _finite_vars(term):
    found = {}
    for t in subterms(term):
        if isinstance(t, Var) and t.ty is not None and domain(t.ty) is not None:
            found.setdefault(t.name, t)
    return [found[n] for n in sorted(found)]


class Prover:

    """
    Decides `facts ⊢ goal` for quantifier-free goals, soundly but incompletely

    Parameters
    ----------
    budget : int
        Maximum number of case splits per call to `prove`
    """

    def __init__(self, budget=4096):

        self.budget = budget
        self.__left = budget

    def prove(self, goal, facts=()):
        goal = simplify(goal)
        if goal == TRUE:
            return True
        facts = [c for f in facts for c in conjuncts(simplify(f))]
        if FALSE in facts:
            return True
        attempts = [(goal, facts)]
        if _has_unfoldable(goal) or any(_has_unfoldable(f) for f in facts):
            attempts.append((simplify(unfold(goal)),
                             [c for f in facts for c in conjuncts(simplify(unfold(f)))]))
        # rewriting alone settles most goals; case splits only when it does not
        for split in (False, True):
            for g, fs in attempts:
                self.__left = self.budget
                if self._decide(g, fs, split):
                    return True
        return False

    def _rewrite(self, goal, facts):

        """Applies the equalities and atom values that `facts` fix"""

        mapping = {}
        table = {}
        for f in facts:
            if isinstance(f, App) and f.op == 'eq':
                a, b = f.args
                if isinstance(a, Var) and a.name not in free_vars(b):
                    mapping.setdefault(a.name, b)
                    continue
                if isinstance(b, Var) and b.name not in free_vars(a):
                    mapping.setdefault(b.name, a)
                    continue
            if isinstance(f, App) and f.op == 'not':
                table[f.args[0]] = FALSE
            else:
                table[f] = TRUE
        if mapping:
            goal = simplify(subst(goal, mapping))
        if table:
            goal = simplify(replace(goal, table))
        return goal

    def _decide(self, goal, facts, split=True):
        goal = simplify(goal)
        if goal == TRUE or goal in facts:
            return True
        goal = self._rewrite(goal, facts)
        if goal == TRUE:
            return True
        if goal == FALSE:
            return False
        if isinstance(goal, App) and goal.op == 'and':
            return all(self._decide(c, facts, split) for c in goal.args)
        return split and self._split(goal, facts)

    def _case(self, goal, facts, fn):
        goal = simplify(fn(goal))
        cased = []
        for f in facts:
            g = simplify(fn(f))
            if g == FALSE:
                return True
            cased.extend(conjuncts(g))
        return self._decide(goal, cased)

    def _split(self, goal, facts):
        self.__left -= 1
        if self.__left <= 0:
            logger.debug("case-split budget exhausted on %s", goal)
            return False

        finite = _finite_vars(goal)
        if finite:
            x = finite[0]
            return all(self._case(goal, facts, lambda t, v=value: subst(t, {x.name: Lit(v)}))
                       for value in domain(x.ty))

        atoms = []
        _bool_atoms(goal, atoms)
        if not atoms:
            return goal == TRUE
        atom = atoms[0]
        return all(self._case(goal, facts, lambda t, b=b: replace(t, {atom: b}))
                   for b in (TRUE, FALSE))


def entails(facts, goal, budget=4096):
    return Prover(budget).prove(goal, facts)
