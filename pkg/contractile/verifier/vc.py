"""
Verification conditions

A VC is a tree; it holds when every Assert holds under the Assumes above it,
for all values of the universally quantified variables.
"""

# built-ins
from dataclasses import dataclass

# internal packages
from ..logic.solver import Prover
from ..logic.terms import (FALSE, TRUE, App, Var, conjuncts, evaluate, free_vars, negate,
                           simplify, subst)


class VC:
    pass


@dataclass(frozen=True)
class ForAll(VC):

    var: Var
    body: VC


@dataclass(frozen=True)
class ExistsVC(VC):

    var: Var
    body: VC


@dataclass(frozen=True)
class Assume(VC):

    term: object
    body: VC


@dataclass(frozen=True)
class Assert(VC):

    term: object
    message: str
    body: VC


@dataclass(frozen=True)
class Branch(VC):

    children: tuple


@dataclass(frozen=True)
class TrivialVC(VC):

    def __repr__(self):
        return 'Trivial'


@dataclass(frozen=True)
class Unprovable(VC):

    message: str


Trivial = TrivialVC()


def branch(children):
    children = tuple(c for c in children if c != Trivial)
    if not children:
        return Trivial
    if len(children) == 1:
        return children[0]
    return Branch(children)


def _equation(term):
    if isinstance(term, App) and term.op == 'eq':
        a, b = term.args
        if isinstance(b, Var) and b.name not in free_vars(a):
            return b.name, a
        if isinstance(a, Var) and a.name not in free_vars(b):
            return a.name, b
    return None


class _Solver:

    def __init__(self, prover):

        self.prover = prover

    def run(self, vc, facts, mapping):
        if isinstance(vc, (TrivialVC, Unprovable)):
            return vc
        if isinstance(vc, (ForAll, ExistsVC)):
            body = self.run(vc.body, facts, mapping)
            if body == Trivial or vc.var.name in mapping:
                return body
            return type(vc)(vc.var, body)
        if isinstance(vc, Branch):
            return branch(self.run(c, facts, mapping) for c in vc.children)

        term = simplify(subst(vc.term, mapping))
        if isinstance(vc, Assume):
            if term == FALSE or negate(term) in facts:
                return Trivial
            if term == TRUE:
                return self.run(vc.body, facts, mapping)
            equation = _equation(term)
            if equation is not None:
                name, value = equation
                step = {name: value}
                extended = {k: simplify(subst(v, step)) for k, v in mapping.items()}
                extended[name] = value
                rewritten = []
                for f in facts:
                    g = simplify(subst(f, step))
                    if g == FALSE:
                        return Trivial
                    rewritten.extend(conjuncts(g))
                return self.run(vc.body, rewritten, extended)
            body = self.run(vc.body, facts + list(conjuncts(term)), mapping)
            return Trivial if body == Trivial else Assume(term, body)

        # Assert
        if term == FALSE:
            return Unprovable(f"{vc.message}: {vc.term} is false")
        body = self.run(vc.body, facts + list(conjuncts(term)), mapping)
        if term == TRUE or self.prover.prove(term, facts):
            return body
        return Assert(term, vc.message, body)


def solve(vc, prover=None):

    """
    Simplifies a VC

    Assumed equalities are substituted, assertions the prover discharges are
    dropped, branches under contradictory assumptions are pruned and
    assertions that are false outright become Unprovable.
    """

    return _Solver(prover or Prover()).run(vc, [], {})


def eval_vc_ground(vc, assignment):

    """
    Truth of a VC under a total assignment of its quantified variables

    Raises
    ------
    KeyError
        when a variable the evaluation needs has no value
    """

    if isinstance(vc, TrivialVC):
        return True
    if isinstance(vc, Unprovable):
        return False
    if isinstance(vc, (ForAll, ExistsVC)):
        return eval_vc_ground(vc.body, assignment)
    if isinstance(vc, Branch):
        return all(eval_vc_ground(c, assignment) for c in vc.children)
    if isinstance(vc, Assume):
        return (not evaluate(vc.term, assignment)) or eval_vc_ground(vc.body, assignment)
    return bool(evaluate(vc.term, assignment)) and eval_vc_ground(vc.body, assignment)


def quantified_vars(vc):

    """Variables bound by ForAll/ExistsVC nodes, in tree order"""

    found = {}

    def walk(node):
        if isinstance(node, (ForAll, ExistsVC)):
            found.setdefault(node.var.name, node.var)
            walk(node.body)
        elif isinstance(node, Branch):
            for c in node.children:
                walk(c)
        elif isinstance(node, (Assume, Assert)):
            walk(node.body)

    walk(vc)
    return list(found.values())


def contains_unprovable(vc):
    if isinstance(vc, Unprovable):
        return True
    if isinstance(vc, Branch):
        return any(contains_unprovable(c) for c in vc.children)
    if isinstance(vc, (ForAll, ExistsVC, Assume, Assert)):
        return contains_unprovable(vc.body)
    return False


def show_vc(vc, indent=0):

    """Indented multi-line rendering used in reports"""

    pad = '  ' * indent
    if isinstance(vc, TrivialVC):
        return f"{pad}trivial"
    if isinstance(vc, Unprovable):
        return f"{pad}unprovable: {vc.message}"
    if isinstance(vc, ForAll):
        return f"{pad}forall {vc.var.name}\n{show_vc(vc.body, indent)}"
    if isinstance(vc, ExistsVC):
        return f"{pad}exists {vc.var.name}\n{show_vc(vc.body, indent)}"
    if isinstance(vc, Assume):
        return f"{pad}assume {vc.term}\n{show_vc(vc.body, indent)}"
    if isinstance(vc, Assert):
        return f"{pad}assert {vc.term}  [{vc.message}]\n{show_vc(vc.body, indent)}"
    return "\n".join(f"{pad}branch\n{show_vc(c, indent + 1)}" for c in vc.children)
