"""
Separation-logic assertions, predicates, contracts and lemma declarations
"""

# built-ins
from dataclasses import dataclass, field

# internal packages
from .terms import TRUE, App, Var, free_vars, subst


class Assertion:
    pass


@dataclass(frozen=True)
class Pure(Assertion):

    term: object

    def __str__(self):
        return f"⌜{self.term}⌝"


@dataclass(frozen=True)
class PointsToReg(Assertion):

    reg: str
    value: object

    def __str__(self):
        return f"{self.reg} ↦ {self.value}"


@dataclass(frozen=True)
class PointsToMem(Assertion):

    addr: object
    value: object

    def __str__(self):
        return f"[{self.addr}] ↦ {self.value}"


@dataclass(frozen=True)
class Star(Assertion):

    left: Assertion
    right: Assertion

    def __str__(self):
        return f"{self.left} ∗ {self.right}"


@dataclass(frozen=True)
class Wand(Assertion):

    lhs: Assertion
    rhs: Assertion

    def __str__(self):
        return f"({self.lhs} -∗ {self.rhs})"


@dataclass(frozen=True)
class Exists(Assertion):

    name: str
    ty: object
    body: Assertion

    def __str__(self):
        return f"∃{self.name}. {self.body}"


@dataclass(frozen=True)
class Pred(Assertion):

    name: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Or(Assertion):

    left: Assertion
    right: Assertion

    def __str__(self):
        return f"({self.left} ∨ {self.right})"


EMP = Pure(TRUE)

SPATIAL = (PointsToReg, PointsToMem, Pred, Wand)


def star(*parts):

    """Right-nested separating conjunction; `emp` when empty"""

    parts = [p for p in parts if p != EMP]
    if not parts:
        return EMP
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = Star(part, result)
    return result


def or_(*alternatives):
    result = alternatives[-1]
    for alt in reversed(alternatives[:-1]):
        result = Or(alt, result)
    return result


def exists(binders, body):

    """`binders` are (name, Type) pairs, outermost first"""

    for name, ty in reversed(binders):
        body = Exists(name, ty, body)
    return body


def pure(op, *args):
    return Pure(App(op, args))


def atoms(a):

    """Flattens Star; other forms are returned whole"""

    if isinstance(a, Star):
        return atoms(a.left) + atoms(a.right)
    if a == EMP:
        return []
    return [a]


def assertion_vars(a):

    """Free logic-variable names of an assertion"""

    if isinstance(a, Pure):
        return set(free_vars(a.term))
    if isinstance(a, PointsToReg):
        return set(free_vars(a.value))
    if isinstance(a, PointsToMem):
        return set(free_vars(a.addr)) | set(free_vars(a.value))
    if isinstance(a, Pred):
        names = set()
        for t in a.args:
            names |= free_vars(t)
        return names
    if isinstance(a, (Star, Or)):
        return assertion_vars(a.left) | assertion_vars(a.right)
    if isinstance(a, Wand):
        return assertion_vars(a.lhs) | assertion_vars(a.rhs)
    if isinstance(a, Exists):
        return assertion_vars(a.body) - {a.name}
    raise TypeError(f"not an assertion: {a!r}")


def subst_assertion(a, mapping):

    """Substitutes terms for free logic variables, respecting Exists binders"""

    if not mapping:
        return a
    if isinstance(a, Pure):
        return Pure(subst(a.term, mapping))
    if isinstance(a, PointsToReg):
        return PointsToReg(a.reg, subst(a.value, mapping))
    if isinstance(a, PointsToMem):
        return PointsToMem(subst(a.addr, mapping), subst(a.value, mapping))
    if isinstance(a, Pred):
        return Pred(a.name, tuple(subst(t, mapping) for t in a.args))
    if isinstance(a, Star):
        return Star(subst_assertion(a.left, mapping), subst_assertion(a.right, mapping))
    if isinstance(a, Or):
        return Or(subst_assertion(a.left, mapping), subst_assertion(a.right, mapping))
    if isinstance(a, Wand):
        return Wand(subst_assertion(a.lhs, mapping), subst_assertion(a.rhs, mapping))
    if isinstance(a, Exists):
        inner = {k: v for k, v in mapping.items() if k != a.name}
        return Exists(a.name, a.ty, subst_assertion(a.body, inner))
    raise TypeError(f"not an assertion: {a!r}")


def rename_bound(a, old, new, ty=None):
    return subst_assertion(a, {old: Var(new, ty)})


# predicates

@dataclass(frozen=True)
class PredicateDecl:

    """
    An abstract predicate

    Attributes
    ----------
    duplicable : bool
        Consuming a duplicable predicate leaves its chunk in place
    derive : function, optional
        Given a concrete MachineState, returns the argument values the
        predicate holds for (used to sample concrete states)
    holds : function, optional
        Given a concrete MachineState and argument values, decides the
        predicate; predicates without one are taken to hold
    """

    name: str
    arity: int
    duplicable: bool = False
    derive: object = None
    holds: object = None


PREDICATES = {}


def register_predicate(name, arity, duplicable=False, derive=None, holds=None):
    decl = PredicateDecl(name, arity, duplicable, derive, holds)
    PREDICATES[name] = decl
    return decl


def is_duplicable(name):
    decl = PREDICATES.get(name)
    return decl is not None and decl.duplicable


# contracts and lemmas

@dataclass(frozen=True)
class Contract:

    """
    Pre/post specification of a function

    Attributes
    ----------
    logic_vars : tuple
        (name, Type) pairs; the function parameters come first and are bound
        to the call arguments, the rest are bound by matching the precondition
    result : str
        Name under which the postcondition refers to the return value
    """

    logic_vars: tuple
    pre: Assertion
    post: Assertion
    result: str = 'result'

    def __str__(self):
        return f"{{{self.pre}}} · {{{self.result}. {self.post}}}"


@dataclass(frozen=True)
class LemmaDecl:

    """
    Ghost lemma: consumes `pre` and produces `post`

    `oracle`, when given, decides the lemma's pure content on concrete
    parameter values and is only used by the test suite.
    """

    name: str
    params: tuple
    pre: Assertion
    post: Assertion
    logic_vars: tuple = ()
    oracle: object = field(default=None, compare=False)

    @property
    def param_names(self):
        return tuple(n for n, _ in self.params)
