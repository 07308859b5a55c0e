"""
Statements of the core language

Expressions and statements share one sum type. Every node receives an integer
id when it is constructed; diagnostics and symbolic traces refer to nodes by
that id. Ids do not take part in equality, so two structurally equal
statements compare equal.
"""

# built-ins
import itertools
from dataclasses import dataclass, fields


_NODE_IDS = itertools.count(1)


@dataclass(frozen=True)
class Stm:

    def __post_init__(self):
        object.__setattr__(self, 'nid', next(_NODE_IDS))

    def children(self):

        """Direct sub-statements in evaluation order"""

        found = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, Stm):
                found.append(value)
            elif isinstance(value, tuple):
                for item in value:
                    if isinstance(item, Stm):
                        found.append(item)
                    elif isinstance(item, Case):
                        found.append(item.body)
        return found


@dataclass(frozen=True)
class Literal(Stm):

    value: object


@dataclass(frozen=True)
class Var(Stm):

    name: str


@dataclass(frozen=True)
class Let(Stm):

    name: str
    bound: Stm
    body: Stm


@dataclass(frozen=True)
class Seq(Stm):

    first: Stm
    second: Stm


@dataclass(frozen=True)
class CallInternal(Stm):

    fn: str
    args: tuple = ()


@dataclass(frozen=True)
class CallForeign(Stm):

    fn: str
    args: tuple = ()


@dataclass(frozen=True)
class LemmaInvoke(Stm):

    """Ghost statement: no effect on a concrete machine"""

    lemma: str
    args: tuple = ()


@dataclass(frozen=True)
class Assert(Stm):

    cond: Stm
    message: str = "assertion failed"


@dataclass(frozen=True)
class Fail(Stm):

    message: str = "fail"


@dataclass(frozen=True)
class If(Stm):

    cond: Stm
    then: Stm
    orelse: Stm


@dataclass(frozen=True)
class Prim(Stm):

    """Application of a built-in operator registered in `core.prims`"""

    op: str
    args: tuple = ()


@dataclass(frozen=True)
class Construct(Stm):

    """Builds a value of a union type from its constructor tag"""

    tag: str
    args: tuple = ()


@dataclass(frozen=True)
class RecordNew(Stm):

    rtype: str
    args: tuple = ()


@dataclass(frozen=True)
class RecordGet(Stm):

    record: Stm
    field: str


@dataclass(frozen=True)
class RecordSet(Stm):

    record: Stm
    field: str
    value: Stm


@dataclass(frozen=True)
class TupleProject(Stm):

    tuple_: Stm
    index: int


@dataclass(frozen=True)
class ReadReg(Stm):

    reg: str


@dataclass(frozen=True)
class WriteReg(Stm):

    reg: str
    value: Stm


@dataclass(frozen=True)
class Match(Stm):

    scrutinee: Stm
    cases: tuple


# patterns

@dataclass(frozen=True)
class Pattern:

    def binders(self):
        return ()


@dataclass(frozen=True)
class PWild(Pattern):
    pass


@dataclass(frozen=True)
class PBind(Pattern):

    name: str

    def binders(self):
        return (self.name,)


@dataclass(frozen=True)
class PLit(Pattern):

    value: object


@dataclass(frozen=True)
class PCtor(Pattern):

    """`names` holds one binder (or None for a wildcard) per constructor argument"""

    tag: str
    names: tuple = ()

    def binders(self):
        return tuple(n for n in self.names if n is not None)


@dataclass(frozen=True)
class PTuple(Pattern):

    names: tuple

    def binders(self):
        return tuple(n for n in self.names if n is not None)


@dataclass(frozen=True)
class PRecord(Pattern):

    rtype: str
    names: tuple

    def binders(self):
        return tuple(n for n in self.names if n is not None)


@dataclass(frozen=True)
class Case:

    pattern: Pattern
    body: Stm


def is_catch_all(pattern):
    return isinstance(pattern, (PWild, PBind, PTuple, PRecord))
