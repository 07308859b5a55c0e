"""
Small constructors for writing core-language programs in Python

Non-statement arguments are wrapped in `Literal`; program variables must be
written with `var`, so strings passed anywhere else are enum literals.
"""

# internal packages
from . import syntax as s


def stm(value):
    return value if isinstance(value, s.Stm) else s.Literal(value)


def _stms(values):
    return tuple(stm(v) for v in values)


def lit(value):
    return s.Literal(value)


def var(name):
    return s.Var(name)


def let(name, bound, body):
    return s.Let(name, stm(bound), stm(body))


def lets(bindings, body):

    """Nests `let` for each (name, statement) pair, outermost first"""

    result = stm(body)
    for name, bound in reversed(bindings):
        result = s.Let(name, stm(bound), result)
    return result


def seq(*stms):
    items = _stms(stms)
    if not items:
        return s.Literal(None)
    result = items[-1]
    for item in reversed(items[:-1]):
        result = s.Seq(item, result)
    return result


def call(fn, *args):
    return s.CallInternal(fn, _stms(args))


def foreign(fn, *args):
    return s.CallForeign(fn, _stms(args))


def lemma(name, *args):
    return s.LemmaInvoke(name, _stms(args))


def assert_(cond, message="assertion failed"):
    return s.Assert(stm(cond), message)


def fail(message="fail"):
    return s.Fail(message)


def if_(cond, then, orelse=None):
    return s.If(stm(cond), stm(then), stm(orelse))


def prim(op, *args):
    return s.Prim(op, _stms(args))


def construct(tag, *args):
    return s.Construct(tag, _stms(args))


def new(rtype, *args):
    return s.RecordNew(rtype, _stms(args))


def get(record, field):
    return s.RecordGet(stm(record), field)


def set_field(record, field, value):
    return s.RecordSet(stm(record), field, stm(value))


def proj(tup, index):
    return s.TupleProject(stm(tup), index)


def tuple_(*items):
    return prim('tuple', *items)


def read(reg):
    return s.ReadReg(reg)


def write(reg, value):
    return s.WriteReg(reg, stm(value))


def match(scrutinee, *cases):

    """`cases` are (pattern, body) pairs"""

    return s.Match(stm(scrutinee), tuple(s.Case(p, stm(b)) for p, b in cases))


def ctor(tag, *names):
    return s.PCtor(tag, tuple(names))


def plit(value):
    return s.PLit(value)


def wild():
    return s.PWild()


# operators

def eq(a, b):
    return prim('eq', a, b)


def ne(a, b):
    return prim('not', prim('eq', a, b))


def not_(a):
    return prim('not', a)


def and_(*args):
    return prim('and', *args)


def or_(*args):
    return prim('or', *args)


def add(a, b):
    return prim('add', a, b)


def le(a, b):
    return prim('le', a, b)


def lt(a, b):
    return prim('lt', a, b)


def bvadd(a, b):
    return prim('bvadd', a, b)
