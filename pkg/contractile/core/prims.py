"""
Built-in operators of the core language

A primitive has one concrete meaning, used both by the interpreter when it
evaluates a `Prim` statement and by the symbolic term layer when it folds
ground applications. ISA packages register their own operators (decoders,
permission orders, the PMP decision) with `primitive`.
"""

# built-ins
import operator
from dataclasses import dataclass


MASK32 = 0xFFFFFFFF


@dataclass(frozen=True)
class PrimOp:

    name: str
    evaluate: object
    arity: int = None


PRIMS = {}


def primitive(name, arity=None):

    """Decorator registering `fn` as the concrete semantics of operator `name`"""

    def register(fn):
        PRIMS[name] = PrimOp(name, fn, arity)
        return fn

    return register


def is_primitive(name):
    return name in PRIMS


def evaluate_prim(name, args):
    try:
        op = PRIMS[name]
    except KeyError:
        raise KeyError(f"unknown primitive '{name}'") from None
    return op.evaluate(*args)


def signed32(value):
    value &= MASK32
    return value - (1 << 32) if value & 0x80000000 else value


def _register_binary(name, fn):
    PRIMS[name] = PrimOp(name, fn, 2)


for _name, _fn in (('add', operator.add), ('sub', operator.sub), ('mul', operator.mul),
                   ('le', operator.le), ('lt', operator.lt), ('ge', operator.ge),
                   ('gt', operator.gt)):
    _register_binary(_name, _fn)


@primitive('eq', 2)
def _eq(a, b):
    return type(a) is type(b) and a == b


@primitive('ne', 2)
def _ne(a, b):
    return not _eq(a, b)


@primitive('neg', 1)
def _neg(a):
    return -a


@primitive('not', 1)
def _not(a):
    return not a


@primitive('and')
def _and(*args):
    return all(args)


@primitive('or')
def _or(*args):
    return any(args)


@primitive('implies', 2)
def _implies(a, b):
    return (not a) or b


@primitive('tuple')
def _tuple(*args):
    return tuple(args)


# 32-bit bitvector arithmetic; operands may be negative immediates

@primitive('bvadd', 2)
def _bvadd(a, b):
    return (a + b) & MASK32


@primitive('bvsub', 2)
def _bvsub(a, b):
    return (a - b) & MASK32


@primitive('bvand', 2)
def _bvand(a, b):
    return (a & b) & MASK32


@primitive('bvor', 2)
def _bvor(a, b):
    return (a | b) & MASK32


@primitive('bvxor', 2)
def _bvxor(a, b):
    return (a ^ b) & MASK32


@primitive('bvshl', 2)
def _bvshl(a, b):
    return (a << (b & 31)) & MASK32


@primitive('bvlshr', 2)
def _bvlshr(a, b):
    return (a & MASK32) >> (b & 31)


@primitive('bvashr', 2)
def _bvashr(a, b):
    return (signed32(a) >> (b & 31)) & MASK32


@primitive('bvslt', 2)
def _bvslt(a, b):
    return signed32(a) < signed32(b)


@primitive('bvult', 2)
def _bvult(a, b):
    return (a & MASK32) < (b & MASK32)


@primitive('bool_to_bits', 1)
def _bool_to_bits(a):
    return 1 if a else 0
