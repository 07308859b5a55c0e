# built-ins
from dataclasses import dataclass, fields, is_dataclass


class Type:

    """Semantic type of a core-language value; every subclass has a `name` field"""

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class IntType(Type):

    name: str = 'int'


@dataclass(frozen=True)
class BoolType(Type):

    name: str = 'bool'


@dataclass(frozen=True)
class UnitType(Type):

    name: str = 'unit'


@dataclass(frozen=True)
class BitsType(Type):

    """Bounded bitvector; values are Python ints in [0, 2**width)"""

    width: int = 32
    name: str = 'bits32'

    @property
    def modulus(self):
        return 1 << self.width


@dataclass(frozen=True)
class EnumType(Type):

    name: str
    values: tuple

    def __post_init__(self):
        _NAMED[self.name] = self


@dataclass(frozen=True)
class TupleType(Type):

    items: tuple
    name: str = 'tuple'

    def __str__(self):
        return "(" + ", ".join(str(t) for t in self.items) + ")"


@dataclass(frozen=True)
class RecordType(Type):

    """
    Record type backed by a frozen dataclass

    Attributes
    ----------
    fields : tuple
        (field name, Type) pairs in declaration order, matching the dataclass
    cls : type
        The frozen dataclass whose instances are the concrete values
    """

    name: str
    fields: tuple
    cls: type

    def __post_init__(self):
        _NAMED[self.name] = self
        _RECORDS_BY_NAME[self.name] = self
        _RECORDS_BY_CLASS[self.cls] = self

    @property
    def field_names(self):
        return tuple(f for f, _ in self.fields)

    def field_type(self, field):
        for f, ty in self.fields:
            if f == field:
                return ty
        raise KeyError(f"{self.name} has no field '{field}'")


@dataclass(frozen=True)
class UnionType(Type):

    """Tagged sum; ctor tags are global so that a tag alone identifies its union"""

    name: str
    ctors: tuple

    def __post_init__(self):
        _NAMED[self.name] = self
        for tag, args in self.ctors:
            _CTORS[tag] = (self, tuple(args))

    @property
    def tags(self):
        return tuple(tag for tag, _ in self.ctors)

    def arg_types(self, tag):
        for t, args in self.ctors:
            if t == tag:
                return tuple(args)
        raise KeyError(f"{self.name} has no constructor '{tag}'")


@dataclass(frozen=True)
class Ctor:

    """Concrete value of a union type"""

    tag: str
    args: tuple = ()

    def __repr__(self):
        if not self.args:
            return self.tag
        return f"{self.tag}({', '.join(repr(a) for a in self.args)})"


INT = IntType()
BOOL = BoolType()
UNIT = UnitType()
BITS32 = BitsType()

_NAMED = {}
_RECORDS_BY_NAME = {}
_RECORDS_BY_CLASS = {}
_CTORS = {}


def named_type(name):

    """Looks up a scalar or registered enum, record or union type by name"""

    for ty in (INT, BOOL, UNIT, BITS32):
        if ty.name == name:
            return ty
    try:
        return _NAMED[name]
    except KeyError:
        raise KeyError(f"unknown type '{name}'") from None


def record_type(name):
    return _RECORDS_BY_NAME[name]


def record_type_of(value):

    """Returns the RecordType of a record value, or None for any other value"""

    return _RECORDS_BY_CLASS.get(type(value))


def ctor_info(tag):

    """Returns (UnionType, argument types) registered for a constructor tag"""

    return _CTORS[tag]


def domain(ty):

    """
    Lists every value of a finite type

    Returns
    -------
    tuple or None
        None when the type is not finite (ints, bitvectors, records, unions)
    """

    if isinstance(ty, BoolType):
        return (False, True)
    if isinstance(ty, EnumType):
        return ty.values
    if isinstance(ty, UnitType):
        return (None,)
    return None


def default_value(ty):
    if isinstance(ty, (IntType, BitsType)):
        return 0
    if isinstance(ty, BoolType):
        return False
    if isinstance(ty, UnitType):
        return None
    if isinstance(ty, EnumType):
        return ty.values[0]
    if isinstance(ty, TupleType):
        return tuple(default_value(t) for t in ty.items)
    if isinstance(ty, RecordType):
        return ty.cls(**{f: default_value(t) for f, t in ty.fields})
    if isinstance(ty, UnionType):
        tag, args = ty.ctors[0]
        return Ctor(tag, tuple(default_value(t) for t in args))
    raise TypeError(f"no default value for {ty}")


def check_value(ty, value):

    """True when `value` is a well-typed concrete value of `ty`"""

    if isinstance(ty, BoolType):
        return isinstance(value, bool)
    if isinstance(ty, IntType):
        return isinstance(value, int) and not isinstance(value, bool)
    if isinstance(ty, BitsType):
        return (isinstance(value, int) and not isinstance(value, bool)
                and 0 <= value < ty.modulus)
    if isinstance(ty, UnitType):
        return value is None
    if isinstance(ty, EnumType):
        return value in ty.values
    if isinstance(ty, TupleType):
        return (isinstance(value, tuple) and len(value) == len(ty.items)
                and all(check_value(t, v) for t, v in zip(ty.items, value)))
    if isinstance(ty, RecordType):
        return (isinstance(value, ty.cls)
                and all(check_value(t, getattr(value, f)) for f, t in ty.fields))
    if isinstance(ty, UnionType):
        if not isinstance(value, Ctor) or value.tag not in ty.tags:
            return False
        args = ty.arg_types(value.tag)
        return (len(args) == len(value.args)
                and all(check_value(t, v) for t, v in zip(args, value.args)))
    return False


def record_fields(value):

    """(name, value) pairs of a record value in declaration order"""

    if not is_dataclass(value):
        raise TypeError(f"{value!r} is not a record")
    return tuple((f.name, getattr(value, f.name)) for f in fields(value))
