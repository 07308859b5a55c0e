"""
Values of the MinimalCaps capability machine
"""

# built-ins
from dataclasses import dataclass

# internal packages
from ...core.prims import primitive
from ...core.types import INT, Ctor, EnumType, RecordType, UnionType


PERMISSIONS = ('O', 'R', 'RW', 'E')
REGISTERS = ('R0', 'R1', 'R2', 'R3')

PERMISSION = EnumType('Permission', PERMISSIONS)
GPR = EnumType('GPR', REGISTERS)


@dataclass(frozen=True)
class Capability:

    """Authority over the word range [begin, end], currently pointing at `cursor`"""

    perm: str
    begin: int
    end: int
    cursor: int

    def __str__(self):
        return f"({self.perm}, {self.begin}, {self.end}, {self.cursor})"


CAPABILITY = RecordType('Capability', (('perm', PERMISSION), ('begin', INT), ('end', INT),
                                       ('cursor', INT)), Capability)

WORD = UnionType('Word', (('Int', (INT,)), ('Cap', (CAPABILITY,))))

INSTRUCTION = UnionType('McInstr', (
    ('Store', (GPR, GPR, INT)),
    ('Load', (GPR, GPR, INT)),
    ('Jalr', (GPR, GPR)),
    ('Move', (GPR, GPR)),
    ('Lea', (GPR, INT)),
    ('Restrict', (GPR, PERMISSION)),
    ('Subseg', (GPR, GPR, GPR)),
    ('Add', (GPR, GPR, GPR)),
    ('AddI', (GPR, GPR, INT)),
    ('Bnez', (GPR, INT)),
    ('Fail', ()),
    ('Halt', ()),
))


def Int(z):
    return Ctor('Int', (z,))


def Cap(perm, begin, end, cursor):
    return Ctor('Cap', (Capability(perm, begin, end, cursor),))


def instr(tag, *args):
    return Ctor(tag, tuple(args))


# permission order: O below everything, R below RW, E only above O

_ABOVE = {
    'O': {'O', 'R', 'RW', 'E'},
    'R': {'R', 'RW'},
    'RW': {'RW'},
    'E': {'E'},
}


@primitive('subperm', 2)
def subperm(p, q):
    return q in _ABOVE[p]


@primitive('within_bounds', 1)
def within_bounds(c):
    return c.begin <= c.cursor <= c.end


def authority(word):

    """(permission, begin, end) a word grants, or None for integers"""

    if word.tag != 'Cap':
        return None
    c = word.args[0]
    return c.perm, c.begin, c.end
