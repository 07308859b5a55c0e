"""
Concrete machine states and run outcomes
"""

# built-ins
import struct
from dataclasses import dataclass, field


WORD_BYTES = 4


@dataclass
class MachineState:

    """
    Registers and memory of one concrete machine

    Attributes
    ----------
    registers : dict
        Register name to concrete value
    memory : dict
        Sparse memory. Word-addressed machines map an address to a word value;
        byte-addressed machines map an address to a byte. Missing entries
        read as `blank`
    memsize : int
        Number of addressable cells (words or bytes)
    byte_addressed : bool
    blank : object
        Value of an unwritten word
    trace : list
        ('read' | 'write', address) pairs logged by the runtime
    """

    registers: dict
    memory: dict = field(default_factory=dict)
    memsize: int = 4096
    byte_addressed: bool = True
    blank: object = 0
    trace: list = field(default_factory=list)

    def copy(self):
        return MachineState(dict(self.registers), dict(self.memory), self.memsize,
                            self.byte_addressed, self.blank, list(self.trace))

    def __eq__(self, other):
        if not isinstance(other, MachineState):
            return NotImplemented
        return (self.registers == other.registers and self.memsize == other.memsize
                and self.words() == other.words())

    def in_range(self, addr, width=1):
        return 0 <= addr and addr + width <= self.memsize

    def read_word(self, addr):

        """Word at `addr`; four little-endian bytes on byte-addressed machines"""

        if not self.byte_addressed:
            return self.memory.get(addr, self.blank)
        raw = bytes(self.memory.get(addr + i, 0) for i in range(WORD_BYTES))
        return struct.unpack('<I', raw)[0]

    def write_word(self, addr, value):
        if not self.byte_addressed:
            self.memory[addr] = value
            return
        for i, b in enumerate(struct.pack('<I', value & 0xFFFFFFFF)):
            self.memory[addr + i] = b

    def read_byte(self, addr):
        return self.memory.get(addr, 0)

    def words(self):

        """Non-blank memory content as an address-to-word dict"""

        if not self.byte_addressed:
            return {a: w for a, w in self.memory.items() if w != self.blank}
        bases = sorted({a - a % WORD_BYTES for a, b in self.memory.items() if b})
        return {a: self.read_word(a) for a in bases}

    def touched(self, kind=None):
        return {a for k, a in self.trace if kind is None or k == kind}


class Outcome:
    pass


@dataclass(frozen=True)
class Value(Outcome):

    value: object = None

    def __str__(self):
        return f"Value({self.value!r})"


@dataclass(frozen=True)
class Failure(Outcome):

    message: str

    def __post_init__(self):
        if not self.message:
            object.__setattr__(self, 'message', "failure")

    def __str__(self):
        return f"Failure({self.message})"


@dataclass(frozen=True)
class OutOfFuel(Outcome):

    steps: int = 0

    def __str__(self):
        return "OutOfFuel"
