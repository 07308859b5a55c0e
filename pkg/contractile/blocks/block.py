"""
Straight-line blocks of instruction words

Block files hold `base <hex address>` followed by one hexadecimal instruction
word per line; `#` starts a comment.
"""

# built-ins
from dataclasses import dataclass

# internal packages
from ..errors import ParseError
from ..logic.assertions import PointsToMem, star
from ..logic.terms import Lit
from ..machine.image import parse_hex, read_source


@dataclass(frozen=True)
class AsmBlock:

    """
    Attributes
    ----------
    base : int
        Address of the first word
    words : tuple of int
        Encoded instructions at a 4-byte stride
    """

    name: str
    base: int
    words: tuple

    def __post_init__(self):
        if not self.words:
            raise ValueError(f"block {self.name} is empty")

    def __len__(self):
        return len(self.words)

    @property
    def end(self):
        return self.base + 4 * len(self.words)

    def addresses(self):
        return [self.base + 4 * i for i in range(len(self.words))]

    def items(self):
        return list(zip(self.addresses(), self.words))

    def code(self):

        """Points-to assertions of the block's own words"""

        return star(*(PointsToMem(Lit(a), Lit(w)) for a, w in self.items()))


def parse_block(source, name='block'):

    """
    Raises
    ------
    ParseError
        when the base line is missing, a word is not hexadecimal or does not
        fit 32 bits, or the block is empty
    """

    base = None
    words = []
    for number, raw in enumerate(read_source(source).splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if base is None:
            if tokens[0].lower() != 'base' or len(tokens) != 2:
                raise ParseError(number, "expected 'base <hex address>'")
            base = parse_hex(tokens[1], number)
            if base % 4:
                raise ParseError(number, f"base {base:#x} is not word-aligned")
            continue
        if len(tokens) != 1:
            raise ParseError(number, "expected one instruction word")
        word = parse_hex(tokens[0], number)
        if not 0 <= word <= 0xFFFFFFFF:
            raise ParseError(number, f"{tokens[0]} does not fit 32 bits")
        words.append(word)
    if base is None or not words:
        raise ParseError(0, "a block needs a base line and at least one word")
    return AsmBlock(name, base, tuple(words))


def show_block(block):
    lines = [f"base {block.base:x}"] + [f"{w:08x}" for w in block.words]
    return '\n'.join(lines) + '\n'


def block_of_image(words, lo, hi, name='block'):

    """The words of (address, word) pairs in [lo, hi) as a block"""

    chosen = tuple(w for a, w in sorted(words) if lo <= a < hi)
    return AsmBlock(name, lo, chosen)
