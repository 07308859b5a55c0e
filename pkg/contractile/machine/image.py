"""
Memory image files

One entry per line, `#` starts a comment. A line is a hexadecimal address
followed by a value whose syntax depends on the ISA; the ISA runtime passes
the parser for its values.
"""

# built-ins
import os
import pathlib

# internal packages
from ..errors import ParseError


def read_source(source):

    """Text of `source`: a pathlib.Path, a path to an existing file, or the text itself"""

    if isinstance(source, pathlib.Path):
        return source.read_text(encoding='utf-8')
    if '\n' not in source and source.strip() and os.path.isfile(source):
        with open(source, encoding='utf-8') as f:
            return f.read()
    return source


def parse_hex(token, line):
    try:
        return int(token, 16)
    except ValueError:
        raise ParseError(line, f"not a hexadecimal number: {token!r}") from None


def _numbered_entries(text, parse_value):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError(number, "expected an address and a value")
        addr = parse_hex(tokens[0], number)
        try:
            value = parse_value(tokens[1:])
        except ValueError as e:
            raise ParseError(number, str(e)) from None
        yield number, addr, value


def parse_image(text, parse_value):

    """
    Parameters
    ----------
    text : str
    parse_value : function
        Called with the value tokens of a line; returns the concrete value or
        raises ValueError

    Returns
    -------
    list of (int, object)
    """

    return [(addr, value) for _, addr, value in _numbered_entries(text, parse_value)]


def load_image(state, source, parse_value):

    """
    Writes the entries of an image into a copy of `state`

    Raises
    ------
    ParseError
        on a malformed line or an address outside memory
    """

    loaded = state.copy()
    width = 4 if state.byte_addressed else 1
    for number, addr, value in _numbered_entries(read_source(source), parse_value):
        if not loaded.in_range(addr, width):
            raise ParseError(number, f"address {addr:#x} outside memory of size {state.memsize}")
        loaded.write_word(addr, value)
    return loaded


def dump_words(state, lo, hi):

    """(address, word) pairs for the words in [lo, hi)"""

    step = 4 if state.byte_addressed else 1
    start = lo - lo % step
    return [(a, state.read_word(a)) for a in range(start, hi, step)]
