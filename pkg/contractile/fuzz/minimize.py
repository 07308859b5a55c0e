"""
Shrinking of failing fuzz programs
"""

# built-ins
import logging


logger = logging.getLogger(__name__)


def drop_words(words, fails):

    """
    Greedily removes words while the program keeps failing

    Parameters
    ----------
    words : list of int
    fails : function
        Called with a candidate word list, returns True when it still fails
    """

    words = list(words)
    i = 0
    while i < len(words):
        candidate = words[:i] + words[i + 1:]
        if candidate and fails(candidate):
            words = candidate
        else:
            i += 1
    return words


def clear_bits(words, fails, width=32):

    """Clears set bits one at a time, keeping every change that still fails"""

    words = list(words)
    for i in range(len(words)):
        for bit in reversed(range(width)):
            mask = 1 << bit
            if not words[i] & mask:
                continue
            candidate = words[:i] + [words[i] & ~mask] + words[i + 1:]
            if fails(candidate):
                words = candidate
    return words


def minimize(words, fails, width=32):

    """
    Word dropping followed by bit clearing

    Returns
    -------
    list of int
        A program that still fails and from which no single word can be
        dropped (at the time of the dropping pass) and no single set bit
        cleared
    """

    if not fails(list(words)):
        raise ValueError("the program to minimize does not fail")
    shorter = drop_words(words, fails)
    smaller = clear_bits(shorter, fails, width)
    logger.info("minimized %d words to %d", len(words), len(smaller))
    return smaller
