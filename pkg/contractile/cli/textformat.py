
# built-ins
import os
import sys


class TextEmphasis:

    """Directory of sequences that adds emphasis to text when printed on a CLI"""

    END = '\033[0m'
    BOLD = '\033[1m'
    GREYED_OUT = '\033[2m'
    ITALIC = '\033[3m'
    UNDERLINE = '\033[4m'


class TextColor:

    """Directory of sequences that changes the color of text when printed on a CLI"""

    RED = '\033[31m'
    GREEN = '\033[32m'
    YELLOW = '\033[33m'
    BLUE = '\033[34m'
    MAGENTA = '\033[35m'
    CYAN = '\033[36m'
    GREY = '\033[37m'


_TEXT_EMPHASIS_PALETTE = [attr for attr in dir(TextEmphasis) if not attr.startswith('__')]
_TEXT_COLOR_PALETTE = [attr for attr in dir(TextColor) if not attr.startswith('__')]

# verification statuses, fuzz verdicts and mutant outcomes
STATUS_COLORS = {
    'Verified': 'green',
    'Skipped': 'grey',
    'Residual': 'yellow',
    'Failed': 'red',
    'pass': 'green',
    'FAIL': 'red',
    'killed': 'green',
    'survived': 'red',
}


def enabled(stream=None):

    """Whether escape sequences should be written to `stream` (stdout by default)"""

    stream = stream or sys.stdout
    if os.environ.get('NO_COLOR'):
        return False
    return hasattr(stream, 'isatty') and stream.isatty()


def apply(raw_text, emphases=(), text_color=None, active=None):

    """
    Applies the listed palette around the raw text

    Parameters
    ----------
    raw_text: str

    emphases: iterable of str
        One or more text formatting listed in TextEmphasis

    text_color: str
        A color that is listed in TextColor

    active: bool, optional
        Forces escape sequences on or off; by default they are written only
        to a terminal
    """

    if active is None:
        active = enabled()
    if not active:
        return raw_text

    prefix = ''
    for emphasis in emphases:
        if emphasis and emphasis.upper() in _TEXT_EMPHASIS_PALETTE:
            prefix += vars(TextEmphasis)[emphasis.upper()]

    if text_color and text_color.upper() in _TEXT_COLOR_PALETTE:
        prefix += vars(TextColor)[text_color.upper()]

    return prefix + raw_text + TextEmphasis.END if prefix else raw_text


def status(text, active=None):

    """Colors a status word by its meaning; unknown words are left alone"""

    color = STATUS_COLORS.get(text)
    return apply(text, emphases=['bold'], text_color=color, active=active) if color else text
