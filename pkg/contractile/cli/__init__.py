from . import (
    objects,
    textformat
)
from .commands import COMMANDS, EXIT_FAILED, EXIT_OK, EXIT_USAGE
