from .state import MachineState, Outcome, Value, Failure, OutOfFuel, WORD_BYTES
from .interpreter import Interpreter
from .image import parse_image, load_image, dump_words
