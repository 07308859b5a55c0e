class ContractileError(Exception):

    """Base class of every error raised by contractile"""


class NotFound(ContractileError):

    """A function, lemma, register or command name is not registered"""

    def __init__(self, name, kind='function'):

        super().__init__(f"{kind} '{name}' not found")
        self.name = name
        self.kind = kind


class ParseError(ContractileError):

    """Malformed image, block or contract text; `line` is 1-based"""

    def __init__(self, line, message):

        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class SpatialFailure(ContractileError):

    """No chunk of the symbolic heap unifies with `atom`"""

    def __init__(self, atom):

        super().__init__(f"no chunk matches {atom}")
        self.atom = atom


class MachineFailure(ContractileError):

    """A concrete run reached a failed assertion, a Fail statement or a runtime guard"""

    def __init__(self, message):

        super().__init__(message)
        self.message = message or "failure"


class EncodingError(ContractileError):

    """An instruction cannot be encoded (operand out of range)"""


class ConfigError(ContractileError):

    """Invalid setting in contractile.ini or the environment"""


class WellformednessError(ContractileError):

    """A program failed check_wellformed where a well-formed one is required"""

    def __init__(self, diagnostics):

        lines = "; ".join(f"{loc}: {msg}" for loc, msg in diagnostics)
        super().__init__(f"ill-formed program: {lines}")
        self.diagnostics = diagnostics
