"""
Settings of the command-line driver

Defaults can be overridden by a contractile.ini file (one [contractile]
section) and the memory size of the selected ISA by the CONTRACTILE_MEMSIZE
environment variable.
"""

# built-ins
import configparser
import dataclasses
import logging
import os
from dataclasses import dataclass

# internal packages
from .errors import ConfigError


logger = logging.getLogger(__name__)

SECTION = 'contractile'
FILENAME = 'contractile.ini'
MEMSIZE_VARIABLE = 'CONTRACTILE_MEMSIZE'


@dataclass
class Settings:

    """
    Attributes
    ----------
    riscv_memsize : int
        RAM bytes of the RISC-V machine
    minimalcaps_memsize : int
        Memory words of the MinimalCaps machine
    fuel : int
        Step bound of concrete runs and fuzz trials
    max_alternatives : int
        Bound on the alternatives one symbolic step may open
    """

    riscv_memsize: int = 4096
    minimalcaps_memsize: int = 1024
    fuel: int = 10000
    fuzz_trials: int = 1000
    adv_words: int = 16
    seed: int = 1
    max_alternatives: int = 256

    def memsize(self, isa):
        return self.minimalcaps_memsize if isa == 'minimalcaps' else self.riscv_memsize


def _positive(name, raw):
    try:
        value = int(raw, 0) if isinstance(raw, str) else int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


class SettingsManager:

    """
    Creates, reads and updates the settings file using configparser

    See more on configparser at:
    https://docs.python.org/3/library/configparser.html
    """

    def __init__(self, filepath='.'):

        """
        Parameters
        ----------
        filepath : str
            A path to a directory or a file; a directory holds contractile.ini
        """

        if os.path.isdir(filepath):
            self.__filepath = os.path.join(filepath, FILENAME)
        else:
            self.__filepath = filepath

        self.__parser = configparser.ConfigParser()
        self.__parser.read(self.__filepath)

    @property
    def filepath(self):
        return self.__filepath

    @property
    def existing_settings(self):
        return self.__parser.has_section(SECTION)

    def _write(self):

        """Creates or uses an existing file"""

        with open(self.__filepath, 'w') as f:
            self.__parser.write(f)

    def read(self):

        """
        Settings from the file, defaults for every key it leaves out

        Raises
        ------
        ConfigError
            on unknown keys and values that are not positive integers
        """

        settings = Settings()
        if not self.existing_settings:
            return settings
        known = {f.name for f in dataclasses.fields(Settings)}
        changes = {}
        for key, raw in self.__parser[SECTION].items():
            if key not in known:
                raise ConfigError(f"unknown setting '{key}' in {self.__filepath}")
            changes[key] = _positive(key, raw)
        return dataclasses.replace(settings, **changes)

    def update(self, settings):

        """Writes every field of `settings` to the file"""

        self.__parser[SECTION] = {k: str(v) for k, v in dataclasses.asdict(settings).items()}
        self._write()
        return f"Settings written to '{os.path.abspath(self.__filepath)}'"

    def create(self):

        """Writes the defaults unless the file already has settings"""

        if self.existing_settings:
            return f"Settings already exist in '{self.__filepath}'"
        return self.update(Settings())


def load_settings(filepath='.', environ=None):

    """
    Settings from `filepath` with the CONTRACTILE_MEMSIZE override applied

    Raises
    ------
    ConfigError
    """

    settings = SettingsManager(filepath).read()
    environ = os.environ if environ is None else environ
    raw = environ.get(MEMSIZE_VARIABLE)
    if raw:
        memsize = _positive(MEMSIZE_VARIABLE, raw)
        settings = dataclasses.replace(settings, riscv_memsize=memsize,
                                       minimalcaps_memsize=memsize)
        logger.debug("memory size %d from %s", memsize, MEMSIZE_VARIABLE)
    return settings
