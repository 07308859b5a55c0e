"""
contractile: separation-logic contracts for instruction set specifications

Machines are written once in a small core language; the same program is run
by a concrete interpreter and by a symbolic executor that checks function
contracts, universal contracts of the fetch-decode-execute step and
straight-line blocks of assembly.
"""

__version__ = '0.1.0'

from .errors import (ConfigError, ContractileError, EncodingError, MachineFailure, NotFound,
                     ParseError, SpatialFailure, WellformednessError)
