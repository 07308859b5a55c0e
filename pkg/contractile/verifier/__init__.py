from .executor import Bundle, SymbolicExecutor, CONTRACT, INLINE
from .verify import (
    VERIFIED, RESIDUAL, FAILED, SKIPPED, VerificationResult, verify_contract, verify_all
)
from .report import Report
from .differential import DifferentialResult, check_contract, satisfies, sample_value
from . import vc
