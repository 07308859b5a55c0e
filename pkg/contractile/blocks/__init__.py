"""
Straight-line block verification and the femtokernel
"""

from .block import AsmBlock, block_of_image, parse_block, show_block
from .femtokernel import (ADV_ADDR, DATA_ADDR, HANDLER_BASE, KERNEL_PMPCFG0, LEAKY_PMPCFG0, SECRET,
                          FemtoAssets, femto_assets, femtokernel_state, kernel_words)
from .verifier import run_block, specialize_step, verify_block
