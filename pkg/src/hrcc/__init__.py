"""Half-rate GSM control-channel toolkit.

Bit-exact codecs for the standard 456-bit control block and the modified
228-bit chains, two-burst interleaving, multiframe capacity accounting,
the associated signaling messages, and a reproducible AWGN measurement
harness.
"""

from .bits import Burst, HexFormatError, SubAllocation, from_hex, to_hex
from .kernels import BACKEND
from .schemes import DecodeOutcome, SchemeId, decode_block, encode_block
from .simulation import BlerReport, run_bler

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BlerReport",
    "Burst",
    "DecodeOutcome",
    "HexFormatError",
    "SchemeId",
    "SubAllocation",
    "decode_block",
    "encode_block",
    "from_hex",
    "run_bler",
    "to_hex",
    "__version__",
]
