"""AWGN link abstraction and Monte Carlo block-error measurement.

Modulation is antipodal (+1 for bit 0) and the receiver sees scaled
log-likelihood values 2y/sigma^2.  Noise power is normalized per
information bit: sigma^2 = 1 / (2 * R * 10^(ebno_db/10)) with R the
scheme's information rate, so schemes with different message sizes are
compared at equal energy per message bit.

Every measurement is a pure function of (scheme, points, limits, seed):
each (scheme, Eb/N0 point) owns a private generator derived from the
master seed, frames are consumed in a fixed chunked order, and the early
stop is evaluated as if frames were processed one at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import interleaving, schemes
from .bits import as_bit_array
from .interleaving import InterleaveMode
from .schemes import SchemeId

DEFAULT_SEED = 12345
DEFAULT_MIN_FRAMES = 5000
DEFAULT_MIN_ERRORS = 100

_CHUNK_FRAMES = 512


@dataclass(frozen=True)
class ChannelParams:
    ebno_db: float
    seed: int = DEFAULT_SEED


def noise_sigma(ebno_db: float, info_rate: Fraction | float) -> float:
    """Noise standard deviation for unit-energy antipodal symbols."""
    ebno = 10.0 ** (ebno_db / 10.0)
    return 1.0 / math.sqrt(2.0 * float(info_rate) * ebno)


def transmit(bits, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """One block over the channel: y = (1-2b) + n, returned as 2y/sigma^2."""
    if sigma <= 0.0:
        raise ValueError("sigma must be positive; the noiseless case is sigma -> 0")
    arr = as_bit_array(bits)
    symbols = 1.0 - 2.0 * arr.astype(np.float64)
    noisy = symbols + rng.normal(0.0, sigma, size=arr.size)
    return 2.0 * noisy / (sigma * sigma)


@dataclass(frozen=True)
class BlerReport:
    scheme: SchemeId
    ebno_db: float
    frames: int
    frame_errors: int
    bit_errors: int
    undetected_errors: int

    @property
    def bler(self) -> float:
        return self.frame_errors / self.frames

    @property
    def ci95_halfwidth(self) -> float:
        p = self.bler
        return 1.96 * math.sqrt(p * (1.0 - p) / self.frames)


def _interleave_mode(scheme: SchemeId) -> InterleaveMode:
    return InterleaveMode.STD4 if scheme is SchemeId.STANDARD_456 else InterleaveMode.MOD2


def _point_rng(seed: int, scheme: SchemeId, ebno_db: float) -> np.random.Generator:
    """Private stream per (scheme, operating point).

    Keyed on the point's value (via its float64 bit pattern), so a point's
    frames do not depend on where it sits in the sweep grid.
    """
    scheme_index = list(SchemeId).index(scheme)
    ebno_bits = int(np.float64(ebno_db).view(np.uint64))
    return np.random.default_rng(
        np.random.SeedSequence((seed & 0xFFFFFFFFFFFFFFFF, scheme_index, ebno_bits))
    )


def run_bler(
    scheme: SchemeId,
    ebno_points,
    min_frames: int = DEFAULT_MIN_FRAMES,
    min_errors: int = DEFAULT_MIN_ERRORS,
    seed: int = DEFAULT_SEED,
) -> list[BlerReport]:
    """Measure block error rate at each operating point.

    Frames run until ``min_frames`` are processed or ``min_errors`` frame
    errors are seen, whichever comes first.  A frame error is any decoded
    message differing from the one sent, independent of the block check.
    """
    if min_frames < 1:
        raise ValueError("min_frames must be at least 1")
    if min_errors < 1:
        raise ValueError("min_errors must be at least 1")
    kbits = schemes.message_bits(scheme)
    nbits = schemes.coded_bits(scheme)
    rate = schemes.info_rate(scheme)
    mode = _interleave_mode(scheme)
    reports = []
    for ebno_db in ebno_points:
        ebno_db = float(ebno_db)
        sigma = noise_sigma(ebno_db, rate)
        rng = _point_rng(seed, scheme, ebno_db)
        frames = errors = bit_errors = undetected = 0
        while frames < min_frames and errors < min_errors:
            chunk = min(_CHUNK_FRAMES, min_frames - frames)
            msgs = rng.integers(0, 2, size=(chunk, kbits), dtype=np.uint8)
            coded = schemes.encode_blocks(scheme, msgs)
            stream = interleaving.interleave_batch(mode, coded)
            symbols = 1.0 - 2.0 * stream.astype(np.float64)
            noisy = symbols + rng.normal(0.0, sigma, size=symbols.shape)
            soft = 2.0 * noisy / (sigma * sigma)
            deint = interleaving.deinterleave_batch(mode, soft)
            decoded, ok = schemes.decode_blocks(scheme, deint)
            wrong = decoded != msgs
            err_flags = wrong.any(axis=1)
            # Honor the per-frame stopping rule even though frames are
            # processed in chunks: truncate at the first triggering frame.
            take = chunk
            cum_err = np.cumsum(err_flags)
            if errors + int(cum_err[-1]) >= min_errors:
                take = int(np.searchsorted(cum_err, min_errors - errors)) + 1
            frames += take
            errors += int(cum_err[take - 1])
            bit_errors += int(wrong[:take].sum())
            undetected += int((err_flags[:take] & ok[:take]).sum())
        reports.append(
            BlerReport(scheme, ebno_db, frames, errors, bit_errors, undetected)
        )
    return reports


def sweep(
    scheme_list,
    ebno_points,
    min_frames: int = DEFAULT_MIN_FRAMES,
    min_errors: int = DEFAULT_MIN_ERRORS,
    seed: int = DEFAULT_SEED,
) -> list[BlerReport]:
    """run_bler over several schemes, reports grouped scheme-major."""
    reports: list[BlerReport] = []
    for scheme in scheme_list:
        reports.extend(run_bler(scheme, ebno_points, min_frames, min_errors, seed))
    return reports


CSV_HEADER = "scheme,ebno_db,frames,frame_errors,bit_errors,undetected_errors,bler,ci95"


def reports_to_csv(reports) -> str:
    lines = [CSV_HEADER]
    for r in reports:
        lines.append(
            f"{r.scheme.cli_name},{r.ebno_db:.6g},{r.frames},{r.frame_errors},"
            f"{r.bit_errors},{r.undetected_errors},{r.bler:.8g},{r.ci95_halfwidth:.8g}"
        )
    return "\n".join(lines) + "\n"
