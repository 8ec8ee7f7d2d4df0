"""Hot inner loops: convolutional encoding and Viterbi decoding.

Two interchangeable backends live here.  The numba build is the default;
setting HRCC_DISABLE_NUMBA=1 (or running without numba installed) selects
the pure-numpy fallback.  Both backends consume the same trellis tables,
perform their floating-point accumulations in the same order and therefore
produce bit-identical outputs; ``benchmarks/bench_kernels.py`` compares
their throughput.

Trellis state packs the last four encoder inputs with the newest bit in
bit 3: state s at time t is x[t-1]<<3 | x[t-2]<<2 | x[t-3]<<1 | x[t-4],
and the successor under input b is (b<<3) | (s>>1).  The input bit that
leads into destination state ns is therefore always ns>>3, and the two
possible predecessors are (ns&7)<<1 and ((ns&7)<<1)|1.
"""

from __future__ import annotations

import os

import numpy as np

DISABLE_ENV = "HRCC_DISABLE_NUMBA"

# Stand-in for -inf that survives repeated branch-metric additions without
# overflow; real metrics stay many orders of magnitude above it.
NEG_METRIC = -1.0e30

_env_disabled = os.environ.get(DISABLE_ENV, "0").strip().lower() not in ("", "0", "false")

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag instead
    njit = None
    _HAVE_NUMBA = False

BACKEND = "numba" if (_HAVE_NUMBA and not _env_disabled) else "numpy"


def conv_encode_batch_np(msgs: np.ndarray, taps: np.ndarray) -> np.ndarray:
    """Encode a (frames, nbits) batch with a rate-1/n feedforward code.

    ``taps[j, k]`` is the coefficient multiplying x[t-k] in output j; the
    shift register starts all-zero.  Output columns interleave the n
    streams: y0[0], y1[0], ..., y0[1], ...
    """
    msgs = np.ascontiguousarray(msgs, dtype=np.uint8)
    nframes, nbits = msgs.shape
    n_out = taps.shape[0]
    out = np.zeros((nframes, nbits * n_out), dtype=np.uint8)
    for j in range(n_out):
        acc = np.zeros_like(msgs)
        for k in range(taps.shape[1]):
            if taps[j, k]:
                acc[:, k:] ^= msgs[:, : nbits - k if k else nbits]
        out[:, j::n_out] = acc
    return out


def viterbi_batch_np(soft: np.ndarray, syms: np.ndarray) -> np.ndarray:
    """Max-likelihood decode a (frames, n*steps) batch of soft values.

    ``syms[s, b, j]`` is the antipodal (+1 for coded 0) output j emitted on
    the transition from state s under input b.  The trellis is forced to
    start and end in state zero; metric ties keep the branch whose oldest
    register bit is 0 so all-erasure input decodes to the all-zero word.
    """
    soft = np.ascontiguousarray(soft, dtype=np.float64)
    nframes, width = soft.shape
    n_out = syms.shape[2]
    nsteps = width // n_out

    dest = np.arange(16)
    b_in = dest >> 3
    pred0 = (dest & 7) << 1
    pred1 = pred0 | 1
    sym0 = syms[pred0, b_in, :]  # (16, n_out)
    sym1 = syms[pred1, b_in, :]

    pm = np.full((nframes, 16), NEG_METRIC)
    pm[:, 0] = 0.0
    back = np.empty((nsteps, nframes, 16), dtype=np.uint8)
    for t in range(nsteps):
        seg = soft[:, t * n_out : (t + 1) * n_out]
        m0 = seg[:, 0:1] * sym0[np.newaxis, :, 0]
        m1 = seg[:, 0:1] * sym1[np.newaxis, :, 0]
        for j in range(1, n_out):
            m0 = m0 + seg[:, j : j + 1] * sym0[np.newaxis, :, j]
            m1 = m1 + seg[:, j : j + 1] * sym1[np.newaxis, :, j]
        c0 = pm[:, pred0] + m0
        c1 = pm[:, pred1] + m1
        pick1 = c1 > c0
        pm = np.where(pick1, c1, c0)
        back[t] = pick1

    bits = np.empty((nframes, nsteps), dtype=np.uint8)
    state = np.zeros(nframes, dtype=np.int64)
    rows = np.arange(nframes)
    for t in range(nsteps - 1, -1, -1):
        bits[:, t] = state >> 3
        state = ((state & 7) << 1) | back[t, rows, state]
    return bits


if _HAVE_NUMBA:

    @njit(cache=True)
    def _conv_encode_batch_nb(msgs, taps):  # pragma: no cover - jitted
        nframes, nbits = msgs.shape
        n_out = taps.shape[0]
        ntaps = taps.shape[1]
        out = np.zeros((nframes, nbits * n_out), dtype=np.uint8)
        for f in range(nframes):
            for t in range(nbits):
                for j in range(n_out):
                    acc = np.uint8(0)
                    for k in range(ntaps):
                        if taps[j, k] and t - k >= 0:
                            acc ^= msgs[f, t - k]
                    out[f, t * n_out + j] = acc
        return out

    @njit(cache=True)
    def _viterbi_batch_nb(soft, syms):  # pragma: no cover - jitted
        nframes = soft.shape[0]
        n_out = syms.shape[2]
        nsteps = soft.shape[1] // n_out
        bits = np.empty((nframes, nsteps), dtype=np.uint8)
        pm = np.empty(16)
        pm_next = np.empty(16)
        back = np.empty((nsteps, 16), dtype=np.uint8)
        for f in range(nframes):
            for s in range(16):
                pm[s] = NEG_METRIC
            pm[0] = 0.0
            for t in range(nsteps):
                base = t * n_out
                for ns in range(16):
                    b = ns >> 3
                    p0 = (ns & 7) << 1
                    p1 = p0 | 1
                    m0 = soft[f, base] * syms[p0, b, 0]
                    m1 = soft[f, base] * syms[p1, b, 0]
                    for j in range(1, n_out):
                        m0 = m0 + soft[f, base + j] * syms[p0, b, j]
                        m1 = m1 + soft[f, base + j] * syms[p1, b, j]
                    c0 = pm[p0] + m0
                    c1 = pm[p1] + m1
                    if c1 > c0:
                        pm_next[ns] = c1
                        back[t, ns] = 1
                    else:
                        pm_next[ns] = c0
                        back[t, ns] = 0
                for s in range(16):
                    pm[s] = pm_next[s]
            state = 0
            for t in range(nsteps - 1, -1, -1):
                bits[f, t] = state >> 3
                state = ((state & 7) << 1) | back[t, state]
        return bits

    def conv_encode_batch_nb(msgs: np.ndarray, taps: np.ndarray) -> np.ndarray:
        return _conv_encode_batch_nb(
            np.ascontiguousarray(msgs, dtype=np.uint8),
            np.ascontiguousarray(taps, dtype=np.uint8),
        )

    def viterbi_batch_nb(soft: np.ndarray, syms: np.ndarray) -> np.ndarray:
        return _viterbi_batch_nb(
            np.ascontiguousarray(soft, dtype=np.float64),
            np.ascontiguousarray(syms, dtype=np.float64),
        )

else:
    conv_encode_batch_nb = None
    viterbi_batch_nb = None


if BACKEND == "numba":
    conv_encode_batch = conv_encode_batch_nb
    viterbi_batch = viterbi_batch_nb
else:
    conv_encode_batch = conv_encode_batch_np
    viterbi_batch = viterbi_batch_np
