"""Benchmark the numba kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--frames N]

Times the convolutional encoder and the Viterbi decoder on realistic
frame shapes, checks that both backends produce identical outputs, and
reports end-to-end frame throughput for a representative scheme.
"""

import argparse
import time

import numpy as np

from hrcc import kernels
from hrcc.coding import CONV_RATE_12, CONV_RATE_13, _sym_table, _tap_table


def _time(func, *args, repeats=5):
    func(*args)  # warmup (includes JIT compilation for the numba path)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--frames", type=int, default=2000)
    args = parser.parse_args()

    if kernels.viterbi_batch_nb is None:
        print("numba is not available; nothing to compare")
        return 1

    rng = np.random.default_rng(0)
    print(f"active backend: {kernels.BACKEND}  (set {kernels.DISABLE_ENV}=1 to force numpy)")
    print(f"{args.frames} frames per measurement\n")

    for label, code, steps in (("rate 1/2, 228 steps", CONV_RATE_12, 228),
                               ("rate 1/3, 228 steps", CONV_RATE_13, 228),
                               ("rate 1/2, 114 steps", CONV_RATE_12, 114)):
        taps = _tap_table(code.generators)
        syms = _sym_table(code.generators)
        msgs = rng.integers(0, 2, size=(args.frames, steps), dtype=np.uint8)
        soft = rng.normal(0.0, 2.0, size=(args.frames, steps * code.n_out))

        enc_np = kernels.conv_encode_batch_np(msgs, taps)
        enc_nb = kernels.conv_encode_batch_nb(msgs, taps)
        dec_np = kernels.viterbi_batch_np(soft, syms)
        dec_nb = kernels.viterbi_batch_nb(soft, syms)
        if not (np.array_equal(enc_np, enc_nb) and np.array_equal(dec_np, dec_nb)):
            print(f"{label}: BACKEND OUTPUTS DIFFER")
            return 1

        t_enc_np = _time(kernels.conv_encode_batch_np, msgs, taps)
        t_enc_nb = _time(kernels.conv_encode_batch_nb, msgs, taps)
        t_dec_np = _time(kernels.viterbi_batch_np, soft, syms)
        t_dec_nb = _time(kernels.viterbi_batch_nb, soft, syms)

        print(label)
        print(f"  encode  numpy {t_enc_np * 1e3:8.1f} ms   numba {t_enc_nb * 1e3:8.1f} ms"
              f"   ({t_enc_np / t_enc_nb:5.1f}x)")
        print(f"  viterbi numpy {t_dec_np * 1e3:8.1f} ms   numba {t_dec_nb * 1e3:8.1f} ms"
              f"   ({t_dec_np / t_dec_nb:5.1f}x)")
        fps_np = args.frames / t_dec_np
        fps_nb = args.frames / t_dec_nb
        print(f"  decoder throughput: numpy {fps_np:9.0f} fps   numba {fps_nb:9.0f} fps\n")

    print("outputs identical across backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
