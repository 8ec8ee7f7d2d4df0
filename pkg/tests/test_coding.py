import numpy as np
import pytest

from hrcc import kernels
from hrcc.coding import (
    CONV_RATE_12,
    CONV_RATE_13,
    PUNCTURE_CS23,
    PUNCTURE_P12,
    PUNCTURE_P13,
    PUNCTURE_P23,
    ConvCode,
    PuncturePattern,
    _sym_table,
    _tap_table,
    add_tail,
    conv_encode,
    depuncture,
    fire_check,
    fire_encode,
    parity20_check,
    parity20_encode,
    puncture,
    viterbi_decode,
)

from oracles import (
    FIRE_GEN_BITS,
    GEN_RATE_12,
    GEN_RATE_13,
    PARITY20_GEN_BITS,
    build_rate12_codebook,
    conv_encode_ref,
    cyclic_parity,
    ml_decode_bruteforce,
)


def _perfect_soft(bits):
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


# --- block codes -----------------------------------------------------------


def test_fire_zero_message_gives_zero_codeword():
    assert np.array_equal(fire_encode(np.zeros(184, dtype=np.uint8)), np.zeros(224, dtype=np.uint8))


def test_fire_impulse_parity_matches_long_division():
    msg = np.zeros(184, dtype=np.uint8)
    msg[0] = 1  # message polynomial D^183, parity = D^223 mod g
    cw = fire_encode(msg)
    assert cw.size == 224
    assert cw[184:].tolist() == cyclic_parity(msg.tolist(), FIRE_GEN_BITS)


def test_fire_random_parity_matches_long_division():
    rng = np.random.default_rng(11)
    for _ in range(50):
        msg = rng.integers(0, 2, size=184, dtype=np.uint8)
        assert fire_encode(msg)[184:].tolist() == cyclic_parity(msg.tolist(), FIRE_GEN_BITS)


def test_fire_linearity():
    rng = np.random.default_rng(12)
    for _ in range(25):
        a = rng.integers(0, 2, size=184, dtype=np.uint8)
        b = rng.integers(0, 2, size=184, dtype=np.uint8)
        assert np.array_equal(fire_encode(a ^ b), fire_encode(a) ^ fire_encode(b))


def test_fire_check_accepts_codewords_and_flags_flips():
    rng = np.random.default_rng(13)
    for _ in range(20):
        cw = fire_encode(rng.integers(0, 2, size=184, dtype=np.uint8))
        assert fire_check(cw)
        flipped = cw.copy()
        flipped[rng.integers(0, 224)] ^= 1
        assert not fire_check(flipped)


def test_fire_detects_all_short_bursts():
    rng = np.random.default_rng(14)
    cw = fire_encode(rng.integers(0, 2, size=184, dtype=np.uint8))
    for _ in range(1000):
        length = int(rng.integers(1, 41))
        start = int(rng.integers(0, 224 - length + 1))
        pattern = rng.integers(0, 2, size=length, dtype=np.uint8)
        pattern[0] = 1
        corrupted = cw.copy()
        corrupted[start : start + length] ^= pattern
        assert not fire_check(corrupted)


def test_parity20_against_long_division_and_linearity():
    rng = np.random.default_rng(15)
    assert np.array_equal(parity20_encode(np.zeros(90, dtype=np.uint8)), np.zeros(110, dtype=np.uint8))
    for _ in range(50):
        msg = rng.integers(0, 2, size=90, dtype=np.uint8)
        cw = parity20_encode(msg)
        assert cw.size == 110
        assert cw[90:].tolist() == cyclic_parity(msg.tolist(), PARITY20_GEN_BITS)
    a = rng.integers(0, 2, size=90, dtype=np.uint8)
    b = rng.integers(0, 2, size=90, dtype=np.uint8)
    assert np.array_equal(parity20_encode(a ^ b), parity20_encode(a) ^ parity20_encode(b))


def test_parity20_detects_flips_and_short_bursts():
    rng = np.random.default_rng(16)
    cw = parity20_encode(rng.integers(0, 2, size=90, dtype=np.uint8))
    assert parity20_check(cw)
    for _ in range(1000):
        length = int(rng.integers(1, 21))
        start = int(rng.integers(0, 110 - length + 1))
        pattern = rng.integers(0, 2, size=length, dtype=np.uint8)
        pattern[0] = 1
        corrupted = cw.copy()
        corrupted[start : start + length] ^= pattern
        assert not parity20_check(corrupted)


def test_block_code_length_validation():
    with pytest.raises(ValueError):
        fire_encode(np.zeros(183, dtype=np.uint8))
    with pytest.raises(ValueError):
        fire_check(np.zeros(223, dtype=np.uint8))
    with pytest.raises(ValueError):
        parity20_encode(np.zeros(91, dtype=np.uint8))
    with pytest.raises(ValueError):
        parity20_check(np.zeros(111, dtype=np.uint8))


def test_add_tail():
    out = add_tail(np.ones(224, dtype=np.uint8))
    assert out.size == 228
    assert not out[-4:].any()
    assert add_tail(np.ones(110, dtype=np.uint8)).size == 114


# --- convolutional codes ---------------------------------------------------


def test_conv_code_validation():
    with pytest.raises(ValueError):
        ConvCode((0b11001,))
    with pytest.raises(ValueError):
        ConvCode((0b11001, 0b11000))  # no constant term
    with pytest.raises(ValueError):
        ConvCode((0b11001, 0b01011))  # no degree-4 term
    with pytest.raises(ValueError):
        ConvCode((0b11001, 0b111011))  # degree 5


def test_conv_encode_zero_input_and_lengths():
    zeros = np.zeros(228, dtype=np.uint8)
    assert np.array_equal(conv_encode(CONV_RATE_12, zeros), np.zeros(456, dtype=np.uint8))
    assert conv_encode(CONV_RATE_13, zeros).size == 684


def test_conv_encode_impulse_response():
    msg = np.zeros(228, dtype=np.uint8)
    msg[0] = 1
    out = conv_encode(CONV_RATE_12, msg)
    # first five output pairs replay the generator coefficients
    expect = []
    for k in range(5):
        expect.extend([GEN_RATE_12[0][k], GEN_RATE_12[1][k]])
    assert out[:10].tolist() == expect
    assert not out[10:].any()


@pytest.mark.parametrize(
    "code,gens", [(CONV_RATE_12, GEN_RATE_12), (CONV_RATE_13, GEN_RATE_13)]
)
def test_conv_encode_matches_shift_register(code, gens):
    rng = np.random.default_rng(17)
    for _ in range(20):
        msg = rng.integers(0, 2, size=228, dtype=np.uint8)
        assert conv_encode(code, msg).tolist() == conv_encode_ref(msg.tolist(), gens)


def test_conv_encode_linearity():
    rng = np.random.default_rng(18)
    a = rng.integers(0, 2, size=228, dtype=np.uint8)
    b = rng.integers(0, 2, size=228, dtype=np.uint8)
    assert np.array_equal(
        conv_encode(CONV_RATE_12, a ^ b),
        conv_encode(CONV_RATE_12, a) ^ conv_encode(CONV_RATE_12, b),
    )


# --- puncturing ------------------------------------------------------------


def test_puncture_pattern_invariant():
    with pytest.raises(ValueError):
        PuncturePattern((1, 0), 456, 229)
    with pytest.raises(ValueError):
        PuncturePattern((), 456, 228)
    with pytest.raises(ValueError):
        PuncturePattern((1, 2), 4, 2)


@pytest.mark.parametrize(
    "pattern,inlen,outlen",
    [
        (PUNCTURE_CS23, 456, 342),
        (PUNCTURE_P12, 456, 228),
        (PUNCTURE_P13, 342, 228),
        (PUNCTURE_P23, 684, 228),
    ],
)
def test_scheme_puncture_lengths(pattern, inlen, outlen):
    rng = np.random.default_rng(inlen)
    bits = rng.integers(0, 2, size=inlen, dtype=np.uint8)
    out = puncture(pattern, bits)
    assert out.size == outlen
    kept = pattern.kept_indices
    assert np.all(np.diff(kept) > 0)  # order preserved
    assert np.array_equal(out, bits[kept])


def test_puncture_length_mismatch():
    with pytest.raises(ValueError):
        puncture(PUNCTURE_P12, np.zeros(455, dtype=np.uint8))
    with pytest.raises(ValueError):
        depuncture(PUNCTURE_P12, np.zeros(227))


def test_depuncture_restores_kept_positions_as_erasures():
    rng = np.random.default_rng(19)
    for pattern in (PUNCTURE_CS23, PUNCTURE_P12, PUNCTURE_P13, PUNCTURE_P23):
        soft = rng.normal(size=pattern.output_len)
        soft[soft == 0.0] = 1.0
        restored = depuncture(pattern, soft)
        assert restored.size == pattern.input_len
        assert np.array_equal(restored[pattern.kept_indices], soft)
        erased = np.setdiff1d(np.arange(pattern.input_len), pattern.kept_indices)
        assert not restored[erased].any()
        assert erased.size == pattern.input_len - pattern.output_len
        # all-erasure input stays all-erasure
        assert not depuncture(pattern, np.zeros(pattern.output_len)).any()


def test_puncture_then_depuncture_is_identity_on_kept_values():
    rng = np.random.default_rng(20)
    bits = rng.integers(0, 2, size=456, dtype=np.uint8)
    soft = _perfect_soft(bits)
    back = depuncture(PUNCTURE_P12, soft[PUNCTURE_P12.kept_indices])
    assert np.array_equal(back[PUNCTURE_P12.kept_indices], soft[PUNCTURE_P12.kept_indices])


# --- Viterbi ---------------------------------------------------------------


@pytest.mark.parametrize("code", [CONV_RATE_12, CONV_RATE_13])
def test_viterbi_noiseless_roundtrip(code):
    rng = np.random.default_rng(21)
    msgs = rng.integers(0, 2, size=(1000, 224), dtype=np.uint8)
    tailed = np.concatenate([msgs, np.zeros((1000, 4), dtype=np.uint8)], axis=1)
    from hrcc.coding import conv_encode_batch, viterbi_decode_batch

    coded = conv_encode_batch(code, tailed)
    decoded = viterbi_decode_batch(code, _perfect_soft(coded))
    assert np.array_equal(decoded, tailed)


def test_viterbi_all_erasures_decode_to_zero():
    out = viterbi_decode(CONV_RATE_12, np.zeros(456))
    assert not out.any()
    out = viterbi_decode(CONV_RATE_13, np.zeros(684))
    assert not out.any()


def test_viterbi_rejects_inconsistent_length():
    with pytest.raises(ValueError):
        viterbi_decode(CONV_RATE_12, np.zeros(457))
    with pytest.raises(ValueError):
        viterbi_decode(CONV_RATE_13, np.zeros(685))


def test_viterbi_matches_bruteforce_ml_sample():
    msgs, cws = build_rate12_codebook(12)
    rng = np.random.default_rng(22)
    for _ in range(30):
        msg_index = int(rng.integers(0, msgs.shape[0]))
        received = cws[msg_index].copy()
        for pos in rng.choice(received.size, size=int(rng.integers(0, 3)), replace=False):
            received[pos] ^= 1
        soft = _perfect_soft(received)
        decoded = viterbi_decode(CONV_RATE_12, soft)
        assert not decoded[-4:].any()
        assert np.array_equal(decoded[:12], ml_decode_bruteforce(soft, msgs, cws))


# --- backend agreement -----------------------------------------------------


@pytest.mark.skipif(kernels.viterbi_batch_nb is None, reason="numba unavailable")
@pytest.mark.parametrize("code", [CONV_RATE_12, CONV_RATE_13])
def test_numba_and_numpy_backends_agree(code):
    rng = np.random.default_rng(23)
    taps = _tap_table(code.generators)
    syms = _sym_table(code.generators)
    msgs = rng.integers(0, 2, size=(32, 228), dtype=np.uint8)
    assert np.array_equal(
        kernels.conv_encode_batch_np(msgs, taps), kernels.conv_encode_batch_nb(msgs, taps)
    )
    soft = rng.normal(0.0, 2.0, size=(32, 228 * code.n_out))
    soft[:, ::5] = 0.0  # include erasures
    assert np.array_equal(
        kernels.viterbi_batch_np(soft, syms), kernels.viterbi_batch_nb(soft, syms)
    )
