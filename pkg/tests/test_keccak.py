"""Reference permutation: step semantics, vectors, and algebraic properties."""

import hashlib
import random

import numpy as np
import pytest

from keccak_forge import keccak as K
from reference_slow import round_constant, rotation_offsets, slow_permute

# Keccak-f[1600] applied to the all-zero state (published reference vector).
ZERO_STATE_LANES = (
    0xF1258F7940E1DDE7, 0x84D5CCF933C0478A, 0xD598261EA65AA9EE,
    0xBD1547306F80494D, 0x8B284E056253D057,
    0xFF97A42D7F8E6FD4, 0x90FEE5A0A44647C4, 0x8C5BDA0CD6192E76,
    0xAD30A6F71B19059C, 0x30935AB7D08FFC64,
    0xEB5AA93F2317D635, 0xA9A6E6260D712103, 0x81A57C16DBCF555F,
    0x43B831CD0347C826, 0x01F22F1A11A5569F,
    0x05E5635A21D9AE61, 0x64BEFEF28CC970F2, 0x613670957BC46611,
    0xB87C5A554FD00ECB, 0x8C3EE88A1CCF32C8,
    0x940C7922AE3A2614, 0x1841F924A2C509E4, 0x16F53526E70465C2,
    0x75F644E97F30A13B, 0xEAF1FF7B5CECA249,
)

# w=8, 3 rounds from offset 0, input byte i in lane i; output frozen after
# cross-checking against the independent slow implementation.
GOLDEN_W8_IN = "000102030405060708090a0b0c0d0e0f101112131415161718"
GOLDEN_W8_OUT = "69c202afe2b4452b45b301a4934814246f635268746cd831b8"


def test_params_validation():
    K.KeccakParams(64, 3)
    K.KeccakParams(1, 0, 24)
    with pytest.raises(K.KeccakError):
        K.KeccakParams(3, 1)
    with pytest.raises(K.KeccakError):
        K.KeccakParams(64, -1)
    with pytest.raises(K.KeccakError):
        K.KeccakParams(64, 22, 3)  # 22 + 3 > 24


def test_state_construction_and_flat_indexing():
    st = K.KeccakState.from_int(1 << K.flat_index(2, 3, 5, 8), 8)
    assert st.bit(2, 3, 5) == 1
    assert st.lanes[5 * 3 + 2] == 1 << 5
    assert st.to_bits()[K.flat_index(2, 3, 5, 8)] == 1
    assert K.KeccakState.from_bits(st.to_bits(), 8) == st
    with pytest.raises(K.KeccakError):
        K.KeccakState.from_int(1 << 200, 8)


def test_hex_round_trip():
    rng = random.Random(11)
    for w in (1, 2, 4, 8, 64):
        st = K.random_state(w, rng)
        assert K.KeccakState.from_hex(st.to_hex(), w) == st
    # w=1 uses 25 bits zero-padded to 4 bytes
    assert K.KeccakState.zeros(1).to_hex() == "00000000"
    with pytest.raises(K.KeccakError):
        K.KeccakState.from_hex("ff", 1)  # wrong length
    with pytest.raises(K.KeccakError):
        K.KeccakState.from_hex("00000080", 1)  # padding bit set
    with pytest.raises(K.KeccakError):
        K.KeccakState.from_hex("0000zz00", 1)


def test_theta_zero_and_single_bit():
    assert K.theta(K.KeccakState.zeros(1)) == K.KeccakState.zeros(1)
    out = K.theta(K.KeccakState.from_int(1, 1))
    expected = {K.flat_index(0, 0, 0, 1)}
    expected |= {K.flat_index(1, y, 0, 1) for y in range(5)}
    expected |= {K.flat_index(4, y, 0, 1) for y in range(5)}
    got = {i for i, b in enumerate(out.to_bits()) if b}
    assert got == expected
    assert len(got) == 11


def test_rho_identity_at_w1_and_single_bit_w64():
    rng = random.Random(3)
    for _ in range(20):
        st = K.random_state(1, rng)
        assert K.rho(st) == st
    # lane (1, 0) has offset 1
    st = K.KeccakState.from_int(1 << K.flat_index(1, 0, 0, 64), 64)
    out = K.rho(st)
    assert out.bit(1, 0, 1) == 1
    assert sum(out.to_bits()) == 1


def test_pi_moves_lanes():
    st = K.KeccakState.from_int(1 << K.flat_index(1, 0, 0, 1), 1)
    out = K.pi(st)
    # lane (1, 0) -> (0, 2)
    assert out.bit(0, 2, 0) == 1
    assert sum(out.to_bits()) == 1


def test_pi_lane_permutation_order_divides_24():
    def apply(times):
        perm = {(x, y): (x, y) for x in range(5) for y in range(5)}
        for _ in range(times):
            perm = {src: (c[1], (2 * c[0] + 3 * c[1]) % 5)
                    for src, c in perm.items()}
        return perm

    identity = apply(0)
    assert apply(24) == identity
    orders = [t for t in range(1, 25) if apply(t) == identity]
    assert orders[0] == 24  # full order, divides 24


def test_chi_row_examples_and_bijection():
    assert K.chi_row((0, 0, 0, 0, 0)) == (0, 0, 0, 0, 0)
    assert K.chi_row((1, 1, 1, 1, 1)) == (1, 1, 1, 1, 1)
    assert K.chi_row((0, 0, 1, 0, 0)) == (1, 0, 1, 0, 0)
    with pytest.raises(K.KeccakError):
        K.chi_row((0, 1))
    outputs = {K.chi_row(tuple((v >> i) & 1 for i in range(5)))
               for v in range(32)}
    assert len(outputs) == 32


def test_chi_lifts_chi_row_per_row():
    rng = random.Random(5)
    for w in (1, 8):
        st = K.random_state(w, rng)
        out = K.chi(st)
        for y in range(5):
            for z in range(w):
                row = tuple(st.bit(x, y, z) for x in range(5))
                expect = K.chi_row(row)
                assert tuple(out.bit(x, y, z) for x in range(5)) == expect


def test_iota_examples():
    out = K.iota(K.KeccakState.zeros(64), 0)
    assert out.lanes[0] == 0x0000000000000001
    assert all(l == 0 for l in out.lanes[1:])
    out1 = K.iota(K.KeccakState.zeros(1), 0)
    assert out1.bit(0, 0, 0) == 1
    rng = random.Random(6)
    st = K.random_state(8, rng)
    assert K.iota(K.iota(st, 17), 17) == st
    with pytest.raises(K.KeccakError):
        K.iota(st, 24)


@pytest.mark.parametrize("step", [K.theta, K.rho, K.pi])
def test_linear_steps_are_linear(step):
    rng = random.Random(7)
    for w in (1, 8):
        for _ in range(100):
            a = K.random_state(w, rng)
            b = K.random_state(w, rng)
            ab = K.KeccakState.from_int(a.to_int() ^ b.to_int(), w)
            assert step(ab).to_int() == step(a).to_int() ^ step(b).to_int()


def test_iota_is_affine():
    rng = random.Random(8)
    for _ in range(50):
        a = K.random_state(8, rng)
        base = K.iota(K.KeccakState.zeros(8), 4).to_int()
        assert K.iota(a, 4).to_int() == a.to_int() ^ base


def test_permute_zero_rounds_is_identity():
    rng = random.Random(9)
    st = K.random_state(64, rng)
    assert K.permute(st, K.KeccakParams(64, 0)) == st


def test_permute_is_bijective_and_invertible():
    rng = random.Random(10)
    for w in (1, 8):
        params = K.KeccakParams(w, 3)
        states = [K.random_state(w, rng) for _ in range(1000)]
        outputs = {K.permute(s, params).to_int() for s in states}
        assert len(outputs) == len({s.to_int() for s in states})
        for s in states[:50]:
            assert K.inverse_permute(K.permute(s, params), params) == s


def test_inverse_permute_with_round_offset():
    rng = random.Random(12)
    params = K.KeccakParams(2, 4, 7)
    for _ in range(25):
        s = K.random_state(2, rng)
        assert K.inverse_permute(K.permute(s, params), params) == s


def test_full_permutation_zero_state_vector():
    out = K.permute(K.KeccakState.zeros(64), K.KeccakParams(64, 24))
    assert out.lanes == ZERO_STATE_LANES


def _sponge_state_after_one_block(message: bytes, rate_bytes: int) -> bytes:
    """FIPS 202 single-block absorb + permute, via this implementation."""
    block = bytearray(200)
    for i, byte in enumerate(message):
        block[i] ^= byte
    block[len(message)] ^= 0x06
    block[rate_bytes - 1] ^= 0x80
    st = K.KeccakState.from_int(int.from_bytes(bytes(block), "little"), 64)
    out = K.permute(st, K.KeccakParams(64, 24))
    return out.to_int().to_bytes(200, "little")


@pytest.mark.parametrize("message", [b"", b"abc", b"keccak-forge", bytes(100)])
def test_permutation_against_hashlib_sha3_256(message):
    state = _sponge_state_after_one_block(message, rate_bytes=136)
    assert state[:32] == hashlib.sha3_256(message).digest()


def test_permutation_against_hashlib_sha3_512():
    # different rate exercises a different byte region of the state
    state = _sponge_state_after_one_block(b"independent oracle", rate_bytes=72)
    assert state[:64] == hashlib.sha3_512(b"independent oracle").digest()


def test_golden_vector_w8_r3():
    st = K.KeccakState.from_hex(GOLDEN_W8_IN, 8)
    out = K.permute(st, K.KeccakParams(8, 3))
    assert out.to_hex() == GOLDEN_W8_OUT
    # re-derive from the independent slow implementation each run
    assert slow_permute(st.to_int(), 8, 3) == out.to_int()


@pytest.mark.parametrize("w,rounds,offset", [
    (1, 1, 0), (1, 3, 0), (2, 2, 5), (8, 3, 0), (8, 2, 21), (64, 1, 0),
])
def test_matches_independent_slow_implementation(w, rounds, offset):
    rng = random.Random(1000 + w + rounds)
    for _ in range(3):
        value = rng.getrandbits(25 * w)
        fast = K.permute(K.KeccakState.from_int(value, w),
                         K.KeccakParams(w, rounds, offset)).to_int()
        assert fast == slow_permute(value, w, rounds, offset)


def test_constant_tables_match_generating_rules():
    for ir in range(24):
        assert round_constant(ir, 64) == K.ROUND_CONSTANTS[ir]
    derived = rotation_offsets(64)
    for x in range(5):
        for y in range(5):
            assert derived[(x, y)] == K.ROTATION_OFFSETS[x][y]


def test_bitsliced_matches_scalar():
    rng = random.Random(13)
    for w in (1, 8):
        params = K.KeccakParams(w, 3, 2)
        states = [K.random_state(w, rng) for _ in range(130)]
        n = 25 * w
        n_words = (len(states) + 63) // 64
        rows = np.zeros((n, n_words), dtype=np.uint64)
        for k, st in enumerate(states):
            value = st.to_int()
            for i in range(n):
                if (value >> i) & 1:
                    rows[i, k // 64] |= np.uint64(1) << np.uint64(k % 64)
        out = K.permute_bitsliced(rows, params)
        for k, st in enumerate(states):
            expect = K.permute(st, params).to_int()
            got = 0
            for i in range(n):
                if (int(out[i, k // 64]) >> (k % 64)) & 1:
                    got |= 1 << i
            assert got == expect


def test_bitsliced_zero_rounds_copies():
    rows = np.ones((25, 2), dtype=np.uint64)
    out = K.permute_bitsliced(rows, K.KeccakParams(1, 0))
    assert np.array_equal(out, rows)
    out[0, 0] = 0
    assert rows[0, 0] == 1  # input not aliased
