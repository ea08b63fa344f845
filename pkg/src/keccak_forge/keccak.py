"""Classical reference implementation of Keccak-f[25w].

Supports lane widths w in {1, 2, 4, 8, 16, 32, 64} and arbitrary round
windows, so the same code serves as the ground truth for full-width
Keccak-f[1600] and for the scaled-down variants used in circuit
verification.  Only the permutation core is implemented; there is no
sponge, padding, or digest API.

State layout convention (fixed project-wide): lane (x, y) occupies flat
bit indices w*(5y + x) + z for z in [0, w).  Hex encodings are
little-endian over that flat index, two hex chars per 8 bits,
zero-padded to whole bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

LANE_WIDTHS = (1, 2, 4, 8, 16, 32, 64)

MAX_ROUNDS = 24

# FIPS 202 round constants for Keccak-f[1600]; truncated to the low w bits
# for smaller lane widths.
ROUND_CONSTANTS = (
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A,
    0x8000000080008000, 0x000000000000808B, 0x0000000080000001,
    0x8000000080008081, 0x8000000000008009, 0x000000000000008A,
    0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089,
    0x8000000000008003, 0x8000000000008002, 0x8000000000000080,
    0x000000000000800A, 0x800000008000000A, 0x8000000080008081,
    0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
)

# FIPS 202 rotation offsets, ROTATION_OFFSETS[x][y]; reduced mod w at use.
ROTATION_OFFSETS = (
    (0, 36, 3, 41, 18),
    (1, 44, 10, 45, 2),
    (62, 6, 43, 15, 61),
    (28, 55, 25, 21, 56),
    (27, 20, 39, 8, 14),
)


class KeccakError(ValueError):
    """Invalid permutation parameters or state encoding."""


@dataclass(frozen=True)
class KeccakParams:
    """Lane width plus the window of rounds to apply.

    round_offset selects the index of the first round constant, so a
    3-round permutation may start anywhere inside the 24-round schedule.
    """

    lane_width: int
    rounds: int
    round_offset: int = 0

    def __post_init__(self):
        if self.lane_width not in LANE_WIDTHS:
            raise KeccakError(
                f"lane_width must be one of {LANE_WIDTHS}, got {self.lane_width}")
        if self.rounds < 0:
            raise KeccakError(f"rounds must be >= 0, got {self.rounds}")
        if self.round_offset < 0:
            raise KeccakError(f"round_offset must be >= 0, got {self.round_offset}")
        if self.rounds + self.round_offset > MAX_ROUNDS:
            raise KeccakError(
                f"rounds + round_offset must be <= {MAX_ROUNDS}, "
                f"got {self.rounds} + {self.round_offset}")

    @property
    def state_bits(self) -> int:
        return 25 * self.lane_width


def flat_index(x: int, y: int, z: int, lane_width: int) -> int:
    """Map lane coordinates (x, y) and depth z to the flat bit index."""
    return lane_width * (5 * y + x) + z


@dataclass(frozen=True)
class KeccakState:
    """Immutable 25*w-bit permutation state, stored as 25 integer lanes.

    lanes[5*y + x] holds lane (x, y); its bit z is flat bit
    w*(5y + x) + z.
    """

    lanes: tuple[int, ...]
    lane_width: int

    def __post_init__(self):
        if self.lane_width not in LANE_WIDTHS:
            raise KeccakError(
                f"lane_width must be one of {LANE_WIDTHS}, got {self.lane_width}")
        if len(self.lanes) != 25:
            raise KeccakError(f"expected 25 lanes, got {len(self.lanes)}")
        mask = (1 << self.lane_width) - 1
        for i, lane in enumerate(self.lanes):
            if lane < 0 or lane > mask:
                raise KeccakError(f"lane {i} out of range for width {self.lane_width}")

    @classmethod
    def zeros(cls, lane_width: int) -> "KeccakState":
        return cls((0,) * 25, lane_width)

    @classmethod
    def from_int(cls, value: int, lane_width: int) -> "KeccakState":
        """Build a state from an integer whose bit i is flat bit i."""
        if value < 0 or value >> (25 * lane_width):
            raise KeccakError("value does not fit in 25*lane_width bits")
        mask = (1 << lane_width) - 1
        lanes = tuple((value >> (lane_width * i)) & mask for i in range(25))
        return cls(lanes, lane_width)

    @classmethod
    def from_bits(cls, bits: Sequence[int], lane_width: int) -> "KeccakState":
        if len(bits) != 25 * lane_width:
            raise KeccakError(
                f"expected {25 * lane_width} bits, got {len(bits)}")
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1, True, False):
                raise KeccakError(f"bit {i} is not 0/1")
            if b:
                value |= 1 << i
        return cls.from_int(value, lane_width)

    @classmethod
    def from_hex(cls, text: str, lane_width: int) -> "KeccakState":
        """Parse the little-endian flat-index hex encoding."""
        n_bytes = (25 * lane_width + 7) // 8
        if len(text) != 2 * n_bytes:
            raise KeccakError(
                f"expected {2 * n_bytes} hex chars for lane width {lane_width}, "
                f"got {len(text)}")
        try:
            raw = bytes.fromhex(text)
        except ValueError as exc:
            raise KeccakError(f"invalid hex state: {exc}") from None
        value = int.from_bytes(raw, "little")
        if value >> (25 * lane_width):
            raise KeccakError("padding bits beyond 25*lane_width must be zero")
        return cls.from_int(value, lane_width)

    def to_int(self) -> int:
        value = 0
        for i, lane in enumerate(self.lanes):
            value |= lane << (self.lane_width * i)
        return value

    def to_bits(self) -> list[int]:
        value = self.to_int()
        return [(value >> i) & 1 for i in range(25 * self.lane_width)]

    def to_hex(self) -> str:
        n_bytes = (25 * self.lane_width + 7) // 8
        return self.to_int().to_bytes(n_bytes, "little").hex()

    def bit(self, x: int, y: int, z: int) -> int:
        return (self.lanes[5 * y + x] >> z) & 1


def state_bits_to_hex(value: int, lane_width: int) -> str:
    """Hex-encode an integer flat state without building a KeccakState."""
    n_bytes = (25 * lane_width + 7) // 8
    return value.to_bytes(n_bytes, "little").hex()


def _rotl(value: int, amount: int, width: int) -> int:
    amount %= width
    if amount == 0:
        return value
    mask = (1 << width) - 1
    return ((value << amount) | (value >> (width - amount))) & mask


def theta(state: KeccakState) -> KeccakState:
    """Column-parity mixing: A'[x,y] = A[x,y] ^ C[x-1] ^ rotl(C[x+1], 1)."""
    w = state.lane_width
    lanes = state.lanes
    c = [lanes[x] ^ lanes[x + 5] ^ lanes[x + 10] ^ lanes[x + 15] ^ lanes[x + 20]
         for x in range(5)]
    d = [c[(x - 1) % 5] ^ _rotl(c[(x + 1) % 5], 1, w) for x in range(5)]
    return KeccakState(
        tuple(lanes[5 * y + x] ^ d[x] for y in range(5) for x in range(5)), w)


def rho(state: KeccakState) -> KeccakState:
    """Per-lane rotation by the fixed offset table, reduced mod w."""
    w = state.lane_width
    return KeccakState(
        tuple(_rotl(state.lanes[5 * y + x], ROTATION_OFFSETS[x][y], w)
              for y in range(5) for x in range(5)), w)


def pi(state: KeccakState) -> KeccakState:
    """Lane permutation: lane (x, y) moves to (y, (2x + 3y) mod 5)."""
    lanes = [0] * 25
    for y in range(5):
        for x in range(5):
            lanes[5 * ((2 * x + 3 * y) % 5) + y] = state.lanes[5 * y + x]
    return KeccakState(tuple(lanes), state.lane_width)


def chi_row(row: Sequence[int]) -> tuple[int, ...]:
    """The non-linear map on one 5-bit row: out_i = in_i ^ (~in_{i+1} & in_{i+2})."""
    if len(row) != 5:
        raise KeccakError(f"chi_row takes exactly 5 bits, got {len(row)}")
    return tuple(
        (row[i] ^ ((row[(i + 1) % 5] ^ 1) & row[(i + 2) % 5])) & 1
        for i in range(5))


def chi(state: KeccakState) -> KeccakState:
    """Apply the row-wise non-linear map to all 5w rows."""
    w = state.lane_width
    mask = (1 << w) - 1
    lanes = state.lanes
    out = [0] * 25
    for y in range(5):
        for x in range(5):
            out[5 * y + x] = (lanes[5 * y + x]
                              ^ (~lanes[5 * y + (x + 1) % 5]
                                 & lanes[5 * y + (x + 2) % 5])) & mask
    return KeccakState(tuple(out), w)


def iota(state: KeccakState, round_index: int) -> KeccakState:
    """XOR the round constant, truncated to w bits, into lane (0, 0)."""
    if not 0 <= round_index < MAX_ROUNDS:
        raise KeccakError(
            f"round_index must be in [0, {MAX_ROUNDS}), got {round_index}")
    w = state.lane_width
    rc = ROUND_CONSTANTS[round_index] & ((1 << w) - 1)
    lanes = list(state.lanes)
    lanes[0] ^= rc
    return KeccakState(tuple(lanes), w)


def round_function(state: KeccakState, round_index: int) -> KeccakState:
    return iota(chi(pi(rho(theta(state)))), round_index)


def permute(state: KeccakState, params: KeccakParams) -> KeccakState:
    """Apply rounds round_offset .. round_offset + rounds - 1."""
    if state.lane_width != params.lane_width:
        raise KeccakError("state lane width does not match params")
    for r in range(params.round_offset, params.round_offset + params.rounds):
        state = round_function(state, r)
    return state


# ---------------------------------------------------------------------------
# Inverse rounds.  Test scaffolding: the cheapest bijectivity witness is an
# explicit inverse.  chi inverts via the 5-bit lookup; rho/pi/iota invert
# directly; theta inverts through a cached GF(2) matrix inverse.
# ---------------------------------------------------------------------------

_CHI_INV = None


def _chi_inverse_table() -> list[int]:
    global _CHI_INV
    if _CHI_INV is None:
        table = [0] * 32
        for v in range(32):
            out = chi_row([(v >> i) & 1 for i in range(5)])
            table[sum(b << i for i, b in enumerate(out))] = v
        _CHI_INV = table
    return _CHI_INV


def inverse_chi(state: KeccakState) -> KeccakState:
    w = state.lane_width
    table = _chi_inverse_table()
    lanes = [0] * 25
    for y in range(5):
        for z in range(w):
            row = sum(state.bit(x, y, z) << x for x in range(5))
            inv = table[row]
            for x in range(5):
                if (inv >> x) & 1:
                    lanes[5 * y + x] |= 1 << z
    return KeccakState(tuple(lanes), w)


def inverse_pi(state: KeccakState) -> KeccakState:
    lanes = [0] * 25
    for y in range(5):
        for x in range(5):
            lanes[5 * y + x] = state.lanes[5 * ((2 * x + 3 * y) % 5) + y]
    return KeccakState(tuple(lanes), state.lane_width)


def inverse_rho(state: KeccakState) -> KeccakState:
    w = state.lane_width
    return KeccakState(
        tuple(_rotl(state.lanes[5 * y + x], -ROTATION_OFFSETS[x][y] % w, w)
              for y in range(5) for x in range(5)), w)


@lru_cache(maxsize=None)
def _theta_inverse_rows(lane_width: int) -> tuple[int, ...]:
    """Rows of theta^-1 over GF(2), as bit masks over flat input indices.

    theta is linear, so its matrix rows follow directly from the step
    formula; Gaussian elimination on integer-packed rows yields the
    inverse.  Invertibility holds for all power-of-two lane widths.
    """
    w = lane_width
    n = 25 * w
    rows = []
    for y in range(5):
        for x in range(5):
            for z in range(w):
                mask = 1 << flat_index(x, y, z, w)
                for yy in range(5):
                    mask ^= 1 << flat_index((x - 1) % 5, yy, z, w)
                    mask ^= 1 << flat_index((x + 1) % 5, yy, (z - 1) % w, w)
                rows.append(mask)
    # rows[j] is the mask for flat output bit j (loop order matches flat order).
    aug = [(rows[i], 1 << i) for i in range(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if (aug[r][0] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            raise KeccakError(f"theta is singular at lane width {w}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        prow, pinv = aug[col]
        for r in range(n):
            if r != col and (aug[r][0] >> col) & 1:
                aug[r] = (aug[r][0] ^ prow, aug[r][1] ^ pinv)
    return tuple(inv for _, inv in aug)


def inverse_theta(state: KeccakState) -> KeccakState:
    w = state.lane_width
    rows = _theta_inverse_rows(w)
    v = state.to_int()
    out = 0
    for j, row in enumerate(rows):
        if (row & v).bit_count() & 1:
            out |= 1 << j
    return KeccakState.from_int(out, w)


def inverse_round(state: KeccakState, round_index: int) -> KeccakState:
    return inverse_theta(inverse_rho(inverse_pi(inverse_chi(
        iota(state, round_index)))))


def inverse_permute(state: KeccakState, params: KeccakParams) -> KeccakState:
    if state.lane_width != params.lane_width:
        raise KeccakError("state lane width does not match params")
    for r in reversed(range(params.round_offset,
                            params.round_offset + params.rounds)):
        state = inverse_round(state, r)
    return state


# ---------------------------------------------------------------------------
# Bit-sliced batch evaluation.  Row i of the array is flat state bit i; the
# bits along the word axis are independent states evaluated in parallel.
# Used by exhaustive circuit-equivalence checks, where millions of states
# must go through the reference permutation.
# ---------------------------------------------------------------------------


def permute_bitsliced(bit_rows: np.ndarray, params: KeccakParams) -> np.ndarray:
    """Apply the permutation to a batch of states packed as bit rows.

    bit_rows has shape (25*w, n_words) and dtype uint64; column bit k of
    row i is flat bit i of batch state (64*word + k).  Returns an array
    of the same shape.
    """
    w = params.lane_width
    if bit_rows.shape[0] != 25 * w:
        raise KeccakError(
            f"expected {25 * w} rows, got {bit_rows.shape[0]}")
    if params.rounds == 0:
        return bit_rows.astype(np.uint64, copy=True)
    # a[y, x, z] = row for flat index w*(5y+x)+z
    a = bit_rows.reshape(5, 5, w, -1)
    full = np.uint64(0xFFFFFFFFFFFFFFFF)
    for r in range(params.round_offset, params.round_offset + params.rounds):
        # theta
        c = a[0] ^ a[1] ^ a[2] ^ a[3] ^ a[4]           # [x, z]
        d = np.roll(c, 1, axis=0) ^ np.roll(np.roll(c, -1, axis=0), 1, axis=1)
        a = a ^ d[np.newaxis, :, :, :]
        # rho: out[z] = in[(z - offset) mod w]
        b = np.empty_like(a)
        for y in range(5):
            for x in range(5):
                b[y, x] = np.roll(a[y, x], ROTATION_OFFSETS[x][y] % w, axis=0)
        # pi: destination (y', x') = ((2x+3y) mod 5, y)
        p = np.empty_like(b)
        for y in range(5):
            for x in range(5):
                p[(2 * x + 3 * y) % 5, y] = b[y, x]
        # chi along x
        a = p ^ ((np.roll(p, -1, axis=1) ^ full) & np.roll(p, -2, axis=1))
        # iota into lane (0, 0)
        rc = ROUND_CONSTANTS[r] & ((1 << w) - 1)
        for z in range(w):
            if (rc >> z) & 1:
                a[0, 0, z] ^= full
    return np.ascontiguousarray(a.reshape(25 * w, -1))


def random_state(lane_width: int, rng) -> KeccakState:
    """Draw a uniformly random state from a numpy Generator or random.Random."""
    n = 25 * lane_width
    if hasattr(rng, "getrandbits"):
        value = rng.getrandbits(n)
    else:
        value = int.from_bytes(rng.bytes((n + 7) // 8), "little") & ((1 << n) - 1)
    return KeccakState.from_int(value, lane_width)
