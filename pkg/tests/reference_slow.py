"""Independent slow permutation used as a test oracle.

Deliberately structured differently from the production code: bits live
in a dict keyed by (x, y, z), each step follows the standard per-bit
formulas, and the rotation offsets and round constants are derived from
their generating rules (the (t+1)(t+2)/2 walk and the degree-8 LFSR)
instead of being copied from a table.
"""

from __future__ import annotations


def rc_bit(t: int) -> int:
    """Round-constant LFSR output bit."""
    if t % 255 == 0:
        return 1
    r = [1, 0, 0, 0, 0, 0, 0, 0]
    for _ in range(t % 255):
        r = [0] + r
        r[0] ^= r[8]
        r[4] ^= r[8]
        r[5] ^= r[8]
        r[6] ^= r[8]
        r = r[:8]
    return r[0]


def round_constant(round_index: int, lane_width: int) -> int:
    ell = lane_width.bit_length() - 1
    rc = 0
    for j in range(ell + 1):
        if rc_bit(j + 7 * round_index):
            rc |= 1 << (2 ** j - 1)
    return rc


def rotation_offsets(lane_width: int) -> dict[tuple[int, int], int]:
    off = {(0, 0): 0}
    x, y = 1, 0
    for t in range(24):
        off[(x, y)] = ((t + 1) * (t + 2) // 2) % lane_width
        x, y = y, (2 * x + 3 * y) % 5
    return off


def _flat(x: int, y: int, z: int, w: int) -> int:
    return w * (5 * y + x) + z


def slow_permute(value: int, lane_width: int, rounds: int,
                 round_offset: int = 0) -> int:
    """Integer-encoded state in, integer-encoded state out."""
    w = lane_width
    a = {(x, y, z): (value >> _flat(x, y, z, w)) & 1
         for x in range(5) for y in range(5) for z in range(w)}
    off = rotation_offsets(w)
    for ir in range(round_offset, round_offset + rounds):
        c = {(x, z):
             a[(x, 0, z)] ^ a[(x, 1, z)] ^ a[(x, 2, z)] ^ a[(x, 3, z)]
             ^ a[(x, 4, z)]
             for x in range(5) for z in range(w)}
        d = {(x, z): c[((x - 1) % 5, z)] ^ c[((x + 1) % 5, (z - 1) % w)]
             for x in range(5) for z in range(w)}
        a = {(x, y, z): a[(x, y, z)] ^ d[(x, z)]
             for x in range(5) for y in range(5) for z in range(w)}
        a = {(x, y, (z + off[(x, y)]) % w): a[(x, y, z)]
             for x in range(5) for y in range(5) for z in range(w)}
        a = {(x, y, z): a[((x + 3 * y) % 5, x, z)]
             for x in range(5) for y in range(5) for z in range(w)}
        a = {(x, y, z):
             a[(x, y, z)] ^ ((a[((x + 1) % 5, y, z)] ^ 1)
                             & a[((x + 2) % 5, y, z)])
             for x in range(5) for y in range(5) for z in range(w)}
        rc = round_constant(ir, w)
        for z in range(w):
            if (rc >> z) & 1:
                a[(0, 0, z)] ^= 1
    out = 0
    for (x, y, z), bit in a.items():
        if bit:
            out |= 1 << _flat(x, y, z, w)
    return out
