# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Packed-bit gate application kernel.

State is a (n_wires, n_words) uint64 array; bit b of word w on row i is
wire i's value in batch state 64*w + b.  Gate semantics over that packing:

    X    t      row[t] ^= ~0
    CNOT c t    row[t] ^= row[c]
    CCX  a b t  row[t] ^= row[a] & row[b]

The Python fallback in sim.py applies the same ops with numpy; this loop
just removes the per-gate dispatch overhead, which dominates for small
batches of deep circuits.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

KIND_X = 0
KIND_CNOT = 1
KIND_CCX = 2


def apply_gates(const signed char[::1] kinds,
                const int[::1] wire_a,
                const int[::1] wire_b,
                const int[::1] wire_t,
                cnp.uint64_t[:, ::1] state):
    """Apply the compiled gate arrays to the packed state in place."""
    cdef Py_ssize_t n_gates = kinds.shape[0]
    cdef Py_ssize_t n_words = state.shape[1]
    cdef Py_ssize_t g, w
    cdef int a, b, t
    cdef signed char kind
    cdef cnp.uint64_t full = <cnp.uint64_t> 0xFFFFFFFFFFFFFFFFULL
    with nogil:
        for g in range(n_gates):
            kind = kinds[g]
            t = wire_t[g]
            if kind == 2:
                a = wire_a[g]
                b = wire_b[g]
                for w in range(n_words):
                    state[t, w] ^= state[a, w] & state[b, w]
            elif kind == 1:
                a = wire_a[g]
                for w in range(n_words):
                    state[t, w] ^= state[a, w]
            else:
                for w in range(n_words):
                    state[t, w] ^= full
    return None
