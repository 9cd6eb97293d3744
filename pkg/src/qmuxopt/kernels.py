"""Hot numeric kernels: butterfly columns and per-polarity cost sums.

Each kernel has two implementations: a numba @njit loop and a vectorized
pure-numpy fallback.  The jitted path is used when numba imports cleanly
and the environment variable QMUXOPT_NO_NUMBA is unset/false; setting
QMUXOPT_NO_NUMBA=1 forces the numpy path.  benchmarks/bench_kernels.py
compares the two.

Kernel codes (one butterfly column pairs indices differing at `bit`; the
pair is (a, b) with a at the clear-bit index):

  FORWARD_POS   (a, b) -> (a, b @ a^-1)
  FORWARD_NEG   (a, b) -> (b, a @ b^-1)
  INVERSE_POS   (a, b) -> (a, b @ a)
  INVERSE_NEG   (a, b) -> (b @ a, a)
  IDENTITY      (a, b) -> (a, b)

GF(2) codes for the classical transform (x, y are bits):

  GF2_POS    (x, y) -> (x, x ^ y)
  GF2_NEG    (x, y) -> (x ^ y, y)
  GF2_MIXED  (x, y) -> (x, y)

Operands stay unitary throughout, so matrix inverses are conjugate
transposes.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env-flag path
    HAVE_NUMBA = False

NUMBA_DISABLED = os.environ.get("QMUXOPT_NO_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}
USE_NUMBA = HAVE_NUMBA and not NUMBA_DISABLED

FORWARD_POS = 0
FORWARD_NEG = 1
INVERSE_POS = 2
INVERSE_NEG = 3
IDENTITY = 4

GF2_POS = 0
GF2_NEG = 1
GF2_MIXED = 2


# ---------------------------------------------------------------------------
# pure-numpy implementations


def _pair_indices(n, bit):
    idx = np.arange(n)
    lo = idx[(idx & (1 << bit)) == 0]
    return lo, lo | (1 << bit)


def gate_stage_numpy(gates: np.ndarray, kernel: int, bit: int) -> np.ndarray:
    """Apply one butterfly column to a (2^n, 2, 2) gate vector."""
    if kernel == IDENTITY:
        return gates.copy()
    lo, hi = _pair_indices(gates.shape[0], bit)
    a = gates[lo]
    b = gates[hi]
    out = np.empty_like(gates)
    if kernel == FORWARD_POS:
        out[lo] = a
        out[hi] = b @ a.conj().transpose(0, 2, 1)
    elif kernel == FORWARD_NEG:
        out[lo] = b
        out[hi] = a @ b.conj().transpose(0, 2, 1)
    elif kernel == INVERSE_POS:
        out[lo] = a
        out[hi] = b @ a
    elif kernel == INVERSE_NEG:
        out[lo] = b @ a
        out[hi] = a
    else:
        raise ValueError(f"unknown kernel code {kernel}")
    return out


def mux_cost_numpy(gates, counts, cost_table, eps):
    """Total gate cost of a polarized gate vector.

    counts[i] is the number of controls on gate i; cost_table maps a control
    count to its cost.  Gates equal to the identity within eps are free.
    Returns (total_cost, skipped_identities).
    """
    dev = np.abs(gates - np.eye(2)).reshape(gates.shape[0], 4).max(axis=1)
    is_id = dev <= eps
    total = int(cost_table[counts[~is_id]].sum())
    return total, int(is_id.sum())


def gf2_stage_numpy(vec: np.ndarray, kernel: int, bit: int) -> np.ndarray:
    """Apply one GF(2) butterfly column to a (2^n,) uint8 vector."""
    if kernel == GF2_MIXED:
        return vec.copy()
    lo, hi = _pair_indices(vec.shape[0], bit)
    x = vec[lo]
    y = vec[hi]
    out = np.empty_like(vec)
    if kernel == GF2_POS:
        out[lo] = x
        out[hi] = x ^ y
    elif kernel == GF2_NEG:
        out[lo] = x ^ y
        out[hi] = y
    else:
        raise ValueError(f"unknown GF(2) kernel code {kernel}")
    return out


# ---------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @njit(cache=True)
    def gate_stage_numba(gates, kernel, bit):  # pragma: no cover - jitted
        n = gates.shape[0]
        out = np.empty_like(gates)
        if kernel == IDENTITY:
            out[:] = gates
            return out
        step = 1 << bit
        for base in range(n):
            if base & step:
                continue
            top = base + step
            a00 = gates[base, 0, 0]
            a01 = gates[base, 0, 1]
            a10 = gates[base, 1, 0]
            a11 = gates[base, 1, 1]
            b00 = gates[top, 0, 0]
            b01 = gates[top, 0, 1]
            b10 = gates[top, 1, 0]
            b11 = gates[top, 1, 1]
            if kernel == FORWARD_POS:
                # (a, b @ a†)
                out[base, 0, 0] = a00
                out[base, 0, 1] = a01
                out[base, 1, 0] = a10
                out[base, 1, 1] = a11
                out[top, 0, 0] = b00 * np.conj(a00) + b01 * np.conj(a01)
                out[top, 0, 1] = b00 * np.conj(a10) + b01 * np.conj(a11)
                out[top, 1, 0] = b10 * np.conj(a00) + b11 * np.conj(a01)
                out[top, 1, 1] = b10 * np.conj(a10) + b11 * np.conj(a11)
            elif kernel == FORWARD_NEG:
                # (b, a @ b†)
                out[base, 0, 0] = b00
                out[base, 0, 1] = b01
                out[base, 1, 0] = b10
                out[base, 1, 1] = b11
                out[top, 0, 0] = a00 * np.conj(b00) + a01 * np.conj(b01)
                out[top, 0, 1] = a00 * np.conj(b10) + a01 * np.conj(b11)
                out[top, 1, 0] = a10 * np.conj(b00) + a11 * np.conj(b01)
                out[top, 1, 1] = a10 * np.conj(b10) + a11 * np.conj(b11)
            elif kernel == INVERSE_POS:
                # (a, b @ a)
                out[base, 0, 0] = a00
                out[base, 0, 1] = a01
                out[base, 1, 0] = a10
                out[base, 1, 1] = a11
                out[top, 0, 0] = b00 * a00 + b01 * a10
                out[top, 0, 1] = b00 * a01 + b01 * a11
                out[top, 1, 0] = b10 * a00 + b11 * a10
                out[top, 1, 1] = b10 * a01 + b11 * a11
            else:
                # INVERSE_NEG: (b @ a, a)
                out[base, 0, 0] = b00 * a00 + b01 * a10
                out[base, 0, 1] = b00 * a01 + b01 * a11
                out[base, 1, 0] = b10 * a00 + b11 * a10
                out[base, 1, 1] = b10 * a01 + b11 * a11
                out[top, 0, 0] = a00
                out[top, 0, 1] = a01
                out[top, 1, 0] = a10
                out[top, 1, 1] = a11
        return out

    @njit(cache=True)
    def mux_cost_numba(gates, counts, cost_table, eps):  # pragma: no cover
        total = 0
        skipped = 0
        for i in range(gates.shape[0]):
            d00 = abs(gates[i, 0, 0] - 1.0)
            d01 = abs(gates[i, 0, 1])
            d10 = abs(gates[i, 1, 0])
            d11 = abs(gates[i, 1, 1] - 1.0)
            if d00 <= eps and d01 <= eps and d10 <= eps and d11 <= eps:
                skipped += 1
            else:
                total += cost_table[counts[i]]
        return total, skipped

    @njit(cache=True)
    def gf2_stage_numba(vec, kernel, bit):  # pragma: no cover - jitted
        n = vec.shape[0]
        out = np.empty_like(vec)
        if kernel == GF2_MIXED:
            out[:] = vec
            return out
        step = 1 << bit
        for base in range(n):
            if base & step:
                continue
            top = base + step
            x = vec[base]
            y = vec[top]
            if kernel == GF2_POS:
                out[base] = x
                out[top] = x ^ y
            else:
                out[base] = x ^ y
                out[top] = y
        return out

else:  # pragma: no cover
    gate_stage_numba = None
    mux_cost_numba = None
    gf2_stage_numba = None


# ---------------------------------------------------------------------------
# dispatch

if USE_NUMBA:

    def gate_stage(gates, kernel, bit):
        return gate_stage_numba(np.ascontiguousarray(gates), kernel, bit)

    def mux_cost(gates, counts, cost_table, eps):
        total, skipped = mux_cost_numba(
            np.ascontiguousarray(gates), counts, cost_table, eps
        )
        return int(total), int(skipped)

    def gf2_stage(vec, kernel, bit):
        return gf2_stage_numba(np.ascontiguousarray(vec), kernel, bit)

else:
    gate_stage = gate_stage_numpy
    mux_cost = mux_cost_numpy
    gf2_stage = gf2_stage_numpy
