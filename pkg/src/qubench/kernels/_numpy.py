"""Pure-numpy gate kernels.

All functions update the array in place along axis 0. The array may be a
state vector of shape (2**n,) or a matrix of shape (2**n, m); the reshapes
below carry any trailing axes through unchanged. This doubles as the
reference implementation for the numba backend.
"""

from __future__ import annotations

import numpy as np


def _split(arr: np.ndarray, q: int):
    """View with the bit of qubit q pulled out as its own axis."""
    low = 1 << q
    high = arr.shape[0] // (2 * low)
    return arr.reshape((high, 2, low) + arr.shape[1:])


def _split2(arr: np.ndarray, qa: int, qb: int):
    """View with the bits of two distinct qubits as separate axes.

    Returns (view, axis index of qa's bit, axis index of qb's bit) where the
    view has shape (A, 2, B, 2, C, ...) and axis 1 is the higher qubit.
    """
    hi, lo = (qa, qb) if qa > qb else (qb, qa)
    low = 1 << lo
    mid = (1 << hi) // (2 * low)
    high = arr.shape[0] // (4 * low * mid)
    view = arr.reshape((high, 2, mid, 2, low) + arr.shape[1:])
    if qa > qb:
        return view, 1, 3
    return view, 3, 1


def apply_1q(amps, m00, m01, m10, m11, q):
    view = _split(amps, q)
    a0 = view[:, 0].copy()
    view[:, 0] = m00 * a0 + m01 * view[:, 1]
    view[:, 1] = m10 * a0 + m11 * view[:, 1]


def apply_cnot(amps, control, target):
    view, c_ax, t_ax = _split2(amps, control, target)
    if c_ax == 1:
        src0 = view[:, 1, :, 0]
        src1 = view[:, 1, :, 1]
    else:
        src0 = view[:, 0, :, 1]
        src1 = view[:, 1, :, 1]
    tmp = src0.copy()
    src0[...] = src1
    src1[...] = tmp


def apply_cphase(amps, a, b, phase):
    view, _, _ = _split2(amps, a, b)
    view[:, 1, :, 1] *= phase


def apply_swap(amps, a, b):
    view, _, _ = _split2(amps, a, b)
    tmp = view[:, 0, :, 1].copy()
    view[:, 0, :, 1] = view[:, 1, :, 0]
    view[:, 1, :, 0] = tmp
