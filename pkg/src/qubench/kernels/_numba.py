"""Numba-jitted gate kernels operating on 1-D complex128 state vectors."""

from __future__ import annotations

import numba
import numpy as np

_SIG_1Q = numba.void(
    numba.complex128[::1],
    numba.complex128,
    numba.complex128,
    numba.complex128,
    numba.complex128,
    numba.int64,
)


@numba.njit(_SIG_1Q, cache=True)
def apply_1q(amps, m00, m01, m10, m11, q):
    step = 1 << q
    n = amps.shape[0]
    for base in range(0, n, 2 * step):
        for off in range(step):
            i0 = base + off
            i1 = i0 + step
            a0 = amps[i0]
            a1 = amps[i1]
            amps[i0] = m00 * a0 + m01 * a1
            amps[i1] = m10 * a0 + m11 * a1


@numba.njit(numba.void(numba.complex128[::1], numba.int64, numba.int64), cache=True)
def apply_cnot(amps, control, target):
    cbit = 1 << control
    tbit = 1 << target
    for i in range(amps.shape[0]):
        if (i & cbit) != 0 and (i & tbit) == 0:
            j = i | tbit
            tmp = amps[i]
            amps[i] = amps[j]
            amps[j] = tmp


@numba.njit(
    numba.void(numba.complex128[::1], numba.int64, numba.int64, numba.complex128),
    cache=True,
)
def apply_cphase(amps, a, b, phase):
    mask = (1 << a) | (1 << b)
    for i in range(amps.shape[0]):
        if (i & mask) == mask:
            amps[i] *= phase


@numba.njit(numba.void(numba.complex128[::1], numba.int64, numba.int64), cache=True)
def apply_swap(amps, a, b):
    abit = 1 << a
    bbit = 1 << b
    for i in range(amps.shape[0]):
        if (i & abit) != 0 and (i & bbit) == 0:
            j = (i ^ abit) | bbit
            tmp = amps[i]
            amps[i] = amps[j]
            amps[j] = tmp
