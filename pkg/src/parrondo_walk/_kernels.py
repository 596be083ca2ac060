"""Time-stepping kernels.

Two interchangeable implementations of ``evolve``: a numba ``@njit`` loop and
a vectorised numpy fallback. The numba path is used when numba imports and
``PARRONDO_WALK_DISABLE_NUMBA`` is unset (or ``0``). Both are deterministic;
they agree to rounding (~1e-15), not bitwise.

``evolve(psi, coins, schedule, disp, lo, hi, center, out)``

* ``psi``      (npos, d) complex128, updated in place with the final state
* ``coins``    (k, d, d) complex128, the distinct coin matrices of the run
* ``schedule`` (N,) int64, index into ``coins`` for each step
* ``disp``     (d,) int64 displacement per coin basis index
* ``lo, hi``   occupied row range [lo, hi) on entry
* ``center``   row index of position 0
* ``out``      (N, 3) float64 receiving p_right, p_left, p_origin per step

The caller guarantees the support never leaves the lattice.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None

__all__ = ["evolve", "evolve_numpy", "evolve_numba", "BACKEND", "HAS_NUMBA"]

HAS_NUMBA = numba is not None


def _numba_disabled():
    return os.environ.get("PARRONDO_WALK_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")


def evolve_numpy(psi, coins, schedule, disp, lo, hi, center, out):
    left = max(0, -int(disp.min()))
    right = max(0, int(disp.max()))
    buf = np.zeros_like(psi)
    for t in range(schedule.shape[0]):
        c = coins[schedule[t]]
        mixed = psi[lo:hi] @ c.T
        nlo, nhi = lo - left, hi + right
        buf[nlo:nhi] = 0.0
        for b in range(disp.shape[0]):
            d = disp[b]
            buf[lo + d : hi + d, b] = mixed[:, b]
        psi, buf = buf, psi
        lo, hi = nlo, nhi
        window = psi[lo:hi]
        prob = np.sum(window.real**2 + window.imag**2, axis=1)
        k = center - lo
        out[t, 0] = prob[k + 1 :].sum()
        out[t, 1] = prob[:k].sum()
        out[t, 2] = prob[k]
    return psi, lo, hi


if HAS_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def _evolve_jit(psi, coins, schedule, disp, lo, hi, center, out):
        npos, d = psi.shape
        left = 0
        right = 0
        for b in range(d):
            if -disp[b] > left:
                left = -disp[b]
            if disp[b] > right:
                right = disp[b]
        buf = np.zeros_like(psi)
        tmp = np.empty(d, dtype=np.complex128)
        for t in range(schedule.shape[0]):
            c = coins[schedule[t]]
            nlo = lo - left
            nhi = hi + right
            for n in range(nlo, nhi):
                for b in range(d):
                    buf[n, b] = 0.0
            for n in range(lo, hi):
                for b in range(d):
                    acc = 0.0 + 0.0j
                    for k in range(d):
                        acc += c[b, k] * psi[n, k]
                    tmp[b] = acc
                for b in range(d):
                    buf[n + disp[b], b] = tmp[b]
            psi, buf = buf, psi
            lo = nlo
            hi = nhi
            pr = 0.0
            pl = 0.0
            po = 0.0
            for n in range(lo, hi):
                p = 0.0
                for b in range(d):
                    z = psi[n, b]
                    p += z.real * z.real + z.imag * z.imag
                if n > center:
                    pr += p
                elif n < center:
                    pl += p
                else:
                    po = p
            out[t, 0] = pr
            out[t, 1] = pl
            out[t, 2] = po
        return psi, lo, hi

    def evolve_numba(psi, coins, schedule, disp, lo, hi, center, out):
        return _evolve_jit(psi, coins, schedule, disp, int(lo), int(hi), int(center), out)

else:  # pragma: no cover
    evolve_numba = None


if HAS_NUMBA and not _numba_disabled():
    evolve = evolve_numba
    BACKEND = "numba"
else:
    evolve = evolve_numpy
    BACKEND = "numpy"
