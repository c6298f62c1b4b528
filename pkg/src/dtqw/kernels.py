"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

Three operations dominate runtime: the coin-walk step, the split-step walk
step, and the off-diagonal absolute sum of the rank-2 position density
matrix (an O(N^2) reduction evaluated at every step of every disorder
realization).  Each exists in two semantically identical implementations:

* ``numpy``  -- vectorized numpy, always available;
* ``numba``  -- ``@njit(cache=True, nogil=True)`` loops.

The active backend is chosen at import time: setting the environment
variable ``DTQW_DISABLE_NUMBA`` to anything but ``""``/``"0"`` forces the
numpy path, and a missing/broken numba install falls back to it silently.
``ACTIVE_BACKEND`` records the choice so run metadata can persist it.

Step kernels return a status code (0 ok, 1 boundary overflow) instead of
raising so that the numba and numpy paths stay line-for-line equivalent;
callers translate the code into ``BoundaryOverflowError``.

Both step implementations apply the same elementwise operations in the
same order, so their outputs are bit-identical.  The off-diagonal sum
accumulates in a different order on each path (sequential pair loop vs
numpy's pairwise reduction) and may differ by a few ulps.
"""

from __future__ import annotations

import os

import numpy as np

BOUNDARY_TOL = 1e-14

STEP_OK = 0
STEP_BOUNDARY_OVERFLOW = 1


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------

def _coin_shift_numpy(up, dn, cos_x, sin_x, out_up, out_dn):
    """Coin B(theta_x) at each site, then shift: up -> x-1, down -> x+1."""
    n = up.shape[0]
    bu = cos_x * up + sin_x * dn
    bd = sin_x * up - cos_x * dn
    if abs(bu[0]) > BOUNDARY_TOL or abs(bd[n - 1]) > BOUNDARY_TOL:
        return STEP_BOUNDARY_OVERFLOW
    out_up[: n - 1] = bu[1:]
    out_up[n - 1] = 0.0
    out_dn[0] = 0.0
    out_dn[1:] = bd[: n - 1]
    return STEP_OK


def _split_step_numpy(up, dn, cos1, sin1, cos2_x, sin2_x, out_up, out_dn):
    """Half-angle rotation, half shift (up left), second rotation, half shift (down right)."""
    n = up.shape[0]
    au = cos1 * up + sin1 * dn
    ad = sin1 * up - cos1 * dn
    if abs(au[0]) > BOUNDARY_TOL:
        return STEP_BOUNDARY_OVERFLOW
    mu = np.empty_like(up)
    mu[: n - 1] = au[1:]
    mu[n - 1] = 0.0
    bu = cos2_x * mu + sin2_x * ad
    bd = sin2_x * mu - cos2_x * ad
    if abs(bd[n - 1]) > BOUNDARY_TOL:
        return STEP_BOUNDARY_OVERFLOW
    out_up[:] = bu
    out_dn[0] = 0.0
    out_dn[1:] = bd[: n - 1]
    return STEP_OK


def _offdiag_abs_sum_rank2_numpy(up, dn):
    """Sum of |rho_p[x, y]| over x != y for rho_p = up up^dag + dn dn^dag."""
    gram = np.outer(up, up.conj()) + np.outer(dn, dn.conj())
    a = np.abs(gram)
    return float(a.sum() - np.trace(a))


NUMPY_KERNELS = {
    "coin_shift": _coin_shift_numpy,
    "split_step": _split_step_numpy,
    "offdiag_abs_sum_rank2": _offdiag_abs_sum_rank2_numpy,
}


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

def _build_numba_kernels():
    from numba import njit

    @njit(cache=True, nogil=True)
    def coin_shift(up, dn, cos_x, sin_x, out_up, out_dn):
        n = up.shape[0]
        if abs(cos_x[0] * up[0] + sin_x[0] * dn[0]) > BOUNDARY_TOL:
            return STEP_BOUNDARY_OVERFLOW
        if abs(sin_x[n - 1] * up[n - 1] - cos_x[n - 1] * dn[n - 1]) > BOUNDARY_TOL:
            return STEP_BOUNDARY_OVERFLOW
        for i in range(n - 1):
            out_up[i] = cos_x[i + 1] * up[i + 1] + sin_x[i + 1] * dn[i + 1]
        out_up[n - 1] = 0.0
        out_dn[0] = 0.0
        for i in range(1, n):
            out_dn[i] = sin_x[i - 1] * up[i - 1] - cos_x[i - 1] * dn[i - 1]
        return STEP_OK

    @njit(cache=True, nogil=True)
    def split_step(up, dn, cos1, sin1, cos2_x, sin2_x, out_up, out_dn):
        n = up.shape[0]
        if abs(cos1 * up[0] + sin1 * dn[0]) > BOUNDARY_TOL:
            return STEP_BOUNDARY_OVERFLOW
        mu = np.empty(n, dtype=np.complex128)
        for i in range(n - 1):
            mu[i] = cos1 * up[i + 1] + sin1 * dn[i + 1]
        mu[n - 1] = 0.0
        ad_last = sin1 * up[n - 1] - cos1 * dn[n - 1]
        if abs(sin2_x[n - 1] * mu[n - 1] - cos2_x[n - 1] * ad_last) > BOUNDARY_TOL:
            return STEP_BOUNDARY_OVERFLOW
        prev_bd = 0.0 + 0.0j
        for i in range(n):
            ad = sin1 * up[i] - cos1 * dn[i]
            bu = cos2_x[i] * mu[i] + sin2_x[i] * ad
            bd = sin2_x[i] * mu[i] - cos2_x[i] * ad
            out_up[i] = bu
            out_dn[i] = prev_bd
            prev_bd = bd
        return STEP_OK

    @njit(cache=True, nogil=True)
    def offdiag_abs_sum_rank2(up, dn):
        n = up.shape[0]
        total = 0.0
        for i in range(n):
            ur = up[i].real
            ui = up[i].imag
            dr = dn[i].real
            di = dn[i].imag
            for j in range(i + 1, n):
                re = ur * up[j].real + ui * up[j].imag + dr * dn[j].real + di * dn[j].imag
                im = ui * up[j].real - ur * up[j].imag + di * dn[j].real - dr * dn[j].imag
                total += np.sqrt(re * re + im * im)
        return 2.0 * total

    return {
        "coin_shift": coin_shift,
        "split_step": split_step,
        "offdiag_abs_sum_rank2": offdiag_abs_sum_rank2,
    }


def _numba_disabled_by_env() -> bool:
    return os.environ.get("DTQW_DISABLE_NUMBA", "") not in ("", "0")


NUMBA_KERNELS = None
if not _numba_disabled_by_env():
    try:
        NUMBA_KERNELS = _build_numba_kernels()
    except ImportError:
        NUMBA_KERNELS = None

if NUMBA_KERNELS is not None:
    ACTIVE_BACKEND = "numba"
    _ACTIVE = NUMBA_KERNELS
else:
    ACTIVE_BACKEND = "numpy"
    _ACTIVE = NUMPY_KERNELS

coin_shift = _ACTIVE["coin_shift"]
split_step = _ACTIVE["split_step"]
offdiag_abs_sum_rank2 = _ACTIVE["offdiag_abs_sum_rank2"]


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return ACTIVE_BACKEND
