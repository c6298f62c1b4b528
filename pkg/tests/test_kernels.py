import math
import os
import subprocess
import sys

import numpy as np
import pytest

from dtqw import kernels


def _random_pair(rng, n, margin=2):
    up = np.zeros(n, dtype=np.complex128)
    dn = np.zeros(n, dtype=np.complex128)
    up[margin:n - margin] = rng.normal(size=n - 2 * margin) + 1j * rng.normal(size=n - 2 * margin)
    dn[margin:n - margin] = rng.normal(size=n - 2 * margin) + 1j * rng.normal(size=n - 2 * margin)
    norm = math.sqrt(float(np.sum(np.abs(up) ** 2 + np.abs(dn) ** 2)))
    return up / norm, dn / norm


needs_numba = pytest.mark.skipif(
    kernels.NUMBA_KERNELS is None, reason="numba backend unavailable"
)


@needs_numba
def test_coin_shift_backends_bit_identical():
    rng = np.random.default_rng(4)
    for _ in range(20):
        n = int(rng.integers(8, 80))
        up, dn = _random_pair(rng, n)
        theta = rng.uniform(0, math.pi, n)
        c, s = np.cos(theta), np.sin(theta)
        a_up, a_dn = np.empty_like(up), np.empty_like(dn)
        b_up, b_dn = np.empty_like(up), np.empty_like(dn)
        assert kernels.NUMPY_KERNELS["coin_shift"](up, dn, c, s, a_up, a_dn) == 0
        assert kernels.NUMBA_KERNELS["coin_shift"](up, dn, c, s, b_up, b_dn) == 0
        np.testing.assert_array_equal(a_up, b_up)
        np.testing.assert_array_equal(a_dn, b_dn)


@needs_numba
def test_split_step_backends_bit_identical():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(8, 80))
        up, dn = _random_pair(rng, n)
        c1 = math.cos(rng.uniform(-5, 5))
        s1 = math.sqrt(1 - c1 * c1)
        theta2 = rng.uniform(0, math.pi, n)
        c2, s2 = np.cos(theta2), np.sin(theta2)
        a_up, a_dn = np.empty_like(up), np.empty_like(dn)
        b_up, b_dn = np.empty_like(up), np.empty_like(dn)
        assert kernels.NUMPY_KERNELS["split_step"](up, dn, c1, s1, c2, s2, a_up, a_dn) == 0
        assert kernels.NUMBA_KERNELS["split_step"](up, dn, c1, s1, c2, s2, b_up, b_dn) == 0
        np.testing.assert_array_equal(a_up, b_up)
        np.testing.assert_array_equal(a_dn, b_dn)


@needs_numba
def test_offdiag_backends_agree():
    rng = np.random.default_rng(6)
    for _ in range(20):
        n = int(rng.integers(4, 120))
        up, dn = _random_pair(rng, n, margin=1)
        a = kernels.NUMPY_KERNELS["offdiag_abs_sum_rank2"](up, dn)
        b = kernels.NUMBA_KERNELS["offdiag_abs_sum_rank2"](up, dn)
        assert abs(a - b) <= 1e-12 * max(a, 1.0)


def test_offdiag_matches_dense_double_sum():
    rng = np.random.default_rng(7)
    for _ in range(10):
        n = int(rng.integers(3, 40))
        up, dn = _random_pair(rng, n, margin=0)
        rho = np.outer(up, up.conj()) + np.outer(dn, dn.conj())
        a = np.abs(rho)
        expected = float(a.sum() - np.trace(a))
        got = kernels.offdiag_abs_sum_rank2(up, dn)
        assert abs(got - expected) < 1e-12


def test_boundary_status_codes():
    n = 5
    up = np.zeros(n, dtype=np.complex128)
    dn = np.zeros(n, dtype=np.complex128)
    up[0] = 1.0  # coin mixes it into both components at the left edge
    c = np.full(n, math.cos(0.3))
    s = np.full(n, math.sin(0.3))
    out_u, out_d = np.empty_like(up), np.empty_like(dn)
    for backend in (kernels.NUMPY_KERNELS, kernels.NUMBA_KERNELS or {}):
        if not backend:
            continue
        assert backend["coin_shift"](up, dn, c, s, out_u, out_d) == kernels.STEP_BOUNDARY_OVERFLOW

    dn2 = np.zeros(n, dtype=np.complex128)
    dn2[n - 1] = 1.0
    up2 = np.zeros(n, dtype=np.complex128)
    c1, s1 = math.cos(0.4), math.sin(0.4)
    for backend in (kernels.NUMPY_KERNELS, kernels.NUMBA_KERNELS or {}):
        if not backend:
            continue
        assert (
            backend["split_step"](up2, dn2, c1, s1, c, s, out_u, out_d)
            == kernels.STEP_BOUNDARY_OVERFLOW
        )


def test_amplitude_below_tolerance_may_touch_edge():
    n = 5
    up = np.zeros(n, dtype=np.complex128)
    dn = np.zeros(n, dtype=np.complex128)
    up[0] = 1e-15  # below BOUNDARY_TOL: dropped, not an error
    up[2] = 1.0
    c = np.full(n, 1.0)
    s = np.zeros(n)
    out_u, out_d = np.empty_like(up), np.empty_like(dn)
    assert kernels.coin_shift(up, dn, c, s, out_u, out_d) == kernels.STEP_OK
    assert out_u[1] == 1.0


def test_env_flag_forces_numpy_backend():
    env = dict(os.environ, DTQW_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "import dtqw; print(dtqw.active_backend())"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_active_backend_reports_selection():
    assert kernels.active_backend() in ("numba", "numpy")
    assert kernels.active_backend() == kernels.ACTIVE_BACKEND
