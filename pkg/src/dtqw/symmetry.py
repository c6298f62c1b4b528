"""Dense one-step unitaries on a periodic lattice and chirality checks.

The matrices here are assembled site-by-site from the 2x2 coin and
rotation blocks, deliberately sharing no code with the fast stepper
kernels: wherever no amplitude crosses the boundary the two must agree,
which makes this module the reference oracle for the stepper.

Periodic wrap is used only here.  It keeps the finite matrix exactly
unitary, which the operator identities below require; production dynamics
never wrap.

Basis order is spin-major: index i is (up, site i), index N + i is
(down, site i).
"""

from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from .errors import InvalidInputError, NumericalError
from .walk import (
    Homogeneous,
    Lattice,
    SpatialDisorder,
    SplitStep,
    TemporalDisorder,
    WalkSpec,
    coin_matrix,
    rotation_matrix,
)

CHIRAL_TOL = 1e-10


def _embed_spin_blocks(blocks: np.ndarray) -> np.ndarray:
    """Block-diagonal-over-sites operator from per-site 2x2 blocks (n, 2, 2)."""
    n = blocks.shape[0]
    m = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    idx = np.arange(n)
    m[idx, idx] = blocks[:, 0, 0]
    m[idx, n + idx] = blocks[:, 0, 1]
    m[n + idx, idx] = blocks[:, 1, 0]
    m[n + idx, n + idx] = blocks[:, 1, 1]
    return m


def _shift_up_left(n: int) -> np.ndarray:
    s = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    for i in range(n):
        s[(i - 1) % n, i] = 1.0
        s[n + i, n + i] = 1.0
    return s


def _shift_down_right(n: int) -> np.ndarray:
    s = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    for i in range(n):
        s[i, i] = 1.0
        s[n + (i + 1) % n, n + i] = 1.0
    return s


def build_step_unitary(
    spec: WalkSpec, lattice: Lattice, t: int = 0
) -> np.ndarray:
    """Dense 2N x 2N one-step operator with periodic wrap at the edges.

    Matches the fast stepper on any state whose amplitude stays off the
    boundary for the step.  ``t`` selects the angle for temporal
    disorder; other variants ignore it.
    """
    n = lattice.site_count
    if isinstance(spec, SplitStep):
        r1 = _embed_spin_blocks(
            np.broadcast_to(rotation_matrix(spec.theta1), (n, 2, 2))
        )
        theta2 = np.where(
            lattice.positions() < spec.interface,
            spec.theta2_minus,
            spec.theta2_plus,
        )
        r2 = _embed_spin_blocks(
            np.stack([rotation_matrix(th) for th in theta2])
        )
        return _shift_down_right(n) @ r2 @ _shift_up_left(n) @ r1

    if isinstance(spec, Homogeneous):
        thetas = np.full(n, spec.theta)
    elif isinstance(spec, SpatialDisorder):
        if spec.theta_x.shape[0] != n:
            raise InvalidInputError(
                f"theta_x has {spec.theta_x.shape[0]} entries for {n} sites"
            )
        thetas = spec.theta_x
    elif isinstance(spec, TemporalDisorder):
        if t < 0 or t >= spec.theta_t.shape[0]:
            raise InvalidInputError(
                f"step {t} outside theta_t table of length {spec.theta_t.shape[0]}"
            )
        thetas = np.full(n, float(spec.theta_t[t]))
    else:
        raise InvalidInputError(f"unsupported walk spec {type(spec).__name__}")

    coin = _embed_spin_blocks(np.stack([coin_matrix(th) for th in thetas]))
    shift = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    for i in range(n):
        shift[(i - 1) % n, i] = 1.0
        shift[n + (i + 1) % n, n + i] = 1.0
    return shift @ coin


def chiral_operator(lattice: Lattice) -> np.ndarray:
    """Spin flip extended by the identity on sites: swaps the up/down blocks."""
    n = lattice.site_count
    gamma = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    idx = np.arange(n)
    gamma[idx, n + idx] = 1.0
    gamma[n + idx, idx] = 1.0
    return gamma


def unitarity_residual(w: np.ndarray) -> float:
    """max |W^dag W - I|."""
    w = np.asarray(w)
    eye = np.eye(w.shape[0], dtype=w.dtype)
    return float(np.max(np.abs(w.conj().T @ w - eye)))


class ChiralityResidual(NamedTuple):
    vs_inverse: float
    vs_identity: float

    @property
    def symmetric(self) -> bool:
        return self.vs_inverse < CHIRAL_TOL


def chirality_residual(w: np.ndarray, gamma: Optional[np.ndarray] = None) -> ChiralityResidual:
    """How far conjugating W by the spin flip is from inverting it.

    Returns both max-norm residuals ``|gamma W gamma - W^dag|`` and
    ``|gamma W gamma W - I|``.  They vanish together; their verdicts at
    CHIRAL_TOL are required to agree, the raw magnitudes away from zero
    need not.
    """
    w = np.asarray(w)
    if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] % 2:
        raise InvalidInputError(f"expected a 2N x 2N matrix, got shape {w.shape}")
    if unitarity_residual(w) > CHIRAL_TOL:
        raise InvalidInputError("chirality residual is defined for unitary W only")
    if gamma is None:
        n = w.shape[0] // 2
        gamma = np.zeros_like(w)
        idx = np.arange(n)
        gamma[idx, n + idx] = 1.0
        gamma[n + idx, idx] = 1.0
    conjugated = gamma @ w @ gamma
    vs_inverse = float(np.max(np.abs(conjugated - w.conj().T)))
    vs_identity = float(np.max(np.abs(conjugated @ w - np.eye(w.shape[0]))))
    if (vs_inverse < CHIRAL_TOL) != (vs_identity < CHIRAL_TOL):
        raise NumericalError(
            f"residual formulations disagree: {vs_inverse!r} vs {vs_identity!r}"
        )
    return ChiralityResidual(vs_inverse, vs_identity)


def _residual_entry(spec: WalkSpec, lattice: Lattice, t: int) -> dict:
    w = build_step_unitary(spec, lattice, t)
    res = chirality_residual(w, chiral_operator(lattice))
    return {
        "vs_inverse": res.vs_inverse,
        "vs_identity": res.vs_identity,
        "symmetric": res.symmetric,
    }


def chirality_report(spec: WalkSpec, lattice: Lattice, t: int = 0) -> dict:
    """JSON-ready summary: unitarity, realness, and chirality residuals.

    For a split-step spec with distinct side angles the report adds the
    two bulk-homogeneous walks (each side's angle applied everywhere):
    the symmetry statement concerns a homogeneous bulk, while the full
    operator mixes both sides at the interface.
    """
    variant_names = {
        Homogeneous: "homogeneous",
        SpatialDisorder: "spatial-disorder",
        TemporalDisorder: "temporal-disorder",
        SplitStep: "split-step",
    }
    w = build_step_unitary(spec, lattice, t)
    report = {
        "variant": variant_names.get(type(spec), type(spec).__name__),
        "half_width": lattice.half_width,
        "site_count": lattice.site_count,
        "unitarity_residual": unitarity_residual(w),
        "max_imag_entry": float(np.max(np.abs(w.imag))),
        "full": _residual_entry(spec, lattice, t),
    }
    if isinstance(spec, Homogeneous):
        report["theta"] = spec.theta
    elif isinstance(spec, SplitStep):
        report.update(
            theta1=spec.theta1,
            theta2_minus=spec.theta2_minus,
            theta2_plus=spec.theta2_plus,
            interface=spec.interface,
        )
        if spec.theta2_minus != spec.theta2_plus:
            report["bulk_minus"] = _residual_entry(
                SplitStep(spec.theta1, spec.theta2_minus, spec.theta2_minus),
                lattice,
                t,
            )
            report["bulk_plus"] = _residual_entry(
                SplitStep(spec.theta1, spec.theta2_plus, spec.theta2_plus),
                lattice,
                t,
            )
    return report
