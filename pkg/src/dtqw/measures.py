"""Density matrices and scalar measures evaluated along a walk trajectory.

Everything here is a pure function of a WalkState or a density matrix.
Full-space density matrices (dimension 2N) are materialized only in tests
and oracles; the per-step record uses the rank-1 structure of a pure
state, so nothing larger than the N x N position reduction is ever formed
in the hot path, and that only implicitly inside the off-diagonal kernel.

Conventions fixed here and emitted in run metadata:

* l1 coherence is normalized by (dim - 1) of the matrix it is applied to:
  2N - 1 for the full state, N - 1 for the position reduction, 1 for the
  coin reduction.
* Entropies are base-2 (bits).
* The per-site interference vector mu holds, for each site, the absolute
  difference between the exact one-step probability influx and the
  incoherent (squared-coefficient) influx; the closed form for coin walks
  uses the angle of the source site (spatial disorder) or of the step
  being applied (temporal disorder).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from . import kernels
from .errors import (
    InvalidDimensionError,
    InvalidInputError,
    NumericalError,
)
from .walk import (
    Homogeneous,
    SpatialDisorder,
    SplitStep,
    TemporalDisorder,
    WalkSpec,
    WalkState,
    apply_split_step,
    split_step_tables,
)

EIGENVALUE_FLOOR = -1e-10
VARIANCE_FLOOR = -1e-12
PROB_SUM_TOL = 1e-8


def full_density(state: WalkState) -> np.ndarray:
    """Rank-1 projector |psi><psi| on the 2N-dimensional spin+site space.

    Basis order is spin-major: all up components, then all down.
    """
    v = state.flatten()
    return np.outer(v, v.conj())


def reduce_to_coin(state: WalkState) -> np.ndarray:
    """2x2 spin density matrix, site degrees summed out."""
    r00 = float(np.sum(state.up.real**2 + state.up.imag**2))
    r11 = float(np.sum(state.down.real**2 + state.down.imag**2))
    r01 = complex(np.sum(state.up * state.down.conj()))
    return np.array([[r00, r01], [r01.conjugate(), r11]], dtype=np.complex128)


def reduce_to_position(state: WalkState) -> np.ndarray:
    """N x N site density matrix, spin summed out (rank <= 2)."""
    return np.outer(state.up, state.up.conj()) + np.outer(
        state.down, state.down.conj()
    )


class CoherenceValue(NamedTuple):
    value: float
    normalization: float


def l1_coherence_normalized(rho: np.ndarray) -> CoherenceValue:
    """Sum of |rho_ij| over i != j, divided by (dim - 1).

    Returns the value together with the normalization constant actually
    used, so downstream artifacts can undo it.
    """
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidDimensionError(f"expected a square matrix, got shape {rho.shape}")
    dim = rho.shape[0]
    if dim < 2:
        raise InvalidDimensionError(f"coherence needs dim >= 2, got {dim}")
    a = np.abs(rho)
    offdiag = float(a.sum() - np.trace(a))
    return CoherenceValue(offdiag / (dim - 1), float(dim - 1))


def _pure_state_l1_normalized(state: WalkState) -> float:
    """l1 coherence of the full pure state via ((sum_i |psi_i|)^2 - 1) / (2N - 1)."""
    s = float(np.abs(state.up).sum() + np.abs(state.down).sum())
    dim = 2 * state.lattice.site_count
    raw = (s * s - 1.0) / (dim - 1)
    if raw < -1e-10:
        raise NumericalError(f"pure-state coherence shortcut produced {raw!r}")
    return max(raw, 0.0)


def _entropy_bits(eigenvalues: np.ndarray) -> float:
    w = np.asarray(eigenvalues, dtype=np.float64)
    if w.min(initial=0.0) < EIGENVALUE_FLOOR:
        raise NumericalError(
            f"eigenvalue {w.min()} below tolerance {EIGENVALUE_FLOOR}; "
            f"matrix is not a density matrix"
        )
    w = np.clip(w, 0.0, 1.0)
    w = w[w > 0.0]
    if w.size == 0:
        return 0.0
    return float(-np.sum(w * np.log2(w)))


def von_neumann_entropy(rho: np.ndarray) -> float:
    """S(rho) = -Tr rho log2 rho in bits; eigenvalues clipped to [0, 1]."""
    w = np.linalg.eigvalsh(np.asarray(rho))
    return _entropy_bits(w)


def entanglement(state: WalkState) -> float:
    """Spin-site entanglement entropy: S of the coin reduction, in bits."""
    return von_neumann_entropy(reduce_to_coin(state))


def relative_entropy_coherence(rho: np.ndarray) -> float:
    """S(diag(rho)) - S(rho) in bits."""
    rho = np.asarray(rho)
    diag_entropy = _entropy_bits(rho.diagonal().real)
    return diag_entropy - von_neumann_entropy(rho)


class CorrelatedCoherence(NamedTuple):
    value: float
    raw: float


def correlated_coherence(rho_c: np.ndarray) -> CorrelatedCoherence:
    """S(diag) minus unnormalized l1 coherence of a 2x2 spin state.

    The raw difference can round below zero for near-pure states; the
    clamped value is the one plotted, the raw one is kept for audit.
    """
    rho_c = np.asarray(rho_c)
    if rho_c.shape != (2, 2):
        raise InvalidDimensionError(
            f"correlated coherence is defined on 2x2 spin states, got {rho_c.shape}"
        )
    c_l1 = abs(rho_c[0, 1]) + abs(rho_c[1, 0])
    raw = _entropy_bits(rho_c.diagonal().real) - c_l1
    return CorrelatedCoherence(max(raw, 0.0), raw)


def _pad_difference(g: np.ndarray) -> np.ndarray:
    """|g[i+1] - g[i-1]| with out-of-range neighbors contributing zero."""
    padded = np.zeros(g.shape[0] + 2, dtype=np.float64)
    padded[1:-1] = g
    return np.abs(padded[2:] - padded[:-2])


def degree_of_interference(
    state: WalkState, angles: Union[float, np.ndarray]
) -> np.ndarray:
    """Per-site interference magnitude for the coin-shift walk.

    ``angles`` is either the single coin angle of the step being applied
    or a per-site table; in both cases the contribution flowing into site
    i from site i+-1 carries that source site's angle.
    """
    angles = np.asarray(angles, dtype=np.float64)
    if angles.ndim not in (0, 1):
        raise InvalidInputError(f"angles must be a scalar or 1D table, got ndim {angles.ndim}")
    if angles.ndim == 1 and angles.shape[0] != state.lattice.site_count:
        raise InvalidInputError(
            f"angle table has {angles.shape[0]} entries for a lattice of "
            f"{state.lattice.site_count} sites"
        )
    cross = (state.up * state.down.conj()).real
    g = 2.0 * np.cos(angles) * np.sin(angles) * cross
    return _pad_difference(g)


def degree_of_interference_split_step(
    state: WalkState, spec: SplitStep
) -> np.ndarray:
    """Exact minus incoherent one-step probability influx, per site.

    The incoherent influx propagates the current per-(spin, site)
    populations with the squares of the one-step amplitudes; every
    (source, target) pair is connected by at most one path, so this is
    the classical part of the update exactly.  Applying the exact step
    needs one site of headroom, so the lattice must be at least one site
    wider than the current support.
    """
    p_exact = apply_split_step(state, spec).probability()

    c1, s1, cos2_x, sin2_x = split_step_tables(spec, state.lattice)
    c1sq, s1sq = c1 * c1, s1 * s1
    cos2sq, sin2sq = cos2_x * cos2_x, sin2_x * sin2_x
    pop_up = state.up.real**2 + state.up.imag**2
    pop_down = state.down.real**2 + state.down.imag**2

    a_up = c1sq * pop_up + s1sq * pop_down
    a_down = s1sq * pop_up + c1sq * pop_down
    m_up = np.zeros_like(a_up)
    m_up[:-1] = a_up[1:]
    b_up = cos2sq * m_up + sin2sq * a_down
    b_down = sin2sq * m_up + cos2sq * a_down
    p_classical = b_up.copy()
    p_classical[1:] += b_down[:-1]

    return np.abs(p_exact - p_classical)


def std_dev(prob: np.ndarray, positions: Sequence[int] = None) -> float:
    """Standard deviation of the site coordinate under ``prob``.

    With ``positions`` omitted the vector is taken to live on a symmetric
    lattice centered at 0 (odd length required).
    """
    prob = np.asarray(prob, dtype=np.float64)
    if positions is None:
        if prob.shape[0] % 2 == 0:
            raise InvalidInputError(
                "cannot infer positions for an even-length probability vector"
            )
        half = prob.shape[0] // 2
        positions = np.arange(-half, half + 1)
    x = np.asarray(positions, dtype=np.float64)
    total = float(prob.sum())
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise InvalidInputError(f"probabilities sum to {total!r}, expected 1")
    mean = float(np.dot(x, prob))
    variance = float(np.dot(x * x, prob)) - mean * mean
    if variance < VARIANCE_FLOOR:
        raise NumericalError(f"variance {variance!r} below tolerance {VARIANCE_FLOOR}")
    return math.sqrt(max(variance, 0.0))


def localization_indicator(i_p_trajectory: Sequence[float]) -> float:
    """1 - max of a position-coherence trajectory; 1 means never delocalized."""
    values = np.asarray(list(i_p_trajectory), dtype=np.float64)
    if values.size == 0:
        raise InvalidInputError("localization indicator needs a nonempty trajectory")
    return float(1.0 - values.max())


@dataclass
class MeasureRecord:
    """All per-step measures bundled, as written to the measures table."""

    t: int
    I_full: float
    I_p: float
    I_c: float
    E: float
    C_r: float
    I_cc_raw: float
    I_cc: float
    sigma: float
    prob: np.ndarray
    mu: np.ndarray


def _mu_for(state: WalkState, t: int, spec: WalkSpec) -> np.ndarray:
    if isinstance(spec, Homogeneous):
        return degree_of_interference(state, spec.theta)
    if isinstance(spec, SpatialDisorder):
        return degree_of_interference(state, spec.theta_x)
    if isinstance(spec, TemporalDisorder):
        if t < 0 or t >= spec.theta_t.shape[0]:
            raise InvalidInputError(
                f"mu at step {t} needs theta_t[{t}] but the table has "
                f"{spec.theta_t.shape[0]} entries"
            )
        return degree_of_interference(state, float(spec.theta_t[t]))
    if isinstance(spec, SplitStep):
        return degree_of_interference_split_step(state, spec)
    raise InvalidInputError(f"unsupported walk spec {type(spec).__name__}")


def measure_record(state: WalkState, t: int, spec: WalkSpec) -> MeasureRecord:
    """Evaluate every measure on one state.

    mu follows the step about to be applied (angle index t for temporal
    disorder, one exact extra step for the split-step walk).
    """
    n = state.lattice.site_count
    prob = state.probability()
    i_full = _pure_state_l1_normalized(state)
    i_p = kernels.offdiag_abs_sum_rank2(state.up, state.down) / (n - 1)
    rho_c = reduce_to_coin(state)
    i_c = abs(rho_c[0, 1]) + abs(rho_c[1, 0])
    e = von_neumann_entropy(rho_c)
    c_r = relative_entropy_coherence(rho_c)
    i_cc, i_cc_raw = correlated_coherence(rho_c)
    sigma = std_dev(prob, state.lattice.positions())
    mu = _mu_for(state, t, spec)
    return MeasureRecord(
        t=t,
        I_full=i_full,
        I_p=float(i_p),
        I_c=float(i_c),
        E=e,
        C_r=c_r,
        I_cc_raw=i_cc_raw,
        I_cc=i_cc,
        sigma=sigma,
        prob=prob,
        mu=mu,
    )
