"""Discrete-time walk of a two-level particle on a finite 1D lattice.

A walk state assigns a complex amplitude to every (spin, site) pair.  One
step of the basic walk applies a real 2x2 coin to the spin at every site
and then shifts spin-up amplitude one site left and spin-down amplitude
one site right.  The split-step walk interleaves two half-angle rotations
with two one-sided shifts and supports a different second angle on each
side of an interface site.

The lattice is hard-walled: amplitude that would leave it is an error,
never wrapped or absorbed.  Sizing the lattice to at least the number of
steps guarantees this cannot happen (the walker moves at most one site
per step).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from . import kernels
from .errors import (
    AngleTableError,
    BoundaryOverflowError,
    InvalidParameterError,
    LatticeTooSmallError,
    NumericalError,
)

NORM_TOL = 1e-10


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InvalidParameterError(f"{name} must be a finite real, got {value!r}")


def coin_matrix(theta: float) -> np.ndarray:
    """Return the 2x2 coin [[cos t, sin t], [sin t, -cos t]].

    Unitary and Hermitian for any real angle.
    """
    _require_finite("theta", theta)
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


def rotation_matrix(theta: float) -> np.ndarray:
    """Return the half-angle rotation [[cos t/2, sin t/2], [sin t/2, -cos t/2]].

    The split-step walk composes two of these per step; note the half
    angle, which makes rotation_matrix(t) == coin_matrix(t/2).
    """
    _require_finite("theta", theta)
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


@dataclass(frozen=True)
class Lattice:
    """Symmetric site range {-half_width, ..., +half_width}.

    Parameters
    ----------
    half_width : int
        Number of sites on each side of the origin; the site count
        ``2 * half_width + 1`` is always odd and the origin sits at
        array index ``half_width``.
    """

    half_width: int

    def __post_init__(self):
        if isinstance(self.half_width, bool) or not isinstance(
            self.half_width, (int, np.integer)
        ):
            raise InvalidParameterError(
                f"half_width must be an integer, got {type(self.half_width).__name__}"
            )
        if self.half_width < 1:
            raise InvalidParameterError(
                f"half_width must be >= 1, got {self.half_width}"
            )

    @property
    def site_count(self) -> int:
        return 2 * self.half_width + 1

    def positions(self) -> np.ndarray:
        """Site coordinates in index order, -half_width .. +half_width."""
        return np.arange(-self.half_width, self.half_width + 1)

    def index_of(self, x: int) -> int:
        if abs(x) > self.half_width:
            raise InvalidParameterError(
                f"site {x} outside lattice of half-width {self.half_width}"
            )
        return x + self.half_width


@dataclass(frozen=True)
class InitialCoinState:
    """Normalized spin amplitudes (alpha |up> + beta |down>) at the origin."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        for name, v in (("alpha", self.alpha), ("beta", self.beta)):
            if not cmath.isfinite(complex(v)):
                raise InvalidParameterError(f"{name} must be finite, got {v!r}")
        n = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(n - 1.0) > 1e-12:
            raise InvalidParameterError(
                f"|alpha|^2 + |beta|^2 must be 1 within 1e-12, got {n!r}"
            )


@dataclass(frozen=True)
class Homogeneous:
    """Same coin angle at every site and step."""

    theta: float

    def __post_init__(self):
        _require_finite("theta", self.theta)


@dataclass(frozen=True, eq=False)
class SpatialDisorder:
    """One coin angle per lattice site, fixed in time.

    The table length must equal the site count of the lattice the walk
    runs on; entry i is the angle at site ``i - half_width``.
    """

    theta_x: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.theta_x, dtype=np.float64)
        if table.ndim != 1 or table.shape[0] == 0:
            raise AngleTableError("theta_x must be a nonempty 1D angle table")
        if not np.all(np.isfinite(table)):
            raise AngleTableError("theta_x contains non-finite angles")
        object.__setattr__(self, "theta_x", table)


@dataclass(frozen=True, eq=False)
class TemporalDisorder:
    """One coin angle per time step, uniform across the lattice.

    Entry t is consumed by the step taking the state from time t to t+1,
    so the table must be at least as long as the number of steps run.
    """

    theta_t: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.theta_t, dtype=np.float64)
        if table.ndim != 1 or table.shape[0] == 0:
            raise AngleTableError("theta_t must be a nonempty 1D angle table")
        if not np.all(np.isfinite(table)):
            raise AngleTableError("theta_t contains non-finite angles")
        object.__setattr__(self, "theta_t", table)


@dataclass(frozen=True)
class SplitStep:
    """Two-rotation walk with a side-dependent second angle.

    One step applies, in order: a uniform half-angle rotation by theta1,
    a left shift of the spin-up component, a second half-angle rotation
    whose angle is theta2_minus at sites x < interface and theta2_plus at
    x >= interface, and a right shift of the spin-down component.
    """

    theta1: float
    theta2_minus: float
    theta2_plus: float
    interface: int = 0

    def __post_init__(self):
        _require_finite("theta1", self.theta1)
        _require_finite("theta2_minus", self.theta2_minus)
        _require_finite("theta2_plus", self.theta2_plus)
        if isinstance(self.interface, bool) or not isinstance(
            self.interface, (int, np.integer)
        ):
            raise InvalidParameterError("interface must be an integer site coordinate")


WalkSpec = Union[Homogeneous, SpatialDisorder, TemporalDisorder, SplitStep]


@dataclass
class WalkState:
    """Spin-resolved amplitude field over a lattice at one time.

    Attributes
    ----------
    lattice : Lattice
    up, down : numpy.ndarray
        Complex amplitude per site for each spin component, in lattice
        index order.
    t : int
        Number of steps applied since the initial state.
    """

    lattice: Lattice
    up: np.ndarray
    down: np.ndarray
    t: int = 0

    def probability(self) -> np.ndarray:
        """Per-site probability |up|^2 + |down|^2."""
        return (
            self.up.real**2
            + self.up.imag**2
            + self.down.real**2
            + self.down.imag**2
        )

    def norm_sq(self) -> float:
        return float(self.probability().sum())

    def flatten(self) -> np.ndarray:
        """Spin-major vector (all up amplitudes, then all down)."""
        return np.concatenate([self.up, self.down])


def initial_state(lattice: Lattice, coin: InitialCoinState) -> WalkState:
    """Product state: the given spin amplitudes localized at x = 0."""
    n = lattice.site_count
    up = np.zeros(n, dtype=np.complex128)
    down = np.zeros(n, dtype=np.complex128)
    origin = lattice.index_of(0)
    up[origin] = complex(coin.alpha)
    down[origin] = complex(coin.beta)
    return WalkState(lattice, up, down, 0)


def _check_norm(state: WalkState) -> None:
    n = state.norm_sq()
    if abs(n - 1.0) > NORM_TOL:
        raise NumericalError(
            f"norm drifted to {n!r} at step {state.t} (tolerance {NORM_TOL})"
        )


def _coin_tables(
    spec: WalkSpec, lattice: Lattice, t: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Per-site cos/sin arrays for the coin applied by step t."""
    n = lattice.site_count
    if isinstance(spec, Homogeneous):
        return (
            np.full(n, math.cos(spec.theta)),
            np.full(n, math.sin(spec.theta)),
        )
    if isinstance(spec, SpatialDisorder):
        if spec.theta_x.shape[0] != n:
            raise AngleTableError(
                f"theta_x has {spec.theta_x.shape[0]} entries for a lattice "
                f"of {n} sites"
            )
        return np.cos(spec.theta_x), np.sin(spec.theta_x)
    if isinstance(spec, TemporalDisorder):
        if t < 0 or t >= spec.theta_t.shape[0]:
            raise AngleTableError(
                f"step {t} has no entry in a theta_t table of length "
                f"{spec.theta_t.shape[0]}"
            )
        theta = float(spec.theta_t[t])
        return np.full(n, math.cos(theta)), np.full(n, math.sin(theta))
    raise InvalidParameterError(f"unsupported walk spec {type(spec).__name__}")


def split_step_tables(
    spec: SplitStep, lattice: Lattice
) -> Tuple[float, float, np.ndarray, np.ndarray]:
    """(cos, sin) of theta1/2 and per-site (cos, sin) of theta2(x)/2."""
    c1 = math.cos(spec.theta1 / 2.0)
    s1 = math.sin(spec.theta1 / 2.0)
    theta2 = np.where(
        lattice.positions() < spec.interface, spec.theta2_minus, spec.theta2_plus
    )
    return c1, s1, np.cos(theta2 / 2.0), np.sin(theta2 / 2.0)


def apply_step(state: WalkState, spec: WalkSpec, t: Optional[int] = None) -> WalkState:
    """Advance one step; t selects the temporal-disorder angle (default state.t)."""
    if isinstance(spec, SplitStep):
        return apply_split_step(state, spec)
    step_index = state.t if t is None else t
    cos_x, sin_x = _coin_tables(spec, state.lattice, step_index)
    out_up = np.empty_like(state.up)
    out_down = np.empty_like(state.down)
    status = kernels.coin_shift(state.up, state.down, cos_x, sin_x, out_up, out_down)
    if status != kernels.STEP_OK:
        raise BoundaryOverflowError(
            f"amplitude above {kernels.BOUNDARY_TOL} would leave the lattice "
            f"at step {state.t}"
        )
    new = WalkState(state.lattice, out_up, out_down, state.t + 1)
    _check_norm(new)
    return new


def apply_split_step(state: WalkState, spec: SplitStep) -> WalkState:
    c1, s1, cos2_x, sin2_x = split_step_tables(spec, state.lattice)
    out_up = np.empty_like(state.up)
    out_down = np.empty_like(state.down)
    status = kernels.split_step(
        state.up, state.down, c1, s1, cos2_x, sin2_x, out_up, out_down
    )
    if status != kernels.STEP_OK:
        raise BoundaryOverflowError(
            f"amplitude above {kernels.BOUNDARY_TOL} would leave the lattice "
            f"at step {state.t}"
        )
    new = WalkState(state.lattice, out_up, out_down, state.t + 1)
    _check_norm(new)
    return new


def _validate_run(spec: WalkSpec, steps: int, lattice: Lattice) -> None:
    if steps < 0:
        raise InvalidParameterError(f"steps must be >= 0, got {steps}")
    if lattice.half_width < steps:
        raise LatticeTooSmallError(
            f"half_width {lattice.half_width} < steps {steps}; the walker "
            f"could reach the boundary"
        )
    if isinstance(spec, SpatialDisorder) and spec.theta_x.shape[0] != lattice.site_count:
        raise AngleTableError(
            f"theta_x has {spec.theta_x.shape[0]} entries for a lattice of "
            f"{lattice.site_count} sites"
        )
    if isinstance(spec, TemporalDisorder) and spec.theta_t.shape[0] < steps:
        raise AngleTableError(
            f"theta_t has {spec.theta_t.shape[0]} entries but {steps} steps requested"
        )


def iter_states(
    initial: InitialCoinState,
    spec: WalkSpec,
    steps: int,
    lattice: Optional[Lattice] = None,
) -> Iterator[WalkState]:
    """Yield the trajectory lazily, t = 0 ... steps.

    The default lattice has half_width = steps, the smallest size that
    provably avoids boundary contact.
    """
    if lattice is None:
        lattice = Lattice(max(steps, 1))
    _validate_run(spec, steps, lattice)
    state = initial_state(lattice, initial)
    yield state
    for t in range(steps):
        state = apply_step(state, spec, t)
        yield state


def evolve(
    initial: InitialCoinState,
    spec: WalkSpec,
    steps: int,
    lattice: Optional[Lattice] = None,
) -> List[WalkState]:
    """Full trajectory as a list; element 0 is the initial product state."""
    return list(iter_states(initial, spec, steps, lattice))
