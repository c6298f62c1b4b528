"""Self-contained invariant and oracle checks, runnable via the CLI.

Each check re-derives an expected result through an independent route
(dense matrices, closed-form recursions, brute-force partial traces) and
compares it against the production path.  ``verify()`` runs them all and
returns one result per check; the CLI turns that into a table and an
exit code.

Checks accept their tolerances as defaults so tests can tighten them,
and the probability-decomposition check accepts an injectable stepper so
a deliberately broken walk can be shown to fail it.
"""

from __future__ import annotations

import math
from typing import Callable, List, NamedTuple, Optional

import numpy as np

from . import measures, symmetry, walk
from .ensemble import sample_spatial_angles, sample_temporal_angles
from .walk import (
    Homogeneous,
    InitialCoinState,
    Lattice,
    SpatialDisorder,
    SplitStep,
    TemporalDisorder,
    WalkState,
    apply_step,
    initial_state,
    iter_states,
)

SYMMETRIC = InitialCoinState(1 / math.sqrt(2), 1j / math.sqrt(2))
EQUAL = InitialCoinState(1 / math.sqrt(2), 1 / math.sqrt(2))

_SS_PARAMS = (
    (math.pi / 2, -math.pi / 4, math.pi / 4),
    (math.pi / 2, -3 * math.pi / 4, 3 * math.pi / 4),
    (-3 * math.pi / 2, 5 * math.pi / 4, 3 * math.pi / 4),
    (-3 * math.pi / 2, -math.pi, math.pi),
)


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def _random_state(lattice: Lattice, rng, margin: int) -> WalkState:
    """Normalized random state with zero amplitude within ``margin`` of the edge."""
    n = lattice.site_count
    up = np.zeros(n, dtype=np.complex128)
    down = np.zeros(n, dtype=np.complex128)
    lo, hi = margin, n - margin
    up[lo:hi] = rng.normal(size=hi - lo) + 1j * rng.normal(size=hi - lo)
    down[lo:hi] = rng.normal(size=hi - lo) + 1j * rng.normal(size=hi - lo)
    norm = math.sqrt(float(np.sum(np.abs(up) ** 2 + np.abs(down) ** 2)))
    return WalkState(lattice, up / norm, down / norm, 0)


def _specs_for(lattice: Lattice, rng):
    return (
        Homogeneous(0.7),
        SpatialDisorder(rng.uniform(0.0, math.pi, lattice.site_count)),
        TemporalDisorder(rng.uniform(0.0, math.pi, 4)),
        SplitStep(0.9, -0.3, 1.1),
    )


def check_stepper_vs_dense(tol: float = 1e-12) -> CheckResult:
    """Fast stepper == dense periodic one-step matrix on interior states."""
    lattice = Lattice(4)
    rng = np.random.default_rng(7)
    worst = 0.0
    for spec in _specs_for(lattice, rng):
        w = symmetry.build_step_unitary(spec, lattice, t=0)
        for _ in range(100):
            state = _random_state(lattice, rng, margin=2)
            stepped = apply_step(state, spec, t=0)
            expected = w @ state.flatten()
            dev = float(np.max(np.abs(stepped.flatten() - expected)))
            worst = max(worst, dev)
    return CheckResult(
        "stepper-vs-dense-unitary", worst < tol, f"max deviation {worst:.3e}"
    )


def check_recursion_equivalence(tol: float = 1e-14) -> CheckResult:
    """Coin-then-shift equals the site-angle recursion written out directly:

    up'(x) = cos(t[x+1]) up(x+1) + sin(t[x+1]) down(x+1)
    down'(x) = sin(t[x-1]) up(x-1) - cos(t[x-1]) down(x-1)
    """
    rng = np.random.default_rng(11)
    lattice = Lattice(10)
    table = rng.uniform(0.0, math.pi, lattice.site_count)
    state = _random_state(lattice, rng, margin=2)
    stepped = apply_step(state, SpatialDisorder(table), t=0)

    c, s = np.cos(table), np.sin(table)
    up2 = np.zeros_like(state.up)
    down2 = np.zeros_like(state.down)
    up2[:-1] = c[1:] * state.up[1:] + s[1:] * state.down[1:]
    down2[1:] = s[:-1] * state.up[:-1] - c[:-1] * state.down[:-1]
    dev = float(
        max(np.max(np.abs(stepped.up - up2)), np.max(np.abs(stepped.down - down2)))
    )
    return CheckResult("recursion-equivalence", dev < tol, f"max deviation {dev:.3e}")


def check_partial_trace_consistency(tol: float = 1e-12) -> CheckResult:
    """Direct coin/position reductions match partial traces of the full projector."""
    worst = 0.0
    for state in iter_states(SYMMETRIC, Homogeneous(math.pi / 4), 10, Lattice(10)):
        n = state.lattice.site_count
        rho = measures.full_density(state)
        blocks = rho.reshape(2, n, 2, n)
        rho_c = blocks.trace(axis1=1, axis2=3)
        rho_p = blocks.trace(axis1=0, axis2=2)
        worst = max(
            worst,
            float(np.max(np.abs(rho_c - measures.reduce_to_coin(state)))),
            float(np.max(np.abs(rho_p - measures.reduce_to_position(state)))),
        )
    return CheckResult(
        "partial-trace-consistency", worst < tol, f"max deviation {worst:.3e}"
    )


def check_probability_decomposition(
    stepper: Optional[Callable[[WalkState], WalkState]] = None,
    tol: float = 1e-12,
    steps: int = 50,
) -> CheckResult:
    """P(x, t+1) == incoherent transfer + signed interference term, every step.

    With theta the coin angle, c = cos, s = sin, the next probability at
    each site decomposes exactly as
    c^2 P_up(x+1) + s^2 P_down(x+1) + s^2 P_up(x-1) + c^2 P_down(x-1)
    + [g(x+1) - g(x-1)] with g = 2 c s Re(up conj(down)), and mu = |g(x+1)-g(x-1)|.
    An alternative stepper can be injected to demonstrate the check has teeth.
    """
    theta = math.pi / 4
    spec = Homogeneous(theta)
    if stepper is None:
        stepper = lambda st: apply_step(st, spec)
    c2, s2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    state = initial_state(Lattice(steps + 1), SYMMETRIC)
    worst = 0.0
    for _ in range(steps):
        pop_up = np.abs(state.up) ** 2
        pop_down = np.abs(state.down) ** 2
        incoherent = np.zeros_like(pop_up)
        incoherent[:-1] += c2 * pop_up[1:] + s2 * pop_down[1:]
        incoherent[1:] += s2 * pop_up[:-1] + c2 * pop_down[:-1]
        g = 2 * math.cos(theta) * math.sin(theta) * (state.up * state.down.conj()).real
        signed = np.zeros_like(g)
        signed[:-1] += g[1:]
        signed[1:] -= g[:-1]
        mu = measures.degree_of_interference(state, theta)
        state = stepper(state)
        worst = max(
            worst,
            float(np.max(np.abs(state.probability() - (incoherent + signed)))),
            float(np.max(np.abs(mu - np.abs(signed)))),
        )
    return CheckResult(
        "probability-decomposition", worst < tol, f"max deviation {worst:.3e}"
    )


def check_split_step_classical_transfer(tol: float = 1e-12) -> CheckResult:
    """Split-step mu == |exact - elementwise-squared-matrix| one-step influx."""
    lattice = Lattice(6)
    rng = np.random.default_rng(23)
    worst = 0.0
    for theta1, theta2_minus, theta2_plus in _SS_PARAMS:
        spec = SplitStep(theta1, theta2_minus, theta2_plus)
        w = symmetry.build_step_unitary(spec, lattice)
        w2 = np.abs(w) ** 2
        for _ in range(25):
            state = _random_state(lattice, rng, margin=2)
            pops = np.abs(state.flatten()) ** 2
            out = w2 @ pops
            n = lattice.site_count
            p_classical = out[:n] + out[n:]
            p_exact = walk.apply_split_step(state, spec).probability()
            mu = measures.degree_of_interference_split_step(state, spec)
            dev = float(np.max(np.abs(mu - np.abs(p_exact - p_classical))))
            worst = max(worst, dev)
    return CheckResult(
        "split-step-classical-transfer", worst < tol, f"max deviation {worst:.3e}"
    )


def check_coherence_shortcut(tol: float = 1e-12) -> CheckResult:
    """Rank-1 shortcut for full-state l1 coherence equals the double sum."""
    worst = 0.0
    for state in iter_states(SYMMETRIC, Homogeneous(math.pi / 4), 12, Lattice(12)):
        direct = measures.l1_coherence_normalized(measures.full_density(state)).value
        fast = measures.measure_record(state, state.t, Homogeneous(math.pi / 4)).I_full
        worst = max(worst, abs(direct - fast))
    return CheckResult("coherence-shortcut", worst < tol, f"max deviation {worst:.3e}")


def _trajectory_specs(steps: int):
    yield "hqw", SYMMETRIC, Homogeneous(math.pi / 4), Lattice(steps)
    for i in range(3):
        lattice = Lattice(steps)
        yield (
            f"sqw-{i}",
            SYMMETRIC,
            SpatialDisorder(sample_spatial_angles(100 + i, lattice)),
            lattice,
        )
        yield (
            f"tqw-{i}",
            SYMMETRIC,
            TemporalDisorder(sample_temporal_angles(200 + i, steps + 1)),
            Lattice(steps),
        )
    for k, params in enumerate(_SS_PARAMS):
        yield f"ss-{k}", EQUAL, SplitStep(*params), Lattice(steps + 1)


def check_inequality_chain(tol: float = 1e-10, steps: int = 100) -> CheckResult:
    """On every sampled coin state: C_l1 >= C_r and E >= S(diag) - C_l1."""
    violations = 0
    count = 0
    for _, initial, spec, lattice in _trajectory_specs(steps):
        for state in iter_states(initial, spec, steps, lattice):
            rho_c = measures.reduce_to_coin(state)
            c_l1 = abs(rho_c[0, 1]) + abs(rho_c[1, 0])
            c_r = measures.relative_entropy_coherence(rho_c)
            e = measures.von_neumann_entropy(rho_c)
            s_diag = measures._entropy_bits(rho_c.diagonal().real)
            count += 1
            if c_l1 < c_r - tol or e < s_diag - c_l1 - tol:
                violations += 1
    return CheckResult(
        "inequality-chain",
        violations == 0 and count >= 1000,
        f"{violations} violations over {count} coin states",
    )


def check_norm_conservation(tol: float = 1e-10, steps: int = 500) -> CheckResult:
    """Norm drift over a long homogeneous and a long disordered run."""
    worst = 0.0
    lattice = Lattice(steps)
    table = sample_spatial_angles(5, lattice)
    for spec in (Homogeneous(math.pi / 4), SpatialDisorder(table)):
        for state in iter_states(SYMMETRIC, spec, steps, lattice):
            worst = max(worst, abs(state.norm_sq() - 1.0))
    return CheckResult("norm-conservation", worst < tol, f"max drift {worst:.3e}")


def check_light_cone() -> CheckResult:
    """Amplitude outside |x| <= t is exactly zero, not merely small."""
    lattice = Lattice(30)
    ok = True
    for state in iter_states(SYMMETRIC, Homogeneous(math.pi / 4), 30, lattice):
        x = lattice.positions()
        outside = np.abs(x) > state.t
        if np.any(state.up[outside] != 0) or np.any(state.down[outside] != 0):
            ok = False
            break
    return CheckResult("light-cone", ok, "exact zeros outside |x| <= t" if ok else "leak")


def check_reflection_symmetry(tol: float = 1e-10, steps: int = 100) -> CheckResult:
    """The (1, i)/sqrt2 start spreads left-right symmetrically at every step."""
    worst = 0.0
    for state in iter_states(SYMMETRIC, Homogeneous(math.pi / 4), steps, Lattice(steps)):
        p = state.probability()
        worst = max(worst, float(np.max(np.abs(p - p[::-1]))))
    return CheckResult(
        "reflection-symmetry", worst < tol, f"max |P(x) - P(-x)| = {worst:.3e}"
    )


def check_disorder_degeneracy(tol: float = 1e-14, steps: int = 50) -> CheckResult:
    """Constant angle tables reproduce the homogeneous walk to rounding."""
    lattice = Lattice(steps)
    theta = math.pi / 4
    homogeneous = walk.evolve(SYMMETRIC, Homogeneous(theta), steps, lattice)
    spatial = walk.evolve(
        SYMMETRIC, SpatialDisorder(np.full(lattice.site_count, theta)), steps, lattice
    )
    temporal = walk.evolve(
        SYMMETRIC, TemporalDisorder(np.full(steps, theta)), steps, lattice
    )
    worst = 0.0
    for h, s, t in zip(homogeneous, spatial, temporal):
        for a, b in ((h.up, s.up), (h.down, s.down), (h.up, t.up), (h.down, t.down)):
            worst = max(worst, float(np.max(np.abs(a - b))))
    return CheckResult("disorder-degeneracy", worst < tol, f"max deviation {worst:.3e}")


def check_unitarity_and_realness(tol: float = 1e-10) -> CheckResult:
    """Assembled one-step matrices are unitary; split-step entries are real."""
    lattice = Lattice(8)
    rng = np.random.default_rng(3)
    worst_u = 0.0
    worst_imag = 0.0
    for spec in _specs_for(lattice, rng):
        worst_u = max(
            worst_u,
            symmetry.unitarity_residual(symmetry.build_step_unitary(spec, lattice)),
        )
    for params in _SS_PARAMS:
        w = symmetry.build_step_unitary(SplitStep(*params), lattice)
        worst_u = max(worst_u, symmetry.unitarity_residual(w))
        worst_imag = max(worst_imag, float(np.max(np.abs(w.imag))))
    ok = worst_u < tol and worst_imag < 1e-12
    return CheckResult(
        "unitarity-and-realness",
        ok,
        f"unitarity {worst_u:.3e}, max imag {worst_imag:.3e}",
    )


def check_pure_state_entropy(tol: float = 1e-8, steps: int = 20) -> CheckResult:
    """The full projector of a pure trajectory has (numerically) zero entropy."""
    worst = 0.0
    for state in iter_states(SYMMETRIC, Homogeneous(math.pi / 4), steps, Lattice(steps)):
        worst = max(worst, measures.von_neumann_entropy(measures.full_density(state)))
    return CheckResult("pure-state-entropy", worst < tol, f"max entropy {worst:.3e}")


def check_normalization_bound(steps: int = 60) -> CheckResult:
    """Normalized coherences stay in [0, 1] on every sampled trajectory."""
    worst = 0.0
    for _, initial, spec, lattice in _trajectory_specs(steps):
        for t, state in enumerate(iter_states(initial, spec, steps, lattice)):
            rec = measures.measure_record(state, t, spec)
            worst = max(worst, rec.I_full, rec.I_p, rec.I_c)
    return CheckResult(
        "normalization-bound", worst <= 1 + 1e-10, f"max normalized coherence {worst:.6f}"
    )


CHECKS = (
    check_stepper_vs_dense,
    check_recursion_equivalence,
    check_partial_trace_consistency,
    check_probability_decomposition,
    check_split_step_classical_transfer,
    check_coherence_shortcut,
    check_inequality_chain,
    check_norm_conservation,
    check_light_cone,
    check_reflection_symmetry,
    check_disorder_degeneracy,
    check_unitarity_and_realness,
    check_pure_state_entropy,
    check_normalization_bound,
)


def verify() -> List[CheckResult]:
    """Run every registered check with default tolerances."""
    return [check() for check in CHECKS]
