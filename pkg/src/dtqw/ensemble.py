"""Seeded disorder sampling and ensemble averaging of measure trajectories.

Reproducibility contract: realization i of an ensemble with master seed m
uses the 64-bit seed ``splitmix64((m + i) mod 2**64)`` to construct a
fresh numpy ``default_rng``.  splitmix64 is a bijection on 64-bit words,
so realization seeds never collide for a fixed master seed, and the
mapping is frozen here independent of numpy's own seeding internals.

Averaging is over measure values, never over states or density matrices
(coherence is not linear in the state).  The reduction runs in
realization-index order with plain sum-then-divide, so results are
bit-identical no matter how many worker threads computed the
realizations.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, NamedTuple, Union

import numpy as np

from .errors import InvalidParameterError, WalkError
from .measures import MeasureRecord, measure_record
from .walk import (
    Homogeneous,
    InitialCoinState,
    Lattice,
    SpatialDisorder,
    SplitStep,
    TemporalDisorder,
    WalkSpec,
    iter_states,
)

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 output step for input x (all arithmetic mod 2**64)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def realization_seed(master_seed: int, index: int) -> int:
    """Stable per-realization seed; injective in index for a fixed master."""
    if index < 0:
        raise InvalidParameterError(f"realization index must be >= 0, got {index}")
    return splitmix64((master_seed + index) & _MASK64)


def sample_spatial_angles(seed: int, lattice: Lattice) -> np.ndarray:
    """One i.i.d. uniform angle in [0, pi] per lattice site.

    The upper endpoint is included in the documented range; in floating
    point the distinction from [0, pi) has probability zero.
    """
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, math.pi, size=lattice.site_count)


def sample_temporal_angles(seed: int, steps: int) -> np.ndarray:
    """One i.i.d. uniform angle in [0, pi] per time step."""
    if steps < 1:
        raise InvalidParameterError(f"steps must be >= 1, got {steps}")
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, math.pi, size=steps)


@dataclass(frozen=True)
class SpatialDisorderTemplate:
    """Marker: sample a fresh per-site angle table for every realization."""


@dataclass(frozen=True)
class TemporalDisorderTemplate:
    """Marker: sample a fresh per-step angle table for every realization."""


SpecTemplate = Union[
    Homogeneous, SplitStep, SpatialDisorderTemplate, TemporalDisorderTemplate
]

_RANDOM_TEMPLATES = (SpatialDisorderTemplate, TemporalDisorderTemplate)


@dataclass(frozen=True)
class EnsembleConfig:
    """Everything needed to reproduce an ensemble bit-for-bit.

    For templates with no randomness (fixed-angle walks) ``runs`` is
    forced to 1: repeating an identical run would only rescale the sum.
    """

    spec_template: SpecTemplate
    steps: int
    lattice: Lattice
    initial: InitialCoinState
    runs: int = 1
    master_seed: int = 0

    def __post_init__(self):
        if isinstance(self.runs, bool) or not isinstance(self.runs, (int, np.integer)):
            raise InvalidParameterError("runs must be an integer")
        if self.runs < 1:
            raise InvalidParameterError(f"runs must be >= 1, got {self.runs}")
        if not isinstance(self.master_seed, (int, np.integer)) or isinstance(
            self.master_seed, bool
        ):
            raise InvalidParameterError("master_seed must be an integer")
        if not 0 <= int(self.master_seed) <= _MASK64:
            raise InvalidParameterError("master_seed must fit in 64 unsigned bits")
        if self.steps < 0:
            raise InvalidParameterError(f"steps must be >= 0, got {self.steps}")
        if not isinstance(self.spec_template, _RANDOM_TEMPLATES):
            object.__setattr__(self, "runs", 1)

    @property
    def is_random(self) -> bool:
        return isinstance(self.spec_template, _RANDOM_TEMPLATES)


def concrete_spec(config: EnsembleConfig, index: int) -> WalkSpec:
    """Materialize the walk spec for one realization.

    Temporal tables get one extra entry beyond ``steps`` so that the
    interference vector of the final record (which looks at the next
    step's angle) is defined.
    """
    template = config.spec_template
    if isinstance(template, SpatialDisorderTemplate):
        seed = realization_seed(config.master_seed, index)
        return SpatialDisorder(sample_spatial_angles(seed, config.lattice))
    if isinstance(template, TemporalDisorderTemplate):
        seed = realization_seed(config.master_seed, index)
        return TemporalDisorder(sample_temporal_angles(seed, config.steps + 1))
    return template


def _realization_records(config: EnsembleConfig, index: int) -> List[MeasureRecord]:
    spec = concrete_spec(config, index)
    try:
        return [
            measure_record(state, t, spec)
            for t, state in enumerate(
                iter_states(config.initial, spec, config.steps, config.lattice)
            )
        ]
    except WalkError as exc:
        raise type(exc)(f"realization {index}: {exc}") from exc


class EnsembleResult(NamedTuple):
    records: List[MeasureRecord]
    seeds: List[int]


def run_ensemble(config: EnsembleConfig, jobs: int = 1) -> EnsembleResult:
    """Average the per-step measure records over all realizations.

    ``jobs`` worker threads evolve realizations concurrently (the step
    and reduction kernels drop the GIL); the averaging itself always
    consumes results in realization-index order, so the output does not
    depend on jobs.  Seeds are reported only for random templates.
    """
    if jobs < 1:
        raise InvalidParameterError(f"jobs must be >= 1, got {jobs}")
    runs = config.runs
    seeds = (
        [realization_seed(config.master_seed, i) for i in range(runs)]
        if config.is_random
        else []
    )

    sums = None
    if jobs == 1 or runs == 1:
        results = (_realization_records(config, i) for i in range(runs))
        for records in results:
            sums = _accumulate(sums, records)
    else:
        with ThreadPoolExecutor(max_workers=min(jobs, runs)) as pool:
            for records in pool.map(
                lambda i: _realization_records(config, i), range(runs)
            ):
                sums = _accumulate(sums, records)

    mean = [
        MeasureRecord(
            t=t,
            I_full=acc["I_full"] / runs,
            I_p=acc["I_p"] / runs,
            I_c=acc["I_c"] / runs,
            E=acc["E"] / runs,
            C_r=acc["C_r"] / runs,
            I_cc_raw=acc["I_cc_raw"] / runs,
            I_cc=acc["I_cc"] / runs,
            sigma=acc["sigma"] / runs,
            prob=acc["prob"] / runs,
            mu=acc["mu"] / runs,
        )
        for t, acc in enumerate(sums)
    ]
    return EnsembleResult(mean, seeds)


_SCALAR_FIELDS = ("I_full", "I_p", "I_c", "E", "C_r", "I_cc_raw", "I_cc", "sigma")


def _accumulate(sums, records: List[MeasureRecord]):
    if sums is None:
        sums = [
            {
                **{f: 0.0 for f in _SCALAR_FIELDS},
                "prob": np.zeros_like(records[0].prob),
                "mu": np.zeros_like(records[0].mu),
            }
            for _ in records
        ]
    if len(sums) != len(records):
        raise InvalidParameterError(
            "realizations produced trajectories of different lengths"
        )
    for acc, rec in zip(sums, records):
        for f in _SCALAR_FIELDS:
            acc[f] += getattr(rec, f)
        acc["prob"] += rec.prob
        acc["mu"] += rec.mu
    return sums
