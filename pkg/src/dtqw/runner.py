"""Scenario catalog, orchestration, and artifact serialization.

A scenario bundles a walk template with step count, run count, seed,
initial spin state, and lattice size.  Running one produces three (for
split-step walks, four) files in the output directory:

* ``<name>_measures.csv``      -- one row per step: the scalar measures.
* ``<name>_distribution.csv``  -- one row per (step, site): probability
  and per-site interference.
* ``<name>_metadata.json``     -- everything needed to reproduce the run
  and interpret the tables: version, backend, angles or seeds, lattice,
  normalization constants, conventions.  No timestamps: rerunning a
  scenario with the same seed and version must reproduce every output
  file byte for byte.
* ``<name>_chirality.json``    -- split-step only: the symmetry report.

Floats are serialized with 17 significant digits, which round-trips IEEE
doubles exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from . import kernels
from ._version import __version__
from .ensemble import (
    EnsembleConfig,
    SpatialDisorderTemplate,
    SpecTemplate,
    TemporalDisorderTemplate,
    run_ensemble,
)
from .errors import InvalidInputError, InvalidParameterError
from .measures import MeasureRecord
from .symmetry import chirality_report
from .walk import (
    Homogeneous,
    InitialCoinState,
    Lattice,
    SpatialDisorder,
    SplitStep,
    TemporalDisorder,
)

DISTRIBUTION_COLUMNS = ("step", "x", "prob", "mu")
MEASURES_COLUMNS = (
    "step",
    "I_full",
    "I_p",
    "I_c",
    "E",
    "C_r",
    "I_cc_raw",
    "I_cc",
    "sigma",
)

# lattice size for the dense-matrix symmetry report attached to split-step runs
REPORT_HALF_WIDTH = 25

WALK_CHOICES = ("homogeneous", "spatial", "temporal", "split-step")

_SYMMETRIC_INITIAL = (1 / math.sqrt(2), 0.0, 0.0, 1 / math.sqrt(2))
_EQUAL_INITIAL = (1 / math.sqrt(2), 0.0, 1 / math.sqrt(2), 0.0)

# Built-in scenarios.  Disorder runs average 100 realizations; walks with
# no randomness run once.  Split-step lattices get one extra site so the
# final record's interference vector (one exact extra step) has headroom.
CATALOG = {
    "hqw": dict(walk="homogeneous", theta=math.pi / 4, steps=200, runs=1, seed=11),
    "sqw": dict(walk="spatial", steps=200, runs=100, seed=12),
    "tqw": dict(walk="temporal", steps=200, runs=100, seed=13),
    "ss-a": dict(
        walk="split-step",
        theta1=math.pi / 2,
        theta2_minus=-math.pi / 4,
        theta2_plus=math.pi / 4,
        steps=100,
        seed=21,
    ),
    "ss-b": dict(
        walk="split-step",
        theta1=math.pi / 2,
        theta2_minus=-3 * math.pi / 4,
        theta2_plus=3 * math.pi / 4,
        steps=100,
        seed=22,
    ),
    "ss-c": dict(
        walk="split-step",
        theta1=-3 * math.pi / 2,
        theta2_minus=5 * math.pi / 4,
        theta2_plus=3 * math.pi / 4,
        steps=100,
        seed=23,
    ),
    "ss-d": dict(
        walk="split-step",
        theta1=-3 * math.pi / 2,
        theta2_minus=-math.pi,
        theta2_plus=math.pi,
        steps=100,
        seed=24,
    ),
}


@dataclass(frozen=True)
class Scenario:
    name: str
    template: SpecTemplate
    steps: int
    runs: int
    master_seed: int
    initial: InitialCoinState
    half_width: int


def build_scenario(
    walk: str,
    *,
    name: Optional[str] = None,
    theta: Optional[float] = None,
    theta1: Optional[float] = None,
    theta2_minus: Optional[float] = None,
    theta2_plus: Optional[float] = None,
    interface: int = 0,
    steps: Optional[int] = None,
    runs: Optional[int] = None,
    seed: int = 0,
    initial: Union[None, Sequence[float], InitialCoinState] = None,
    half_width: Optional[int] = None,
) -> Scenario:
    """Assemble a Scenario from flag-level values with per-walk defaults."""
    if walk not in WALK_CHOICES:
        raise InvalidParameterError(
            f"walk must be one of {', '.join(WALK_CHOICES)}; got {walk!r}"
        )
    split = walk == "split-step"
    if steps is None:
        steps = 100 if split else 200
    if runs is None:
        runs = 100 if walk in ("spatial", "temporal") else 1
    if initial is None:
        initial = _EQUAL_INITIAL if split else _SYMMETRIC_INITIAL
    if not isinstance(initial, InitialCoinState):
        vals = [float(v) for v in initial]
        if len(vals) != 4:
            raise InvalidParameterError(
                "initial must be four numbers: a_re,a_im,b_re,b_im"
            )
        initial = InitialCoinState(complex(vals[0], vals[1]), complex(vals[2], vals[3]))

    if walk == "homogeneous":
        template: SpecTemplate = Homogeneous(math.pi / 4 if theta is None else theta)
    elif walk == "spatial":
        template = SpatialDisorderTemplate()
    elif walk == "temporal":
        template = TemporalDisorderTemplate()
    else:
        missing = [
            flag
            for flag, v in (
                ("theta1", theta1),
                ("theta2-minus", theta2_minus),
                ("theta2-plus", theta2_plus),
            )
            if v is None
        ]
        if missing:
            raise InvalidParameterError(
                f"split-step walk needs --{', --'.join(missing)}"
            )
        template = SplitStep(theta1, theta2_minus, theta2_plus, interface)

    if half_width is None:
        half_width = steps + 1 if split else max(steps, 1)
    return Scenario(
        name=name or walk,
        template=template,
        steps=steps,
        runs=runs,
        master_seed=seed,
        initial=initial,
        half_width=half_width,
    )


def catalog_scenario(name: str, **overrides) -> Scenario:
    """Catalog entry by name, with optional flag-level overrides."""
    if name not in CATALOG:
        raise InvalidParameterError(
            f"unknown scenario {name!r}; available: {', '.join(sorted(CATALOG))}"
        )
    kwargs = dict(CATALOG[name])
    kwargs.update({k: v for k, v in overrides.items() if v is not None})
    walk = kwargs.pop("walk")
    return build_scenario(walk, name=name, **kwargs)


@dataclass(frozen=True)
class RunArtifacts:
    scenario: str
    measures_path: Path
    distribution_path: Path
    metadata_path: Path
    chirality_path: Optional[Path] = None

    def paths(self) -> List[Path]:
        out = [self.measures_path, self.distribution_path, self.metadata_path]
        if self.chirality_path is not None:
            out.append(self.chirality_path)
        return out


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write_measures_csv(path: Path, records: List[MeasureRecord]) -> None:
    lines = [",".join(MEASURES_COLUMNS)]
    for r in records:
        lines.append(
            ",".join(
                (
                    str(r.t),
                    _fmt(r.I_full),
                    _fmt(r.I_p),
                    _fmt(r.I_c),
                    _fmt(r.E),
                    _fmt(r.C_r),
                    _fmt(r.I_cc_raw),
                    _fmt(r.I_cc),
                    _fmt(r.sigma),
                )
            )
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_distribution_csv(
    path: Path, records: List[MeasureRecord], positions: np.ndarray
) -> None:
    lines = [",".join(DISTRIBUTION_COLUMNS)]
    for r in records:
        t = str(r.t)
        for x, p, m in zip(positions, r.prob, r.mu):
            lines.append(f"{t},{x},{_fmt(p)},{_fmt(m)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _walk_metadata(template: SpecTemplate) -> dict:
    if isinstance(template, Homogeneous):
        return {"variant": "homogeneous", "theta": template.theta}
    if isinstance(template, SpatialDisorderTemplate):
        return {
            "variant": "spatial-disorder",
            "angle_distribution": "uniform on [0, pi], one angle per site",
        }
    if isinstance(template, TemporalDisorderTemplate):
        return {
            "variant": "temporal-disorder",
            "angle_distribution": "uniform on [0, pi], one angle per step",
            "table_length": "steps + 1 (final record's mu reads the next angle)",
        }
    if isinstance(template, SplitStep):
        return {
            "variant": "split-step",
            "theta1": template.theta1,
            "theta2_minus": template.theta2_minus,
            "theta2_plus": template.theta2_plus,
            "interface": template.interface,
            "interface_convention": "theta2_plus applies at x >= interface",
        }
    if isinstance(template, SpatialDisorder):
        return {"variant": "spatial-disorder-fixed", "theta_x": list(template.theta_x)}
    if isinstance(template, TemporalDisorder):
        return {"variant": "temporal-disorder-fixed", "theta_t": list(template.theta_t)}
    raise InvalidParameterError(f"unsupported template {type(template).__name__}")


def _metadata(scenario: Scenario, seeds: List[int], site_count: int) -> dict:
    return {
        "tool": {"name": "dtqw", "version": __version__, "backend": kernels.ACTIVE_BACKEND},
        "scenario": scenario.name,
        "walk": _walk_metadata(scenario.template),
        "lattice": {"half_width": scenario.half_width, "site_count": site_count},
        "steps": scenario.steps,
        "runs": scenario.runs,
        "master_seed": scenario.master_seed,
        "realization_seeds": seeds,
        "seed_mixing": "splitmix64((master_seed + index) mod 2**64)",
        "initial": {
            "alpha": [scenario.initial.alpha.real, scenario.initial.alpha.imag],
            "beta": [scenario.initial.beta.real, scenario.initial.beta.imag],
        },
        "normalization": {
            "I_full": 2 * site_count - 1,
            "I_p": site_count - 1,
            "I_c": 1,
        },
        "conventions": {
            "averaging": "arithmetic mean of measure trajectories over realizations",
            "mu": (
                "record at step t uses the angle of the step t -> t+1; for the "
                "split-step walk mu is exact-minus-incoherent one-step influx"
            ),
            "entropy_unit": "bits",
        },
        "format": {
            "measures_columns": list(MEASURES_COLUMNS),
            "distribution_columns": list(DISTRIBUTION_COLUMNS),
            "float_format": ".17g",
        },
    }


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(
        json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def run_scenario(scenario: Scenario, output_dir, jobs: int = 1) -> RunArtifacts:
    """Execute one scenario and write its artifact files.

    ``jobs`` threads spread ensemble realizations; outputs are identical
    for any value.
    """
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    lattice = Lattice(scenario.half_width)
    config = EnsembleConfig(
        spec_template=scenario.template,
        steps=scenario.steps,
        lattice=lattice,
        initial=scenario.initial,
        runs=scenario.runs,
        master_seed=scenario.master_seed,
    )
    result = run_ensemble(config, jobs=jobs)

    measures_path = out / f"{scenario.name}_measures.csv"
    distribution_path = out / f"{scenario.name}_distribution.csv"
    metadata_path = out / f"{scenario.name}_metadata.json"
    _write_measures_csv(measures_path, result.records)
    _write_distribution_csv(distribution_path, result.records, lattice.positions())
    _write_json(metadata_path, _metadata(scenario, result.seeds, lattice.site_count))

    chirality_path = None
    if isinstance(scenario.template, SplitStep):
        chirality_path = out / f"{scenario.name}_chirality.json"
        report = chirality_report(scenario.template, Lattice(REPORT_HALF_WIDTH))
        _write_json(chirality_path, report)

    return RunArtifacts(
        scenario=scenario.name,
        measures_path=measures_path,
        distribution_path=distribution_path,
        metadata_path=metadata_path,
        chirality_path=chirality_path,
    )


_ENTRY_KEYS = {
    "scenario",
    "name",
    "walk",
    "theta",
    "theta1",
    "theta2_minus",
    "theta2_plus",
    "interface",
    "steps",
    "runs",
    "seed",
    "initial",
    "half_width",
}


def scenario_from_entry(entry: dict, position: int = 0) -> Scenario:
    """One sweep-file entry -> Scenario, with field-level validation."""
    if not isinstance(entry, dict):
        raise InvalidInputError(f"scenarios[{position}] must be an object")
    unknown = set(entry) - _ENTRY_KEYS
    if unknown:
        raise InvalidInputError(
            f"scenarios[{position}] has unknown fields: {', '.join(sorted(unknown))}"
        )
    entry = dict(entry)
    catalog_name = entry.pop("scenario", None)
    if catalog_name is not None:
        return catalog_scenario(catalog_name, **entry)
    if "walk" not in entry:
        raise InvalidInputError(
            f"scenarios[{position}] needs either 'scenario' or 'walk'"
        )
    walk = entry.pop("walk")
    return build_scenario(walk, **entry)


def load_sweep(path) -> List[Scenario]:
    """Parse a sweep config file: {"scenarios": [entry, ...]}."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "scenarios" not in doc:
        raise InvalidInputError(f"{path}: expected an object with a 'scenarios' list")
    entries = doc["scenarios"]
    if not isinstance(entries, list) or not entries:
        raise InvalidInputError(f"{path}: 'scenarios' must be a nonempty list")
    scenarios = [scenario_from_entry(e, i) for i, e in enumerate(entries)]
    names = [s.name for s in scenarios]
    if len(set(names)) != len(names):
        raise InvalidInputError(f"{path}: scenario names must be unique: {names}")
    return scenarios


def run_sweep(config_path, output_dir, jobs: int = 1) -> List[RunArtifacts]:
    return [run_scenario(s, output_dir, jobs=jobs) for s in load_sweep(config_path)]
