import math

import numpy as np
import pytest
from scipy import stats

from dtqw import (
    EnsembleConfig,
    Homogeneous,
    InitialCoinState,
    InvalidParameterError,
    Lattice,
    LatticeTooSmallError,
    SpatialDisorder,
    SpatialDisorderTemplate,
    SplitStep,
    TemporalDisorderTemplate,
    measure_record,
    realization_seed,
    run_ensemble,
    sample_spatial_angles,
    sample_temporal_angles,
    splitmix64,
)
from dtqw.ensemble import concrete_spec
from dtqw.walk import iter_states

SYMMETRIC = InitialCoinState(1 / math.sqrt(2), 1j / math.sqrt(2))

SCALARS = ("I_full", "I_p", "I_c", "E", "C_r", "I_cc_raw", "I_cc", "sigma")


def _records_equal(a, b, tol=0.0):
    assert len(a) == len(b)
    for ra, rb in zip(a, b):
        for f in SCALARS:
            assert abs(getattr(ra, f) - getattr(rb, f)) <= tol, f
        if tol == 0.0:
            np.testing.assert_array_equal(ra.prob, rb.prob)
            np.testing.assert_array_equal(ra.mu, rb.mu)
        else:
            np.testing.assert_allclose(ra.prob, rb.prob, atol=tol)
            np.testing.assert_allclose(ra.mu, rb.mu, atol=tol)


def test_splitmix64_reference_values():
    # first outputs of the published splitmix64 sequence for seeds 0 and 1234567
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(1234567) == 6457827717110365317


def test_realization_seed_injective_over_indices():
    seeds = {realization_seed(99, i) for i in range(100_001)}
    assert len(seeds) == 100_001


def test_realization_seed_wraps_and_rejects_negatives():
    assert realization_seed((1 << 64) - 1, 1) == realization_seed(0, 0)
    with pytest.raises(InvalidParameterError):
        realization_seed(0, -1)


def test_sampling_is_deterministic():
    lat = Lattice(30)
    a = sample_spatial_angles(12345, lat)
    b = sample_spatial_angles(12345, lat)
    np.testing.assert_array_equal(a, b)
    c = sample_temporal_angles(777, 50)
    d = sample_temporal_angles(777, 50)
    np.testing.assert_array_equal(c, d)


def test_sampled_angles_in_range_and_full_length():
    lat = Lattice(100)
    table = sample_spatial_angles(realization_seed(5, 0), lat)
    assert table.shape == (201,)
    assert np.all(table >= 0.0) and np.all(table <= math.pi)
    single = sample_temporal_angles(realization_seed(5, 1), 1)
    assert single.shape == (1,)
    assert 0.0 <= single[0] <= math.pi


def test_spatial_mean_within_uniform_bound():
    # mean of 201 iid uniform[0, pi]: pi/2 +/- 3 sigma/sqrt(201)
    table = sample_spatial_angles(realization_seed(5, 0), Lattice(100))
    bound = 3 * (math.pi / math.sqrt(12)) / math.sqrt(201)
    assert abs(table.mean() - math.pi / 2) < bound


def test_different_realizations_differ_almost_everywhere():
    lat = Lattice(100)
    a = sample_spatial_angles(realization_seed(3, 0), lat)
    b = sample_spatial_angles(realization_seed(3, 1), lat)
    assert np.mean(a != b) >= 0.95


def test_temporal_tables_pass_ks_uniformity():
    # KS statistic under the 5% critical value for >= 95 of 100 realizations
    critical = 1.3581 / math.sqrt(200)
    passes = 0
    for i in range(100):
        table = sample_temporal_angles(realization_seed(13, i), 200)
        d = stats.kstest(table, stats.uniform(loc=0, scale=math.pi).cdf).statistic
        passes += d < critical
    assert passes >= 95


def test_single_run_ensemble_equals_direct_realization():
    config = EnsembleConfig(
        spec_template=SpatialDisorderTemplate(),
        steps=30,
        lattice=Lattice(30),
        initial=SYMMETRIC,
        runs=1,
        master_seed=42,
    )
    result = run_ensemble(config)
    spec = concrete_spec(config, 0)
    direct = [
        measure_record(s, t, spec)
        for t, s in enumerate(iter_states(SYMMETRIC, spec, 30, config.lattice))
    ]
    _records_equal(result.records, direct)
    assert result.seeds == [realization_seed(42, 0)]


def test_two_run_ensemble_is_elementwise_mean():
    config = EnsembleConfig(
        spec_template=TemporalDisorderTemplate(),
        steps=25,
        lattice=Lattice(25),
        initial=SYMMETRIC,
        runs=2,
        master_seed=7,
    )
    result = run_ensemble(config)
    singles = []
    for i in range(2):
        spec = concrete_spec(config, i)
        singles.append(
            [
                measure_record(s, t, spec)
                for t, s in enumerate(iter_states(SYMMETRIC, spec, 25, config.lattice))
            ]
        )
    for t, rec in enumerate(result.records):
        for f in SCALARS:
            manual = (getattr(singles[0][t], f) + getattr(singles[1][t], f)) / 2
            assert getattr(rec, f) == manual
        np.testing.assert_array_equal(rec.prob, (singles[0][t].prob + singles[1][t].prob) / 2)
        np.testing.assert_array_equal(rec.mu, (singles[0][t].mu + singles[1][t].mu) / 2)


def test_mean_linearity_over_half_ensembles():
    # realization_seed(m, i+2) == realization_seed(m+2, i), so two half
    # ensembles with shifted master seeds cover the same realizations
    common = dict(
        spec_template=SpatialDisorderTemplate(),
        steps=20,
        lattice=Lattice(20),
        initial=SYMMETRIC,
    )
    full = run_ensemble(EnsembleConfig(runs=4, master_seed=31, **common))
    h1 = run_ensemble(EnsembleConfig(runs=2, master_seed=31, **common))
    h2 = run_ensemble(EnsembleConfig(runs=2, master_seed=33, **common))
    for t, rec in enumerate(full.records):
        for f in SCALARS:
            halves = (getattr(h1.records[t], f) + getattr(h2.records[t], f)) / 2
            assert abs(getattr(rec, f) - halves) < 1e-14
        np.testing.assert_allclose(
            rec.prob, (h1.records[t].prob + h2.records[t].prob) / 2, atol=1e-14
        )


def test_runs_forced_to_one_without_randomness():
    config = EnsembleConfig(
        spec_template=Homogeneous(math.pi / 4),
        steps=10,
        lattice=Lattice(10),
        initial=SYMMETRIC,
        runs=50,
        master_seed=1,
    )
    assert config.runs == 1
    assert not config.is_random
    assert run_ensemble(config).seeds == []
    split = EnsembleConfig(
        spec_template=SplitStep(0.4, -0.2, 0.9),
        steps=10,
        lattice=Lattice(11),
        initial=SYMMETRIC,
        runs=9,
        master_seed=1,
    )
    assert split.runs == 1


def test_constant_disorder_ensemble_reproduces_homogeneous_records():
    lat = Lattice(20)
    theta = math.pi / 4
    fixed = EnsembleConfig(
        spec_template=SpatialDisorder(np.full(lat.site_count, theta)),
        steps=20,
        lattice=lat,
        initial=SYMMETRIC,
    )
    hom = EnsembleConfig(
        spec_template=Homogeneous(theta), steps=20, lattice=lat, initial=SYMMETRIC
    )
    _records_equal(run_ensemble(fixed).records, run_ensemble(hom).records, tol=1e-14)


def test_parallel_schedule_does_not_change_output():
    config = EnsembleConfig(
        spec_template=SpatialDisorderTemplate(),
        steps=40,
        lattice=Lattice(40),
        initial=SYMMETRIC,
        runs=12,
        master_seed=2024,
    )
    sequential = run_ensemble(config, jobs=1)
    threaded = run_ensemble(config, jobs=4)
    _records_equal(sequential.records, threaded.records)
    assert sequential.seeds == threaded.seeds


def test_temporal_template_samples_one_extra_angle():
    config = EnsembleConfig(
        spec_template=TemporalDisorderTemplate(),
        steps=17,
        lattice=Lattice(17),
        initial=SYMMETRIC,
        master_seed=3,
    )
    spec = concrete_spec(config, 0)
    assert spec.theta_t.shape == (18,)


def test_realization_errors_carry_index():
    config = EnsembleConfig(
        spec_template=SpatialDisorderTemplate(),
        steps=10,
        lattice=Lattice(5),
        initial=SYMMETRIC,
        runs=3,
        master_seed=0,
    )
    with pytest.raises(LatticeTooSmallError, match="realization 0"):
        run_ensemble(config)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(runs=0),
        dict(runs=True),
        dict(master_seed=-1),
        dict(master_seed=1 << 64),
        dict(steps=-1),
    ],
)
def test_config_validation(kwargs):
    base = dict(
        spec_template=SpatialDisorderTemplate(),
        steps=5,
        lattice=Lattice(5),
        initial=SYMMETRIC,
        runs=2,
        master_seed=0,
    )
    base.update(kwargs)
    with pytest.raises(InvalidParameterError):
        EnsembleConfig(**base)


def test_jobs_validation():
    config = EnsembleConfig(
        spec_template=Homogeneous(0.5), steps=3, lattice=Lattice(3), initial=SYMMETRIC
    )
    with pytest.raises(InvalidParameterError):
        run_ensemble(config, jobs=0)
