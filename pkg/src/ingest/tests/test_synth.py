import json
from pathlib import Path
import numpy as np
import pytest
from ingest import *
from ingest.synth import STATE_CODES


def test_zero_noise_reproduces_linear_form():
    cfg = SynthConfig(n_states=1, n_dates=30, n_features=6, n_informative=3,
                      noise_sd=0.0, seed=4)
    panel, truth = generate_synthetic(cfg)
    assert len(panel) == 30
    expected = truth.intercepts[0] + panel.features @ truth.coefficients[0]
    np.testing.assert_allclose(panel.targets, np.maximum(0.0, expected),
                               rtol=0, atol=1e-9)
    assert panel.features.min() >= 0.0
    assert panel.features.max() < 100.0


def test_deterministic():
    cfg = SynthConfig(n_states=3, n_dates=20, noise_sd=5.0, seed=11,
                      coefficients='per-state')
    first, first_truth = generate_synthetic(cfg)
    second, second_truth = generate_synthetic(cfg)
    assert first == second
    assert np.array_equal(first_truth.coefficients, second_truth.coefficients)
    other, _ = generate_synthetic(SynthConfig(n_states=3, n_dates=20,
                                              noise_sd=5.0, seed=12,
                                              coefficients='per-state'))
    assert not np.array_equal(first.targets, other.targets)


def test_informative_prefix():
    _, truth = generate_synthetic(SynthConfig(n_states=4, n_dates=5,
                                              n_features=35, n_informative=3,
                                              coefficients='per-state'))
    assert np.all(truth.coefficients[:, 3:] == 0.0)
    assert np.all(truth.coefficients[:, :3] >= 1.0)
    assert not np.array_equal(truth.coefficients[0], truth.coefficients[1])


def test_shared_and_explicit_coefficients():
    _, truth = generate_synthetic(SynthConfig(n_states=3, n_dates=5,
                                              n_features=4, n_informative=2))
    assert np.array_equal(truth.coefficients[0], truth.coefficients[2])

    matrix = [[3.0, 0.0], [1.0, 0.0]]
    panel, truth = generate_synthetic(SynthConfig(
        n_states=2, n_dates=4, n_features=2, n_informative=1,
        coefficients=matrix, intercept=0.0))
    assert truth.coefficients.tolist() == matrix
    np.testing.assert_allclose(panel.for_state('ak').targets,
                               3.0 * panel.for_state('ak').features[:, 0])


@pytest.mark.parametrize('kwargs', [
    {'n_informative': 36},
    {'noise_sd': -1.0},
    {'coefficients': 'random'},
    {'coefficients': [[1.0] * 35]},
    {'coefficient_range': (5.0, 1.0)},
])
def test_config_errors(kwargs):
    with pytest.raises(ConfigurationError):
        SynthConfig(n_states=1, n_dates=3, **kwargs)


def test_state_codes():
    assert state_codes(3) == list(STATE_CODES[:3])
    codes = state_codes(60)
    assert len(set(codes)) == 60
    assert all(len(code) == 2 for code in codes)


def test_write_synthetic_roundtrip(tmpdir):
    cfg = SynthConfig(n_states=2, n_dates=6, n_features=3, n_informative=2,
                      noise_sd=3.0, seed=2)
    panel, truth = generate_synthetic(cfg)
    out = Path(str(tmpdir)) / 'nested' / 'data'
    survey, cases, truth_path = write_synthetic(panel, truth, str(out))
    loaded, summary = load_panel(survey, cases)
    assert loaded.feature_names == panel.feature_names
    assert np.array_equal(loaded.states, panel.states)
    assert np.array_equal(loaded.dates, panel.dates)
    assert loaded.targets.tolist() == np.rint(panel.targets).tolist()
    np.testing.assert_allclose(loaded.features, panel.features, rtol=1e-9)
    assert summary.clamped == 0

    with open(truth_path) as raw:
        stored = json.load(raw)
    assert stored['feature_names'] == panel.feature_names
    assert sorted(stored['states']) == ['ak', 'al']
    assert stored['states']['al']['coefficients'][2] == 0.0

    first = Path(survey).read_bytes()
    write_synthetic(*generate_synthetic(cfg), str(out))
    assert Path(survey).read_bytes() == first
