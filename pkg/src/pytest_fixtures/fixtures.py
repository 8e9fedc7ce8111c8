from pathlib import Path
from copy import deepcopy
import numpy as np
import pytest
import configs
from ingest import PanelDataset, SynthConfig, generate_synthetic


@pytest.fixture(scope='function')
def config_manager(tmpdir):
    tmpdir = Path(str(tmpdir))
    old_manager = deepcopy(configs.manager)
    try:
        paths = configs.ConfigPaths()
        paths.user_paths = [tmpdir / 'config']
        paths.site_paths = []
        configs.manager.replace(configs.ConfigManager(paths))
        yield configs.manager
    finally:
        configs.manager.replace(old_manager)


def make_panel(X, y, state='ca', start='2020-04-06', names=None):
    '''One-state panel over consecutive dates'''
    X = np.asarray(X, dtype=float)
    if names is None:
        names = ['f{}'.format(j) for j in range(X.shape[1])]
    dates = np.datetime64(start) + np.arange(len(y))
    return PanelDataset(names, [state] * len(y), dates, X, y)


@pytest.fixture(scope='session')
def panel_factory():
    '''Synthetic panels keyed by SynthConfig arguments'''
    cache = {}

    def factory(**kwargs):
        key = tuple(sorted(kwargs.items()))
        if key not in cache:
            cache[key] = generate_synthetic(SynthConfig(**kwargs))
        return cache[key]
    return factory


@pytest.fixture(scope='session')
def shared_panel(panel_factory):
    panel, _ = panel_factory(n_states=3, n_dates=40, n_features=8,
                             n_informative=3, noise_sd=2.0, seed=1)
    return panel
