'''
Feature importance per model and how often features reach the top lists
'''
import logging
import numpy as np
import pandas as pd
from tabmodels import ModelError, gain_importance
from .errors import MetricError

logger = logging.getLogger(__name__)

GAIN = 'gain'
PERMUTATION = 'permutation'
AUTO = 'auto'
GLOBAL = 'global'

DEFAULT_REPEATS = 5
DEFAULT_KS = (5, 15)


def sort_scores(scores):
    return sorted(((str(name), float(score)) for name, score in scores),
                  key=lambda item: (-item[1], item[0]))


def permutation_importance(model, ds, n_repeats=DEFAULT_REPEATS, seed=0):
    '''
    Mean increase of MAE when one feature column is shuffled

    Features are visited in dataset order and each is shuffled
    ``n_repeats`` times from one generator seeded with ``seed``.
    '''
    if n_repeats < 1:
        raise MetricError('n_repeats must be at least 1, got {}'
                          .format(n_repeats))
    X = np.array(ds.features, dtype=np.float64)
    y = ds.targets
    baseline = float(np.abs(model.predict(X) - y).mean())
    rng = np.random.default_rng(seed)
    scores = []
    for j, name in enumerate(ds.feature_names):
        original = X[:, j].copy()
        increases = []
        for _ in range(n_repeats):
            X[:, j] = original[rng.permutation(len(original))]
            increases.append(float(np.abs(model.predict(X) - y).mean()) -
                             baseline)
        X[:, j] = original
        scores.append((name, float(np.mean(increases))))
    return sort_scores(scores)


def model_importance(model, ds, method=AUTO, n_repeats=DEFAULT_REPEATS,
                     seed=0):
    '''
    Gain importance for tree models, permutation importance otherwise

    Returns (method used, sorted (feature, score) list).
    '''
    if method in (AUTO, GAIN):
        try:
            return GAIN, sort_scores(gain_importance(model).items())
        except ModelError:
            if method == GAIN:
                raise MetricError('{} models record no split gain'.format(
                    getattr(model, 'kind', type(model).__name__)))
    return PERMUTATION, permutation_importance(model, ds, n_repeats, seed)


class ImportanceTable:
    '''Sorted feature scores per state (or a single ``global`` entry)'''

    def top(self, state, k):
        return [name for name, _ in self.per_state[state][:k]]

    def to_frame(self, ks=None):
        '''
        One block of rows per top-k size, ascending

        Without ``ks`` each state's full list is written as a single block
        whose ``top_k`` is the list length.
        '''
        rows = []
        for k in sorted(ks) if ks else [None]:
            for state, scores in self.per_state.items():
                size = len(scores) if k is None else k
                for rank, (name, score) in enumerate(scores[:size], 1):
                    rows.append((size, state, rank, name, score))
        return pd.DataFrame(rows, columns=['top_k', 'state', 'rank',
                                           'feature', 'score'])

    def save(self, path, ks=None):
        self.to_frame(ks).to_csv(str(path), index=False,
                                 float_format='%.17g')

    def __init__(self, per_state, method):
        if method not in (GAIN, PERMUTATION):
            raise MetricError('unknown importance method {}'.format(method))
        self.per_state = {state: sort_scores(scores)
                          for state, scores in sorted(per_state.items())}
        self.method = method


class FrequencyReport:
    def columns(self):
        return ['top{}_count'.format(k) for k in self.ks]

    def to_frame(self):
        rows = sorted(self.counts.items(),
                      key=lambda item: tuple(-c for c in item[1]) +
                      (item[0],))
        return pd.DataFrame([(name,) + tuple(counts)
                             for name, counts in rows],
                            columns=['feature'] + self.columns())

    def save(self, path):
        self.to_frame().to_csv(str(path), index=False)

    def __init__(self, counts, ks, n_states):
        self.counts = dict(counts)
        self.ks = tuple(ks)
        self.n_states = n_states


def top_k_frequency(table, ks=DEFAULT_KS):
    '''
    Count the states whose top-k list contains each feature

    Every feature seen anywhere in the table gets a row, zeros included.
    '''
    ks = tuple(sorted(ks))
    if not ks or ks[0] < 1:
        raise MetricError('top-k sizes must be positive, got {}'.format(ks))
    if not table.per_state:
        raise MetricError('importance table has no states')
    features = set()
    for scores in table.per_state.values():
        features.update(name for name, _ in scores)
    counts = {name: [0] * len(ks) for name in features}
    for state in table.per_state:
        for i, k in enumerate(ks):
            for name in table.top(state, k):
                counts[name][i] += 1
    return FrequencyReport({name: tuple(value)
                            for name, value in counts.items()},
                           ks, len(table.per_state))
