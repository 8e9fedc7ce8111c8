'''
Run configuration and suite results with their on-disk layout

A saved suite is a directory holding ``suite.json`` (configuration,
resolved hyperparameters, seeds, per-seed metrics, the confidence
interval and skipped states), one ``predictions-seed<seed>.csv`` per seed,
the first seed's models under ``models/<group>.json``, each group's feature
ranking under ``rankings/<group>.csv`` and, for models trained iteratively,
their training loss under ``loss/<group>.csv``.
'''
import json
import logging
import math
from pathlib import Path
import numpy as np
from scipy import stats
from featsel import FeatureRanking, FeatureSelectionError
from metrics import (GLOBAL, PredictionSet, SchemaMismatch,
                     UndefinedDenominatorError, mae, nmae)
from neural import write_loss_curve
from .errors import ConfigurationError, SampleError
from .families import create_family, list_families, load_any_model

logger = logging.getLogger(__name__)

ALL = 'all'
LOCAL = 'local'
GRANULARITIES = (GLOBAL, LOCAL)

DEFAULT_TRAIN_FRACTION = 0.8
MIN_TRAIN_ROWS = 10
MIN_TRAIN_ROWS_FLOOR = 3
CONFIDENCE_LEVEL = 0.95
CI_FORMULA = 'mean +/- t((1 + level) / 2, n - 1) * s / sqrt(n), s with ddof 1'


def normalize_k(value):
    '''0 and 'all' both select every feature'''
    if value in (0, ALL):
        return ALL
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigurationError('feature count must be a positive integer '
                                 'or {!r}, got {!r}'.format(ALL, value))
    return value


class RunConfig:
    '''One experiment: a model family at a granularity over a seed list'''

    FIELDS = ('family', 'granularity', 'feature_k', 'train_fraction',
              'seeds', 'settings', 'min_train_rows', 'clamp_nonneg', 'jobs')

    def resolve_k(self, n_features):
        if self.feature_k == ALL:
            return n_features
        if self.feature_k > n_features:
            raise ConfigurationError('feature_k {} exceeds the {} available '
                                     'features'.format(self.feature_k,
                                                       n_features))
        return self.feature_k

    def family_instance(self):
        return create_family(self.family, self.settings)

    def replace(self, **changes):
        values = {name: getattr(self, name) for name in self.FIELDS}
        values.update(changes)
        return RunConfig(**values)

    def as_dict(self):
        return {name: getattr(self, name) for name in self.FIELDS}

    @staticmethod
    def from_dict(value):
        unknown = set(value) - set(RunConfig.FIELDS)
        if unknown:
            raise ConfigurationError('unknown run settings: {}'.format(
                ', '.join(sorted(unknown))))
        return RunConfig(**value)

    def __eq__(self, other):
        if not isinstance(other, RunConfig):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __repr__(self):
        return 'RunConfig({}, {}, k={}, seeds={})'.format(
            self.family, self.granularity, self.feature_k, self.seeds)

    def __init__(self, family, granularity=GLOBAL, feature_k=ALL,
                 train_fraction=DEFAULT_TRAIN_FRACTION, seeds=(0,),
                 settings=None, min_train_rows=MIN_TRAIN_ROWS,
                 clamp_nonneg=False, jobs=1):
        if family not in list_families():
            raise ConfigurationError('unknown model family {}; expected one '
                                     'of {}'.format(
                                         family, ', '.join(list_families())))
        if granularity not in GRANULARITIES:
            raise ConfigurationError('granularity must be global or local, '
                                     'got {}'.format(granularity))
        seeds = [int(seed) for seed in seeds]
        if not seeds:
            raise ConfigurationError('seed list is empty')
        if len(set(seeds)) != len(seeds):
            raise ConfigurationError('seed list has duplicates')
        if not 0.0 < train_fraction < 1.0:
            raise ConfigurationError('train fraction must be in (0, 1), got '
                                     '{}'.format(train_fraction))
        if min_train_rows < MIN_TRAIN_ROWS_FLOOR:
            raise ConfigurationError('min_train_rows must be at least {}, '
                                     'got {}'.format(MIN_TRAIN_ROWS_FLOOR,
                                                     min_train_rows))
        if jobs < 1:
            raise ConfigurationError('jobs must be positive')
        self.family = family
        self.granularity = granularity
        self.feature_k = normalize_k(feature_k)
        self.train_fraction = float(train_fraction)
        self.seeds = seeds
        self.settings = dict(settings or {})
        self.min_train_rows = int(min_train_rows)
        self.clamp_nonneg = bool(clamp_nonneg)
        self.jobs = int(jobs)


class SeedRun:
    '''Predictions of one seed over every evaluated group'''

    def __eq__(self, other):
        if not isinstance(other, SeedRun):
            return NotImplemented
        return (self.seed == other.seed and
                self.predictions == other.predictions and
                self.mae == other.mae and self.nmae == other.nmae)

    def __repr__(self):
        return 'SeedRun(seed={}, mae={})'.format(self.seed, self.mae)

    @staticmethod
    def evaluate(seed, predictions):
        try:
            normalized = nmae(predictions)
        except UndefinedDenominatorError:
            logger.warning('seed %d: test targets sum to zero, nMAE '
                           'undefined', seed)
            normalized = None
        return SeedRun(seed, predictions, mae(predictions), normalized)

    def __init__(self, seed, predictions, mae, nmae):
        self.seed = seed
        self.predictions = predictions
        self.mae = mae
        self.nmae = nmae


def confidence_interval(values, level=CONFIDENCE_LEVEL):
    '''
    Student-t interval of the mean: returns (low, high, mean)

    Identical values give a zero-width interval.
    '''
    values = np.asarray(values, dtype=np.float64)
    n = len(values)
    if n < 2:
        raise SampleError('a confidence interval needs at least 2 values, '
                          'got {}'.format(n))
    if not 0.0 < level < 1.0:
        raise SampleError('confidence level must be in (0, 1), got {}'
                          .format(level))
    if np.all(values == values[0]):
        value = float(values[0])
        return value, value, value
    mean = math.fsum(values) / n
    sd = float(np.std(values, ddof=1))
    half = float(stats.t.ppf((1.0 + level) / 2.0, n - 1)) * sd / math.sqrt(n)
    return mean - half, mean + half, mean


SUITE_FILE = 'suite.json'
MODELS_DIR = 'models'
RANKINGS_DIR = 'rankings'
LOSS_DIR = 'loss'
FORMAT_VERSION = 1


def predictions_file(seed):
    return 'predictions-seed{}.csv'.format(seed)


def _mean_and_ci(values, level):
    if any(value is None for value in values):
        return None, None
    if len(values) < 2:
        return values[0], None
    low, high, mean = confidence_interval(values, level)
    return mean, [low, high]


class SuiteResult:
    '''
    Every seed's predictions and metrics for one RunConfig

    ``models`` holds the first seed's fitted model per group (``global``
    or a state code) and ``model_features`` the feature names each of
    those models was fitted on, in ranking order.
    '''

    @property
    def seeds(self):
        return [run.seed for run in self.per_seed]

    @property
    def is_local(self):
        return GLOBAL not in self.models

    def first(self):
        return self.per_seed[0]

    def groups(self):
        return sorted(self.models)

    def summary(self, level=CONFIDENCE_LEVEL):
        '''Means over seeds with their t-intervals (None below 2 seeds)'''
        mae_mean, mae_ci = _mean_and_ci([run.mae for run in self.per_seed],
                                        level)
        nmae_mean, nmae_ci = _mean_and_ci([run.nmae
                                           for run in self.per_seed], level)
        return {'runs': len(self.per_seed), 'level': level,
                'formula': CI_FORMULA, 'mae_mean': mae_mean,
                'mae_ci': mae_ci, 'nmae_mean': nmae_mean,
                'nmae_ci': nmae_ci}

    def save(self, directory):
        '''Write the suite directory; returns the written paths'''
        directory = Path(directory)
        (directory / MODELS_DIR).mkdir(parents=True, exist_ok=True)
        family = self.config.family_instance()
        written = []
        runs = []
        for run in self.per_seed:
            name = predictions_file(run.seed)
            run.predictions.save(directory / name)
            written.append(directory / name)
            runs.append({'seed': run.seed, 'mae': run.mae, 'nmae': run.nmae,
                         'predictions': name})
        models = {}
        for group in self.groups():
            name = '{}/{}.json'.format(MODELS_DIR, group)
            family.dump(self.models[group], directory / name)
            written.append(directory / name)
            entry = {'file': name, 'features': self.model_features[group]}
            if group in self.rankings:
                name = '{}/{}.csv'.format(RANKINGS_DIR, group)
                (directory / RANKINGS_DIR).mkdir(exist_ok=True)
                self.rankings[group].save(str(directory / name))
                written.append(directory / name)
                entry['ranking'] = name
            curve = family.loss_curve(self.models[group])
            if curve:
                name = '{}/{}.csv'.format(LOSS_DIR, group)
                (directory / LOSS_DIR).mkdir(exist_ok=True)
                write_loss_curve(curve, directory / name)
                written.append(directory / name)
                entry['loss'] = name
            models[group] = entry
        document = {
            'format': FORMAT_VERSION,
            'kind': 'suite',
            'config': self.config.as_dict(),
            'hyperparameters': family.hyperparameters(),
            'boundary': None if self.boundary is None
            else str(self.boundary),
            'skipped': self.skipped,
            'runs': runs,
            'models': models,
            'summary': self.summary(),
        }
        with open(str(directory / SUITE_FILE), 'w', encoding='utf8') as out:
            json.dump(document, out, indent=2, sort_keys=True)
            out.write('\n')
        written.append(directory / SUITE_FILE)
        logger.info('saved suite with %d models to %s', len(models),
                    directory)
        return written

    @staticmethod
    def load(directory):
        directory = Path(directory)
        path = directory / SUITE_FILE
        with open(str(path), 'r', encoding='utf8') as raw:
            try:
                document = json.load(raw)
            except ValueError as exc:
                raise SchemaMismatch('{}: {}'.format(path, exc)) from exc
        if not isinstance(document, dict) or \
                document.get('kind') != 'suite':
            raise SchemaMismatch('{} is not a saved suite'.format(path))
        if document.get('format') != FORMAT_VERSION:
            raise SchemaMismatch('{}: unsupported format {}'.format(
                path, document.get('format')))
        try:
            config = RunConfig.from_dict(document['config'])
            per_seed = [SeedRun(run['seed'],
                                PredictionSet.load(directory /
                                                   run['predictions']),
                                run['mae'], run['nmae'])
                        for run in document['runs']]
            models = {group: load_any_model(directory / entry['file'])
                      for group, entry in document['models'].items()}
            features = {group: list(entry['features'])
                        for group, entry in document['models'].items()}
            rankings = {group: FeatureRanking.load(str(directory /
                                                       entry['ranking']))
                        for group, entry in document['models'].items()
                        if 'ranking' in entry}
        except (KeyError, TypeError, ConfigurationError,
                FeatureSelectionError) as exc:
            raise SchemaMismatch('{}: malformed suite ({})'.format(
                path, exc)) from exc
        boundary = document.get('boundary')
        return SuiteResult(config, per_seed, models, features,
                           document.get('skipped', []),
                           None if boundary is None
                           else np.datetime64(boundary, 'D'), rankings)

    def __init__(self, config, per_seed, models, model_features,
                 skipped=(), boundary=None, rankings=None):
        if len(per_seed) != len(config.seeds):
            raise SampleError('suite holds {} runs for {} seeds'.format(
                len(per_seed), len(config.seeds)))
        self.config = config
        self.per_seed = list(per_seed)
        self.models = dict(models)
        self.model_features = {group: list(names)
                               for group, names in model_features.items()}
        self.skipped = sorted(skipped)
        self.boundary = boundary
        self.rankings = dict(rankings or {})
